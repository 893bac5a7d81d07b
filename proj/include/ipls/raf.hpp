#pragma once

#include <utility>

#include "ipls/interval.hpp"

namespace ipls {

enum class MulMode { Trivial, Chebyshev };

// Revised affine form: center + sum_k dev[k]*eps_k + err*[-1,1] over K noise symbols.
class RAF {
  public:
    RAF() : center_(0.0), err_(0.0) {}
    RAF(double center, Vec dev, double err);

    static RAF constant(double c, int K);
    // k is 1-based, matching the p_1..p_K notation used throughout.
    static RAF from_parameter(int k, const Interval& p, int K);

    double center() const { return center_; }
    const Vec& dev() const { return dev_; }
    double err() const { return err_; }
    int K() const { return static_cast<int>(dev_.size()); }

    // Sum of |dev| plus err; the half-width of to_interval.
    double total_radius() const;
    Interval to_interval() const;

    RAF operator+(const RAF& o) const;
    RAF operator-(const RAF& o) const;
    RAF operator-() const;
    RAF scale(double s) const;
    RAF translate(double t) const;

  private:
    double center_;
    Vec dev_;
    double err_;
};

RAF mul(const RAF& x, const RAF& y, MulMode mode = MulMode::Chebyshev);
RAF reciprocal(const RAF& x);
RAF pow_int(const RAF& x, int n);

// Exact range of u*v over the zonotope spanned by the paired deviations plus
// the (xr,0) and (0,yr) error generators. Exposed for the oracle tests.
std::pair<double, double> bilinear_range(const Vec& xd, double xr, const Vec& yd, double yr);

}  // namespace ipls
