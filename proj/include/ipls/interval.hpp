#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "ipls/errors.hpp"
#include "ipls/rounding.hpp"

namespace ipls {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

class Interval {
  public:
    Interval() : lo_(0.0), hi_(0.0) {}
    Interval(double lo, double hi) : lo_(lo), hi_(hi) {
        if (!std::isfinite(lo) || !std::isfinite(hi))
            throw Error("interval endpoints must be finite");
        if (lo > hi) throw Error("interval lower endpoint exceeds upper endpoint");
    }
    static Interval point(double v) { return Interval(v, v); }

    double lo() const { return lo_; }
    double hi() const { return hi_; }

    // Midpoint is guaranteed to lie inside the interval.
    double mid() const {
        double m = (lo_ + hi_) / 2.0;
        if (!std::isfinite(m)) m = lo_ / 2.0 + hi_ / 2.0;
        return std::min(std::max(m, lo_), hi_);
    }
    double rad() const {
        double m = mid();
        return rounding::next_up(std::max(m - lo_, hi_ - m));
    }
    double mag() const { return std::max(std::fabs(lo_), std::fabs(hi_)); }
    double width() const { return hi_ - lo_; }

    bool contains(double v) const { return lo_ <= v && v <= hi_; }
    bool contains(const Interval& o) const { return lo_ <= o.lo_ && o.hi_ <= hi_; }

    friend Interval operator+(const Interval& x, const Interval& y) {
        return Interval(rounding::next_down(x.lo_ + y.lo_), rounding::next_up(x.hi_ + y.hi_));
    }
    friend Interval operator-(const Interval& x, const Interval& y) {
        return Interval(rounding::next_down(x.lo_ - y.hi_), rounding::next_up(x.hi_ - y.lo_));
    }
    friend Interval operator-(const Interval& x) { return Interval(-x.hi_, -x.lo_); }
    friend Interval operator*(const Interval& x, const Interval& y) {
        double p1 = x.lo_ * y.lo_, p2 = x.lo_ * y.hi_, p3 = x.hi_ * y.lo_, p4 = x.hi_ * y.hi_;
        return Interval(rounding::next_down(std::min({p1, p2, p3, p4})),
                        rounding::next_up(std::max({p1, p2, p3, p4})));
    }
    friend Interval operator/(const Interval& x, const Interval& y) {
        if (y.lo_ <= 0.0 && 0.0 <= y.hi_) throw DivisionByZeroInterval();
        double q1 = x.lo_ / y.lo_, q2 = x.lo_ / y.hi_, q3 = x.hi_ / y.lo_, q4 = x.hi_ / y.hi_;
        return Interval(rounding::next_down(std::min({q1, q2, q3, q4})),
                        rounding::next_up(std::max({q1, q2, q3, q4})));
    }
    friend Interval operator*(double s, const Interval& x) { return Interval::point(s) * x; }

    friend Interval hull(const Interval& x, const Interval& y) {
        return Interval(std::min(x.lo_, y.lo_), std::max(x.hi_, y.hi_));
    }

  private:
    double lo_, hi_;
};

using IntervalVector = std::vector<Interval>;

struct IntervalMatrix {
    IntervalMatrix() : rows(0), cols(0) {}
    IntervalMatrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c) {}
    Interval& at(int i, int j) { return data[static_cast<std::size_t>(i) * cols + j]; }
    const Interval& at(int i, int j) const { return data[static_cast<std::size_t>(i) * cols + j]; }
    int rows, cols;
    std::vector<Interval> data;
};

IntervalVector hull(const std::vector<IntervalVector>& boxes);
bool contains(const IntervalVector& outer, const IntervalVector& inner);

IntervalVector matvec(const Mat& A, const IntervalVector& x);
IntervalVector matvec(const IntervalMatrix& A, const IntervalVector& x);
IntervalMatrix matmat(const IntervalMatrix& A, const IntervalMatrix& B);
IntervalMatrix add(const IntervalMatrix& A, const IntervalMatrix& B);
Mat abs_mat(const IntervalMatrix& A);
Mat rad_mat(const IntervalMatrix& A);
Mat mid_mat(const IntervalMatrix& A);

}  // namespace ipls
