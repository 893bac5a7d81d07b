#include "ipls/raf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ipls {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Accumulates one-ulp error bounds for a chain of elementary operations.
struct Slop {
    double total = 0.0;
    bool on = false;
    explicit Slop() : on(rounding::rigorous()) {}
    double track(double v) {
        if (on) total += rounding::ulp_of(v);
        return v;
    }
};

}  // namespace

RAF::RAF(double center, Vec dev, double err) : center_(center), dev_(std::move(dev)), err_(err) {
    if (!(err_ >= 0.0)) throw Error("negative accumulative error in affine form");
}

RAF RAF::constant(double c, int K) { return RAF(c, Vec::Zero(K), 0.0); }

RAF RAF::from_parameter(int k, const Interval& p, int K) {
    if (k < 1 || k > K) throw IndexOutOfRange("parameter index " + std::to_string(k));
    Vec d = Vec::Zero(K);
    d[k - 1] = p.rad();
    return RAF(p.mid(), std::move(d), 0.0);
}

double RAF::total_radius() const {
    Slop s;
    double acc = 0.0;
    for (Eigen::Index i = 0; i < dev_.size(); ++i) acc = s.track(acc + std::fabs(dev_[i]));
    acc = s.track(acc + err_);
    return rounding::next_up(acc + s.total);
}

Interval RAF::to_interval() const {
    double r = total_radius();
    return Interval(rounding::next_down(center_ - r), rounding::next_up(center_ + r));
}

RAF RAF::operator+(const RAF& o) const {
    if (K() != o.K()) throw DimensionMismatch("affine forms with different symbol counts");
    Slop s;
    double c = s.track(center_ + o.center_);
    Vec d(dev_.size());
    for (Eigen::Index i = 0; i < d.size(); ++i) d[i] = s.track(dev_[i] + o.dev_[i]);
    double e = s.track(err_ + o.err_);
    return RAF(c, std::move(d), rounding::next_up(e + s.total));
}

RAF RAF::operator-(const RAF& o) const { return *this + (-o); }

RAF RAF::operator-() const { return RAF(-center_, -dev_, err_); }

RAF RAF::scale(double sc) const {
    Slop s;
    double c = s.track(sc * center_);
    Vec d(dev_.size());
    for (Eigen::Index i = 0; i < d.size(); ++i) d[i] = s.track(sc * dev_[i]);
    double e = s.track(std::fabs(sc) * err_);
    return RAF(c, std::move(d), rounding::next_up(e + s.total));
}

RAF RAF::translate(double t) const {
    Slop s;
    double c = s.track(center_ + t);
    return RAF(c, dev_, rounding::next_up(err_ + s.total));
}

std::pair<double, double> bilinear_range(const Vec& xd, double xr, const Vec& yd, double yr) {
    if (xd.size() != yd.size()) throw DimensionMismatch("bilinear range over unmatched deviations");
    struct Gen {
        double x, y;
    };
    std::vector<Gen> gens;
    gens.reserve(static_cast<std::size_t>(xd.size()) + 2);
    for (Eigen::Index i = 0; i < xd.size(); ++i)
        if (xd[i] != 0.0 || yd[i] != 0.0) gens.push_back({xd[i], yd[i]});
    if (xr != 0.0) gens.push_back({xr, 0.0});
    if (yr != 0.0) gens.push_back({0.0, yr});
    if (gens.empty()) return {0.0, 0.0};

    // Normalize generators to the upper half-plane and walk half of the
    // zonotope boundary in angular order; central symmetry covers the rest.
    for (auto& g : gens)
        if (g.y < 0.0 || (g.y == 0.0 && g.x < 0.0)) {
            g.x = -g.x;
            g.y = -g.y;
        }
    std::sort(gens.begin(), gens.end(),
              [](const Gen& a, const Gen& b) { return std::atan2(a.y, a.x) < std::atan2(b.y, b.x); });

    double px = 0.0, py = 0.0, mx = 0.0, my = 0.0;
    for (const auto& g : gens) {
        px -= g.x;
        py -= g.y;
        mx += std::fabs(g.x);
        my += std::fabs(g.y);
    }
    double lo = px * py, hi = lo;
    auto consider = [&](double v) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    };
    for (const auto& g : gens) {
        const double a = px, b = 2.0 * g.x, c = py, d = 2.0 * g.y;
        consider((a + b) * (c + d));
        if (b * d != 0.0) {
            double t = -(b * c + a * d) / (2.0 * b * d);
            if (t > 0.0 && t < 1.0) consider((a + b * t) * (c + d * t));
        }
        px += 2.0 * g.x;
        py += 2.0 * g.y;
        consider(px * py);
    }
    if (rounding::rigorous()) {
        double slop = (4.0 * static_cast<double>(gens.size()) + 2.0) * kEps * mx * my;
        lo = rounding::next_down(lo - slop);
        hi = rounding::next_up(hi + slop);
    }
    return {lo, hi};
}

RAF mul(const RAF& x, const RAF& y, MulMode mode) {
    if (x.K() != y.K()) throw DimensionMismatch("affine forms with different symbol counts");
    Slop s;
    double dc, dd;
    if (mode == MulMode::Chebyshev) {
        auto [dlo, dhi] = bilinear_range(x.dev(), x.err(), y.dev(), y.err());
        dc = s.track((dhi + dlo) / 2.0);
        dd = s.track((dhi - dlo) / 2.0);
    } else {
        double rx = s.track(x.dev().cwiseAbs().sum() + x.err());
        double ry = s.track(y.dev().cwiseAbs().sum() + y.err());
        dc = 0.0;
        dd = s.track(rx * ry);
    }
    double c = s.track(x.center() * y.center());
    c = s.track(c + dc);
    Vec d(x.K());
    for (Eigen::Index i = 0; i < d.size(); ++i) {
        double t1 = s.track(x.center() * y.dev()[i]);
        double t2 = s.track(y.center() * x.dev()[i]);
        d[i] = s.track(t1 + t2);
    }
    double e = s.track(std::fabs(x.center()) * y.err());
    e = s.track(e + std::fabs(y.center()) * x.err());
    e = s.track(e + dd);
    return RAF(c, std::move(d), rounding::next_up(e + s.total));
}

RAF reciprocal(const RAF& x) {
    Interval range = x.to_interval();
    if (range.lo() <= 0.0 && 0.0 <= range.hi()) throw ZeroInRange();
    Slop s;
    double mag = range.mag();
    double m = s.track(-1.0 / (mag * mag));
    double ea = s.track(1.0 / range.lo() - m * range.lo());
    double eb = s.track(1.0 / range.hi() - m * range.hi());
    double c = s.track((ea + eb) / 2.0);
    double delta = s.track(std::fabs(ea - eb) / 2.0);
    if (rounding::rigorous())
        delta += 8.0 * kEps * (std::fabs(ea) + std::fabs(eb) + std::fabs(m) * mag);
    double cc = s.track(m * x.center());
    cc = s.track(cc + c);
    Vec d(x.K());
    for (Eigen::Index i = 0; i < d.size(); ++i) d[i] = s.track(m * x.dev()[i]);
    double e = s.track(std::fabs(m) * x.err());
    e = s.track(e + delta);
    return RAF(cc, std::move(d), rounding::next_up(e + s.total));
}

RAF pow_int(const RAF& x, int n) {
    if (n < 0) throw Error("negative integer power of an affine form");
    if (n == 0) return RAF::constant(1.0, x.K());
    RAF acc = x;
    for (int i = 1; i < n; ++i) acc = mul(acc, x, MulMode::Chebyshev);
    return acc;
}

}  // namespace ipls
