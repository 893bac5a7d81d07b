#include "ipls/solve.hpp"

#include <cmath>

#include "ipls/errors.hpp"
#include "ipls/linalg.hpp"
#include "ipls/raf.hpp"
#include "ipls/rounding.hpp"

namespace ipls {

namespace {

using rounding::next_down;
using rounding::next_up;
using rounding::rigorous;

// Radius matrix of an already-preconditioned system, midpoint defect included.
Mat solver_delta(const IntervalAffineSystem& P) {
    const int n = P.n();
    Mat D = P.Cr + (Mat::Identity(n, n) - P.C0).cwiseAbs();
    for (const Mat& Hk : P.Ck) D += Hk.cwiseAbs();
    return D;
}

Vec rhs_magnitude(const IntervalAffineSystem& P) {
    Vec m = P.c0.cwiseAbs() + P.cr;
    for (const Vec& gk : P.ck) m += gk.cwiseAbs();
    return m;
}

// Interval matvec a = R*y followed by the translation x~ + a.
IntervalVector back_transform(const Mat& R, const IntervalVector& y, const Vec& shift) {
    const int n = static_cast<int>(R.rows());
    IntervalVector out;
    out.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        Interval acc = Interval::point(shift(i));
        for (int j = 0; j < R.cols(); ++j)
            acc = acc + R(i, j) * y[static_cast<std::size_t>(j)];
        out.push_back(acc);
    }
    return out;
}

IntervalAffineSystem residual_shift(const IntervalAffineSystem& sys, Vec& x_tilde) {
    try {
        x_tilde = linalg::solve_linear(sys.C0, sys.c0);
    } catch (const SingularMatrix&) {
        throw SingularMidpoint("midpoint matrix is singular");
    }
    IntervalAffineSystem out = sys;
    out.c0 = sys.c0 - sys.C0 * x_tilde;
    for (int k = 0; k < sys.K(); ++k)
        out.ck[static_cast<std::size_t>(k)] =
            sys.ck[static_cast<std::size_t>(k)] - sys.Ck[static_cast<std::size_t>(k)] * x_tilde;
    out.cr = sys.cr + sys.Cr * x_tilde.cwiseAbs();
    if (rigorous()) {
        // slop for the three floating-point mat-vecs above
        const double eps = std::numeric_limits<double>::epsilon();
        const double f = 4.0 * static_cast<double>(sys.n()) * eps;
        Vec pad = f * (sys.C0.cwiseAbs() * x_tilde.cwiseAbs() + sys.c0.cwiseAbs());
        for (int k = 0; k < sys.K(); ++k)
            pad += f * (sys.Ck[static_cast<std::size_t>(k)].cwiseAbs() * x_tilde.cwiseAbs());
        out.cr += pad;
    }
    return out;
}

}  // namespace

std::string method_name(Method m) { return m == Method::PKI ? "pki" : "phbr"; }

SolveResult pki(const IntervalAffineSystem& sys, const Preconditioner& pc,
                const PkiOptions& opts) {
    const int n = sys.n();
    const int K = sys.K();

    Vec x_tilde = Vec::Zero(n);
    IntervalAffineSystem shifted =
        opts.residual_correction ? residual_shift(sys, x_tilde) : sys;
    IntervalAffineSystem P = apply(pc, shifted, opts.order);

    Mat D = solver_delta(P);
    double rho = linalg::spectral_radius_nonneg(D);
    if (rho >= 1.0) throw NotStronglyRegular(rho);

    Vec u;
    try {
        u = linalg::solve_linear(Mat(Mat::Identity(n, n) - D), rhs_magnitude(P));
    } catch (const SingularMatrix&) {
        throw NotStronglyRegular(rho);
    }
    u = u.cwiseAbs();

    // v_i = 0*e + [-u_i, u_i]
    std::vector<RAF> v;
    v.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) v.push_back(RAF(0.0, Vec::Zero(K), u(i)));

    // (I - H)_ij and g_i as fixed affine forms
    std::vector<std::vector<RAF>> IH(static_cast<std::size_t>(n));
    std::vector<RAF> g;
    g.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        IH[static_cast<std::size_t>(i)].reserve(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) {
            Vec dev(K);
            for (int k = 0; k < K; ++k) dev(k) = -P.Ck[static_cast<std::size_t>(k)](i, j);
            double c = (i == j ? 1.0 : 0.0) - P.C0(i, j);
            IH[static_cast<std::size_t>(i)].push_back(RAF(c, dev, P.Cr(i, j)));
        }
        Vec dev(K);
        for (int k = 0; k < K; ++k) dev(k) = P.ck[static_cast<std::size_t>(k)](i);
        g.push_back(RAF(P.c0(i), dev, P.cr(i)));
    }

    auto radius_of = [&](const std::vector<RAF>& w) {
        Vec r(n);
        for (int i = 0; i < n; ++i) r(i) = w[static_cast<std::size_t>(i)].total_radius();
        return r;
    };

    Vec prev_rad = radius_of(v);
    int it = 0;
    int consec = 0;
    while (it < opts.max_iter) {
        ++it;
        std::vector<RAF> vn;
        vn.reserve(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            RAF acc = g[static_cast<std::size_t>(i)];
            for (int j = 0; j < n; ++j)
                acc = acc + mul(IH[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)],
                                v[static_cast<std::size_t>(j)], MulMode::Chebyshev);
            vn.push_back(acc);
        }
        Vec rad = radius_of(vn);
        bool ok = true;
        for (int i = 0; i < n; ++i)
            if (std::abs(rad(i) - prev_rad(i)) > opts.tol * std::max(rad(i), 1e-300)) {
                ok = false;
                break;
            }
        consec = ok ? consec + 1 : 0;
        v = std::move(vn);
        prev_rad = rad;
        if (consec >= 2) break;
    }

    SolveResult res;
    res.method = Method::PKI;
    res.strategy = pc.strategy;
    res.iterations = it;
    res.max_iter_reached = consec < 2;
    res.rho = rho;

    Mat Fv(n, K);
    IntervalVector av;
    av.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        Fv.row(i) = v[static_cast<std::size_t>(i)].dev().transpose();
        double c = v[static_cast<std::size_t>(i)].center();
        double r = v[static_cast<std::size_t>(i)].err();
        double lo = c - r, hi = c + r;
        if (rigorous()) {
            lo = next_down(lo);
            hi = next_up(hi);
        }
        av.emplace_back(lo, hi);
    }
    res.psolution.F = pc.R * Fv;
    if (rigorous() && n > 0) {
        // widen a by the rounding of the F back-transform
        const double eps = std::numeric_limits<double>::epsilon();
        const double f = 2.0 * static_cast<double>(n) * eps;
        Mat pad = f * (pc.R.cwiseAbs() * Fv.cwiseAbs());
        for (int i = 0; i < n; ++i) {
            double w = pad.row(i).sum();
            av[static_cast<std::size_t>(i)] =
                av[static_cast<std::size_t>(i)] + Interval(-w, w);
        }
    }
    res.psolution.a = back_transform(pc.R, av, x_tilde);
    res.outer = outer_box(res.psolution);
    res.inner = inner_estimate(res.psolution);
    return res;
}

SolveResult phbr(const IntervalAffineSystem& sys, const Preconditioner& pc, Order order) {
    const int n = sys.n();
    const int K = sys.K();
    IntervalAffineSystem P = apply(pc, sys, order);

    Mat D = solver_delta(P);
    double rho = linalg::spectral_radius_nonneg(D);
    if (rho >= 1.0) throw NotStronglyRegular(rho);

    // relax the right-hand side to an interval vector
    Vec spread = P.cr;
    for (const Vec& gk : P.ck) spread += gk.cwiseAbs();
    Vec blo = P.c0 - spread;
    Vec bhi = P.c0 + spread;
    Vec magb = blo.cwiseAbs().cwiseMax(bhi.cwiseAbs());

    Mat M;
    try {
        M = linalg::inverse(Mat(Mat::Identity(n, n) - D));
    } catch (const SingularMatrix&) {
        throw NotStronglyRegular(rho);
    }
    Vec u = M * magb;

    IntervalVector y;
    y.reserve(static_cast<std::size_t>(n));
    const bool rig = rigorous();
    for (int i = 0; i < n; ++i) {
        double d = M(i, i);
        double alpha = (1.0 - D(i, i)) - 1.0 / d;
        double beta = u(i) / d - magb(i);
        if (rig) {
            // conservative padding for the floating-point inverse and quotients
            double pad = 64.0 * std::numeric_limits<double>::epsilon() *
                         (std::abs(u(i)) + magb(i) + 1.0);
            beta = next_up(beta + pad);
            alpha = next_up(alpha + pad / std::max(1.0, d));
            if (alpha < 0.0) alpha = 0.0;
        }
        double numlo = blo(i) - beta;
        double numhi = bhi(i) + beta;
        double denlo = 1.0 - D(i, i) - alpha;
        double denhi = 1.0 + D(i, i) + alpha;
        if (rig) {
            numlo = next_down(numlo);
            numhi = next_up(numhi);
            denlo = next_down(denlo);
            denhi = next_up(denhi);
        }
        if (denlo <= 0.0) throw NotStronglyRegular(rho);
        double q1 = numlo / denlo, q2 = numlo / denhi, q3 = numhi / denlo, q4 = numhi / denhi;
        double lo = std::min(std::min(q1, q2), std::min(q3, q4));
        double hi = std::max(std::max(q1, q2), std::max(q3, q4));
        if (rig) {
            lo = next_down(lo);
            hi = next_up(hi);
        }
        y.emplace_back(lo, hi);
    }

    SolveResult res;
    res.method = Method::PHBR;
    res.strategy = pc.strategy;
    res.iterations = 1;
    res.rho = rho;
    res.psolution.F = Mat::Zero(n, K);
    res.psolution.a = back_transform(pc.R, y, Vec::Zero(n));
    res.outer = outer_box(res.psolution);
    res.inner = inner_estimate(res.psolution);
    return res;
}

IntervalVector outer_box(const PSolution& ps) {
    const int n = static_cast<int>(ps.a.size());
    const bool rig = rigorous();
    IntervalVector out;
    out.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        double s = 0.0;
        for (int k = 0; k < ps.F.cols(); ++k) {
            s += std::abs(ps.F(i, k));
            if (rig) s = next_up(s);
        }
        const Interval& a = ps.a[static_cast<std::size_t>(i)];
        double c = a.mid();
        double r = a.rad() + s;
        if (rig) r = next_up(r);
        double lo = c - r, hi = c + r;
        if (rig) {
            lo = next_down(lo);
            hi = next_up(hi);
        }
        out.emplace_back(lo, hi);
    }
    return out;
}

std::vector<std::optional<Interval>> inner_estimate(const PSolution& ps) {
    const int n = static_cast<int>(ps.a.size());
    const bool rig = rigorous();
    std::vector<std::optional<Interval>> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        double s = 0.0;
        for (int k = 0; k < ps.F.cols(); ++k) {
            s += std::abs(ps.F(i, k));
            if (rig) s = next_down(s);
        }
        const Interval& a = ps.a[static_cast<std::size_t>(i)];
        double w = s - a.rad();
        if (rig) w = next_down(w);
        if (w < 0.0) {
            out.push_back(std::nullopt);
            continue;
        }
        double c = a.mid();
        double lo = c - w, hi = c + w;
        if (rig) {
            lo = next_up(lo);
            hi = next_down(hi);
        }
        if (lo > hi) {
            out.push_back(std::nullopt);
            continue;
        }
        out.emplace_back(Interval(lo, hi));
    }
    return out;
}

double overestimation(const Interval& x, const Interval& y) {
    if (y.rad() <= 0.0) throw ZeroWidthReference("reference interval has zero width");
    if (!y.contains(x)) throw NotNested("first interval is not contained in the second");
    double v = (1.0 - x.rad() / y.rad()) * 100.0;
    if (v < 0.0) v = 0.0;
    if (v > 100.0) v = 100.0;
    return v;
}

}  // namespace ipls
