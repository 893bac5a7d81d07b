// Acceptance gate: `acceptance N` runs criterion N (1..10), prints one
// [PASS]/[FAIL] line for the criterion plus a line per failed sub-check,
// and exits nonzero on failure.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ipls/examples.hpp"
#include "ipls/linalg.hpp"
#include "ipls/model.hpp"
#include "ipls/oracle.hpp"
#include "ipls/precond.hpp"
#include "ipls/raf.hpp"
#include "ipls/rng.hpp"
#include "ipls/solve.hpp"

using namespace ipls;

namespace {

struct Check {
    std::vector<std::string> bad;
    int total = 0;
    void operator()(bool ok, const std::string& label) {
        ++total;
        if (!ok) bad.push_back(label);
    }
};

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

bool near(double a, double b, double tol) { return std::fabs(a - b) <= tol; }
bool rel_near(double a, double b, double tol) { return std::fabs(a - b) <= tol * std::fabs(b); }
// endpoint agreement scaled by max(1, |reference|)
bool end_near(double a, double b, double tol) {
    return std::fabs(a - b) <= tol * std::max(1.0, std::fabs(b));
}

bool box_inside(const IntervalVector& in, const IntervalVector& out, double slack) {
    for (std::size_t i = 0; i < in.size(); ++i) {
        double s_lo = slack * std::max(1.0, std::fabs(out[i].lo()));
        double s_hi = slack * std::max(1.0, std::fabs(out[i].hi()));
        if (in[i].lo() < out[i].lo() - s_lo || in[i].hi() > out[i].hi() + s_hi) return false;
    }
    return true;
}

IntervalVector merge_boxes(const std::vector<IntervalVector>& boxes) { return hull(boxes); }

Mat random_mat(Rng& rng, int r, int c, double lo, double hi) {
    Mat M(r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) M(i, j) = rng.uniform(lo, hi);
    return M;
}

Vec random_vec(Rng& rng, int n, double lo, double hi) {
    Vec v(n);
    for (int i = 0; i < n; ++i) v[i] = rng.uniform(lo, hi);
    return v;
}

// ---------------------------------------------------------------- criterion 1

void crit1(Check& c) {
    rounding::ScopedMode mode(rounding::Mode::Fast);
    IntervalAffineSystem sys = affine_transform(build_example("ex1").system);
    Preconditioner pc = build(Strategy::Right, sys);
    const double t = 1e-4;

    SolveResult h = phbr(sys, pc);
    c(near(h.outer[0].lo(), 0.0, t) && near(h.outer[0].hi(), 12.0 / 21.0, t) &&
          near(h.outer[1].lo(), -3.0 / 21.0, t) && near(h.outer[1].hi(), 1.0, t),
      fmt("phbr_right outer = ([0,12/21],[-3/21,1]) @1e-4, got ([%.9g,%.9g],[%.9g,%.9g])",
          h.outer[0].lo(), h.outer[0].hi(), h.outer[1].lo(), h.outer[1].hi()));

    SolveResult k = pki(sys, pc);
    c(near(k.outer[0].lo(), 0.0, t) && near(k.outer[0].hi(), 0.740741, t) &&
          near(k.outer[1].lo(), -0.481481, t) && near(k.outer[1].hi(), 1.0, t),
      fmt("pki_right outer = ([0,0.740741],[-0.481481,1]) @1e-4, got ([%.9g,%.9g],[%.9g,%.9g])",
          k.outer[0].lo(), k.outer[0].hi(), k.outer[1].lo(), k.outer[1].hi()));
    bool inner_ok = k.inner[0].has_value() && k.inner[1].has_value();
    if (inner_ok)
        inner_ok = near(k.inner[0]->lo(), 0.296296, t) && near(k.inner[0]->hi(), 0.444444, t) &&
                   near(k.inner[1]->lo(), 0.111111, t) && near(k.inner[1]->hi(), 0.407407, t);
    c(inner_ok, "pki_right inner = ([0.296296,0.444444],[0.111111,0.407407]) @1e-4");
}

// ---------------------------------------------------------------- criterion 2

void crit2(Check& c) {
    rounding::ScopedMode mode(rounding::Mode::Fast);
    {
        IntervalAffineSystem sys = affine_transform(build_example("ex0").system);
        double rl = strong_regularity(build(Strategy::Left, sys), sys).rho;
        double rr = strong_regularity(build(Strategy::Right, sys), sys).rho;
        c(near(rl, 1.5, 1e-10), fmt("ex0 left rho = 1.5 @1e-10, got %.12g", rl));
        c(near(rr, 1.5, 1e-10), fmt("ex0 right rho = 1.5 @1e-10, got %.12g", rr));
        Mat L(2, 2), R(2, 2);
        L << 1, 1, 0, 1;
        R << 1, -1, 0, 1;
        double rc = strong_regularity(build_custom(L, R), sys).rho;
        c(near(rc, 0.5, 1e-10), fmt("ex0 custom double rho = 0.5 @1e-10, got %.12g", rc));
    }
    {
        IntervalAffineSystem sys = affine_transform(build_example("ex1").system);
        double rl = strong_regularity(build(Strategy::Left, sys), sys).rho;
        double rr = strong_regularity(build(Strategy::Right, sys), sys).rho;
        c(near(rl, 1.25, 1e-9), fmt("ex1 left rho = 1.25 @1e-9, got %.12g", rl));
        c(near(rr, 0.75, 1e-9), fmt("ex1 right rho = 0.75 @1e-9, got %.12g", rr));
    }
    {
        IntervalAffineSystem sys = affine_transform(build_example("ex3").system);
        double rl = strong_regularity(build(Strategy::Left, sys), sys).rho;
        double rr = strong_regularity(build(Strategy::Right, sys), sys).rho;
        c(near(rl, 1.12, 0.01), fmt("ex3 left rho = 1.12 +-0.01, got %.6g", rl));
        c(near(rr, 0.97, 0.01), fmt("ex3 right rho = 0.97 +-0.01, got %.6g", rr));
    }
    struct Ref {
        Strategy s;
        const char* name;
        double at001, at055;
    };
    const Ref refs[] = {
        {Strategy::Left, "left", 0.0375012, 2.06256},
        {Strategy::Right, "right", 0.0200213, 1.10117},
        {Strategy::DoubleLU, "lu", 0.0179797, 0.988881},
        {Strategy::DoubleSVD, "svd", 0.0329613, 1.81287},
        {Strategy::DoubleQR, "qr", 0.0195877, 1.07732},
    };
    for (double delta : {0.01, 0.55}) {
        IntervalAffineSystem sys = affine_transform(build_example("ex2", delta).system);
        for (const Ref& r : refs) {
            double got = strong_regularity(build(r.s, sys), sys).rho;
            double want = delta == 0.01 ? r.at001 : r.at055;
            c(rel_near(got, want, 1e-4),
              fmt("ex2 %s rho at delta=%g: expected %.6g @1e-4 rel, got %.6g", r.name, delta,
                  want, got));
        }
    }
}

// ---------------------------------------------------------------- criterion 3

void crit3(Check& c) {
    rounding::ScopedMode mode(rounding::Mode::Fast);
    IntervalAffineSystem sys = affine_transform(build_example("ex3").system);

    PkiOptions opts;
    opts.tol = 1e-4;
    opts.max_iter = 1000;
    SolveResult k = pki(sys, build(Strategy::Right, sys), opts);
    const double ref[3][2] = {
        {-16.768697, 18.556510}, {-18.197915, 18.535419}, {-20.214964, 23.743957}};
    bool outer_ok = true;
    for (int i = 0; i < 3; ++i)
        outer_ok = outer_ok && end_near(k.outer[static_cast<std::size_t>(i)].lo(), ref[i][0], 1e-3) &&
                   end_near(k.outer[static_cast<std::size_t>(i)].hi(), ref[i][1], 1e-3);
    c(outer_ok, fmt("ex3 pki_right outer matches reference @1e-3 rel per endpoint, got "
                    "([%.6f,%.6f],[%.6f,%.6f],[%.6f,%.6f])",
                    k.outer[0].lo(), k.outer[0].hi(), k.outer[1].lo(), k.outer[1].hi(),
                    k.outer[2].lo(), k.outer[2].hi()));

    IntervalVector hull_ref = {Interval(0.69999, 1.7157), Interval(-0.4501, 1.0938),
                               Interval(0.3818, 3.3244)};
    c(box_inside(hull_ref, k.outer, 0.0), "reference hull contained in computed outer");

    bool threw = false;
    try {
        pki(sys, build(Strategy::Left, sys));
    } catch (const NotStronglyRegular&) {
        threw = true;
    }
    c(threw, "ex3 pki_left raises NotStronglyRegular");
}

// ---------------------------------------------------------------- criterion 4

struct HullPair {
    IntervalVector small;  // 1e4 random + all vertices
    IntervalVector big;    // 1e5 random + grid + all vertices
};

template <typename System>
HullPair sampled_hulls(const System& s, std::uint64_t seed) {
    HullPair h;
    SampledHull r1 = sample_hull(s, Sampler::Random, 10000, seed);
    SampledHull v = sample_hull(s, Sampler::Vertices, 1 << 20, seed);
    h.small = merge_boxes({r1.box, v.box});
    SampledHull r2 = sample_hull(s, Sampler::Random, 100000, seed + 1);
    SampledHull g = sample_hull(s, Sampler::Grid, 100000, seed + 2);
    h.big = merge_boxes({r2.box, g.box, v.box});
    return h;
}

void soundness_rows(Check& c, const std::string& tag, const IntervalAffineSystem& sys,
                    const HullPair& h, int* rows) {
    const double slack = 1e-9;
    const Strategy strategies[] = {Strategy::Left, Strategy::Right, Strategy::DoubleLU,
                                   Strategy::DoubleSVD, Strategy::DoubleQR};
    for (Strategy s : strategies) {
        Preconditioner pc;
        try {
            pc = build(s, sys);
        } catch (const Error&) {
            continue;
        }
        for (Method m : {Method::PKI, Method::PHBR}) {
            SolveResult res;
            try {
                if (m == Method::PKI) {
                    PkiOptions opts;
                    opts.max_iter = 2000;
                    res = pki(sys, pc, opts);
                } else {
                    res = phbr(sys, pc);
                }
            } catch (const NotStronglyRegular&) {
                continue;
            }
            ++*rows;
            std::string label = tag + " " + method_name(m) + "_" + strategy_name(s);
            c(box_inside(h.small, res.outer, slack), label + ": sampled hull inside outer");
            for (std::size_t i = 0; i < res.inner.size(); ++i) {
                if (!res.inner[i]) continue;
                const Interval& in = *res.inner[i];
                double pad_lo = slack * std::max(1.0, std::fabs(h.big[i].lo()));
                double pad_hi = slack * std::max(1.0, std::fabs(h.big[i].hi()));
                bool ok = in.lo() >= res.outer[i].lo() - slack &&
                          in.hi() <= res.outer[i].hi() + slack &&
                          in.lo() >= h.big[i].lo() - pad_lo && in.hi() <= h.big[i].hi() + pad_hi;
                c(ok, fmt("%s: inner[%zu] inside outer and sampled hull", label.c_str(), i));
            }
        }
    }
}

void crit4(Check& c) {
    rounding::ScopedMode mode(rounding::Mode::Rigorous);
    int rows = 0;
    for (const std::string& id : example_ids()) {
        PaperExample ex = build_example(id);
        IntervalAffineSystem sys = affine_transform(ex.system);
        HullPair h = sampled_hulls(ex.system, 1101);
        soundness_rows(c, id, sys, h, &rows);
    }

    Rng rng(777);
    int made = 0, attempts = 0;
    while (made < 50 && attempts < 5000) {
        ++attempts;
        int n = made < 25 ? 3 : 5;
        int K = n;
        AffineLinearSystem als;
        als.A0 = Mat::Identity(n, n) + random_mat(rng, n, n, -0.3, 0.3);
        double scale = 0.35 / K;
        for (int k = 0; k < K; ++k) {
            als.Ak.push_back(random_mat(rng, n, n, -scale, scale));
            als.bk.push_back(random_vec(rng, n, -0.2, 0.2));
        }
        als.b0 = random_vec(rng, n, -2.0, 2.0);
        for (int k = 0; k < K; ++k) als.p.push_back(Interval(-1.0, 1.0));
        IntervalAffineSystem sys = to_interval_affine(als);
        try {
            if (strong_regularity(build(Strategy::Left, sys), sys).rho >= 0.9) continue;
        } catch (const Error&) {
            continue;
        }
        ++made;
        HullPair h = sampled_hulls(als, 3000 + static_cast<std::uint64_t>(made));
        soundness_rows(c, fmt("rand%02d(n=%d)", made, n), sys, h, &rows);
    }
    c(made == 50, fmt("generated 50 random systems with rho < 0.9 (got %d)", made));
    c(rows >= 100, fmt("at least 100 method/strategy rows exercised (got %d)", rows));
}

// ---------------------------------------------------------------- criterion 5

void crit5(Check& c) {
    rounding::ScopedMode mode(rounding::Mode::Fast);
    Rng rng(7);
    double worst = 0.0;
    for (int trial = 0; trial < 120; ++trial) {
        int n = trial < 100 ? 2 : 3;
        Mat D;
        while (true) {
            D = random_mat(rng, n, n, 0.0, 0.5);
            double r = linalg::spectral_radius_nonneg(D);
            if (r > 1e-3 && r < 0.9) break;
        }
        Vec bc = random_vec(rng, n, -2.0, 2.0);
        Vec bd = random_vec(rng, n, 0.0, 1.0);

        IntervalAffineSystem sys;
        sys.C0 = Mat::Identity(n, n);
        sys.Cr = Mat::Zero(n, n);
        sys.c0 = bc;
        sys.cr = Vec::Zero(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                Mat M = Mat::Zero(n, n);
                M(i, j) = D(i, j);
                sys.Ck.push_back(M);
                sys.ck.push_back(Vec::Zero(n));
            }
        for (int i = 0; i < n; ++i) {
            Vec v = Vec::Zero(n);
            v[i] = bd[i];
            sys.Ck.push_back(Mat::Zero(n, n));
            sys.ck.push_back(v);
        }

        SolveResult res = phbr(sys, build(Strategy::Left, sys));

        // exact hull by vertex enumeration
        Vec lo = Vec::Constant(n, std::numeric_limits<double>::infinity());
        Vec hi = -lo;
        int nb = 1 << n;
        Mat rhs(n, nb);
        for (int bm = 0; bm < nb; ++bm)
            for (int i = 0; i < n; ++i) rhs(i, bm) = bc[i] + ((bm >> i) & 1 ? bd[i] : -bd[i]);
        for (int am = 0; am < (1 << (n * n)); ++am) {
            Mat A = Mat::Identity(n, n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    A(i, j) += ((am >> (i * n + j)) & 1) ? D(i, j) : -D(i, j);
            Mat X = linalg::solve_linear(A, rhs);
            for (int bm = 0; bm < nb; ++bm) {
                lo = lo.cwiseMin(X.col(bm));
                hi = hi.cwiseMax(X.col(bm));
            }
        }
        double scale = std::max({1.0, lo.cwiseAbs().maxCoeff(), hi.cwiseAbs().maxCoeff()});
        for (int i = 0; i < n; ++i) {
            std::size_t ui = static_cast<std::size_t>(i);
            worst = std::max(worst, std::fabs(res.outer[ui].lo() - lo[i]) / scale);
            worst = std::max(worst, std::fabs(res.outer[ui].hi() - hi[i]) / scale);
        }
    }
    c(worst < 1e-9,
      fmt("phbr equals vertex-enumeration hull on 120 systems, worst rel err %.2e", worst));
}

// ---------------------------------------------------------------- criterion 6

Mat system_radius(const IntervalAffineSystem& s) {
    Mat r = s.Cr;
    for (const Mat& Ck : s.Ck) r += Ck.cwiseAbs();
    return r;
}

Vec rhs_radius(const IntervalAffineSystem& s) {
    Vec r = s.cr;
    for (const Vec& ck : s.ck) r += ck.cwiseAbs();
    return r;
}

IntervalAffineSystem random_affine(Rng& rng, int n, int K, double mat_scale, double rhs_scale) {
    IntervalAffineSystem sys;
    sys.C0 = Mat::Identity(n, n) + random_mat(rng, n, n, -0.35, 0.35);
    sys.Cr = random_mat(rng, n, n, 0.0, 0.02);
    sys.c0 = random_vec(rng, n, -2.0, 2.0);
    sys.cr = random_vec(rng, n, 0.0, 0.02);
    for (int k = 0; k < K; ++k) {
        sys.Ck.push_back(random_mat(rng, n, n, -mat_scale, mat_scale));
        sys.ck.push_back(random_vec(rng, n, -rhs_scale, rhs_scale));
    }
    return sys;
}

void crit6(Check& c) {
    rounding::ScopedMode mode(rounding::Mode::Fast);
    Rng rng(99);
    const Strategy strategies[] = {Strategy::Left, Strategy::Right, Strategy::DoubleLU,
                                   Strategy::DoubleSVD, Strategy::DoubleQR};

    // factored transform never wider than relax-then-transform
    bool sub_ok = true;
    int done = 0;
    while (done < 200) {
        int n = 2 + rng.index(3);
        int K = 1 + rng.index(4);
        IntervalAffineSystem sys = random_affine(rng, n, K, 0.3, 0.2);
        Preconditioner pc;
        try {
            pc = build(strategies[rng.index(5)], sys);
        } catch (const Error&) {
            continue;
        }
        ++done;
        IntervalAffineSystem s1 = apply(pc, sys, Order::FactorFirst);
        IntervalAffineSystem s2 = apply(pc, sys, Order::RelaxFirst);
        Mat d1 = system_radius(s1), d2 = system_radius(s2);
        Vec v1 = rhs_radius(s1), v2 = rhs_radius(s2);
        double tol = 1e-12 * std::max(1.0, d2.maxCoeff());
        sub_ok = sub_ok && (s1.C0 - s2.C0).cwiseAbs().maxCoeff() <= tol &&
                 (d1 - d2).maxCoeff() <= tol && (v1 - v2).maxCoeff() <= tol &&
                 (s1.c0 - s2.c0).cwiseAbs().maxCoeff() <= tol;
    }
    c(sub_ok, "factor-first hull inside relax-first hull on 200 random systems");

    // radius equality under the one-nonzero-per-column (left) / per-row (right) condition
    bool eq_ok = true;
    for (int t = 0; t < 100; ++t) {
        bool left = t < 50;
        int n = 2 + rng.index(3);
        int K = 1 + rng.index(3);
        IntervalAffineSystem sys;
        sys.C0 = Mat::Identity(n, n) + random_mat(rng, n, n, -0.3, 0.3);
        sys.Cr = Mat::Zero(n, n);
        sys.c0 = random_vec(rng, n, -1.0, 1.0);
        sys.cr = Vec::Zero(n);
        for (int k = 0; k < K; ++k) {
            Mat Ck = Mat::Zero(n, n);
            for (int j = 0; j < n; ++j) {
                int pos = rng.index(n + 1);
                if (pos == n) continue;
                if (left)
                    Ck(pos, j) = rng.uniform(-0.4, 0.4);  // one nonzero per column
                else
                    Ck(j, pos) = rng.uniform(-0.4, 0.4);  // one nonzero per row
            }
            sys.Ck.push_back(Ck);
            sys.ck.push_back(Vec::Zero(n));
        }
        Preconditioner pc;
        try {
            pc = build(left ? Strategy::Left : Strategy::Right, sys);
        } catch (const Error&) {
            --t;
            continue;
        }
        Mat d1 = system_radius(apply(pc, sys, Order::FactorFirst));
        Mat d2 = system_radius(apply(pc, sys, Order::RelaxFirst));
        eq_ok = eq_ok &&
                (d1 - d2).cwiseAbs().maxCoeff() <= 1e-12 * std::max(1.0, d2.maxCoeff());
    }
    c(eq_ok, "matrix hull equality under the column-one/row-one condition (100 systems)");

    // class-one structure survives right preconditioning
    bool class_ok = true;
    for (int t = 0; t < 100; ++t) {
        int n = 2 + rng.index(4);
        int K = 1 + rng.index(4);
        AffineLinearSystem als;
        als.A0 = Mat::Identity(n, n) + random_mat(rng, n, n, -0.3, 0.3);
        als.b0 = random_vec(rng, n, -2.0, 2.0);
        for (int k = 0; k < K; ++k) {
            int row = rng.index(n);
            Mat Ak = Mat::Zero(n, n);
            for (int j = 0; j < n; ++j) Ak(row, j) = rng.uniform(-0.5, 0.5);
            Vec bk = Vec::Zero(n);
            bk[row] = rng.uniform(-0.5, 0.5);
            als.Ak.push_back(Ak);
            als.bk.push_back(bk);
            als.p.push_back(Interval(-1.0, 1.0));
        }
        for (int k = 1; k <= K; ++k) class_ok = class_ok && class_one(als, k);
        IntervalAffineSystem sys = to_interval_affine(als);
        Preconditioner pc;
        try {
            pc = build(Strategy::Right, sys);
        } catch (const Error&) {
            --t;
            continue;
        }
        IntervalAffineSystem tr = apply(pc, sys, Order::FactorFirst);
        AffineLinearSystem tals;
        tals.A0 = tr.C0;
        tals.Ak = tr.Ck;
        tals.b0 = tr.c0;
        tals.bk = tr.ck;
        tals.p = IntervalVector(static_cast<std::size_t>(K), Interval(-1.0, 1.0));
        for (int k = 1; k <= K; ++k) class_ok = class_ok && class_one(tals, k);
    }
    c(class_ok, "class-one parameters preserved by right preconditioning (100 systems)");

    // similarity strategy on a rank-one perturbation of the identity
    bool s0_ok = true;
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
        int n = 3 + rng.index(6);
        Vec a = random_vec(rng, n, -2.0, 2.0);
        Vec b = random_vec(rng, n, -2.0, 2.0);
        IntervalAffineSystem sys;
        sys.C0 = Mat::Identity(n, n);
        sys.Cr = Mat::Zero(n, n);
        sys.c0 = Vec::Ones(n);
        sys.cr = Vec::Zero(n);
        sys.Ck.push_back(a * b.transpose());
        sys.ck.push_back(Vec::Zero(n));
        Preconditioner pc;
        try {
            pc = build(Strategy::S0, sys);
        } catch (const Error&) {
            --t;
            continue;
        }
        double got = strong_regularity(pc, sys).rho;
        double want = std::fabs(a.dot(b));
        worst = std::max(worst, std::fabs(got - want));
        s0_ok = s0_ok && near(got, want, 1e-9);
    }
    c(s0_ok, fmt("s0 similarity reaches rho = |b^T a| on 100 rank-one systems (worst |diff| %.2e)",
                 worst));
}

// ---------------------------------------------------------------- criterion 7

void crit7(Check& c) {
    Rng rng(55);
    const double sqrt2 = std::sqrt(2.0);

    bool bound_ok = true;
    for (int t = 0; t < 10000; ++t) {
        double co = rng.uniform(-3.0, 3.0), si = rng.uniform(-3.0, 3.0);
        Mat B(2, 2);
        B << co, si, -si, co;
        double rho_abs = linalg::spectral_radius_nonneg(B.cwiseAbs());
        double rho_b = std::hypot(co, si);
        bound_ok = bound_ok && rho_abs <= sqrt2 * rho_b + 1e-9;
    }
    c(bound_ok, "rho(|B|) <= sqrt(2) rho(B) on 1e4 rotation-scaling blocks");

    bool tight_ok = true;
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
        double u = rng.uniform(-3.0, 3.0);
        Mat B(2, 2);
        B << u, u, -u, u;
        double rho_abs = linalg::spectral_radius_nonneg(B.cwiseAbs());
        double gap = std::fabs(sqrt2 * std::hypot(u, u) - rho_abs);
        worst = std::max(worst, gap);
        tight_ok = tight_ok && gap <= 1e-6 * std::max(1.0, rho_abs);
    }
    c(tight_ok, fmt("bound tight at c=s within 1e-6 (worst gap %.2e)", worst));

    bool sim_ok = true;
    for (int t = 0; t < 10000; ++t) {
        double f = rng.uniform(-3.0, 3.0);
        Mat B(2, 2);
        B << f, 1.0, -1.0, f;
        Mat R(2, 2);
        do {
            R = random_mat(rng, 2, 2, -2.0, 2.0);
        } while (std::fabs(R.determinant()) < 0.05);
        Mat M = R * B * R.inverse();
        double lhs = std::fabs(f) + 1.0;  // rho(|B|) analytically
        double rhs = linalg::spectral_radius_nonneg(M.cwiseAbs());
        sim_ok = sim_ok && lhs <= rhs + 1e-9;
    }
    c(sim_ok, "rho(|B|) <= rho(|R B R^-1|) on 1e4 random similarities");
}

// ---------------------------------------------------------------- criterion 8

std::vector<double> outer_widths(const SolveResult& r) {
    std::vector<double> w;
    for (const Interval& x : r.outer) w.push_back(x.width());
    return w;
}

void crit8(Check& c) {
    rounding::ScopedMode mode(rounding::Mode::Fast);
    PkiOptions opts;
    opts.max_iter = 2000;

    auto tighter_everywhere = [&](const std::string& id, std::optional<double> delta,
                                  const char* label) {
        IntervalAffineSystem sys = affine_transform(build_example(id, delta).system);
        SolveResult l = pki(sys, build(Strategy::Left, sys), opts);
        SolveResult lu = pki(sys, build(Strategy::DoubleLU, sys), opts);
        std::vector<double> wl = outer_widths(l), wlu = outer_widths(lu);
        bool all = true;
        for (std::size_t i = 0; i < wl.size(); ++i) all = all && wlu[i] < wl[i];
        c(all, fmt("%s: pki_lu strictly tighter than pki_left on every component", label));
    };

    tighter_everywhere("okumura", 0.3, "okumura delta=0.3 (5 components)");
    tighter_everywhere("frame", 0.3, "frame delta=0.3 (8 components)");
    tighter_everywhere("ac_circuit", 0.25, "ac_circuit delta=0.25 (10 components)");

    IntervalAffineSystem frame = affine_transform(build_example("frame", 0.5).system);
    PkiOptions o2;
    o2.tol = 1e-4;
    o2.max_iter = 2000;
    SolveResult l = pki(frame, build(Strategy::Left, frame), o2);
    SolveResult lu = pki(frame, build(Strategy::DoubleLU, frame), o2);
    c(l.iterations >= 33 && l.iterations <= 97,
      fmt("frame delta=0.5 pki_left iterations within 65 +-50%% (got %d)", l.iterations));
    c(lu.iterations >= 7 && lu.iterations <= 21,
      fmt("frame delta=0.5 pki_lu iterations within 14 +-50%% (got %d)", lu.iterations));
    c(l.iterations > lu.iterations,
      fmt("frame delta=0.5: left needs more iterations than lu (%d vs %d)", l.iterations,
          lu.iterations));
}

// ---------------------------------------------------------------- criterion 9

void crit9(Check& c) {
    auto geo = [](const RatioTable& t) {
        std::map<std::string, double> m;
        for (const RatioRow& r : t.rows) m[r.strategy] = r.geo_mean;
        return m;
    };

    EnsembleSpec rank1;  // defaults: n=10, K=7, identity midpoint
    rank1.seed = 1;
    auto g1 = geo(ratio_statistics(rank1, 100, {"s0", "s1", "s2", "s3"}));
    c(g1["s0"] > g1["s2"] && g1["s0"] > g1["s3"],
      fmt("rank-one family: s0 beats s2 and s3 (%.3g vs %.3g / %.3g)", g1["s0"], g1["s2"],
          g1["s3"]));
    c(g1["s2"] > g1["s1"] && g1["s3"] > g1["s1"],
      fmt("rank-one family: s2 and s3 beat s1 (%.3g / %.3g vs %.3g)", g1["s2"], g1["s3"],
          g1["s1"]));

    EnsembleSpec nm;
    nm.midpoint = EnsembleSpec::Midpoint::RandomPM8;
    nm.u = Interval(-1.0, 2.0);
    nm.v = Interval(2.0, 3.0);
    nm.spread = 0.2;
    nm.seed = 1;
    auto g2 = geo(ratio_statistics(nm, 100, {"lu", "lu+s0", "svd", "svd+s0", "qr", "qr+s0"}));
    for (const char* s : {"lu", "svd", "qr"})
        c(g2[std::string(s) + "+s0"] > g2[s],
          fmt("random-midpoint family: %s+s0 beats %s (%.3g vs %.3g)", s, s,
              g2[std::string(s) + "+s0"], g2[s]));
}

// --------------------------------------------------------------- criterion 10

Interval rand_interval(Rng& rng, double span) {
    double lo = rng.uniform(-span, span);
    return Interval(lo, lo + rng.uniform(0.0, span));
}

RAF rand_raf(Rng& rng, int K) {
    Vec d(K);
    for (int k = 0; k < K; ++k) d[k] = rng.uniform(-2.0, 2.0);
    return RAF(rng.uniform(-3.0, 3.0), d, rng.uniform(0.0, 1.0));
}

void crit10(Check& c) {
    Rng rng(31);

    {
        rounding::ScopedMode rig(rounding::Mode::Rigorous);
        bool contain_ok = true, iso_ok = true, subd_ok = true;
        for (int t = 0; t < 10000; ++t) {
            Interval x = rand_interval(rng, 5.0), y = rand_interval(rng, 5.0);
            double xi = x.lo() + rng.uniform(0.0, 1.0) * x.width();
            double eta = y.lo() + rng.uniform(0.0, 1.0) * y.width();
            contain_ok = contain_ok && (x + y).contains(xi + eta) && (x - y).contains(xi - eta) &&
                         (x * y).contains(xi * eta);
            if (!y.contains(0.0)) contain_ok = contain_ok && (x / y).contains(xi / eta);

            double a = rng.uniform(0.0, 0.4), b = rng.uniform(0.0, 0.4);
            Interval xs(x.lo() + a * x.width(), x.hi() - b * x.width());
            Interval ys(y.lo() + a * y.width(), y.hi() - b * y.width());
            iso_ok = iso_ok && (x + y).contains(xs + ys) && (x - y).contains(xs - ys) &&
                     (x * y).contains(xs * ys);
            if (!y.contains(0.0) && !ys.contains(0.0)) iso_ok = iso_ok && (x / y).contains(xs / ys);

            Interval z = rand_interval(rng, 5.0);
            Interval lhs = x * (y + z);
            Interval rhs = x * y + x * z;
            double pad = 1e-12 * std::max(1.0, rhs.mag());
            subd_ok = subd_ok && lhs.lo() >= rhs.lo() - pad && lhs.hi() <= rhs.hi() + pad;
        }
        c(contain_ok, "interval ops contain sampled point results (1e4 cases)");
        c(iso_ok, "interval ops inclusion-isotone (1e4 cases)");
        c(subd_ok, "subdistributivity x(y+z) inside xy+xz (1e4 cases)");
    }

    {
        rounding::ScopedMode rig(rounding::Mode::Rigorous);
        bool sound_ok = true, tight_ok = true;
        for (int t = 0; t < 10000; ++t) {
            int K = 3;
            RAF x = rand_raf(rng, K), y = rand_raf(rng, K);
            Interval cheb = mul(x, y, MulMode::Chebyshev).to_interval();
            Interval triv = mul(x, y, MulMode::Trivial).to_interval();
            tight_ok = tight_ok && cheb.width() <= triv.width() + 1e-12 * std::max(1.0, triv.mag());

            for (int s = 0; s < 4; ++s) {
                Vec e(K);
                for (int k = 0; k < K; ++k)
                    e[k] = s < 2 ? (rng.next() & 1 ? 1.0 : -1.0) : rng.uniform(-1.0, 1.0);
                double tx = (s & 1) ? 1.0 : -1.0;
                double ty = (s & 2) ? 1.0 : -1.0;
                double vx = x.center() + x.dev().dot(e) + x.err() * tx;
                double vy = y.center() + y.dev().dot(e) + y.err() * ty;
                double pad = 1e-9 * std::max(1.0, cheb.mag());
                sound_ok = sound_ok && vx * vy >= cheb.lo() - pad && vx * vy <= cheb.hi() + pad;
            }
        }
        c(sound_ok, "raf product range contains sampled joint evaluations (1e4 cases)");
        c(tight_ok, "chebyshev product never wider than trivial product (1e4 cases)");
    }

    // rigorous mode never narrower than fast mode across the registry
    const Strategy strategies[] = {Strategy::Left, Strategy::Right, Strategy::DoubleLU,
                                   Strategy::DoubleSVD, Strategy::DoubleQR};
    bool mono_ok = true;
    int compared = 0;
    for (const std::string& id : example_ids()) {
        for (Strategy s : strategies) {
            for (Method m : {Method::PKI, Method::PHBR}) {
                auto run = [&](rounding::Mode mode) -> std::optional<SolveResult> {
                    rounding::ScopedMode guard(mode);
                    IntervalAffineSystem sys = affine_transform(build_example(id).system);
                    try {
                        Preconditioner pc = build(s, sys);
                        if (m == Method::PKI) {
                            PkiOptions opts;
                            opts.tol = 0.0;
                            opts.max_iter = 30;
                            return pki(sys, pc, opts);
                        }
                        return phbr(sys, pc);
                    } catch (const Error&) {
                        return std::nullopt;
                    }
                };
                std::optional<SolveResult> fast = run(rounding::Mode::Fast);
                std::optional<SolveResult> rig = run(rounding::Mode::Rigorous);
                if (!fast || !rig) continue;
                ++compared;
                mono_ok = mono_ok && box_inside(fast->outer, rig->outer, 1e-9);
            }
        }
    }
    c(mono_ok && compared >= 30,
      fmt("rigorous outer encloses fast outer on the registry (%d rows)", compared));
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: acceptance <criterion 1-10>\n");
        return 1;
    }
    int num = std::atoi(argv[1]);
    static const char* names[11] = {
        nullptr,
        "ex1 reference enclosures and inner estimate",
        "strong-regularity constants across the registry",
        "ex3 right-preconditioned enclosure; left preconditioning fails",
        "solver soundness against sampled hulls",
        "direct method equals the exact hull on identity-midpoint systems",
        "preconditioning algebra properties",
        "block-rotation spectral-radius bounds",
        "double versus left preconditioning comparisons",
        "ensemble geometric-mean orderings",
        "arithmetic property suites and rounding-mode monotonicity",
    };
    static const double limits[11] = {0, 1.0, 1.0, 0, 120.0, 0, 0, 0, 0, 300.0, 0};
    if (num < 1 || num > 10) {
        std::fprintf(stderr, "unknown criterion %s\n", argv[1]);
        return 1;
    }

    Check c;
    auto t0 = std::chrono::steady_clock::now();
    switch (num) {
        case 1: crit1(c); break;
        case 2: crit2(c); break;
        case 3: crit3(c); break;
        case 4: crit4(c); break;
        case 5: crit5(c); break;
        case 6: crit6(c); break;
        case 7: crit7(c); break;
        case 8: crit8(c); break;
        case 9: crit9(c); break;
        case 10: crit10(c); break;
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (limits[num] > 0.0)
        c(secs < limits[num], fmt("runtime %.1f s under the %.0f s budget", secs, limits[num]));

    for (const std::string& b : c.bad) std::printf("  failed: %s\n", b.c_str());
    bool ok = c.bad.empty();
    std::printf("[%s] criterion %d: %s (%d checks, %.1f s)\n", ok ? "PASS" : "FAIL", num,
                names[num], c.total, secs);
    return ok ? 0 : 1;
}
