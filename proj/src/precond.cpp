#include "ipls/precond.hpp"

#include <cmath>
#include <limits>

#include "ipls/errors.hpp"
#include "ipls/linalg.hpp"
#include "ipls/parallel.hpp"
#include "ipls/rng.hpp"
#include "ipls/rounding.hpp"

namespace ipls {

namespace {

Mat midpoint_inverse(const Mat& C0) {
    try {
        return linalg::inverse(C0);
    } catch (const SingularMatrix&) {
        throw SingularMidpoint("midpoint matrix is singular");
    }
}

// u1 of a numerically rank-one matrix, or empty when rank > 1.
std::optional<Vec> rank_one_direction(const Mat& M) {
    linalg::Svd f = linalg::svd(M);
    const double s1 = f.S(0);
    if (s1 == 0.0) return std::nullopt;
    if (f.S.size() > 1 && f.S(1) > 1e-10 * s1) return std::nullopt;
    return Vec(f.U.col(0));
}

bool column_one(const Mat& M) {
    for (int j = 0; j < M.cols(); ++j) {
        int nz = 0;
        for (int i = 0; i < M.rows(); ++i)
            if (M(i, j) != 0.0 && ++nz > 1) return false;
    }
    return true;
}

bool row_one(const Mat& M) { return column_one(Mat(M.transpose())); }

Mat schur_candidate(const IntervalAffineSystem& sys, const Vec& eps) {
    Mat M = sys.C0;
    for (int k = 0; k < sys.K(); ++k) M += eps(k) * sys.Ck[static_cast<std::size_t>(k)];
    return linalg::real_schur_vectors(M);
}

Preconditioner best_schur(const IntervalAffineSystem& sys, const BuildOptions& opts,
                          bool vertices) {
    const int K = sys.K();
    const int count = opts.candidates;
    std::vector<double> rhos(static_cast<std::size_t>(count),
                             std::numeric_limits<double>::infinity());
    std::vector<Mat> ws(static_cast<std::size_t>(count));
    parallel_for(0, count, [&](int c) {
        Rng rng = Rng::child(opts.seed, static_cast<std::uint64_t>(c));
        Vec eps(K);
        for (int k = 0; k < K; ++k) eps(k) = vertices ? rng.sign() : rng.uniform(-1.0, 1.0);
        try {
            Mat W = schur_candidate(sys, eps);
            Preconditioner pc{Strategy::Custom, Mat(W.transpose()), W};
            rhos[static_cast<std::size_t>(c)] = strong_regularity(pc, sys).rho;
            ws[static_cast<std::size_t>(c)] = std::move(W);
        } catch (const Error&) {
            // leave candidate disabled
        }
    });
    int best = -1;
    for (int c = 0; c < count; ++c)
        if (best < 0 || rhos[static_cast<std::size_t>(c)] < rhos[static_cast<std::size_t>(best)])
            best = c;
    if (best < 0 || !std::isfinite(rhos[static_cast<std::size_t>(best)]))
        throw ConvergenceFailure("no usable candidate basis found");
    Mat W = ws[static_cast<std::size_t>(best)];
    return Preconditioner{vertices ? Strategy::S3 : Strategy::S2, Mat(W.transpose()), W};
}

// Rounding slop for a chained product |L|*|M|*|R| of doubles.
Mat triple_slop(const Mat& L, const Mat& M, const Mat& R) {
    const double eps = std::numeric_limits<double>::epsilon();
    const double f = 4.0 * static_cast<double>(L.rows()) * eps;
    return f * (L.cwiseAbs() * (M.cwiseAbs() * R.cwiseAbs()));
}

Vec matvec_slop(const Mat& L, const Vec& v) {
    const double eps = std::numeric_limits<double>::epsilon();
    const double f = 2.0 * static_cast<double>(L.rows()) * eps;
    return f * (L.cwiseAbs() * v.cwiseAbs());
}

}  // namespace

std::string strategy_name(Strategy s) {
    switch (s) {
        case Strategy::Left: return "left";
        case Strategy::Right: return "right";
        case Strategy::DoubleLU: return "lu";
        case Strategy::DoubleSVD: return "svd";
        case Strategy::DoubleQR: return "qr";
        case Strategy::S0: return "s0";
        case Strategy::S1: return "s1";
        case Strategy::S2: return "s2";
        case Strategy::S3: return "s3";
        case Strategy::Custom: return "custom";
    }
    return "unknown";
}

Strategy parse_strategy(const std::string& name) {
    if (name == "left") return Strategy::Left;
    if (name == "right") return Strategy::Right;
    if (name == "lu") return Strategy::DoubleLU;
    if (name == "svd") return Strategy::DoubleSVD;
    if (name == "qr") return Strategy::DoubleQR;
    if (name == "s0") return Strategy::S0;
    if (name == "s1") return Strategy::S1;
    if (name == "s2") return Strategy::S2;
    if (name == "s3") return Strategy::S3;
    throw UsageError("unknown preconditioning strategy: " + name);
}

Preconditioner build(Strategy s, const IntervalAffineSystem& sys, const BuildOptions& opts) {
    const int n = sys.n();
    switch (s) {
        case Strategy::Left:
            return Preconditioner{s, midpoint_inverse(sys.C0), Mat::Identity(n, n)};
        case Strategy::Right:
            return Preconditioner{s, Mat::Identity(n, n), midpoint_inverse(sys.C0)};
        case Strategy::DoubleLU: {
            Mat inv = midpoint_inverse(sys.C0);
            auto [Lu, Uu] = linalg::lu_no_pivot(inv);
            return Preconditioner{s, Uu, Lu};
        }
        case Strategy::DoubleSVD: {
            Mat inv = midpoint_inverse(sys.C0);
            linalg::Svd f = linalg::svd(inv);
            return Preconditioner{s, Mat(f.V.transpose()), Mat(f.U * f.S.asDiagonal())};
        }
        case Strategy::DoubleQR: {
            Mat inv = midpoint_inverse(sys.C0);
            auto [Q, Ru] = linalg::qr(inv);
            return Preconditioner{s, Ru, Q};
        }
        case Strategy::S0: {
            std::vector<Vec> cols;
            for (const Mat& Ck : sys.Ck) {
                if (Ck.isZero(0.0)) continue;
                std::optional<Vec> a = rank_one_direction(Ck);
                if (!a) throw Error("S0 requires rank-one coefficient matrices");
                cols.push_back(*a);
            }
            Mat columns(n, static_cast<int>(cols.size()));
            for (int j = 0; j < columns.cols(); ++j) columns.col(j) = cols[static_cast<std::size_t>(j)];
            return build_s0(columns, n);
        }
        case Strategy::S1: {
            int kbest = 0;
            double nbest = -1.0;
            for (int k = 0; k < sys.K(); ++k) {
                double nk = sys.Ck[static_cast<std::size_t>(k)].norm();
                if (nk > nbest) {
                    nbest = nk;
                    kbest = k;
                }
            }
            if (sys.K() == 0) return Preconditioner{s, Mat::Identity(n, n), Mat::Identity(n, n)};
            Mat W = linalg::real_schur_vectors(sys.Ck[static_cast<std::size_t>(kbest)]);
            return Preconditioner{s, Mat(W.transpose()), W};
        }
        case Strategy::S2:
            return best_schur(sys, opts, false);
        case Strategy::S3:
            return best_schur(sys, opts, true);
        case Strategy::Custom:
            throw UsageError("custom preconditioners are created with build_custom");
    }
    throw Error("unreachable strategy");
}

Preconditioner build(Strategy s, const AffineLinearSystem& sys, const BuildOptions& opts) {
    return build(s, to_interval_affine(sys), opts);
}

Preconditioner build_s0(const Mat& columns, int n) {
    const int K = static_cast<int>(columns.cols());
    if (K > n) throw DependentColumns("more direction vectors than dimensions");
    if (K > 0) {
        Eigen::ColPivHouseholderQR<Mat> qr(columns);
        qr.setThreshold(1e-10);
        if (qr.rank() < K) throw DependentColumns("direction vectors are linearly dependent");
    }

    Mat M(n, n);
    int m = K;
    if (K > 0) M.leftCols(K) = columns;
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    while (m < n) {
        // Pick the canonical unit vector with the largest orthogonal residual
        // against the columns selected so far (the next pivot it would add).
        Mat Q;
        if (m > 0) {
            Eigen::HouseholderQR<Mat> qr(M.leftCols(m));
            Q = qr.householderQ() * Mat::Identity(n, m);
        }
        int pick = -1;
        double best = -1.0;
        for (int i = 0; i < n; ++i) {
            if (used[static_cast<std::size_t>(i)]) continue;
            double proj = m > 0 ? Q.row(i).squaredNorm() : 0.0;
            double resid = std::sqrt(std::max(0.0, 1.0 - proj));
            if (resid > best + 1e-15) {
                best = resid;
                pick = i;
            }
        }
        if (pick < 0 || best <= 1e-12)
            throw DependentColumns("cannot extend direction vectors to a basis");
        M.col(m) = Vec::Unit(n, pick);
        used[static_cast<std::size_t>(pick)] = true;
        ++m;
    }
    Mat Minv;
    try {
        Minv = linalg::inverse(M);
    } catch (const SingularMatrix&) {
        throw DependentColumns("direction matrix is numerically singular");
    }
    return Preconditioner{Strategy::S0, Minv, M};
}

Preconditioner build_custom(const Mat& L, const Mat& R) {
    if (L.rows() != L.cols() || R.rows() != R.cols() || L.rows() != R.rows())
        throw DimensionMismatch("custom preconditioner matrices must be square and equal size");
    return Preconditioner{Strategy::Custom, L, R};
}

IntervalAffineSystem apply(const Preconditioner& pc, const IntervalAffineSystem& sys,
                           Order order) {
    const int n = sys.n();
    const int K = sys.K();
    if (pc.L.rows() != n || pc.R.rows() != n)
        throw DimensionMismatch("preconditioner size does not match system");

    bool relax = false;
    if (order == Order::RelaxFirst) {
        relax = true;
    } else if (order == Order::Auto) {
        const bool l_ident = pc.L.isIdentity(0.0);
        const bool r_ident = pc.R.isIdentity(0.0);
        if (r_ident || l_ident) {
            relax = true;
            for (const Mat& Ck : sys.Ck) {
                if (!(r_ident ? column_one(Ck) : row_one(Ck))) {
                    relax = false;
                    break;
                }
            }
        }
    }

    const bool rig = rounding::rigorous();
    IntervalAffineSystem out;
    out.C0 = pc.L * sys.C0 * pc.R;
    out.Cr = pc.L.cwiseAbs() * sys.Cr * pc.R.cwiseAbs();
    if (rig) out.Cr += triple_slop(pc.L, sys.C0, pc.R) + triple_slop(pc.L, sys.Cr, pc.R);

    if (relax) {
        Mat D = Mat::Zero(n, n);
        for (const Mat& Ck : sys.Ck) D += Ck.cwiseAbs();
        out.Cr += pc.L.cwiseAbs() * D * pc.R.cwiseAbs();
        if (rig) out.Cr += triple_slop(pc.L, D, pc.R);
        out.Ck.assign(static_cast<std::size_t>(K), Mat::Zero(n, n));
    } else {
        out.Ck.reserve(static_cast<std::size_t>(K));
        for (const Mat& Ck : sys.Ck) {
            out.Ck.push_back(pc.L * Ck * pc.R);
            if (rig) out.Cr += triple_slop(pc.L, Ck, pc.R);
        }
    }

    out.c0 = pc.L * sys.c0;
    out.cr = pc.L.cwiseAbs() * sys.cr;
    if (rig) out.cr += matvec_slop(pc.L, sys.c0) + matvec_slop(pc.L, sys.cr);
    out.ck.reserve(static_cast<std::size_t>(K));
    for (const Vec& ck : sys.ck) {
        out.ck.push_back(pc.L * ck);
        if (rig) out.cr += matvec_slop(pc.L, ck);
    }
    return out;
}

Mat radius_matrix(const Preconditioner& pc, const IntervalAffineSystem& sys) {
    const int n = sys.n();
    if (pc.L.rows() != n || pc.R.rows() != n)
        throw DimensionMismatch("preconditioner size does not match system");
    Mat H = pc.L.cwiseAbs() * sys.Cr * pc.R.cwiseAbs();
    for (const Mat& Ck : sys.Ck) H += (pc.L * Ck * pc.R).cwiseAbs();
    if (rounding::rigorous()) {
        H += triple_slop(pc.L, sys.Cr, pc.R);
        for (const Mat& Ck : sys.Ck) H += triple_slop(pc.L, Ck, pc.R);
    }
    return H;
}

RegularityReport strong_regularity(const Preconditioner& pc, const IntervalAffineSystem& sys) {
    const int n = sys.n();
    Mat H = radius_matrix(pc, sys);
    Mat H0 = pc.L * sys.C0 * pc.R;
    H += (Mat::Identity(n, n) - H0).cwiseAbs();
    if (rounding::rigorous()) H += triple_slop(pc.L, sys.C0, pc.R);
    RegularityReport rep;
    rep.strategy = pc.strategy;
    rep.Hdelta = H;
    rep.rho = linalg::spectral_radius_nonneg(H);
    rep.strongly_regular = rep.rho < 1.0;
    return rep;
}

}  // namespace ipls
