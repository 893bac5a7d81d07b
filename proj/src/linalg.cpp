#include "ipls/linalg.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace ipls::linalg {

namespace {

double inf_norm(const Mat& A) {
    if (A.size() == 0) return 0.0;
    return A.cwiseAbs().rowwise().sum().maxCoeff();
}

Eigen::PartialPivLU<Mat> checked_lu(const Mat& A) {
    if (A.rows() != A.cols()) throw DimensionMismatch("square matrix required");
    Eigen::PartialPivLU<Mat> lu(A);
    double tol = 1e-12 * inf_norm(A);
    if (A.size() == 0 || lu.matrixLU().diagonal().cwiseAbs().minCoeff() <= tol)
        throw SingularMatrix();
    return lu;
}

}  // namespace

Vec solve_linear(const Mat& A, const Vec& b) {
    if (A.rows() != b.size()) throw DimensionMismatch("solve dimensions");
    return checked_lu(A).solve(b);
}

Mat solve_linear(const Mat& A, const Mat& B) {
    if (A.rows() != B.rows()) throw DimensionMismatch("solve dimensions");
    return checked_lu(A).solve(B);
}

Mat inverse(const Mat& A) { return checked_lu(A).inverse(); }

std::pair<Mat, Mat> lu_no_pivot(const Mat& M) {
    if (M.rows() != M.cols()) throw DimensionMismatch("square matrix required");
    const Eigen::Index n = M.rows();
    const double tol = 1e-12 * inf_norm(M);
    Mat L = Mat::Identity(n, n);
    Mat U = M;
    for (Eigen::Index j = 0; j < n; ++j) {
        if (std::fabs(U(j, j)) <= tol) throw ZeroPivot(static_cast<int>(j));
        for (Eigen::Index i = j + 1; i < n; ++i) {
            L(i, j) = U(i, j) / U(j, j);
            U.row(i).tail(n - j) -= L(i, j) * U.row(j).tail(n - j);
            U(i, j) = 0.0;
        }
    }
    return {L, U};
}

std::pair<Mat, Mat> qr(const Mat& M) {
    if (M.rows() != M.cols()) throw DimensionMismatch("square matrix required");
    Eigen::HouseholderQR<Mat> f(M);
    Mat Q = f.householderQ() * Mat::Identity(M.rows(), M.cols());
    Mat R = f.matrixQR().triangularView<Eigen::Upper>();
    return {Q, R};
}

Svd svd(const Mat& M) {
    if (M.rows() != M.cols()) throw DimensionMismatch("square matrix required");
    Eigen::JacobiSVD<Mat> f(M, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return {f.matrixU(), f.singularValues(), f.matrixV()};
}

double spectral_radius_nonneg(const Mat& M) {
    if (M.rows() != M.cols()) throw DimensionMismatch("square matrix required");
    const Eigen::Index n = M.rows();
    if (n == 0) return 0.0;
    if (M.minCoeff() < 0.0) throw Error("spectral_radius_nonneg requires a nonnegative matrix");
    double top = M.maxCoeff();
    if (top == 0.0) return 0.0;

    // Positive diagonal shift removes periodic classes; rho(M + sI) = rho(M) + s.
    const double shift = 1e-3 * top;
    Mat S = M + shift * Mat::Identity(n, n);
    Vec x = Vec::Ones(n);
    const double tol = 1e-10;
    // The Collatz-Wielandt window only closes for irreducible matrices, whose
    // Perron vector is strictly positive. If any iterate component decays
    // toward zero the matrix is (numerically) reducible: stop early, the
    // bounds are no longer meaningful.
    const double floor = 1e-220;
    for (int it = 0; it < 20000; ++it) {
        Vec y = S * x;
        double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
        bool positive = true;
        for (Eigen::Index i = 0; i < n; ++i) {
            if (x[i] < floor) {
                positive = false;
                break;
            }
            double q = y[i] / x[i];
            lo = std::min(lo, q);
            hi = std::max(hi, q);
        }
        if (!positive) break;
        if (hi - lo <= tol * hi) return std::max(0.0, (hi + lo) / 2.0 - shift);
        double norm = y.maxCoeff();
        if (!(norm > 0.0) || !std::isfinite(norm)) break;
        x = y / norm;
    }
    Eigen::EigenSolver<Mat> es(M, false);
    if (es.info() != Eigen::Success) throw ConvergenceFailure("spectral radius");
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

Mat real_schur_vectors(const Mat& M) {
    if (M.rows() != M.cols()) throw DimensionMismatch("square matrix required");
    if (M.rows() == 1) return Mat::Identity(1, 1);
    Eigen::RealSchur<Mat> schur(M, true);
    if (schur.info() != Eigen::Success) throw ConvergenceFailure("real Schur factorization");
    return schur.matrixU();
}

}  // namespace ipls::linalg
