#pragma once

#include <utility>

#include "ipls/interval.hpp"

namespace ipls::linalg {

Vec solve_linear(const Mat& A, const Vec& b);
Mat solve_linear(const Mat& A, const Mat& B);
Mat inverse(const Mat& A);

// Doolittle factorization, no pivoting: M = L*U with unit lower-triangular L.
std::pair<Mat, Mat> lu_no_pivot(const Mat& M);

std::pair<Mat, Mat> qr(const Mat& M);

struct Svd {
    Mat U;
    Vec S;
    Mat V;
};
Svd svd(const Mat& M);

// Perron root of a componentwise nonnegative matrix. Power iteration with
// Collatz-Wielandt bounds on a diagonally shifted copy; falls back to a dense
// eigensolver when the bounds fail to close.
double spectral_radius_nonneg(const Mat& M);

// Orthogonal W with W^T * M * W quasi-upper-triangular.
Mat real_schur_vectors(const Mat& M);

}  // namespace ipls::linalg
