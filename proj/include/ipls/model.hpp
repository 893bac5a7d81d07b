#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ipls/expr.hpp"
#include "ipls/interval.hpp"

namespace ipls {

struct ExprEntry {
    ExprPtr expr;
    std::string src;
};

// A(p) x = b(p): entries are arbitrary expressions over the parameters.
struct ParametricSystem {
    int n = 0;
    int K = 0;
    std::vector<std::vector<ExprEntry>> A;  // n x n
    std::vector<ExprEntry> b;               // n
    IntervalVector p;                       // K parameter ranges
    std::vector<std::string> names;         // K parameter names
};

// (A0 + sum_k p_k A_k) x = b0 + sum_k p_k b_k, p in the given box.
struct AffineLinearSystem {
    Mat A0;
    std::vector<Mat> Ak;
    Vec b0;
    std::vector<Vec> bk;
    IntervalVector p;

    int n() const { return static_cast<int>(A0.rows()); }
    int K() const { return static_cast<int>(Ak.size()); }
};

// (C0 + sum_k eps_k C_k + [-Cr, Cr]) x = c0 + sum_k eps_k c_k + [-cr, cr],
// eps in [-1,1]^K.  Canonical form consumed by the solvers.
struct IntervalAffineSystem {
    Mat C0;
    std::vector<Mat> Ck;
    Mat Cr;
    Vec c0;
    std::vector<Vec> ck;
    Vec cr;

    int n() const { return static_cast<int>(C0.rows()); }
    int K() const { return static_cast<int>(Ck.size()); }
};

ParametricSystem parse_problem(const std::string& json_text);
ParametricSystem load_problem(const std::string& path);
std::string export_problem(const ParametricSystem& sys);

// Evaluate every entry over the parameter affine forms (Chebyshev products).
IntervalAffineSystem affine_transform(const ParametricSystem& sys);

// Exact structural extraction; empty when any entry has degree > 1.
std::optional<AffineLinearSystem> as_affine_linear(const ParametricSystem& sys);

IntervalAffineSystem to_interval_affine(const AffineLinearSystem& sys);

// Point evaluation A(p), b(p).
Mat eval_matrix(const ParametricSystem& sys, const Vec& p);
Vec eval_rhs(const ParametricSystem& sys, const Vec& p);

// Realification [[Re, -Im], [Im, Re]] with stacked right-hand side.
ParametricSystem complex_to_real(const std::vector<std::vector<ExprEntry>>& A_re,
                                 const std::vector<std::vector<ExprEntry>>& A_im,
                                 const std::vector<ExprEntry>& b_re,
                                 const std::vector<ExprEntry>& b_im,
                                 const IntervalVector& p,
                                 const std::vector<std::string>& names);

// Parameter k (1-based) touches at most one equation.
bool class_one(const AffineLinearSystem& sys, int k);

// Interval-Oettli-Prager membership test; requires every parameter class one.
bool class_one_membership(const AffineLinearSystem& sys, const Vec& x);

}  // namespace ipls
