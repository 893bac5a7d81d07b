#pragma once

#include <cstdint>
#include <string>

#include "ipls/model.hpp"

namespace ipls {

enum class Strategy { Left, Right, DoubleLU, DoubleSVD, DoubleQR, S0, S1, S2, S3, Custom };

std::string strategy_name(Strategy s);
Strategy parse_strategy(const std::string& name);

struct Preconditioner {
    Strategy strategy = Strategy::Left;
    Mat L, R;
};

struct BuildOptions {
    std::uint64_t seed = 1;
    int candidates = 1000;  // S2/S3 search budget
};

// Invariant for the midpoint-factorizing strategies: R*L recomposes C0^-1 to
// 1e-8 relative in the inf-norm.
Preconditioner build(Strategy s, const IntervalAffineSystem& sys, const BuildOptions& opts = {});
Preconditioner build(Strategy s, const AffineLinearSystem& sys, const BuildOptions& opts = {});

// Similarity preconditioner (M^-1, M) with M = [a_1 ... a_K | extension].
Preconditioner build_s0(const Mat& columns, int n);

Preconditioner build_custom(const Mat& L, const Mat& R);

enum class Order { FactorFirst, RelaxFirst, Auto };

// Transformed system; the right-hand side is multiplied by L only, so for a
// nontrivial R the unknown becomes y with x = R*y.
IntervalAffineSystem apply(const Preconditioner& pc, const IntervalAffineSystem& sys,
                           Order order = Order::Auto);

// sum_k |L*Ck*R| + |L|*Cr*|R|
Mat radius_matrix(const Preconditioner& pc, const IntervalAffineSystem& sys);

struct RegularityReport {
    Strategy strategy = Strategy::Left;
    double rho = 0.0;
    bool strongly_regular = false;
    Mat Hdelta;  // radius matrix plus the midpoint defect |I - L*C0*R|
};

RegularityReport strong_regularity(const Preconditioner& pc, const IntervalAffineSystem& sys);

}  // namespace ipls
