#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ipls/model.hpp"

namespace ipls {

enum class Sampler { Random, Vertices, Grid };

struct SampledHull {
    IntervalVector box;
    long samples_used = 0;
    long samples_skipped = 0;  // singular A(p) draws
    Sampler sampler = Sampler::Random;
    std::uint64_t seed = 0;
};

// Inner approximation of the solution hull from exact point solves.
SampledHull sample_hull(const ParametricSystem& sys, Sampler sampler, long count,
                        std::uint64_t seed);
SampledHull sample_hull(const AffineLinearSystem& sys, Sampler sampler, long count,
                        std::uint64_t seed);

struct EnsembleSpec {
    int n = 10;
    int K = 7;
    int rank = 1;
    Interval u{-0.5, 1.0};  // base range for the a-vectors
    Interval v{2.0, 2.5};   // base range for the b-vectors
    double spread = 0.3;    // per-k widening of both ranges
    enum class Variant { AB, AA } variant = Variant::AB;
    enum class Midpoint { Identity, RandomPM8 } midpoint = Midpoint::Identity;
    std::uint64_t seed = 1;
};

struct Ensemble {
    AffineLinearSystem system;
    std::vector<Vec> a;  // the rank-one directions, one per parameter
};

// A(p) = A0 + sum_k a^(k) (b^(k))^T p_k, p in [-1,1]^K; deterministic in seed.
Ensemble generate_rank_ensemble(const EnsembleSpec& spec);

struct RatioRow {
    std::string strategy;
    double geo_mean = 0.0;
    int used = 0;
};

struct RatioTable {
    std::vector<RatioRow> rows;
    int reps = 0;
    int skipped = 0;
};

// Geometric means of rho(A_delta)/rho(H_delta) over `reps` ensembles drawn
// from child seeds of spec.seed. Identity-midpoint specs rate s0..s3;
// random-midpoint specs rate lu/svd/qr and their +s0 combinations.
RatioTable ratio_statistics(const EnsembleSpec& spec, int reps,
                            const std::vector<std::string>& strategies);

}  // namespace ipls
