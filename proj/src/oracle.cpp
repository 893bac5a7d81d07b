#include "ipls/oracle.hpp"

#include <cmath>
#include <functional>
#include <optional>

#include "ipls/errors.hpp"
#include "ipls/linalg.hpp"
#include "ipls/parallel.hpp"
#include "ipls/precond.hpp"
#include "ipls/rng.hpp"

namespace ipls {

namespace {

using PointEval = std::function<void(const Vec& p, Mat& A, Vec& b)>;

Vec point_for_index(const IntervalVector& p, Sampler sampler, long index, long grid_m,
                    std::uint64_t seed, bool random_corners) {
    const int K = static_cast<int>(p.size());
    Vec out(K);
    switch (sampler) {
        case Sampler::Random: {
            Rng rng = Rng::child(seed, static_cast<std::uint64_t>(index));
            for (int k = 0; k < K; ++k)
                out(k) = rng.uniform(p[static_cast<std::size_t>(k)].lo(),
                                     p[static_cast<std::size_t>(k)].hi());
            return out;
        }
        case Sampler::Vertices: {
            if (random_corners) {
                Rng rng = Rng::child(seed, static_cast<std::uint64_t>(index));
                for (int k = 0; k < K; ++k)
                    out(k) = (rng.next() & 1ull) ? p[static_cast<std::size_t>(k)].hi()
                                                 : p[static_cast<std::size_t>(k)].lo();
            } else {
                for (int k = 0; k < K; ++k)
                    out(k) = (static_cast<unsigned long>(index) >> k) & 1ul
                                 ? p[static_cast<std::size_t>(k)].hi()
                                 : p[static_cast<std::size_t>(k)].lo();
            }
            return out;
        }
        case Sampler::Grid: {
            long rest = index;
            for (int k = 0; k < K; ++k) {
                long cell = rest % grid_m;
                rest /= grid_m;
                const Interval& iv = p[static_cast<std::size_t>(k)];
                double t = grid_m == 1 ? 0.5
                                       : static_cast<double>(cell) /
                                             static_cast<double>(grid_m - 1);
                out(k) = iv.lo() + t * (iv.hi() - iv.lo());
            }
            return out;
        }
    }
    return out;
}

SampledHull hull_core(const IntervalVector& p, int n, const PointEval& eval, Sampler sampler,
                      long count, std::uint64_t seed) {
    const int K = static_cast<int>(p.size());
    long total = count;
    long grid_m = 0;
    bool random_corners = false;
    if (sampler == Sampler::Vertices) {
        if (K <= 20) {
            total = 1l << K;
        } else {
            random_corners = true;
            total = count;
        }
    } else if (sampler == Sampler::Grid) {
        if (K > 20) throw UsageError("grid sampler is limited to 20 parameters");
        grid_m = std::max<long>(2, static_cast<long>(std::floor(
                                       std::pow(static_cast<double>(count),
                                                1.0 / std::max(1, K)))));
        auto pow_total = [&](long m) {
            double t = 1.0;
            for (int k = 0; k < K; ++k) t *= static_cast<double>(m);
            return t;
        };
        while (grid_m > 2 && pow_total(grid_m) > 4.0e6) --grid_m;
        if (pow_total(grid_m) > 4.0e6) throw UsageError("grid sampler too large");
        total = 1;
        for (int k = 0; k < K; ++k) total *= grid_m;
    }
    if (K == 0) total = 1;

    SampledHull res;
    res.sampler = sampler;
    res.seed = seed;

    const long block = 1l << 14;
    std::vector<std::optional<Vec>> sol(static_cast<std::size_t>(std::min(total, block)));
    Vec lo = Vec::Constant(n, std::numeric_limits<double>::infinity());
    Vec hi = Vec::Constant(n, -std::numeric_limits<double>::infinity());
    for (long base = 0; base < total; base += block) {
        const long m = std::min(block, total - base);
        parallel_for(0, static_cast<int>(m), [&](int i) {
            Vec pt = point_for_index(p, sampler, base + i, grid_m, seed, random_corners);
            Mat A(n, n);
            Vec b(n);
            eval(pt, A, b);
            try {
                sol[static_cast<std::size_t>(i)] = linalg::solve_linear(A, b);
            } catch (const SingularMatrix&) {
                sol[static_cast<std::size_t>(i)].reset();
            }
        });
        for (long i = 0; i < m; ++i) {
            auto& s = sol[static_cast<std::size_t>(i)];
            if (!s) {
                ++res.samples_skipped;
                continue;
            }
            ++res.samples_used;
            lo = lo.cwiseMin(*s);
            hi = hi.cwiseMax(*s);
            s.reset();
        }
    }
    if (res.samples_used == 0) throw AllSamplesSingular("every sampled matrix was singular");
    for (int i = 0; i < n; ++i) res.box.emplace_back(lo(i), hi(i));
    return res;
}

}  // namespace

SampledHull sample_hull(const ParametricSystem& sys, Sampler sampler, long count,
                        std::uint64_t seed) {
    return hull_core(
        sys.p, sys.n,
        [&](const Vec& pt, Mat& A, Vec& b) {
            A = eval_matrix(sys, pt);
            b = eval_rhs(sys, pt);
        },
        sampler, count, seed);
}

SampledHull sample_hull(const AffineLinearSystem& sys, Sampler sampler, long count,
                        std::uint64_t seed) {
    return hull_core(
        sys.p, sys.n(),
        [&](const Vec& pt, Mat& A, Vec& b) {
            A = sys.A0;
            b = sys.b0;
            for (int k = 0; k < sys.K(); ++k) {
                A += pt(k) * sys.Ak[static_cast<std::size_t>(k)];
                b += pt(k) * sys.bk[static_cast<std::size_t>(k)];
            }
        },
        sampler, count, seed);
}

Ensemble generate_rank_ensemble(const EnsembleSpec& spec) {
    const int n = spec.n;
    const int K = spec.K;
    Rng rng(spec.seed);
    Ensemble out;
    out.system.Ak.reserve(static_cast<std::size_t>(K));

    for (int k = 1; k <= K; ++k) {
        const double alo = spec.u.lo() - spec.spread * k;
        const double ahi = spec.u.hi() + spec.spread * k;
        const double blo = spec.v.lo() - spec.spread * k;
        const double bhi = spec.v.hi() + spec.spread * k;
        Mat Ak = Mat::Zero(n, n);
        Vec first;
        for (int t = 0; t < spec.rank; ++t) {
            Vec a(n), b(n);
            for (int i = 0; i < n; ++i) a(i) = rng.uniform(alo, ahi);
            if (spec.variant == EnsembleSpec::Variant::AB)
                for (int i = 0; i < n; ++i) b(i) = rng.uniform(blo, bhi);
            else
                b = a;
            Ak += a * b.transpose();
            if (t == 0) first = a;
        }
        out.system.Ak.push_back(Ak);
        out.a.push_back(first);
    }

    if (spec.midpoint == EnsembleSpec::Midpoint::Identity) {
        out.system.A0 = Mat::Identity(n, n);
    } else {
        Mat A0(n, n);
        for (int tries = 0;; ++tries) {
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) A0(i, j) = rng.uniform(-8.0, 8.0);
            if (std::abs(A0.determinant()) >= 1e-6) break;
            if (tries > 200) throw AllSamplesSingular("cannot draw a nonsingular midpoint");
        }
        out.system.A0 = A0;
    }

    out.system.b0 = Vec::Ones(n);
    out.system.bk.assign(static_cast<std::size_t>(K), Vec::Zero(n));
    out.system.p.assign(static_cast<std::size_t>(K), Interval(-1.0, 1.0));
    return out;
}

RatioTable ratio_statistics(const EnsembleSpec& spec, int reps,
                            const std::vector<std::string>& strategies) {
    const std::size_t S = strategies.size();
    std::vector<std::vector<double>> ratios(
        static_cast<std::size_t>(reps), std::vector<double>(S, std::numeric_limits<double>::quiet_NaN()));
    std::vector<char> rep_failed(static_cast<std::size_t>(reps), 0);

    parallel_for(0, reps, [&](int rep) {
        EnsembleSpec local = spec;
        local.seed = mix64(spec.seed) ^ mix64(static_cast<std::uint64_t>(rep) + 0x9E3779B9ull);
        Ensemble ens;
        try {
            ens = generate_rank_ensemble(local);
        } catch (const Error&) {
            rep_failed[static_cast<std::size_t>(rep)] = 1;
            return;
        }
        IntervalAffineSystem sysI = to_interval_affine(ens.system);
        Mat AD = sysI.Cr;
        for (const Mat& Ck : sysI.Ck) AD += Ck.cwiseAbs();
        double rA = linalg::spectral_radius_nonneg(AD);
        if (!(rA > 0.0) || !std::isfinite(rA)) {
            rep_failed[static_cast<std::size_t>(rep)] = 1;
            return;
        }
        for (std::size_t s = 0; s < S; ++s) {
            const std::string& label = strategies[s];
            try {
                double den;
                auto plus = label.find("+s0");
                BuildOptions bo;
                bo.seed = mix64(local.seed) ^ mix64(7700 + s);
                if (plus != std::string::npos) {
                    Strategy base = parse_strategy(label.substr(0, plus));
                    Preconditioner pc1 = build(base, sysI, bo);
                    IntervalAffineSystem H = apply(pc1, sysI, Order::FactorFirst);
                    Preconditioner pc2 = build(Strategy::S0, H, bo);
                    den = linalg::spectral_radius_nonneg(radius_matrix(pc2, H));
                } else {
                    Preconditioner pc = build(parse_strategy(label), sysI, bo);
                    den = linalg::spectral_radius_nonneg(radius_matrix(pc, sysI));
                }
                if (den > 0.0 && std::isfinite(den))
                    ratios[static_cast<std::size_t>(rep)][s] = rA / den;
            } catch (const Error&) {
                // leave NaN: this strategy is skipped for the rep
            }
        }
    });

    RatioTable table;
    table.reps = reps;
    for (int rep = 0; rep < reps; ++rep)
        if (rep_failed[static_cast<std::size_t>(rep)]) ++table.skipped;
    for (std::size_t s = 0; s < S; ++s) {
        double log_sum = 0.0;
        int used = 0;
        for (int rep = 0; rep < reps; ++rep) {
            double r = ratios[static_cast<std::size_t>(rep)][s];
            if (std::isfinite(r) && r > 0.0) {
                log_sum += std::log(r);
                ++used;
            }
        }
        RatioRow row;
        row.strategy = strategies[s];
        row.used = used;
        row.geo_mean = used > 0 ? std::exp(log_sum / used) : 0.0;
        table.rows.push_back(row);
    }
    return table;
}

}  // namespace ipls
