#pragma once

#include <cstdint>
#include <random>

namespace ipls {

// splitmix64 finalizer; used for seeding and stream derivation.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// Deterministic across platforms: mt19937_64 plus hand-rolled uniform mapping
// (the standard distributions are implementation-defined).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(mix64(seed)) {}

    std::uint64_t next() { return eng_(); }

    // in [0, 1)
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    double sign() { return (eng_() & 1ull) ? 1.0 : -1.0; }

    int index(int n) { return static_cast<int>(eng_() % static_cast<std::uint64_t>(n)); }

    // Independent child stream; deterministic in (seed, stream).
    static Rng child(std::uint64_t seed, std::uint64_t stream) {
        return Rng(mix64(seed) ^ mix64(stream + 0x632BE59BD9B4E019ull));
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace ipls
