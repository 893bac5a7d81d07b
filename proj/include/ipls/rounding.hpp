#pragma once

#include <atomic>
#include <cmath>
#include <limits>

namespace ipls::rounding {

enum class Mode { Fast, Rigorous };

Mode mode() noexcept;
void set_mode(Mode m) noexcept;

// RAII override, used by tests and by the CLI's --rounding flag.
class ScopedMode {
  public:
    explicit ScopedMode(Mode m) : prev_(mode()) { set_mode(m); }
    ~ScopedMode() { set_mode(prev_); }
    ScopedMode(const ScopedMode&) = delete;
    ScopedMode& operator=(const ScopedMode&) = delete;

  private:
    Mode prev_;
};

inline bool rigorous() noexcept { return mode() == Mode::Rigorous; }

// One-ulp outward nudges; identity in fast mode.
inline double next_down(double x) noexcept {
    return rigorous() ? std::nextafter(x, -std::numeric_limits<double>::infinity()) : x;
}

inline double next_up(double x) noexcept {
    return rigorous() ? std::nextafter(x, std::numeric_limits<double>::infinity()) : x;
}

// Upper bound on the rounding error of a single operation that produced x.
inline double ulp_of(double x) noexcept {
    double a = std::fabs(x);
    return std::nextafter(a, std::numeric_limits<double>::infinity()) - a;
}

}  // namespace ipls::rounding
