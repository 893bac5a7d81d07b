#include "ipls/rounding.hpp"

namespace ipls::rounding {

namespace {
std::atomic<Mode> g_mode{Mode::Fast};
}

Mode mode() noexcept { return g_mode.load(std::memory_order_relaxed); }

void set_mode(Mode m) noexcept { g_mode.store(m, std::memory_order_relaxed); }

}  // namespace ipls::rounding
