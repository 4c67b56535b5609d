#pragma once

#include <cmath>
#include <cstdint>

namespace ubell {

// Counter-based generator in splitmix64 style. Each (seed, chunk) pair
// names an independent stream, so chunked sampling is deterministic no
// matter how the chunks are scheduled.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed, std::uint64_t chunk = 0)
        : base_(mix(seed) ^ mix(chunk ^ 0x5851f42d4c957f2dULL)) {}

    std::uint64_t next_u64() { return mix(base_ + (++counter_) * kGolden); }

    // uniform in [0, 1)
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // uniform in [lo, hi)
    double next_in(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

    // standard normal via Box-Muller; uses two draws per call
    double next_normal();

private:
    static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

    static std::uint64_t mix(std::uint64_t z) {
        z += kGolden;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t base_;
    std::uint64_t counter_ = 0;
};

inline double CounterRng::next_normal() {
    // u in (0,1] keeps the log finite
    const double u = (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
    const double v = next_unit();
    constexpr double kTwoPi = 6.283185307179586476925286766559;
    return std::sqrt(-2.0 * std::log(u)) * std::cos(kTwoPi * v);
}

}  // namespace ubell
