#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace sot {

// splitmix64 finalizer, decorrelates structured seed inputs.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Seed for one Monte Carlo trial. Stable across runs and thread counts; the
// (master, point, trial) -> seed map is part of the reproducibility contract,
// so changing it invalidates recorded sweeps.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t point, std::uint64_t trial) {
    std::uint64_t h = mix64(master);
    h = mix64(h ^ mix64(point + 0x632be59bd9b4e019ULL));
    h = mix64(h ^ mix64(trial + 0x9e6c63d0876a9a47ULL));
    return h;
}

// Per-trial random stream: mt19937_64 plus Box-Muller with a cached spare.
class RandomStream {
  public:
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

    // [0, 1)
    double uniform() { return (engine_() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform() < p; }

    // Standard normal draw.
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = 1.0 - (engine_() >> 11) * 0x1.0p-53;  // (0, 1], log-safe
        const double u2 = (engine_() >> 11) * 0x1.0p-53;
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    std::uint64_t raw() { return engine_(); }

  private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace sot
