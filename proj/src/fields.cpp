#include "sot/fields.hpp"

#include <algorithm>
#include <cmath>

#include "sot/errors.hpp"

namespace sot {

double thermal_sigma(const MaterialParams& mat, const MagnetGeometry& g, double dt) {
    if (mat.temperature <= 0.0) return 0.0;
    const double v = g.volume();
    const double num = mat.alpha / (1.0 + mat.alpha * mat.alpha) * 2.0 * kConst.k_b * mat.temperature;
    const double den = kConst.gamma * kConst.mu0 * mat.ms * v * dt;
    return std::sqrt(num / den);
}

Vec3 thermal_field(const MaterialParams& mat, const MagnetGeometry& g, double dt, RandomStream& rng) {
    const double sigma = thermal_sigma(mat, g, dt);
    if (sigma == 0.0) return {};
    return {sigma * rng.gaussian(), sigma * rng.gaussian(), sigma * rng.gaussian()};
}

double magnetic_energy(const Vec3& m, const MaterialParams& mat, const MagnetGeometry& g,
                       const DemagTensor& n) {
    const double shape = 0.5 * kConst.mu0 * mat.ms * mat.ms *
                         (n.nxx * m.x * m.x + n.nyy * m.y * m.y + n.nzz * m.z * m.z);
    return g.volume() * (mat.ku2 * (1.0 - m.z * m.z) + shape);
}

double energy_barrier(const MaterialParams& mat, const MagnetGeometry& g, const DemagTensor& n) {
    const double e_saddle = std::min(magnetic_energy({1, 0, 0}, mat, g, n),
                                     magnetic_energy({0, 1, 0}, mat, g, n));
    return e_saddle - magnetic_energy({0, 0, 1}, mat, g, n);
}

double calibrate_anisotropy(double target_kt, const MaterialParams& mat, const MagnetGeometry& g,
                            const DemagTensor& n) {
    if (target_kt < 0.0) throw CalibrationError("barrier target must be non-negative");
    if (mat.temperature <= 0.0) throw CalibrationError("barrier calibration needs temperature > 0");
    const double target_j = target_kt * kConst.k_b * mat.temperature;

    MaterialParams probe = mat;
    auto barrier_minus_target = [&](double ku2) {
        probe.ku2 = ku2;
        return energy_barrier(probe, g, n) - target_j;
    };

    // The barrier is linear and increasing in Ku2, so a secant step from any
    // bracket lands on the root; iterate to absorb rounding.
    double lo = 0.0;
    double f_lo = barrier_minus_target(lo);
    if (f_lo > 0.0)
        throw CalibrationError("shape anisotropy alone exceeds the barrier target; Ku2 would be <= 0");
    if (f_lo == 0.0) return 0.0;
    double hi = target_j / g.volume() + kConst.mu0 * mat.ms * mat.ms;
    double f_hi = barrier_minus_target(hi);
    while (f_hi < 0.0) {
        hi *= 2.0;
        f_hi = barrier_minus_target(hi);
    }
    double root = hi;
    for (int it = 0; it < 100; ++it) {
        root = lo - f_lo * (hi - lo) / (f_hi - f_lo);
        const double f = barrier_minus_target(root);
        if (std::abs(f) <= 1e-12 * target_j || hi - lo <= 1e-15 * hi) break;
        if (f < 0.0) {
            lo = root;
            f_lo = f;
        } else {
            hi = root;
            f_hi = f;
        }
    }
    if (!(root > 0.0)) throw CalibrationError("calibrated Ku2 is not positive");
    return root;
}

}  // namespace sot
