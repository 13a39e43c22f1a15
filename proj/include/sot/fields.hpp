#pragma once

#include "sot/constants.hpp"
#include "sot/geometry.hpp"
#include "sot/rng.hpp"
#include "sot/vec3.hpp"

namespace sot {

// Demagnetizing field H_shape = -diag(N) * Ms * m. [A/m]
inline Vec3 shape_field(const Vec3& m, const DemagTensor& n, double ms) {
    return {-n.nxx * ms * m.x, -n.nyy * ms * m.y, -n.nzz * ms * m.z};
}

// Perpendicular uniaxial anisotropy field H_k = (2*Ku2/(mu0*Ms)) * mz * z_hat. [A/m]
inline Vec3 uniaxial_field(const Vec3& m, double ku2, double ms) {
    return {0.0, 0.0, 2.0 * ku2 / (kConst.mu0 * ms) * m.z};
}

// Per-component standard deviation of the thermal field realized over one
// step of length dt: sigma^2 = (alpha/(1+alpha^2)) * 2*kB*T / (gamma*mu0*Ms*V*dt). [A/m]
double thermal_sigma(const MaterialParams& mat, const MagnetGeometry& g, double dt);

// One thermal field realization. Held constant over the step it belongs to,
// both stages of a predictor-corrector step must see the same draw.
Vec3 thermal_field(const MaterialParams& mat, const MagnetGeometry& g, double dt, RandomStream& rng);

inline Vec3 effective_field(const Vec3& m, const MaterialParams& mat, const DemagTensor& n,
                            const Vec3& h_applied, const Vec3& h_thermal) {
    return shape_field(m, n, mat.ms) + uniaxial_field(m, mat.ku2, mat.ms) + h_applied + h_thermal;
}

// E(m) = V * [Ku2*(1 - mz^2) + (mu0/2)*Ms^2*(Nxx mx^2 + Nyy my^2 + Nzz mz^2)]. [J]
double magnetic_energy(const Vec3& m, const MaterialParams& mat, const MagnetGeometry& g,
                       const DemagTensor& n);

// Barrier between the +-z minima through the easier in-plane direction. [J]
// Meaningful once Ku2 is large enough that the poles are the minima.
double energy_barrier(const MaterialParams& mat, const MagnetGeometry& g, const DemagTensor& n);

// Ku2 [J/m^3] such that energy_barrier equals target_kt * kB * mat.temperature.
// Root-finds through the energy evaluator. Throws CalibrationError when the
// target is negative, temperature is zero, or the solution would be Ku2 <= 0.
double calibrate_anisotropy(double target_kt, const MaterialParams& mat, const MagnetGeometry& g,
                            const DemagTensor& n);

}  // namespace sot
