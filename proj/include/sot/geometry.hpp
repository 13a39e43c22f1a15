#pragma once

#include <numbers>

#include "sot/constants.hpp"
#include "sot/vec3.hpp"

namespace sot {

// Free layer: elliptic cylinder, semi-axes a (x) and b (y), thickness t (z).
struct MagnetGeometry {
    double semi_axis_a = 20e-9;  // [m]
    double semi_axis_b = 20e-9;  // [m]
    double thickness = 1.5e-9;   // [m]

    double volume() const { return std::numbers::pi * semi_axis_a * semi_axis_b * thickness; }
    double junction_area() const { return std::numbers::pi * semi_axis_a * semi_axis_b; }

    void validate() const;  // throws std::invalid_argument on non-positive dimensions
};

struct MaterialParams {
    double ms = 1e6;       // saturation magnetization [A/m]
    double alpha = 0.0122; // Gilbert damping, dimensionless
    double ku2 = 0.0;      // second-order uniaxial anisotropy along z [J/m^3]
    double temperature = 300.0;  // [K]

    // Number of Bohr magnetons in the free layer, N_s = Ms*V/mu_b.
    double spin_count(const MagnetGeometry& g) const { return ms * g.volume() / kConst.mu_b; }

    void validate() const;
};

// Magnetometric (volume-averaged) demagnetization factors of the uniformly
// magnetized cylinder, diagonal in the principal frame. nxx+nyy+nzz = 1.
struct DemagTensor {
    double nxx = 0.0;
    double nyy = 0.0;
    double nzz = 0.0;
};

// Quadrature effort for demag_factors. Fast keeps the tensor identities
// (trace, bounds, symmetry) exact but relaxes absolute accuracy to ~1e-5.
enum class DemagAccuracy { High, Fast };

DemagTensor demag_factors(const MagnetGeometry& g, DemagAccuracy acc = DemagAccuracy::High);

}  // namespace sot
