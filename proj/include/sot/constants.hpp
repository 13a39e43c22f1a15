#pragma once

namespace sot {

// CODATA 2018 exact/recommended values, SI units.
struct PhysicalConstants {
    double mu0 = 1.25663706212e-6;     // vacuum permeability [T*m/A]
    double mu_b = 9.2740100783e-24;    // Bohr magneton [A*m^2]
    double k_b = 1.380649e-23;         // Boltzmann constant [J/K]
    double hbar = 1.054571817e-34;     // reduced Planck constant [J*s]
    double q_e = 1.602176634e-19;      // elementary charge [C]
    double g_e = 2.00231930436256;     // free-electron g-factor

    // Electron gyromagnetic ratio times mu0: g_e*mu_b*mu0/hbar = 2.2128e5 m/(A*s).
    // Fields are expressed in A/m, so gamma*H has units 1/s.
    double gamma = g_e * mu_b * mu0 / hbar;
};

inline constexpr PhysicalConstants kConst{};

}  // namespace sot
