#pragma once

#include "sot/geometry.hpp"
#include "sot/llg.hpp"
#include "sot/rng.hpp"
#include "sot/vec3.hpp"

namespace sot {

struct HeavyMetalParams {
    double length = 40e-9;      // along x, the charge current direction [m]
    double width = 40e-9;       // along y [m]
    double thickness = 2e-9;    // along z [m]
    double resistivity = 2e-6;  // [Ohm*m]
    double theta_sh = 0.3;      // spin Hall angle

    double cross_section() const { return width * thickness; }
    void validate() const;
};

struct MtjParams {
    double r_p = 8e3;           // parallel-state resistance [Ohm]
    double tmr = 1.0;           // (R_AP - R_P) / R_P
    double polarization = 0.5;  // spin polarization of the write path

    double r_ap() const { return r_p * (1.0 + tmr); }
};

double hm_resistance(const HeavyMetalParams& hm);

// Charge-to-spin gain of the spin Hall channel, beta = theta_SH * A_MTJ / A_HM.
double spin_injection_ratio(const HeavyMetalParams& hm, const MagnetGeometry& g);

struct SpinCurrent {
    double magnitude = 0;  // [A], >= 0
    Vec3 direction;        // unit polarization

    Vec3 vector() const { return direction * magnitude; }
};

// Spin Hall current injected by the clock charge current (along x): polarized
// along +-y with the sign of the charge current, magnitude beta * |I|.
SpinCurrent she_spin_current(double i_clock, const HeavyMetalParams& hm, const MagnetGeometry& g);

// Spin current of the vertical write path through the MTJ. Positive write
// current favors the antiparallel state: polarization -sign(I) * z_hat,
// magnitude P * |I|.
SpinCurrent mtj_spin_current(double i_write, const MtjParams& mtj);

struct PulseSchedule {
    double i_clock = 85e-6;  // [A]
    double t_clock = 2e-9;   // [s]
    double i_write = 0.0;    // [A]
    double t_write = 1e-9;   // [s]
    double gap = 0.0;        // idle time between clock and write [s]
    double relax = 3e-9;     // free relaxation after the write pulse [s]
};

// Free-layer state relative to the fixed +z pinned layer. AntiParallel is
// logic 1 throughout.
enum class NeuronState { Parallel, AntiParallel };

inline NeuronState state_from_mz(double mz) {
    return mz < 0.0 ? NeuronState::AntiParallel : NeuronState::Parallel;
}

struct DeviceParams {
    MagnetGeometry geometry;
    MaterialParams material;
    DemagTensor demag;  // must correspond to geometry
    HeavyMetalParams hm;
    MtjParams mtj;
    Vec3 h_applied;  // external bias field [A/m]

    // 40 nm circular stack with the barrier calibrated to 31.44 kT at 300 K.
    static DeviceParams defaults();
};

struct SwitchOutcome {
    NeuronState state = NeuronState::Parallel;
    Vec3 m_final;
    double abs_my_clock_end = 0;  // |m_y| when the clock pulse ends
    double max_prenorm_error = 0;
    long steps = 0;
};

// Two-step protocol: clock pulse (hard-axis alignment), optional gap, write
// pulse (easy-axis tilt), free relaxation. Pulse edges are ideal; durations
// are quantized to whole integrator steps.
SwitchOutcome simulate_two_step(const DeviceParams& dev, const PulseSchedule& pulse,
                                const IntegratorConfig& cfg, const Vec3& m_initial,
                                RandomStream& rng, TrajectoryRecorder* rec = nullptr);

// Thermalized trial start: +z or -z pole with equal probability.
inline Vec3 random_pole(RandomStream& rng) {
    return rng.uniform() < 0.5 ? Vec3{0, 0, 1} : Vec3{0, 0, -1};
}

struct ClockPower {
    double power = 0;   // [W]
    double energy = 0;  // [J]
};

// Joule dissipation of the clock current in the heavy metal channel.
ClockPower clock_power(const PulseSchedule& pulse, const HeavyMetalParams& hm);

// Read circuit: divider of the neuron MTJ against an antiparallel reference,
// followed by an inverting buffer. AntiParallel reads as v_dd (logic 1),
// Parallel as 0; the divider midpoint counts as logic 1.
double read_voltage(NeuronState state, const MtjParams& mtj, double v_dd);

}  // namespace sot
