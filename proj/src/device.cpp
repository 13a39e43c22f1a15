#include "sot/device.hpp"

#include <cmath>
#include <stdexcept>

#include "sot/errors.hpp"

namespace sot {

void HeavyMetalParams::validate() const {
    if (!(length > 0.0) || !(width > 0.0) || !(thickness > 0.0))
        throw std::invalid_argument("heavy metal: all dimensions must be positive");
    if (!(resistivity > 0.0)) throw std::invalid_argument("heavy metal: resistivity must be positive");
}

double hm_resistance(const HeavyMetalParams& hm) {
    hm.validate();
    return hm.resistivity * hm.length / hm.cross_section();
}

double spin_injection_ratio(const HeavyMetalParams& hm, const MagnetGeometry& g) {
    hm.validate();
    g.validate();
    return hm.theta_sh * g.junction_area() / hm.cross_section();
}

SpinCurrent she_spin_current(double i_clock, const HeavyMetalParams& hm, const MagnetGeometry& g) {
    const double beta = spin_injection_ratio(hm, g);
    const double dir = i_clock >= 0.0 ? 1.0 : -1.0;
    return {beta * std::abs(i_clock), {0.0, dir, 0.0}};
}

SpinCurrent mtj_spin_current(double i_write, const MtjParams& mtj) {
    const double dir = i_write >= 0.0 ? -1.0 : 1.0;
    return {mtj.polarization * std::abs(i_write), {0.0, 0.0, dir}};
}

DeviceParams DeviceParams::defaults() {
    DeviceParams d;
    d.demag = demag_factors(d.geometry);
    d.material.ku2 = calibrate_anisotropy(31.44, d.material, d.geometry, d.demag);
    return d;
}

SwitchOutcome simulate_two_step(const DeviceParams& dev, const PulseSchedule& pulse,
                                const IntegratorConfig& cfg, const Vec3& m_initial,
                                RandomStream& rng, TrajectoryRecorder* rec) {
    if (pulse.t_clock < 0 || pulse.t_write < 0 || pulse.gap < 0 || pulse.relax < 0)
        throw std::invalid_argument("pulse schedule: durations must be non-negative");

    const LlgContext ctx = make_llg_context(dev.material, dev.geometry, dev.demag, dev.h_applied, cfg);
    RandomStream* rp = ctx.noise_sigma > 0.0 ? &rng : nullptr;

    const Vec3 is_clock = she_spin_current(pulse.i_clock, dev.hm, dev.geometry).vector();
    const Vec3 is_write = mtj_spin_current(pulse.i_write, dev.mtj).vector();

    const long n_clock = std::lround(pulse.t_clock / cfg.dt);
    const long n_gap = std::lround(pulse.gap / cfg.dt);
    const long n_write = std::lround(pulse.t_write / cfg.dt);
    const long n_relax = std::lround(pulse.relax / cfg.dt);

    Vec3 m = m_initial.normalized();
    SegmentStats stats;
    long off = 0;
    double t = 0.0;

    run_segment(m, is_clock, n_clock, ctx, rp, stats, rec, off, t);
    off += n_clock;
    t = off * cfg.dt;
    const double my_end = std::abs(m.y);

    run_segment(m, {}, n_gap, ctx, rp, stats, rec, off, t);
    off += n_gap;
    t = off * cfg.dt;

    run_segment(m, is_write, n_write, ctx, rp, stats, rec, off, t);
    off += n_write;
    t = off * cfg.dt;

    run_segment(m, {}, n_relax, ctx, rp, stats, rec, off, t);
    off += n_relax;
    t = off * cfg.dt;

    if (rec) rec->force_record(t, m);

    SwitchOutcome out;
    out.state = state_from_mz(m.z);
    out.m_final = m;
    out.abs_my_clock_end = my_end;
    out.max_prenorm_error = stats.max_prenorm_error;
    out.steps = stats.steps;
    return out;
}

ClockPower clock_power(const PulseSchedule& pulse, const HeavyMetalParams& hm) {
    const double r = hm_resistance(hm);
    const double p = pulse.i_clock * pulse.i_clock * r;
    return {p, p * pulse.t_clock};
}

double read_voltage(NeuronState state, const MtjParams& mtj, double v_dd) {
    const double r_neuron = state == NeuronState::Parallel ? mtj.r_p : mtj.r_ap();
    const double v_mid = v_dd * r_neuron / (r_neuron + mtj.r_ap());
    return v_mid >= 0.5 * v_dd ? v_dd : 0.0;
}

}  // namespace sot
