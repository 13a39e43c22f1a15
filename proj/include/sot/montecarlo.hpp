#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "sot/device.hpp"

namespace sot {

// Aggregate outcome of repeated switching trials at one bias point.
//
// Convention: for i_write > 0 a trial succeeds when it ends AntiParallel, for
// i_write < 0 when it ends Parallel (the commanded direction); at i_write == 0
// success means AntiParallel, so p_hat is the AP fraction. p_ap is always the
// AP fraction, which is the quantity a stochastic neuron samples.
struct SwitchStatistics {
    double i_clock = 0;  // [A]
    double i_write = 0;  // [A]
    long trials = 0;
    long successes = 0;
    long ap_count = 0;
    double p_hat = 0;
    double p_ap = 0;
    double ci95 = 0;  // normal-approximation half width on p_hat
    bool failed = false;
    std::string error;
};

// A trial: given its private random stream, did the device land AntiParallel?
using TrialFn = std::function<bool(RandomStream&)>;

// Monte Carlo core over an abstract trial. Seeds are derived per
// (master_seed, point_index, trial) so results are independent of the thread
// count. A throwing trial marks the whole point failed (p_hat/p_ap = NaN).
SwitchStatistics run_trials(const TrialFn& trial, long trials, std::uint64_t master_seed,
                            std::uint64_t point_index, double i_clock, double i_write, int threads);

// Physics trial: random +-z pole start, two-step protocol, AP test.
SwitchStatistics switching_probability(const DeviceParams& dev, const PulseSchedule& pulse,
                                       const IntegratorConfig& cfg, long trials,
                                       std::uint64_t master_seed, std::uint64_t point_index,
                                       int threads);

struct PhaseDiagram {
    std::vector<double> clock_levels;           // [A]
    std::vector<double> write_levels;           // [A]
    long trials = 0;
    std::vector<SwitchStatistics> cells;        // row-major, index = ci * n_write + wi
    double elapsed_s = 0;
    double trials_per_s = 0;

    const SwitchStatistics& at(std::size_t ci, std::size_t wi) const {
        return cells[ci * write_levels.size() + wi];
    }
};

using ProgressFn = std::function<void(std::size_t done_points, std::size_t total_points)>;

// Sweeps (clock, write) bias points; the clock/write values override the base
// schedule per point. point_index = ci * n_write + wi feeds seed derivation,
// so a cell's trial set depends only on the grid shape and master seed.
PhaseDiagram phase_diagram(const DeviceParams& dev, const PulseSchedule& base,
                           const IntegratorConfig& cfg, const std::vector<double>& clock_levels,
                           const std::vector<double>& write_levels, long trials,
                           std::uint64_t master_seed, int threads,
                           const ProgressFn& progress = nullptr);

// P(AntiParallel) at (i_clock, i_write): exact row match on the clock axis
// (relative tolerance 1e-9), piecewise-linear interpolation along the write
// axis. Outside the write range the edge value is returned and *clamped set.
// Throws ConfigError when the clock level has no row or a needed cell failed.
double lookup_probability(const PhaseDiagram& pd, double i_clock, double i_write,
                          bool* clamped = nullptr);

}  // namespace sot
