#include "sot/montecarlo.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <mutex>

#include "sot/errors.hpp"
#include "sot/parallel.hpp"

namespace sot {

namespace {

bool commanded_is_ap(double i_write) { return i_write >= 0.0; }

void finalize(SwitchStatistics& st) {
    if (st.failed) {
        st.p_hat = std::numeric_limits<double>::quiet_NaN();
        st.p_ap = std::numeric_limits<double>::quiet_NaN();
        st.ci95 = std::numeric_limits<double>::quiet_NaN();
        return;
    }
    st.p_hat = static_cast<double>(st.successes) / st.trials;
    st.p_ap = static_cast<double>(st.ap_count) / st.trials;
    st.ci95 = 1.96 * std::sqrt(st.p_hat * (1.0 - st.p_hat) / st.trials);
}

struct CellAccum {
    std::atomic<long> ap{0};
    std::atomic<bool> failed{false};
    std::string error;
    std::mutex error_mutex;
};

}  // namespace

SwitchStatistics run_trials(const TrialFn& trial, long trials, std::uint64_t master_seed,
                            std::uint64_t point_index, double i_clock, double i_write, int threads) {
    if (trials <= 0) throw std::invalid_argument("monte carlo: trials must be positive");

    CellAccum acc;
    parallel_for(
        static_cast<std::size_t>(trials), threads,
        [&](std::size_t t) {
            RandomStream rng(derive_seed(master_seed, point_index, t));
            try {
                if (trial(rng)) acc.ap.fetch_add(1, std::memory_order_relaxed);
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(acc.error_mutex);
                if (!acc.failed.exchange(true)) acc.error = e.what();
            }
        },
        4);

    SwitchStatistics st;
    st.i_clock = i_clock;
    st.i_write = i_write;
    st.trials = trials;
    st.ap_count = acc.ap.load();
    st.successes = commanded_is_ap(i_write) ? st.ap_count : trials - st.ap_count;
    st.failed = acc.failed.load();
    st.error = acc.error;
    finalize(st);
    return st;
}

SwitchStatistics switching_probability(const DeviceParams& dev, const PulseSchedule& pulse,
                                       const IntegratorConfig& cfg, long trials,
                                       std::uint64_t master_seed, std::uint64_t point_index,
                                       int threads) {
    auto trial = [&](RandomStream& rng) {
        const Vec3 m0 = random_pole(rng);
        return simulate_two_step(dev, pulse, cfg, m0, rng).state == NeuronState::AntiParallel;
    };
    return run_trials(trial, trials, master_seed, point_index, pulse.i_clock, pulse.i_write, threads);
}

PhaseDiagram phase_diagram(const DeviceParams& dev, const PulseSchedule& base,
                           const IntegratorConfig& cfg, const std::vector<double>& clock_levels,
                           const std::vector<double>& write_levels, long trials,
                           std::uint64_t master_seed, int threads, const ProgressFn& progress) {
    if (clock_levels.empty() || write_levels.empty())
        throw std::invalid_argument("phase diagram: empty sweep axis");
    if (trials <= 0) throw std::invalid_argument("phase diagram: trials must be positive");

    const std::size_t n_points = clock_levels.size() * write_levels.size();
    const std::size_t total = n_points * static_cast<std::size_t>(trials);

    std::vector<CellAccum> acc(n_points);
    std::vector<std::atomic<long>> remaining(n_points);
    for (auto& r : remaining) r.store(trials);
    std::atomic<std::size_t> points_done{0};

    const auto t_start = std::chrono::steady_clock::now();

    // Flattened (point, trial) index space: points finish roughly in order
    // while all threads stay busy across cell boundaries.
    parallel_for(
        total, threads,
        [&](std::size_t g) {
            const std::size_t point = g / trials;
            const std::size_t trial_idx = g % trials;
            const std::size_t ci = point / write_levels.size();
            const std::size_t wi = point % write_levels.size();

            PulseSchedule p = base;
            p.i_clock = clock_levels[ci];
            p.i_write = write_levels[wi];

            RandomStream rng(derive_seed(master_seed, point, trial_idx));
            try {
                const Vec3 m0 = random_pole(rng);
                const bool ap =
                    simulate_two_step(dev, p, cfg, m0, rng).state == NeuronState::AntiParallel;
                if (ap) acc[point].ap.fetch_add(1, std::memory_order_relaxed);
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(acc[point].error_mutex);
                if (!acc[point].failed.exchange(true)) acc[point].error = e.what();
            }
            if (remaining[point].fetch_sub(1) == 1 && progress)
                progress(points_done.fetch_add(1) + 1, n_points);
        },
        4);

    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();

    PhaseDiagram pd;
    pd.clock_levels = clock_levels;
    pd.write_levels = write_levels;
    pd.trials = trials;
    pd.elapsed_s = elapsed;
    pd.trials_per_s = elapsed > 0 ? total / elapsed : 0.0;
    pd.cells.resize(n_points);
    for (std::size_t point = 0; point < n_points; ++point) {
        SwitchStatistics& st = pd.cells[point];
        st.i_clock = clock_levels[point / write_levels.size()];
        st.i_write = write_levels[point % write_levels.size()];
        st.trials = trials;
        st.ap_count = acc[point].ap.load();
        st.successes = commanded_is_ap(st.i_write) ? st.ap_count : trials - st.ap_count;
        st.failed = acc[point].failed.load();
        st.error = acc[point].error;
        finalize(st);
    }
    return pd;
}

double lookup_probability(const PhaseDiagram& pd, double i_clock, double i_write, bool* clamped) {
    if (clamped) *clamped = false;

    std::size_t row = pd.clock_levels.size();
    for (std::size_t i = 0; i < pd.clock_levels.size(); ++i) {
        const double c = pd.clock_levels[i];
        if (std::abs(c - i_clock) <= 1e-9 * std::max(std::abs(c), std::abs(i_clock))) {
            row = i;
            break;
        }
    }
    if (row == pd.clock_levels.size())
        throw ConfigError("lookup: no phase diagram row at clock current " + std::to_string(i_clock));

    const auto& wl = pd.write_levels;
    for (std::size_t i = 1; i < wl.size(); ++i)
        if (!(wl[i] > wl[i - 1]))
            throw ConfigError("lookup: write axis must be strictly ascending");
    auto cell_p = [&](std::size_t wi) {
        const SwitchStatistics& st = pd.at(row, wi);
        if (st.failed) throw ConfigError("lookup: phase diagram cell failed: " + st.error);
        return st.p_ap;
    };

    if (i_write <= wl.front()) {
        if (clamped && i_write < wl.front()) *clamped = true;
        return cell_p(0);
    }
    if (i_write >= wl.back()) {
        if (clamped && i_write > wl.back()) *clamped = true;
        return cell_p(wl.size() - 1);
    }
    std::size_t hi = 1;
    while (wl[hi] < i_write) ++hi;
    const double x0 = wl[hi - 1], x1 = wl[hi];
    const double f = (i_write - x0) / (x1 - x0);
    return (1.0 - f) * cell_p(hi - 1) + f * cell_p(hi);
}

}  // namespace sot
