// Full-system acceptance checks. Each check prints one [PASS]/[FAIL] line
// with the measured value and the pinned bound; the exit code is the number
// of failures. Heavy statistical checks use fixed seeds so a passing build
// stays passing.
//
// SOTSIM_ACCEPT_FULL=1 switches the throughput check from a measured
// sub-sweep plus projection to the genuine 20x20x1000 grid.

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "sot/crossbar.hpp"
#include "sot/device.hpp"
#include "sot/evaluate.hpp"
#include "sot/fields.hpp"
#include "sot/io.hpp"
#include "sot/llg.hpp"
#include "sot/mnist.hpp"
#include "sot/montecarlo.hpp"
#include "sot/parallel.hpp"
#include "sot/train.hpp"

using namespace sot;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

using Sec = std::chrono::duration<double>;
double now_s() {
    return Sec(std::chrono::steady_clock::now().time_since_epoch()).count();
}

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

// Regularized upper incomplete gamma Q(a, x); p-value of a chi-square
// statistic is Q(dof/2, chi2/2). Series below a+1, Lentz continued fraction
// above; both converge to ~1e-15 here.
double gamma_q(double a, double x) {
    if (!(a > 0.0) || x < 0.0) return std::nan("");
    if (x == 0.0) return 1.0;
    const double lg = std::lgamma(a);
    if (x < a + 1.0) {
        double ap = a, del = 1.0 / a, sum = del;
        for (int i = 0; i < 500; ++i) {
            ap += 1.0;
            del *= x / ap;
            sum += del;
            if (std::fabs(del) < std::fabs(sum) * 1e-15) break;
        }
        return 1.0 - sum * std::exp(-x + a * std::log(x) - lg);
    }
    double b = x + 1.0 - a, c = 1e300, d = 1.0 / b, h = d;
    for (int i = 1; i < 500; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < 1e-300) d = 1e-300;
        c = b + an / c;
        if (std::fabs(c) < 1e-300) c = 1e-300;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-15) break;
    }
    return std::exp(-x + a * std::log(x) - lg) * h;
}

LlgContext device_context(const DeviceParams& d, double dt) {
    LlgContext c;
    c.shape_ms = Vec3{d.demag.nxx * d.material.ms, d.demag.nyy * d.material.ms,
                      d.demag.nzz * d.material.ms};
    c.hk_coeff = 2.0 * d.material.ku2 / (kConst.mu0 * d.material.ms);
    c.gamma_eff = kConst.gamma / (1.0 + d.material.alpha * d.material.alpha);
    c.alpha = d.material.alpha;
    c.torque_coeff = 1.0 / (kConst.q_e * d.material.spin_count(d.geometry) *
                            (1.0 + d.material.alpha * d.material.alpha));
    c.noise_sigma = thermal_sigma(d.material, d.geometry, dt);
    c.dt = dt;
    return c;
}

// --- injection efficiency -------------------------------------------------

Outcome check_injection() {
    const DeviceParams d = DeviceParams::defaults();
    const double beta = spin_injection_ratio(d.hm, d.geometry);
    const bool ok = std::fabs(beta - 4.71) <= 0.01;
    return {ok, fmt("beta = %.4f (bound 4.71 +- 0.01)", beta)};
}

// --- clock power ----------------------------------------------------------

Outcome check_clock_power() {
    const DeviceParams d = DeviceParams::defaults();
    const double r = hm_resistance(d.hm);
    PulseSchedule p;
    const ClockPower cp = clock_power(p, d.hm);
    const bool r_ok = std::fabs(r - 1000.0) <= 10.0;
    const bool p_ok = std::fabs(cp.power - 7.22e-6) <= 0.02 * 7.22e-6;
    return {r_ok && p_ok,
            fmt("R_HM = %.1f Ohm (1000 +- 1%%), P(85 uA) = %.4f uW (7.22 +- 2%%)", r,
                cp.power * 1e6)};
}

// --- integrator invariants ------------------------------------------------

Outcome check_integrator() {
    const DeviceParams d = DeviceParams::defaults();
    const IntegratorConfig cfg;

    // norm drift over 1e6 thermal steps with the clock torque on
    LlgContext c = device_context(d, cfg.dt);
    const Vec3 i_s = she_spin_current(85e-6, d.hm, d.geometry).vector();
    RandomStream rng(31);
    Vec3 m{0, 0, 1};
    double worst_norm = 0;
    for (long i = 0; i < 1000000; ++i) {
        llg_step(m, i_s, c, &rng);
        worst_norm = std::max(worst_norm, std::fabs(m.norm() - 1.0));
    }
    const bool norm_ok = worst_norm <= 1e-9;

    // monotone energy decay, damping only
    DeviceParams d0 = d;
    d0.material.temperature = 0.0;
    LlgContext c0 = device_context(d0, cfg.dt);
    c0.noise_sigma = 0.0;
    Vec3 me{0.6, 0.0, 0.8};
    me = me / me.norm();
    double prev = magnetic_energy(me, d0.material, d0.geometry, d0.demag);
    const double scale = std::fabs(prev);
    bool mono_ok = true;
    for (long i = 0; i < 80000; ++i) {
        llg_step(me, Vec3{}, c0, nullptr);
        const double e = magnetic_energy(me, d0.material, d0.geometry, d0.demag);
        if (e > prev + 1e-9 * scale) {
            mono_ok = false;
            break;
        }
        prev = e;
    }

    // Larmor frequency in a pure applied field
    LlgContext cl;
    cl.alpha = 1e-3;
    cl.gamma_eff = kConst.gamma / (1.0 + cl.alpha * cl.alpha);
    cl.h_applied = Vec3{0, 0, 1e5};
    cl.dt = cfg.dt;
    Vec3 ml{1, 0, 0};
    double prev_mx = ml.x, t_first = -1, t_last = -1;
    long crossings = 0;
    for (long i = 0; i < 100000; ++i) {
        llg_step(ml, Vec3{}, cl, nullptr);
        const double t = (i + 1) * cfg.dt;
        if (prev_mx < 0.0 && ml.x >= 0.0) {
            const double tc = t - cfg.dt * ml.x / (ml.x - prev_mx);
            if (t_first < 0) t_first = tc;
            t_last = tc;
            ++crossings;
        }
        prev_mx = ml.x;
    }
    const double f_meas = (crossings - 1) / (t_last - t_first);
    const double f_exp = kConst.gamma * 1e5 / (2.0 * std::numbers::pi * (1.0 + cl.alpha * cl.alpha));
    const bool larmor_ok = std::fabs(f_meas / f_exp - 1.0) <= 0.01;

    return {norm_ok && mono_ok && larmor_ok,
            fmt("norm drift %.2e (<=1e-9), energy %s, f = %.4f GHz vs %.4f (1%%)", worst_norm,
                mono_ok ? "monotone" : "NOT monotone", f_meas / 1e9, f_exp / 1e9)};
}

// --- anisotropy calibration -----------------------------------------------

Outcome check_calibration() {
    const DeviceParams d = DeviceParams::defaults();
    const double kt = kConst.k_b * d.material.temperature;
    const double barrier = energy_barrier(d.material, d.geometry, d.demag) / kt;
    const double rel = std::fabs(barrier / 31.44 - 1.0);
    return {rel <= 1e-6, fmt("barrier = %.8f kT, rel err %.2e (<= 1e-6)", barrier, rel)};
}

// --- thermal equilibrium at a 2 kT barrier ----------------------------------

Outcome check_equilibrium() {
    DeviceParams d = DeviceParams::defaults();
    d.material.ku2 = calibrate_anisotropy(2.0, d.material, d.geometry, d.demag);
    const IntegratorConfig cfg;
    const LlgContext c = device_context(d, cfg.dt);

    const int replicas = 24;
    const long burn = 2000000;        // 0.2 us
    const long steps = 80000000;      // 8 us per replica
    const long stride = 200000;       // mz sample every 20 ns
    std::vector<long> ups(replicas, 0), downs(replicas, 0);
    std::vector<std::vector<double>> samp(replicas);
    parallel_for(replicas, 0, [&](std::size_t rep) {
        RandomStream rng(derive_seed(505, rep, 0));
        Vec3 m{0, 0, rep % 2 == 0 ? 1.0 : -1.0};
        for (long i = 0; i < burn; ++i) llg_step(m, Vec3{}, c, &rng);
        long up = 0;
        auto& s = samp[rep];
        s.reserve(steps / stride);
        for (long i = 0; i < steps; ++i) {
            llg_step(m, Vec3{}, c, &rng);
            if (m.z > 0) ++up;
            if (i % stride == 0) s.push_back(m.z);
        }
        ups[rep] = up;
        downs[rep] = steps - up;
    });
    double up_total = 0, down_total = 0;
    std::vector<double> pool;
    for (int r = 0; r < replicas; ++r) {
        up_total += ups[r];
        down_total += downs[r];
        pool.insert(pool.end(), samp[r].begin(), samp[r].end());
    }
    const double ratio = up_total / down_total;
    const bool ratio_ok = ratio >= 0.9 && ratio <= 1.1;

    // Boltzmann check: the energy depends only on mz for this circular stack
    // and solid angle is uniform in mz, so bin mz directly against
    // exp(-E(mz)/kT).
    const double kt = kConst.k_b * d.material.temperature;
    auto energy_mz = [&](double u) {
        Vec3 mm{std::sqrt(std::max(0.0, 1.0 - u * u)), 0.0, u};
        return magnetic_energy(mm, d.material, d.geometry, d.demag);
    };
    const int nbins = 40;
    std::vector<double> expw(nbins, 0.0);
    double zsum = 0;
    for (int b = 0; b < nbins; ++b) {
        const double lo = -1.0 + 2.0 * b / nbins, hi = lo + 2.0 / nbins;
        double acc = 0;
        for (int k = 0; k < 32; ++k)
            acc += std::exp(-energy_mz(lo + (hi - lo) * (k + 0.5) / 32) / kt);
        expw[b] = acc;
        zsum += acc;
    }
    std::vector<long> obs(nbins, 0);
    for (double u : pool) {
        int b = static_cast<int>((u + 1.0) * 0.5 * nbins);
        b = std::min(std::max(b, 0), nbins - 1);
        ++obs[b];
    }
    // Pearson statistic over cells merged left-to-right to expected >= 5; a
    // trailing remainder folds into the last emitted cell.
    const double n = static_cast<double>(pool.size());
    double chi2 = 0, po = 0, pe = 0, last_o = 0, last_e = 0;
    int cells = 0;
    for (int b = 0; b < nbins; ++b) {
        po += obs[b];
        pe += n * expw[b] / zsum;
        if (pe >= 5.0) {
            chi2 += (po - pe) * (po - pe) / pe;
            last_o = po;
            last_e = pe;
            ++cells;
            po = pe = 0;
        }
    }
    if (pe > 0 && cells > 0) {
        chi2 -= (last_o - last_e) * (last_o - last_e) / last_e;
        chi2 += (last_o + po - last_e - pe) * (last_o + po - last_e - pe) / (last_e + pe);
    }
    const int dof = cells - 1;
    const double p = gamma_q(dof / 2.0, chi2 / 2.0);
    const bool chi_ok = p > 0.01;

    return {ratio_ok && chi_ok,
            fmt("occupancy ratio %.4f (1.0 +- 0.1), chi2 %.1f / %d dof -> p = %.3f (> 0.01), "
                "%.0f us simulated",
                ratio, chi2, dof, p, replicas * steps * cfg.dt * 1e6)};
}

// --- hard-axis capture ------------------------------------------------------

Outcome check_capture() {
    const DeviceParams dev = DeviceParams::defaults();
    const IntegratorConfig cfg;
    PulseSchedule clock_only;
    clock_only.t_write = 0;
    clock_only.relax = 0;
    std::atomic<long> captured{0};
    parallel_for(1000, 0, [&](std::size_t i) {
        RandomStream rng(derive_seed(606, 0, i));
        SwitchOutcome out = simulate_two_step(dev, clock_only, cfg, random_pole(rng), rng);
        if (out.abs_my_clock_end > 0.9) captured.fetch_add(1);
    });
    return {captured >= 990,
            fmt("P(|my| > 0.9 at clock end) = %.3f over 1000 trials (>= 0.99)",
                captured / 1000.0)};
}

// --- write-regime statistics ------------------------------------------------

Outcome check_write_regime() {
    const DeviceParams dev = DeviceParams::defaults();
    const IntegratorConfig cfg;
    const int threads = 0;  // resolve to hardware
    auto stats_at = [&](double iw, long n, std::uint64_t point) {
        PulseSchedule p;
        p.i_write = iw;
        return switching_probability(dev, p, cfg, n, 707, point, threads);
    };

    const SwitchStatistics s0 = stats_at(0.0, 10000, 0);
    const bool fair = std::fabs(s0.p_ap - 0.5) <= 0.02;

    const SwitchStatistics sp10 = stats_at(10e-6, 10000, 1);
    const SwitchStatistics sm10 = stats_at(-10e-6, 10000, 2);
    const double best = std::max(sp10.p_hat, sm10.p_hat);
    const bool strong = best >= 0.99;

    // shape of the transfer curve: monotone in write current, odd-symmetric
    const SwitchStatistics sp25 = stats_at(2.5e-6, 2000, 3);
    const SwitchStatistics sm25 = stats_at(-2.5e-6, 2000, 4);
    const SwitchStatistics sp5 = stats_at(5e-6, 2000, 5);
    const SwitchStatistics sm5 = stats_at(-5e-6, 2000, 6);
    const SwitchStatistics* ordered[] = {&sm10, &sm5, &sm25, &s0, &sp25, &sp5, &sp10};
    bool monotone = true;
    for (int i = 0; i + 1 < 7; ++i)
        if (ordered[i + 1]->p_ap < ordered[i]->p_ap - (ordered[i]->ci95 + ordered[i + 1]->ci95))
            monotone = false;
    bool symmetric = true;
    const SwitchStatistics* pairs[][2] = {{&sp25, &sm25}, {&sp5, &sm5}, {&sp10, &sm10}};
    for (auto& pr : pairs)
        if (std::fabs(pr[0]->p_ap + pr[1]->p_ap - 1.0) > pr[0]->ci95 + pr[1]->ci95)
            symmetric = false;

    // locate the attainable deterministic threshold for the report
    double thresh = 0;
    for (double iw : {15e-6, 20e-6, 25e-6, 30e-6}) {
        const SwitchStatistics s = stats_at(iw, 2000, 100 + static_cast<std::uint64_t>(iw * 1e6));
        if (s.p_hat >= 0.99) {
            thresh = iw;
            break;
        }
    }
    std::printf("  [info] p(+10 uA) = %.4f, p(-10 uA -> P) = %.4f; p >= 0.99 first reached at "
                "%.0f uA\n",
                sp10.p_hat, sm10.p_hat, thresh * 1e6);

    return {fair && strong && monotone && symmetric,
            fmt("p(0) = %.4f (0.5 +- 0.02), best p within 10 uA = %.4f (>= 0.99), %s, %s",
                s0.p_ap, best, monotone ? "monotone" : "NOT monotone",
                symmetric ? "odd-symmetric" : "NOT symmetric")};
}

// --- thread determinism -----------------------------------------------------

Outcome check_determinism() {
    const DeviceParams dev = DeviceParams::defaults();
    const IntegratorConfig cfg;
    PulseSchedule base;
    const std::vector<double> clocks{60e-6, 85e-6};
    const std::vector<double> writes{-4e-6, -2e-6, 0.0, 2e-6, 4e-6};
    const PhaseDiagram pd1 = phase_diagram(dev, base, cfg, clocks, writes, 100, 99, 1);
    const PhaseDiagram pd4 = phase_diagram(dev, base, cfg, clocks, writes, 100, 99, 4);

    namespace fs = std::filesystem;
    fs::create_directories("acceptance_tmp");
    const nlohmann::json echo = {{"seed", 99}};
    write_phase_diagram_csv("acceptance_tmp/sweep_t1.csv", pd1, echo);
    write_phase_diagram_csv("acceptance_tmp/sweep_t4.csv", pd4, echo);
    auto slurp = [](const char* p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    const std::string b1 = slurp("acceptance_tmp/sweep_t1.csv");
    const std::string b4 = slurp("acceptance_tmp/sweep_t4.csv");
    const bool ok = !b1.empty() && b1 == b4;
    return {ok, fmt("10-point sweep x 100 trials, 1 vs 4 threads: CSV bytes %s (%zu bytes)",
                    ok ? "identical" : "DIFFER", b1.size())};
}

// --- crossbar nodal oracle ---------------------------------------------------

// Dense nodal analysis in long double: an internal node per branch (between
// the programmed cell and its series switch) plus the column node. Partial
// pivoting; the extra precision keeps the oracle's own rounding far below
// the tolerance under test.
long double nodal_current(const QuantizedLayer& q, std::size_t col,
                          const std::vector<std::uint8_t>& x, const CrossbarParams& p) {
    const std::size_t rows = q.g_plus.rows;
    const std::size_t n = 2 * rows + 1;
    std::vector<long double> a(n * n, 0.0L), b(n, 0.0L);
    const std::size_t vc = n - 1;
    auto at = [&](std::size_t r, std::size_t cc) -> long double& { return a[r * n + cc]; };
    for (std::size_t r = 0; r < rows; ++r) {
        const long double vrow = (r + 1 == rows || x[r]) ? p.v_supply : 0.0L;
        for (int s = 0; s < 2; ++s) {
            const long double g = s == 0 ? q.g_plus.at(r, col) : q.g_minus.at(r, col);
            const long double v = s == 0 ? vrow : -vrow;
            const std::size_t node = 2 * r + s;
            if (p.r_on > 0.0) {
                const long double gsw = 1.0L / static_cast<long double>(p.r_on);
                at(node, node) += g + gsw;
                at(node, vc) -= gsw;
                at(vc, node) -= gsw;
                at(vc, vc) += gsw;
                b[node] += g * v;
            } else {
                at(node, node) = 1.0L;  // unused node, keep the system regular
                at(vc, vc) += g;
                b[vc] += g * v;
            }
        }
    }
    at(vc, vc) += p.g_sense;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t best = k;
        for (std::size_t r = k + 1; r < n; ++r)
            if (std::fabs(static_cast<double>(at(r, k))) >
                std::fabs(static_cast<double>(at(best, k))))
                best = r;
        if (best != k) {
            for (std::size_t cc = 0; cc < n; ++cc) std::swap(at(k, cc), at(best, cc));
            std::swap(b[k], b[best]);
        }
        for (std::size_t r = k + 1; r < n; ++r) {
            const long double f = at(r, k) / at(k, k);
            for (std::size_t cc = k; cc < n; ++cc) at(r, cc) -= f * at(k, cc);
            b[r] -= f * b[k];
        }
    }
    std::vector<long double> v(n);
    for (std::size_t i = n; i-- > 0;) {
        long double s = b[i];
        for (std::size_t cc = i + 1; cc < n; ++cc) s -= at(i, cc) * v[cc];
        v[i] = s / at(i, i);
    }
    return p.g_sense * v[vc];
}

Outcome check_nodal_oracle() {
    RandomStream rng(314);
    double worst_rel = 0, worst_abs = 0;
    for (int t = 0; t < 1000; ++t) {
        CrossbarParams p;
        const std::size_t rows = 2 + static_cast<std::size_t>(rng.uniform() * 13);
        p.r_on = rng.uniform() < 0.5 ? 0.0 : 1.0 + 500.0 * rng.uniform();
        p.g_sense = 5e-5 + 2.5e-4 * rng.uniform();
        Matrix w(rows, 1);
        for (std::size_t r = 0; r < rows; ++r) w.at(r, 0) = 2.0 * rng.uniform() - 1.0;
        const QuantizedLayer q = quantize_weights(w, p);
        std::vector<std::uint8_t> x(rows - 1);
        for (auto& xi : x) xi = rng.uniform() < 0.5 ? 1 : 0;
        const double direct = synaptic_current(q, 0, x, p);
        const long double nod = nodal_current(q, 0, x, p);
        const double err = std::fabs(direct - static_cast<double>(nod));
        const double mag = std::fabs(static_cast<double>(nod));
        // relative gate above 1 uA; columns whose branches cancel to below
        // that carry no usable signal, so an absolute 1e-18 A gate applies
        if (mag > 1e-6)
            worst_rel = std::max(worst_rel, err / mag);
        else
            worst_abs = std::max(worst_abs, err);
    }
    const bool ok = worst_rel <= 1e-12 && worst_abs <= 1e-18;
    return {ok, fmt("1000 random columns: worst rel %.2e (<= 1e-12), worst abs %.2e A (<= 1e-18)",
                    worst_rel, worst_abs)};
}

// --- end-to-end accuracy ------------------------------------------------------

Outcome check_end_to_end() {
    const std::string root = SOTSIM_SOURCE_DIR;
    Dataset train = load_dataset(root + "/data/mnist/train-images-idx3-ubyte",
                                 root + "/data/mnist/train-labels-idx1-ubyte", 0);
    Dataset eval = load_dataset(root + "/data/mnist/t10k-images-idx3-ubyte",
                                root + "/data/mnist/t10k-labels-idx1-ubyte", 100);

    TrainConfig tc;
    const MlpWeights w = train_network(train, tc);
    const double float_acc = evaluate_float(w, eval, tc.k_sigmoid);
    const bool float_ok = float_acc >= 0.90;

    const CrossbarParams cp;
    const NetworkConductances net{quantize_weights(w.w1, cp), quantize_weights(w.w2, cp)};

    const DeviceParams dev = DeviceParams::defaults();
    PulseSchedule base;
    const IntegratorConfig icfg;
    std::vector<double> writes;
    for (int i = -15; i <= 15; ++i) writes.push_back(2e-6 * i);
    const PhaseDiagram pd = phase_diagram(dev, base, icfg, {85e-6}, writes, 1000, 424242, 0);

    NeuronModel lookup;
    lookup.mode = InferenceMode::StochasticLookup;
    lookup.diagram = &pd;
    const EvalReport rl = evaluate_network(net, eval, cp, lookup, 100, 99, 0);
    const bool band_ok = rl.accuracy >= 0.70 && rl.accuracy <= 0.92;

    Dataset spot;
    spot.images.assign(eval.images.begin(), eval.images.begin() + 5);
    spot.labels.assign(eval.labels.begin(), eval.labels.begin() + 5);
    NeuronModel full;
    full.mode = InferenceMode::StochasticFull;
    full.device = &dev;
    const EvalReport rf = evaluate_network(net, spot, cp, full, 200, 7, 0);
    const EvalReport rl5 = evaluate_network(net, spot, cp, lookup, 200, 7, 0);
    const double gap = std::fabs(rf.accuracy - rl5.accuracy);
    const bool spot_ok = gap <= 0.05;

    return {float_ok && band_ok && spot_ok,
            fmt("float %.4f (>= 0.90), lookup 100x100 %.4f (in [0.70, 0.92]), "
                "full vs lookup on 5 images |%.4f - %.4f| = %.4f (<= 0.05)",
                float_acc, rl.accuracy, rf.accuracy, rl5.accuracy, gap)};
}

// --- sweep throughput -----------------------------------------------------------

Outcome check_throughput() {
    const DeviceParams dev = DeviceParams::defaults();
    const IntegratorConfig cfg;
    PulseSchedule base;
    const long trials = 1000;
    const double steps_per_trial =
        std::floor((base.t_clock + base.t_write + base.relax) / cfg.dt + 0.5);
    const int threads = hardware_threads();
    const bool full = std::getenv("SOTSIM_ACCEPT_FULL") != nullptr;

    std::vector<double> clocks, writes;
    if (full) {
        for (int i = 0; i < 20; ++i) clocks.push_back(30e-6 + 70e-6 * i / 19.0);
        for (int i = 0; i < 20; ++i) writes.push_back(-20e-6 + 40e-6 * i / 19.0);
    } else {
        clocks = {75e-6, 85e-6};
        for (int i = 0; i < 10; ++i) writes.push_back(-10e-6 + 2e-6 * i);
    }
    const double t0 = now_s();
    const PhaseDiagram pd = phase_diagram(dev, base, cfg, clocks, writes, trials, 11, threads);
    const double wall = now_s() - t0;
    const double points = static_cast<double>(clocks.size() * writes.size());
    const double steps_per_s = points * trials * steps_per_trial / wall;
    const double per_core = steps_per_s / threads;
    const double full_steps = 400.0 * trials * steps_per_trial;
    const double projected = full_steps / (4.0 * per_core);
    std::printf("  [info] %.0f points x %ld trials in %.1f s on %d thread(s): %.2e steps/s "
                "(%.2e per core), %.0f trials/s\n",
                points, trials, wall, threads, steps_per_s, per_core, pd.trials_per_s);

    if (full) {
        const bool ok = wall <= 1800.0 || (threads < 4 && projected <= 1800.0);
        return {ok, fmt("full 20x20 grid x 1000 trials: %.0f s measured on %d threads; "
                        "4-core projection %.0f s (<= 1800)",
                        wall, threads, projected)};
    }
    return {projected <= 1800.0,
            fmt("4-core projection for 20x20 x 1000 trials: %.0f s (<= 1800) from measured "
                "%.2e steps/s per core",
                projected, per_core)};
}

}  // namespace

int main() {
    struct Entry {
        const char* name;
        std::function<Outcome()> run;
    };
    const Entry entries[] = {
        {"C1 injection efficiency", check_injection},
        {"C2 clock power", check_clock_power},
        {"C3 integrator invariants", check_integrator},
        {"C4 anisotropy calibration", check_calibration},
        {"C5 thermal equilibrium", check_equilibrium},
        {"C6 hard-axis capture", check_capture},
        {"C7 write-regime statistics", check_write_regime},
        {"C8 thread determinism", check_determinism},
        {"C9 crossbar nodal oracle", check_nodal_oracle},
        {"C10 end-to-end accuracy", check_end_to_end},
        {"C11 sweep throughput", check_throughput},
    };
    int failures = 0;
    for (const Entry& e : entries) {
        const double t0 = now_s();
        Outcome o;
        try {
            o = e.run();
        } catch (const std::exception& ex) {
            o = {false, std::string("exception: ") + ex.what()};
        }
        if (!o.pass) ++failures;
        std::printf("[%s] %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", e.name, o.detail.c_str(),
                    now_s() - t0);
        std::fflush(stdout);
    }
    std::printf("%d/11 criteria passed\n", 11 - failures);
    return failures;
}
