#include "sot/crossbar.hpp"

#include <cmath>
#include <stdexcept>

#include "sot/errors.hpp"

namespace sot {

void CrossbarParams::validate() const {
    if (!(v_supply > 0.0)) throw std::invalid_argument("crossbar: supply must be positive");
    if (!(g_min > 0.0 && g_max > g_min)) throw std::invalid_argument("crossbar: need 0 < g_min < g_max");
    if (levels < 2) throw std::invalid_argument("crossbar: need at least 2 levels");
    if (!(g_off >= 0.0 && g_off < g_min)) throw std::invalid_argument("crossbar: g_off must be below g_min");
    if (!(g_sense > 0.0)) throw std::invalid_argument("crossbar: sense conductance must be positive");
    if (r_on < 0.0) throw std::invalid_argument("crossbar: switch resistance must be non-negative");
}

QuantizedLayer quantize_weights(const Matrix& w, const CrossbarParams& p) {
    p.validate();
    double w_max = 0.0;
    for (double x : w.v) w_max = std::max(w_max, std::abs(x));
    if (w_max == 0.0) throw std::invalid_argument("quantize: all-zero weight layer");

    QuantizedLayer q;
    q.scale = p.g_max / w_max;
    q.g_plus = Grid<double>(w.rows, w.cols, p.g_off);
    q.g_minus = Grid<double>(w.rows, w.cols, p.g_off);
    q.level_plus = Grid<int>(w.rows, w.cols, -1);
    q.level_minus = Grid<int>(w.rows, w.cols, -1);

    const double step = p.step();
    for (std::size_t r = 0; r < w.rows; ++r) {
        for (std::size_t c = 0; c < w.cols; ++c) {
            const double target = std::abs(w.at(r, c)) * q.scale;
            if (target < 0.5 * p.g_min) continue;  // dead zone, both sides stay off
            const double clamped = std::min(std::max(target, p.g_min), p.g_max);
            const int level = static_cast<int>(std::lround((clamped - p.g_min) / step));
            const double g = p.g_min + level * step;
            if (w.at(r, c) > 0.0) {
                q.g_plus.at(r, c) = g;
                q.level_plus.at(r, c) = level;
            } else {
                q.g_minus.at(r, c) = g;
                q.level_minus.at(r, c) = level;
            }
        }
    }
    return q;
}

namespace {

inline double series_on(double g, double r_on) { return r_on == 0.0 ? g : g / (1.0 + g * r_on); }

}  // namespace

double synaptic_current(const QuantizedLayer& q, std::size_t col, std::span<const std::uint8_t> x,
                        const CrossbarParams& p) {
    const std::size_t rows = q.g_plus.rows;
    if (x.size() + 1 != rows)
        throw std::invalid_argument("synaptic_current: input size does not match layer rows");
    double num = 0.0;
    double den = p.g_sense;
    for (std::size_t r = 0; r < rows; ++r) {
        const double gp = series_on(q.g_plus.at(r, col), p.r_on);
        const double gm = series_on(q.g_minus.at(r, col), p.r_on);
        den += gp + gm;
        const double xi = r + 1 == rows ? 1.0 : static_cast<double>(x[r]);  // bias row always on
        if (xi != 0.0) num += (gp - gm) * p.v_supply * xi;
    }
    return p.g_sense * num / den;
}

namespace {

std::uint8_t neuron_fire(double current, const NeuronModel& model, RandomStream* rng) {
    switch (model.mode) {
        case InferenceMode::Deterministic:
            return current > 0.0 ? 1 : 0;
        case InferenceMode::StochasticLookup: {
            if (!model.diagram) throw ConfigError("stochastic lookup mode needs a phase diagram");
            if (!rng) throw std::invalid_argument("stochastic inference needs a random stream");
            const double p_ap = lookup_probability(*model.diagram, model.clock_current, current);
            return rng->bernoulli(p_ap) ? 1 : 0;
        }
        case InferenceMode::StochasticFull: {
            if (!model.device) throw ConfigError("full stochastic mode needs device parameters");
            if (!rng) throw std::invalid_argument("stochastic inference needs a random stream");
            PulseSchedule p = model.pulse;
            p.i_write = current;
            const Vec3 m0 = random_pole(*rng);
            return simulate_two_step(*model.device, p, model.integrator, m0, *rng).state ==
                           NeuronState::AntiParallel
                       ? 1
                       : 0;
        }
    }
    return 0;
}

}  // namespace

LayerResult layer_forward(const QuantizedLayer& q, std::span<const std::uint8_t> x,
                          const CrossbarParams& p, const NeuronModel& model, RandomStream* rng) {
    LayerResult out;
    const std::size_t cols = q.g_plus.cols;
    out.bits.resize(cols);
    out.currents.resize(cols);
    for (std::size_t c = 0; c < cols; ++c) {
        out.currents[c] = synaptic_current(q, c, x, p);
        out.bits[c] = neuron_fire(out.currents[c], model, rng);
    }
    return out;
}

InferenceResult network_infer(const NetworkConductances& net, std::span<const std::uint8_t> pixels,
                              const CrossbarParams& p, const NeuronModel& model, RandomStream* rng) {
    const LayerResult hidden = layer_forward(net.hidden, pixels, p, model, rng);
    const LayerResult output = layer_forward(net.output, hidden.bits, p, model, rng);

    InferenceResult res;
    res.output_bits = output.bits;
    int set_count = 0;
    int set_index = -1;
    for (std::size_t j = 0; j < output.bits.size(); ++j) {
        if (output.bits[j]) {
            ++set_count;
            if (set_index < 0) set_index = static_cast<int>(j);
        }
    }
    if (set_count == 1) {
        res.predicted = set_index;
        return res;
    }
    res.ambiguous = true;
    std::size_t best = 0;
    for (std::size_t j = 1; j < output.currents.size(); ++j)
        if (output.currents[j] > output.currents[best]) best = j;
    res.predicted = static_cast<int>(best);
    return res;
}

}  // namespace sot
