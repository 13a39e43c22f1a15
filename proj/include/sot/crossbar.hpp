#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sot/device.hpp"
#include "sot/matrix.hpp"
#include "sot/montecarlo.hpp"

namespace sot {

struct CrossbarParams {
    double v_supply = 1.0;     // row driver amplitude [V]
    double g_min = 6.25e-6;    // lowest programmable conductance, 1/160k [S]
    double g_max = 1.25e-4;    // highest programmable conductance, 1/8k [S]
    int levels = 32;           // programmable levels, uniform in conductance
    double g_off = 1.25e-10;   // de-programmed (open) cell [S]
    double g_sense = 3e-4;     // sense conductance at the column node [S]; sized so
                               // typical column currents reach the saturated part of
                               // the switching curve
    double r_on = 0.0;         // series switch resistance per cell [Ohm]

    double step() const { return (g_max - g_min) / (levels - 1); }
    void validate() const;
};

// One weight layer mapped onto a differential conductance pair per cell.
// Rows are inputs (bias last), columns are outputs. level == -1 means the
// cell is de-programmed (g_off). Exactly one side of each pair is programmed
// for nonzero weights; both sides are off inside the dead zone.
struct QuantizedLayer {
    Grid<double> g_plus, g_minus;       // [S]
    Grid<int> level_plus, level_minus;  // 0..levels-1, or -1
    double scale = 0;                   // conductance per unit weight [S]
};

// Per-layer scaling: max|w| maps to g_max; |w|*scale below g_min/2 is dropped
// to the dead zone, otherwise clamped into [g_min, g_max] and rounded to the
// nearest level. Throws std::invalid_argument on an all-zero layer.
QuantizedLayer quantize_weights(const Matrix& w, const CrossbarParams& p);

// Effective weight seen by the network after quantization.
inline double dequantized_weight(const QuantizedLayer& q, std::size_t r, std::size_t c) {
    return (q.g_plus.at(r, c) - q.g_minus.at(r, c)) / q.scale;
}

// Column current into the virtual ground through the sense conductance.
// Active rows drive +-Vs * x_i on the two rails; every cell loads the column
// node whether or not its row is active:
//   I_j = Gs * sum_i (G+_ij V+_i + G-_ij V-_i) / (Gs + sum_i (G+_ij + G-_ij))
// Series switch resistance folds in as G -> G/(1 + G*r_on).
double synaptic_current(const QuantizedLayer& q, std::size_t col, std::span<const std::uint8_t> x,
                        const CrossbarParams& p);

enum class InferenceMode { Deterministic, StochasticLookup, StochasticFull };

// How a column current becomes an output bit.
struct NeuronModel {
    InferenceMode mode = InferenceMode::Deterministic;
    // StochasticLookup:
    const PhaseDiagram* diagram = nullptr;
    double clock_current = 85e-6;  // [A], selects the diagram row
    // StochasticFull:
    const DeviceParams* device = nullptr;
    PulseSchedule pulse;  // i_write is replaced by the column current
    IntegratorConfig integrator;
};

struct LayerResult {
    std::vector<std::uint8_t> bits;  // AntiParallel = 1
    std::vector<double> currents;    // [A]
};

// x is the raw input (no bias entry); the layer's last row is the always-on
// bias. Deterministic: bit = (I > 0). Stochastic modes draw from rng.
LayerResult layer_forward(const QuantizedLayer& q, std::span<const std::uint8_t> x,
                          const CrossbarParams& p, const NeuronModel& model, RandomStream* rng);

struct NetworkConductances {
    QuantizedLayer hidden;
    QuantizedLayer output;
};

// Predicted class: index of the single set output bit; with zero or several
// bits set, the largest output-column current wins, ties to the lowest index.
struct InferenceResult {
    int predicted = -1;
    bool ambiguous = false;  // not exactly one output bit set
    std::vector<std::uint8_t> output_bits;
};

InferenceResult network_infer(const NetworkConductances& net, std::span<const std::uint8_t> pixels,
                              const CrossbarParams& p, const NeuronModel& model, RandomStream* rng);

}  // namespace sot
