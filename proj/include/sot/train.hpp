#pragma once

#include <cstdint>
#include <string>

#include "sot/matrix.hpp"
#include "sot/mnist.hpp"

namespace sot {

// Two-layer perceptron matching the crossbar layout: rows are inputs with the
// bias as the last row, columns are neurons.
struct MlpWeights {
    Matrix w1;  // (inputs+1) x hidden
    Matrix w2;  // (hidden+1) x outputs
};

struct TrainConfig {
    int hidden = 25;
    int outputs = 4;
    int epochs = 200;
    int batch = 32;
    double learning_rate = 0.5;
    double k_sigmoid = 5.0;  // activation steepness, approximates the hard threshold
    double target_accuracy = 0.90;  // on the training set; below this is a failure
    std::uint64_t seed = 1;
};

// Minibatch SGD with a steep-sigmoid surrogate for the binary neurons and
// squared error against one-hot targets. Throws TrainingError when the final
// training accuracy misses the target.
MlpWeights train_network(const Dataset& train, const TrainConfig& cfg);

// Deterministic float-network accuracy: argmax over output pre-activations.
double evaluate_float(const MlpWeights& w, const Dataset& ds, double k_sigmoid);

// Versioned JSON serialization; doubles round-trip exactly.
void save_weights(const std::string& path, const MlpWeights& w);
MlpWeights load_weights(const std::string& path);

}  // namespace sot
