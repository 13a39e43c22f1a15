#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "sot/crossbar.hpp"
#include "sot/mnist.hpp"

namespace sot {

struct EvalReport {
    std::size_t images = 0;
    long runs = 0;
    double accuracy = 0;  // over images * runs classifications
    std::array<double, 4> per_class_accuracy{};
    std::array<std::array<long, 4>, 4> confusion{};  // [true][predicted]
    double ambiguous_rate = 0;     // classifications without exactly one set bit
    std::vector<double> per_run_accuracy;
};

// Repeats classification of every dataset image `runs` times. Each (run,
// image) pair gets its own derived random stream, so the report is identical
// for any thread count. Deterministic mode ignores the seed.
EvalReport evaluate_network(const NetworkConductances& net, const Dataset& ds,
                            const CrossbarParams& p, const NeuronModel& model, long runs,
                            std::uint64_t master_seed, int threads);

}  // namespace sot
