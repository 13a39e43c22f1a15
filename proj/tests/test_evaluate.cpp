#include <array>
#include <cstdint>
#include <vector>

#include "doctest.h"
#include "sot/evaluate.hpp"
#include "sot/train.hpp"

using namespace sot;

namespace {

// Trivially separable dataset plus a perfect hand-built network: hidden
// layer passes the 4 marker pixels through, output matches them 1:1.
Dataset marker_dataset(int per_class) {
    Dataset ds;
    for (int i = 0; i < per_class; ++i)
        for (std::uint8_t cls = 0; cls < 4; ++cls) {
            std::array<std::uint8_t, 64> img{};
            img[10 + cls] = 1;
            ds.images.push_back(img);
            ds.labels.push_back(cls);
        }
    return ds;
}

NetworkConductances marker_network(const CrossbarParams& p) {
    Matrix w1(65, 4);
    for (int c = 0; c < 4; ++c) {
        w1.at(10 + c, c) = 1.0;
        w1.at(64, c) = -0.5;  // bias keeps silent columns negative
    }
    Matrix w2(5, 4);
    for (int c = 0; c < 4; ++c) {
        w2.at(c, c) = 1.0;
        w2.at(4, c) = -0.5;
    }
    return {quantize_weights(w1, p), quantize_weights(w2, p)};
}

}  // namespace

TEST_CASE("deterministic evaluation scores a perfect network") {
    const CrossbarParams p;
    const NetworkConductances net = marker_network(p);
    const Dataset ds = marker_dataset(5);
    const NeuronModel det;

    const EvalReport rep = evaluate_network(net, ds, p, det, 3, 1, 2);
    CHECK(rep.images == 20);
    CHECK(rep.runs == 3);
    CHECK(rep.accuracy == 1.0);
    CHECK(rep.ambiguous_rate == 0.0);
    for (int c = 0; c < 4; ++c) {
        CHECK(rep.per_class_accuracy[c] == 1.0);
        CHECK(rep.confusion[c][c] == 15);  // 5 images * 3 runs
    }
    REQUIRE(rep.per_run_accuracy.size() == 3);
    CHECK(rep.per_run_accuracy[0] == 1.0);
}

TEST_CASE("stochastic evaluation is reproducible across thread counts") {
    const CrossbarParams p;
    const NetworkConductances net = marker_network(p);
    const Dataset ds = marker_dataset(3);

    // Narrow write axis: the ~21 uA column currents clamp to the edge
    // probabilities, giving near-saturated neurons.
    PhaseDiagram pd;
    pd.clock_levels = {85e-6};
    pd.write_levels = {-5e-6, 5e-6};
    pd.trials = 1;
    for (double wl : pd.write_levels) {
        SwitchStatistics s;
        s.i_clock = 85e-6;
        s.i_write = wl;
        s.p_ap = wl < 0 ? 0.02 : 0.98;
        pd.cells.push_back(s);
    }
    NeuronModel model;
    model.mode = InferenceMode::StochasticLookup;
    model.diagram = &pd;

    const EvalReport a = evaluate_network(net, ds, p, model, 16, 777, 1);
    const EvalReport b = evaluate_network(net, ds, p, model, 16, 777, 4);
    CHECK(a.accuracy == b.accuracy);
    CHECK(a.confusion == b.confusion);
    CHECK(a.per_run_accuracy == b.per_run_accuracy);
    CHECK(a.ambiguous_rate == b.ambiguous_rate);

    // Near-saturated cell probabilities: high but not perfect accuracy.
    CHECK(a.accuracy > 0.7);
    CHECK(a.accuracy < 1.0);

    const EvalReport c = evaluate_network(net, ds, p, model, 16, 778, 1);
    CHECK(a.per_run_accuracy != c.per_run_accuracy);
}
