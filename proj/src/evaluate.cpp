#include "sot/evaluate.hpp"

#include <stdexcept>

#include "sot/parallel.hpp"
#include "sot/rng.hpp"

namespace sot {

EvalReport evaluate_network(const NetworkConductances& net, const Dataset& ds,
                            const CrossbarParams& p, const NeuronModel& model, long runs,
                            std::uint64_t master_seed, int threads) {
    if (runs <= 0) throw std::invalid_argument("evaluate: runs must be positive");
    if (ds.size() == 0) throw std::invalid_argument("evaluate: empty dataset");

    const std::size_t n = ds.size();
    const std::size_t total = n * static_cast<std::size_t>(runs);
    std::vector<std::int8_t> predicted(total);
    std::vector<std::uint8_t> ambiguous(total);

    parallel_for(total, threads, [&](std::size_t g) {
        const std::size_t run = g / n;
        const std::size_t img = g % n;
        RandomStream rng(derive_seed(master_seed, run, img));
        const InferenceResult r = network_infer(net, ds.images[img], p, model, &rng);
        predicted[g] = static_cast<std::int8_t>(r.predicted);
        ambiguous[g] = r.ambiguous ? 1 : 0;
    });

    EvalReport rep;
    rep.images = n;
    rep.runs = runs;
    rep.per_run_accuracy.assign(runs, 0.0);

    std::array<long, 4> class_total{};
    std::array<long, 4> class_hits{};
    long hits = 0, amb = 0;
    for (std::size_t g = 0; g < total; ++g) {
        const std::size_t run = g / n;
        const std::size_t img = g % n;
        const int truth = ds.labels[img];
        const int pred = predicted[g];
        ++class_total[truth];
        if (pred >= 0 && pred < 4) ++rep.confusion[truth][pred];
        if (pred == truth) {
            ++hits;
            ++class_hits[truth];
            rep.per_run_accuracy[run] += 1.0;
        }
        amb += ambiguous[g];
    }
    for (double& a : rep.per_run_accuracy) a /= static_cast<double>(n);
    rep.accuracy = static_cast<double>(hits) / total;
    rep.ambiguous_rate = static_cast<double>(amb) / total;
    for (int c = 0; c < 4; ++c)
        rep.per_class_accuracy[c] =
            class_total[c] ? static_cast<double>(class_hits[c]) / class_total[c] : 0.0;
    return rep;
}

}  // namespace sot
