#include "sot/train.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>

#include "json.hpp"
#include "sot/errors.hpp"

namespace sot {

namespace {

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

struct Activations {
    std::vector<double> a1, z2;
};

Activations forward(const MlpWeights& w, const std::array<std::uint8_t, 64>& x, double k) {
    const std::size_t nh = w.w1.cols, no = w.w2.cols;
    Activations act;
    act.a1.resize(nh);
    act.z2.assign(no, 0.0);
    for (std::size_t j = 0; j < nh; ++j) {
        double z = w.w1.at(64, j);  // bias row
        for (std::size_t i = 0; i < 64; ++i)
            if (x[i]) z += w.w1.at(i, j);
        act.a1[j] = sigmoid(k * z);
    }
    for (std::size_t c = 0; c < no; ++c) {
        double z = w.w2.at(nh, c);
        for (std::size_t j = 0; j < nh; ++j) z += w.w2.at(j, c) * act.a1[j];
        act.z2[c] = z;
    }
    return act;
}

int argmax(const std::vector<double>& v) {
    return static_cast<int>(std::max_element(v.begin(), v.end()) - v.begin());
}

}  // namespace

MlpWeights train_network(const Dataset& train, const TrainConfig& cfg) {
    if (train.size() == 0) throw TrainingError("empty training set");
    if (cfg.hidden < 1 || cfg.outputs < 2) throw TrainingError("bad network shape");

    std::mt19937_64 rng(cfg.seed);
    auto init = [&](Matrix& m, std::size_t rows, std::size_t cols) {
        m = Matrix(rows, cols);
        const double r = 1.0 / std::sqrt(static_cast<double>(rows));
        std::uniform_real_distribution<double> dist(-r, r);
        for (double& x : m.v) x = dist(rng);
    };
    MlpWeights w;
    init(w.w1, 65, cfg.hidden);
    init(w.w2, cfg.hidden + 1, cfg.outputs);

    const double k = cfg.k_sigmoid;
    std::vector<std::size_t> order(train.size());
    std::iota(order.begin(), order.end(), 0);

    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        std::shuffle(order.begin(), order.end(), rng);
        for (std::size_t start = 0; start < order.size(); start += cfg.batch) {
            const std::size_t end = std::min(order.size(), start + cfg.batch);
            Matrix gw1(65, cfg.hidden), gw2(cfg.hidden + 1, cfg.outputs);
            for (std::size_t s = start; s < end; ++s) {
                const auto& x = train.images[order[s]];
                const int label = train.labels[order[s]];
                const Activations act = forward(w, x, k);

                std::vector<double> d2(cfg.outputs);
                for (int c = 0; c < cfg.outputs; ++c) {
                    const double a2 = sigmoid(k * act.z2[c]);
                    const double y = c == label ? 1.0 : 0.0;
                    d2[c] = (a2 - y) * k * a2 * (1.0 - a2);
                }
                std::vector<double> d1(cfg.hidden);
                for (int j = 0; j < cfg.hidden; ++j) {
                    double back = 0.0;
                    for (int c = 0; c < cfg.outputs; ++c) back += w.w2.at(j, c) * d2[c];
                    d1[j] = back * k * act.a1[j] * (1.0 - act.a1[j]);
                }
                for (int c = 0; c < cfg.outputs; ++c) {
                    for (int j = 0; j < cfg.hidden; ++j) gw2.at(j, c) += act.a1[j] * d2[c];
                    gw2.at(cfg.hidden, c) += d2[c];
                }
                for (int j = 0; j < cfg.hidden; ++j) {
                    if (d1[j] == 0.0) continue;
                    for (std::size_t i = 0; i < 64; ++i)
                        if (x[i]) gw1.at(i, j) += d1[j];
                    gw1.at(64, j) += d1[j];
                }
            }
            const double lr = cfg.learning_rate / static_cast<double>(end - start);
            for (std::size_t i = 0; i < w.w1.v.size(); ++i) w.w1.v[i] -= lr * gw1.v[i];
            for (std::size_t i = 0; i < w.w2.v.size(); ++i) w.w2.v[i] -= lr * gw2.v[i];
        }
    }

    const double acc = evaluate_float(w, train, k);
    if (acc < cfg.target_accuracy)
        throw TrainingError("training stalled: accuracy " + std::to_string(acc) + " below target " +
                            std::to_string(cfg.target_accuracy));
    return w;
}

double evaluate_float(const MlpWeights& w, const Dataset& ds, double k_sigmoid) {
    if (ds.size() == 0) return 0.0;
    std::size_t hits = 0;
    for (std::size_t i = 0; i < ds.size(); ++i) {
        const Activations act = forward(w, ds.images[i], k_sigmoid);
        if (argmax(act.z2) == ds.labels[i]) ++hits;
    }
    return static_cast<double>(hits) / ds.size();
}

namespace {

nlohmann::json matrix_json(const Matrix& m) {
    return {{"rows", m.rows}, {"cols", m.cols}, {"data", m.v}};
}

Matrix matrix_from_json(const nlohmann::json& j) {
    Matrix m(j.at("rows").get<std::size_t>(), j.at("cols").get<std::size_t>());
    const auto data = j.at("data").get<std::vector<double>>();
    if (data.size() != m.rows * m.cols) throw IoError("weights: data length mismatch");
    m.v = data;
    return m;
}

}  // namespace

void save_weights(const std::string& path, const MlpWeights& w) {
    nlohmann::json j{{"format", "sotsim-weights"},
                     {"version", 1},
                     {"layers", {matrix_json(w.w1), matrix_json(w.w2)}}};
    std::ofstream out(path);
    if (!out) throw IoError(path + ": cannot open for writing");
    out << j.dump(2) << "\n";
    if (!out) throw IoError(path + ": write failed");
}

MlpWeights load_weights(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError(path + ": cannot open");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw IoError(path + ": " + e.what());
    }
    if (j.value("format", "") != "sotsim-weights" || j.value("version", 0) != 1)
        throw IoError(path + ": not a version-1 weights file");
    const auto& layers = j.at("layers");
    if (!layers.is_array() || layers.size() != 2) throw IoError(path + ": expected 2 layers");
    MlpWeights w{matrix_from_json(layers[0]), matrix_from_json(layers[1])};
    if (w.w2.rows != w.w1.cols + 1) throw IoError(path + ": layer shapes do not chain");
    return w;
}

}  // namespace sot
