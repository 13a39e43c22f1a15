#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sot/config.hpp"
#include "sot/errors.hpp"
#include "sot/evaluate.hpp"
#include "sot/io.hpp"
#include "sot/mnist.hpp"
#include "sot/train.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CliState {
    std::string config_path;
    std::vector<std::string> overrides;
    // Dedicated flags win over both the config file and --set.
    std::optional<std::uint64_t> seed;
    std::optional<long> threads;
    std::optional<std::string> out_dir;

    std::string weights_path;       // quantize input
    std::string conductances_path;  // infer/evaluate input
    std::string diagram_path;       // lookup-mode input
};

sot::ExperimentConfig resolve_config(const CliState& cli) {
    sot::ExperimentConfig cfg;
    if (!cli.config_path.empty()) sot::parse_config_file(cli.config_path, cfg);
    for (std::size_t i = 0; i < cli.overrides.size(); ++i)
        sot::apply_assignment(cfg, cli.overrides[i], "--set[" + std::to_string(i) + "]");
    if (cli.seed) cfg.seed = *cli.seed;
    if (cli.threads) cfg.threads = *cli.threads;
    if (cli.out_dir) cfg.out_dir = *cli.out_dir;
    return cfg;
}

fs::path ensure_out_dir(const sot::ExperimentConfig& cfg) {
    fs::path dir(cfg.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw sot::IoError(cfg.out_dir + ": cannot create output directory");
    return dir;
}

std::string default_in(const CliState& cli, const std::string& given,
                       const sot::ExperimentConfig& cfg, const char* name) {
    (void)cli;
    if (!given.empty()) return given;
    return (fs::path(cfg.out_dir) / name).string();
}

std::string state_name(sot::NeuronState s) {
    return s == sot::NeuronState::AntiParallel ? "AP" : "P";
}

int cmd_switch(const CliState& cli) {
    const sot::ExperimentConfig cfg = resolve_config(cli);
    const sot::DeviceParams dev = sot::make_device(cfg);
    const sot::PulseSchedule pulse = sot::make_pulse(cfg);
    const sot::IntegratorConfig integ = sot::make_integrator(cfg);
    const json echo = sot::config_echo(cfg);

    json repeats = json::array();
    std::vector<std::vector<sot::TrajectorySample>> trajectories;
    for (long k = 0; k < cfg.switch_repeats; ++k) {
        sot::RandomStream rng(sot::derive_seed(cfg.seed, 0, k));
        sot::TrajectoryRecorder rec(cfg.record_stride);
        const sot::Vec3 m0 = sot::random_pole(rng);
        const sot::SwitchOutcome out = sot::simulate_two_step(dev, pulse, integ, m0, rng, &rec);
        trajectories.push_back(rec.samples());
        repeats.push_back({{"repeat", k},
                           {"initial_mz", m0.z},
                           {"state", state_name(out.state)},
                           {"mz_final", out.m_final.z},
                           {"abs_my_clock_end", out.abs_my_clock_end},
                           {"max_prenorm_error", out.max_prenorm_error},
                           {"steps", out.steps}});
    }

    const fs::path dir = ensure_out_dir(cfg);
    for (long k = 0; k < cfg.switch_repeats; ++k) {
        const fs::path p = dir / ("trajectory_" + std::to_string(k) + ".csv");
        sot::write_trajectory_csv(p.string(), trajectories[k], dev, echo);
    }
    const sot::ClockPower cp = sot::clock_power(pulse, dev.hm);
    sot::write_json_file((dir / "switch_summary.json").string(),
                         json{{"format", "sotsim-switch-summary"},
                              {"version", 1},
                              {"repeats", repeats},
                              {"clock_power_w", cp.power},
                              {"clock_energy_j", cp.energy},
                              {"calibrated_ku2", dev.material.ku2},
                              {"config", echo}});
    std::cout << "[switch] " << cfg.switch_repeats << " repeat(s) written to " << dir.string()
              << "\n";
    return 0;
}

int cmd_phase_diagram(const CliState& cli) {
    const sot::ExperimentConfig cfg = resolve_config(cli);
    const sot::DeviceParams dev = sot::make_device(cfg);
    const sot::PulseSchedule pulse = sot::make_pulse(cfg);
    const sot::IntegratorConfig integ = sot::make_integrator(cfg);
    const std::vector<double> writes = sot::write_axis(cfg);
    const json echo = sot::config_echo(cfg);

    auto progress = [](std::size_t done, std::size_t total) {
        std::fprintf(stderr, "\r[phase-diagram] %zu/%zu points", done, total);
        if (done == total) std::fprintf(stderr, "\n");
        std::fflush(stderr);
    };
    const sot::PhaseDiagram pd =
        sot::phase_diagram(dev, pulse, integ, cfg.sweep_clock, writes, cfg.sweep_trials, cfg.seed,
                           sot::resolve_threads(cfg), progress);

    const fs::path dir = ensure_out_dir(cfg);
    sot::write_phase_diagram_csv((dir / "phase_diagram.csv").string(), pd, echo);
    sot::write_phase_diagram_json((dir / "phase_diagram.json").string(), pd, echo);
    std::cout << "[phase-diagram] " << pd.cells.size() << " points x " << pd.trials << " trials in "
              << pd.elapsed_s << " s (" << pd.trials_per_s << " trials/s)\n";
    return 0;
}

int cmd_train(const CliState& cli) {
    const sot::ExperimentConfig cfg = resolve_config(cli);
    const sot::Dataset train = sot::load_dataset(cfg.train_images, cfg.train_labels,
                                                 static_cast<std::size_t>(cfg.train_count));
    const sot::TrainConfig tc = sot::make_train(cfg);
    const sot::MlpWeights w = sot::train_network(train, tc);
    const double train_acc = sot::evaluate_float(w, train, tc.k_sigmoid);

    const sot::Dataset eval = sot::load_dataset(cfg.test_images, cfg.test_labels,
                                                static_cast<std::size_t>(cfg.eval_count));
    const double eval_acc = sot::evaluate_float(w, eval, tc.k_sigmoid);

    const fs::path dir = ensure_out_dir(cfg);
    sot::save_weights((dir / "weights.json").string(), w);
    sot::write_json_file((dir / "train_summary.json").string(),
                         json{{"format", "sotsim-train-summary"},
                              {"version", 1},
                              {"train_images", train.size()},
                              {"train_accuracy", train_acc},
                              {"eval_images", eval.size()},
                              {"eval_accuracy_float", eval_acc},
                              {"config", sot::config_echo(cfg)}});
    std::cout << "[train] train accuracy " << train_acc << ", float eval accuracy " << eval_acc
              << "\n";
    return 0;
}

int cmd_quantize(const CliState& cli) {
    const sot::ExperimentConfig cfg = resolve_config(cli);
    const std::string weights_path = default_in(cli, cli.weights_path, cfg, "weights.json");
    const sot::MlpWeights w = sot::load_weights(weights_path);
    const sot::CrossbarParams p = sot::make_crossbar(cfg);
    const sot::NetworkConductances net{sot::quantize_weights(w.w1, p), sot::quantize_weights(w.w2, p)};

    const fs::path dir = ensure_out_dir(cfg);
    sot::write_conductances_json((dir / "conductances.json").string(), net, p,
                                 sot::config_echo(cfg));
    std::cout << "[quantize] scales: hidden " << net.hidden.scale << " S, output "
              << net.output.scale << " S\n";
    return 0;
}

sot::NeuronModel make_model(const sot::ExperimentConfig& cfg, const CliState& cli,
                            sot::DeviceParams& dev_storage, sot::PhaseDiagram& pd_storage) {
    sot::NeuronModel model;
    if (cfg.eval_mode == "deterministic") {
        model.mode = sot::InferenceMode::Deterministic;
    } else if (cfg.eval_mode == "lookup") {
        model.mode = sot::InferenceMode::StochasticLookup;
        const std::string path = default_in(cli, cli.diagram_path, cfg, "phase_diagram.json");
        pd_storage = sot::read_phase_diagram_json(path);
        model.diagram = &pd_storage;
        model.clock_current = cfg.i_clock;
    } else if (cfg.eval_mode == "full") {
        model.mode = sot::InferenceMode::StochasticFull;
        dev_storage = sot::make_device(cfg);
        model.device = &dev_storage;
        model.pulse = sot::make_pulse(cfg);
        model.integrator = sot::make_integrator(cfg);
    } else {
        throw sot::ConfigError("eval.mode must be deterministic, lookup, or full (got '" +
                               cfg.eval_mode + "')");
    }
    return model;
}

int cmd_infer(const CliState& cli) {
    const sot::ExperimentConfig cfg = resolve_config(cli);
    const std::string cpath = default_in(cli, cli.conductances_path, cfg, "conductances.json");
    const sot::NetworkConductances net = sot::read_conductances_json(cpath);
    const sot::CrossbarParams p = sot::make_crossbar(cfg);
    const sot::Dataset ds = sot::load_dataset(cfg.test_images, cfg.test_labels,
                                              static_cast<std::size_t>(cfg.eval_count));
    sot::DeviceParams dev;
    sot::PhaseDiagram pd;
    const sot::NeuronModel model = make_model(cfg, cli, dev, pd);

    json predictions = json::array();
    long hits = 0;
    for (std::size_t i = 0; i < ds.size(); ++i) {
        sot::RandomStream rng(sot::derive_seed(cfg.seed, 0, i));
        const sot::InferenceResult r = sot::network_infer(net, ds.images[i], p, model, &rng);
        hits += r.predicted == ds.labels[i];
        predictions.push_back({{"index", i},
                               {"label", ds.labels[i]},
                               {"predicted", r.predicted},
                               {"ambiguous", r.ambiguous}});
    }

    const fs::path dir = ensure_out_dir(cfg);
    sot::write_json_file((dir / "predictions.json").string(),
                         json{{"format", "sotsim-predictions"},
                              {"version", 1},
                              {"mode", cfg.eval_mode},
                              {"accuracy", static_cast<double>(hits) / ds.size()},
                              {"predictions", predictions},
                              {"config", sot::config_echo(cfg)}});
    std::cout << "[infer] accuracy " << static_cast<double>(hits) / ds.size() << " over "
              << ds.size() << " images\n";
    return 0;
}

int cmd_evaluate(const CliState& cli) {
    const sot::ExperimentConfig cfg = resolve_config(cli);
    const std::string cpath = default_in(cli, cli.conductances_path, cfg, "conductances.json");
    const sot::NetworkConductances net = sot::read_conductances_json(cpath);
    const sot::CrossbarParams p = sot::make_crossbar(cfg);
    const sot::Dataset ds = sot::load_dataset(cfg.test_images, cfg.test_labels,
                                              static_cast<std::size_t>(cfg.eval_count));
    sot::DeviceParams dev;
    sot::PhaseDiagram pd;
    const sot::NeuronModel model = make_model(cfg, cli, dev, pd);

    const sot::EvalReport rep = sot::evaluate_network(net, ds, p, model, cfg.eval_runs, cfg.seed,
                                                      sot::resolve_threads(cfg));

    const fs::path dir = ensure_out_dir(cfg);
    const json echo = sot::config_echo(cfg);
    sot::write_eval_report_json((dir / "accuracy_report.json").string(), rep, cfg.eval_mode, echo);
    sot::write_eval_runs_csv((dir / "evaluate_runs.csv").string(), rep, echo);
    std::cout << "[evaluate] mode " << cfg.eval_mode << ": accuracy " << rep.accuracy << " over "
              << rep.images << " images x " << rep.runs << " runs\n";
    return 0;
}

int cmd_power(const CliState& cli) {
    const sot::ExperimentConfig cfg = resolve_config(cli);
    const sot::PulseSchedule pulse = sot::make_pulse(cfg);
    const sot::HeavyMetalParams hm{cfg.hm_length, cfg.hm_width, cfg.hm_thickness,
                                   cfg.hm_resistivity, cfg.theta_sh};
    const sot::ClockPower cp = sot::clock_power(pulse, hm);

    json report{{"format", "sotsim-power-report"},
                {"version", 1},
                {"clock",
                 {{"power_w", cp.power},
                  {"energy_per_clock_j", cp.energy},
                  {"basis", "closed form I^2*R of the heavy metal clock path"}}},
                {"config", sot::config_echo(cfg)}};

    // Static crossbar dissipation with every input active, from the same
    // single-node circuit the inference uses. No measured reference exists
    // for this figure, hence the label.
    if (!cli.conductances_path.empty()) {
        const sot::NetworkConductances net = sot::read_conductances_json(cli.conductances_path);
        const sot::CrossbarParams p = sot::make_crossbar(cfg);
        double total = 0.0;
        for (const sot::QuantizedLayer* layer : {&net.hidden, &net.output}) {
            const std::size_t rows = layer->g_plus.rows, cols = layer->g_plus.cols;
            const std::vector<std::uint8_t> ones(rows - 1, 1);
            for (std::size_t c = 0; c < cols; ++c) {
                const double i_col = sot::synaptic_current(*layer, c, ones, p);
                const double v_node = i_col / p.g_sense;
                double pw = p.g_sense * v_node * v_node;
                for (std::size_t r = 0; r < rows; ++r) {
                    const double vp = p.v_supply - v_node, vm = -p.v_supply - v_node;
                    pw += layer->g_plus.at(r, c) * vp * vp + layer->g_minus.at(r, c) * vm * vm;
                }
                total += pw;
            }
        }
        report["crossbar_static"] = {{"power_w", total},
                                     {"basis", "artifact estimate, all inputs active"}};
    }

    const fs::path dir = ensure_out_dir(cfg);
    sot::write_json_file((dir / "power_report.json").string(), report);
    std::cout << "[power] clock " << cp.power << " W, " << cp.energy << " J per pulse\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"stochastic spin-orbit-torque neuron simulator"};
    app.require_subcommand(1);

    CliState cli;
    app.add_option("--config", cli.config_path, "key = value config file")
        ->envname("SOTSIM_CONFIG");
    app.add_option("--seed", cli.seed, "master random seed (overrides run.seed)");
    app.add_option("--threads", cli.threads, "worker threads, 0 = hardware (overrides run.threads)");
    app.add_option("--out", cli.out_dir, "output directory (overrides run.out_dir)");
    app.add_option("--set", cli.overrides, "config override key=value (repeatable)");

    CLI::App* sw = app.add_subcommand("switch", "simulate two-step switching, write trajectories");
    CLI::App* pd = app.add_subcommand("phase-diagram", "Monte Carlo switching probability sweep");
    CLI::App* tr = app.add_subcommand("train", "train the 4-class reference network");
    CLI::App* qu = app.add_subcommand("quantize", "map trained weights onto conductance levels");
    qu->add_option("--weights", cli.weights_path, "weights JSON (default <out>/weights.json)");
    CLI::App* in = app.add_subcommand("infer", "single classification pass over the eval set");
    CLI::App* ev = app.add_subcommand("evaluate", "repeated stochastic evaluation");
    for (CLI::App* c : {in, ev}) {
        c->add_option("--conductances", cli.conductances_path,
                      "conductance JSON (default <out>/conductances.json)");
        c->add_option("--diagram", cli.diagram_path,
                      "phase diagram JSON for lookup mode (default <out>/phase_diagram.json)");
    }
    CLI::App* pw = app.add_subcommand("power", "closed-form power figures");
    pw->add_option("--conductances", cli.conductances_path,
                   "include static crossbar estimate for these conductances");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (sw->parsed()) return cmd_switch(cli);
        if (pd->parsed()) return cmd_phase_diagram(cli);
        if (tr->parsed()) return cmd_train(cli);
        if (qu->parsed()) return cmd_quantize(cli);
        if (in->parsed()) return cmd_infer(cli);
        if (ev->parsed()) return cmd_evaluate(cli);
        if (pw->parsed()) return cmd_power(cli);
    } catch (const sot::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        // parameter validators reject out-of-domain values with this type
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const sot::IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return 3;
    } catch (const sot::SimulationDiverged& e) {
        std::cerr << "integration diverged: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
