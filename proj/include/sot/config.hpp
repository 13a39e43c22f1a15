#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "sot/crossbar.hpp"
#include "sot/device.hpp"
#include "sot/train.hpp"

namespace sot {

// Flat experiment configuration; every key has a default so a missing config
// file runs the reference stack. Parsed from `key = value` lines, echoed in
// full into every output artifact.
struct ExperimentConfig {
    // run
    std::uint64_t seed = 12345;
    long threads = 0;  // 0 = hardware concurrency
    std::string out_dir = "out";

    // device: free layer
    double semi_axis_a = 20e-9;
    double semi_axis_b = 20e-9;
    double thickness = 1.5e-9;
    double ms = 1e6;
    double alpha = 0.0122;
    double temperature = 300.0;
    double barrier_kt = 31.44;
    double ku2 = -1.0;  // >= 0 overrides barrier calibration
    double h_applied_x = 0.0, h_applied_y = 0.0, h_applied_z = 0.0;

    // heavy metal
    double hm_length = 40e-9;
    double hm_width = 40e-9;
    double hm_thickness = 2e-9;
    double hm_resistivity = 2e-6;
    double theta_sh = 0.3;

    // mtj
    double mtj_r_p = 8e3;
    double mtj_tmr = 1.0;
    double mtj_polarization = 0.5;

    // pulses
    double i_clock = 85e-6;
    double t_clock = 2e-9;
    double i_write = 0.0;
    double t_write = 1e-9;
    double gap = 0.0;
    double relax = 3e-9;

    // integrator
    double dt = 1e-13;
    bool renormalize = true;

    // sweep
    std::vector<double> sweep_clock{85e-6};
    std::vector<double> sweep_write;  // default filled by make_write_axis()
    long sweep_trials = 1000;

    // crossbar
    double v_supply = 1.0;
    double g_min = 6.25e-6;
    double g_max = 1.25e-4;
    long levels = 32;
    double g_off = 1.25e-10;
    double g_sense = 3e-4;
    double r_on = 0.0;

    // training
    long train_hidden = 25;
    long train_epochs = 200;
    long train_batch = 32;
    double train_learning_rate = 0.5;
    double train_k_sigmoid = 5.0;
    double train_target_accuracy = 0.90;
    std::uint64_t train_seed = 1;
    long train_count = 0;  // images taken from the train set, 0 = all

    // evaluation
    long eval_count = 100;
    long eval_runs = 100;
    std::string eval_mode = "lookup";  // deterministic | lookup | full

    // data files
    std::string train_images = "data/mnist/train-images-idx3-ubyte";
    std::string train_labels = "data/mnist/train-labels-idx1-ubyte";
    std::string test_images = "data/mnist/t10k-images-idx3-ubyte";
    std::string test_labels = "data/mnist/t10k-labels-idx1-ubyte";

    // switch command
    long switch_repeats = 1;
    long record_stride = 10;
};

// Applies `key = value` lines; '#' starts a comment. Unknown keys and
// malformed values raise ConfigError naming file and line.
void parse_config_file(const std::string& path, ExperimentConfig& cfg);

// One "key=value" assignment (CLI override); `where` names the source for
// diagnostics.
void apply_assignment(ExperimentConfig& cfg, const std::string& assignment, const std::string& where);

// Every registered key with its current value; embedded in output artifacts.
nlohmann::json config_echo(const ExperimentConfig& cfg);

// Registered key list (echo and docs share it).
std::vector<std::string> config_keys();

// Domain object assembly. make_device calibrates Ku2 unless cfg.ku2 >= 0.
DeviceParams make_device(const ExperimentConfig& cfg);
PulseSchedule make_pulse(const ExperimentConfig& cfg);
IntegratorConfig make_integrator(const ExperimentConfig& cfg);
CrossbarParams make_crossbar(const ExperimentConfig& cfg);
TrainConfig make_train(const ExperimentConfig& cfg);
std::vector<double> write_axis(const ExperimentConfig& cfg);  // default -10..10 uA, 21 points
int resolve_threads(const ExperimentConfig& cfg);

}  // namespace sot
