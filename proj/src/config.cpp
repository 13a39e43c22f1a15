#include "sot/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "sot/errors.hpp"
#include "sot/parallel.hpp"

namespace sot {

namespace {

enum class FieldType { Double, Long, U64, Bool, String, DoubleList };

struct Field {
    FieldType type;
    void* ptr;
};

using FieldMap = std::map<std::string, Field>;

FieldMap schema(ExperimentConfig& c) {
    return {
        {"run.seed", {FieldType::U64, &c.seed}},
        {"run.threads", {FieldType::Long, &c.threads}},
        {"run.out_dir", {FieldType::String, &c.out_dir}},
        {"device.semi_axis_a", {FieldType::Double, &c.semi_axis_a}},
        {"device.semi_axis_b", {FieldType::Double, &c.semi_axis_b}},
        {"device.thickness", {FieldType::Double, &c.thickness}},
        {"device.ms", {FieldType::Double, &c.ms}},
        {"device.alpha", {FieldType::Double, &c.alpha}},
        {"device.temperature", {FieldType::Double, &c.temperature}},
        {"device.barrier_kt", {FieldType::Double, &c.barrier_kt}},
        {"device.ku2", {FieldType::Double, &c.ku2}},
        {"device.h_applied_x", {FieldType::Double, &c.h_applied_x}},
        {"device.h_applied_y", {FieldType::Double, &c.h_applied_y}},
        {"device.h_applied_z", {FieldType::Double, &c.h_applied_z}},
        {"hm.length", {FieldType::Double, &c.hm_length}},
        {"hm.width", {FieldType::Double, &c.hm_width}},
        {"hm.thickness", {FieldType::Double, &c.hm_thickness}},
        {"hm.resistivity", {FieldType::Double, &c.hm_resistivity}},
        {"hm.theta_sh", {FieldType::Double, &c.theta_sh}},
        {"mtj.r_p", {FieldType::Double, &c.mtj_r_p}},
        {"mtj.tmr", {FieldType::Double, &c.mtj_tmr}},
        {"mtj.polarization", {FieldType::Double, &c.mtj_polarization}},
        {"pulse.i_clock", {FieldType::Double, &c.i_clock}},
        {"pulse.t_clock", {FieldType::Double, &c.t_clock}},
        {"pulse.i_write", {FieldType::Double, &c.i_write}},
        {"pulse.t_write", {FieldType::Double, &c.t_write}},
        {"pulse.gap", {FieldType::Double, &c.gap}},
        {"pulse.relax", {FieldType::Double, &c.relax}},
        {"integrator.dt", {FieldType::Double, &c.dt}},
        {"integrator.renormalize", {FieldType::Bool, &c.renormalize}},
        {"sweep.clock", {FieldType::DoubleList, &c.sweep_clock}},
        {"sweep.write", {FieldType::DoubleList, &c.sweep_write}},
        {"sweep.trials", {FieldType::Long, &c.sweep_trials}},
        {"crossbar.v_supply", {FieldType::Double, &c.v_supply}},
        {"crossbar.g_min", {FieldType::Double, &c.g_min}},
        {"crossbar.g_max", {FieldType::Double, &c.g_max}},
        {"crossbar.levels", {FieldType::Long, &c.levels}},
        {"crossbar.g_off", {FieldType::Double, &c.g_off}},
        {"crossbar.g_sense", {FieldType::Double, &c.g_sense}},
        {"crossbar.r_on", {FieldType::Double, &c.r_on}},
        {"train.hidden", {FieldType::Long, &c.train_hidden}},
        {"train.epochs", {FieldType::Long, &c.train_epochs}},
        {"train.batch", {FieldType::Long, &c.train_batch}},
        {"train.learning_rate", {FieldType::Double, &c.train_learning_rate}},
        {"train.k_sigmoid", {FieldType::Double, &c.train_k_sigmoid}},
        {"train.target_accuracy", {FieldType::Double, &c.train_target_accuracy}},
        {"train.seed", {FieldType::U64, &c.train_seed}},
        {"train.count", {FieldType::Long, &c.train_count}},
        {"eval.count", {FieldType::Long, &c.eval_count}},
        {"eval.runs", {FieldType::Long, &c.eval_runs}},
        {"eval.mode", {FieldType::String, &c.eval_mode}},
        {"data.train_images", {FieldType::String, &c.train_images}},
        {"data.train_labels", {FieldType::String, &c.train_labels}},
        {"data.test_images", {FieldType::String, &c.test_images}},
        {"data.test_labels", {FieldType::String, &c.test_labels}},
        {"switch.repeats", {FieldType::Long, &c.switch_repeats}},
        {"switch.record_stride", {FieldType::Long, &c.record_stride}},
    };
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& v, const std::string& where) {
    try {
        std::size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing characters");
        return d;
    } catch (const std::exception&) {
        throw ConfigError(where + ": invalid number '" + v + "'");
    }
}

std::vector<double> parse_list(const std::string& v, const std::string& where) {
    // Either "start:step:stop" (stop inclusive within half a step) or a
    // comma-separated list.
    if (v.find(':') != std::string::npos) {
        std::vector<std::string> parts;
        std::stringstream ss(v);
        std::string item;
        while (std::getline(ss, item, ':')) parts.push_back(trim(item));
        if (parts.size() != 3) throw ConfigError(where + ": range needs start:step:stop");
        const double start = parse_double(parts[0], where);
        const double step = parse_double(parts[1], where);
        const double stop = parse_double(parts[2], where);
        if (step == 0.0 || (stop - start) * step < 0.0)
            throw ConfigError(where + ": range step does not reach stop");
        std::vector<double> out;
        const long n = std::lround((stop - start) / step);
        for (long i = 0; i <= n; ++i) out.push_back(start + i * step);
        return out;
    }
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(parse_double(item, where));
    }
    if (out.empty()) throw ConfigError(where + ": empty list");
    return out;
}

void set_field(const FieldMap& fields, const std::string& key, const std::string& value,
               const std::string& where) {
    const auto it = fields.find(key);
    if (it == fields.end()) throw ConfigError(where + ": unknown key '" + key + "'");
    const Field& f = it->second;
    switch (f.type) {
        case FieldType::Double:
            *static_cast<double*>(f.ptr) = parse_double(value, where);
            break;
        case FieldType::Long:
            try {
                std::size_t pos = 0;
                *static_cast<long*>(f.ptr) = std::stol(value, &pos);
                if (pos != value.size()) throw std::invalid_argument("trailing characters");
            } catch (const std::exception&) {
                throw ConfigError(where + ": invalid integer '" + value + "'");
            }
            break;
        case FieldType::U64:
            try {
                std::size_t pos = 0;
                *static_cast<std::uint64_t*>(f.ptr) = std::stoull(value, &pos);
                if (pos != value.size()) throw std::invalid_argument("trailing characters");
            } catch (const std::exception&) {
                throw ConfigError(where + ": invalid unsigned integer '" + value + "'");
            }
            break;
        case FieldType::Bool:
            if (value == "true" || value == "1")
                *static_cast<bool*>(f.ptr) = true;
            else if (value == "false" || value == "0")
                *static_cast<bool*>(f.ptr) = false;
            else
                throw ConfigError(where + ": invalid bool '" + value + "' (use true/false)");
            break;
        case FieldType::String:
            *static_cast<std::string*>(f.ptr) = value;
            break;
        case FieldType::DoubleList:
            *static_cast<std::vector<double>*>(f.ptr) = parse_list(value, where);
            break;
    }
}

}  // namespace

void parse_config_file(const std::string& path, ExperimentConfig& cfg) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path + ": cannot open config file");
    const FieldMap fields = schema(cfg);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::string where = path + ":" + std::to_string(lineno);
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError(where + ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError(where + ": empty key");
        set_field(fields, key, value, where);
    }
}

void apply_assignment(ExperimentConfig& cfg, const std::string& assignment, const std::string& where) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos) throw ConfigError(where + ": expected key=value");
    const FieldMap fields = schema(cfg);
    set_field(fields, trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)), where);
}

nlohmann::json config_echo(const ExperimentConfig& cfg) {
    ExperimentConfig& mutable_cfg = const_cast<ExperimentConfig&>(cfg);
    nlohmann::json j;
    for (const auto& [key, f] : schema(mutable_cfg)) {
        switch (f.type) {
            case FieldType::Double:
                j[key] = *static_cast<const double*>(f.ptr);
                break;
            case FieldType::Long:
                j[key] = *static_cast<const long*>(f.ptr);
                break;
            case FieldType::U64:
                j[key] = *static_cast<const std::uint64_t*>(f.ptr);
                break;
            case FieldType::Bool:
                j[key] = *static_cast<const bool*>(f.ptr);
                break;
            case FieldType::String:
                j[key] = *static_cast<const std::string*>(f.ptr);
                break;
            case FieldType::DoubleList:
                j[key] = *static_cast<const std::vector<double>*>(f.ptr);
                break;
        }
    }
    return j;
}

std::vector<std::string> config_keys() {
    ExperimentConfig c;
    std::vector<std::string> keys;
    for (const auto& [key, f] : schema(c)) keys.push_back(key);
    return keys;
}

DeviceParams make_device(const ExperimentConfig& cfg) {
    DeviceParams d;
    d.geometry = {cfg.semi_axis_a, cfg.semi_axis_b, cfg.thickness};
    d.material.ms = cfg.ms;
    d.material.alpha = cfg.alpha;
    d.material.temperature = cfg.temperature;
    d.demag = demag_factors(d.geometry);
    d.material.ku2 =
        cfg.ku2 >= 0.0 ? cfg.ku2 : calibrate_anisotropy(cfg.barrier_kt, d.material, d.geometry, d.demag);
    d.hm = {cfg.hm_length, cfg.hm_width, cfg.hm_thickness, cfg.hm_resistivity, cfg.theta_sh};
    d.mtj = {cfg.mtj_r_p, cfg.mtj_tmr, cfg.mtj_polarization};
    d.h_applied = {cfg.h_applied_x, cfg.h_applied_y, cfg.h_applied_z};
    d.material.validate();
    return d;
}

PulseSchedule make_pulse(const ExperimentConfig& cfg) {
    return {cfg.i_clock, cfg.t_clock, cfg.i_write, cfg.t_write, cfg.gap, cfg.relax};
}

IntegratorConfig make_integrator(const ExperimentConfig& cfg) { return {cfg.dt, cfg.renormalize}; }

CrossbarParams make_crossbar(const ExperimentConfig& cfg) {
    CrossbarParams p{cfg.v_supply, cfg.g_min,   cfg.g_max, static_cast<int>(cfg.levels),
                     cfg.g_off,    cfg.g_sense, cfg.r_on};
    p.validate();
    return p;
}

TrainConfig make_train(const ExperimentConfig& cfg) {
    TrainConfig t;
    t.hidden = static_cast<int>(cfg.train_hidden);
    t.epochs = static_cast<int>(cfg.train_epochs);
    t.batch = static_cast<int>(cfg.train_batch);
    t.learning_rate = cfg.train_learning_rate;
    t.k_sigmoid = cfg.train_k_sigmoid;
    t.target_accuracy = cfg.train_target_accuracy;
    t.seed = cfg.train_seed;
    return t;
}

std::vector<double> write_axis(const ExperimentConfig& cfg) {
    if (!cfg.sweep_write.empty()) return cfg.sweep_write;
    std::vector<double> axis;
    for (int i = -10; i <= 10; ++i) axis.push_back(i * 1e-6);
    return axis;
}

int resolve_threads(const ExperimentConfig& cfg) {
    if (cfg.threads > 0) return static_cast<int>(cfg.threads);
    return hardware_threads();
}

}  // namespace sot
