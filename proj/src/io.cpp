#include "sot/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>

#include "sot/constants.hpp"
#include "sot/errors.hpp"
#include "sot/fields.hpp"

namespace sot {

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError(path + ": cannot open for writing");
    return out;
}

void write_echo_comments(std::ofstream& out, const nlohmann::json& echo) {
    for (const auto& [key, value] : echo.items()) out << "# " << key << " = " << value.dump() << "\n";
}

nlohmann::json stats_json(const SwitchStatistics& st) {
    nlohmann::json j{{"i_clock", st.i_clock}, {"i_write", st.i_write},   {"trials", st.trials},
                     {"successes", st.successes}, {"ap_count", st.ap_count}, {"failed", st.failed}};
    if (st.failed) {
        j["error"] = st.error;
    } else {
        j["p_hat"] = st.p_hat;
        j["p_ap"] = st.p_ap;
        j["ci95"] = st.ci95;
    }
    return j;
}

SwitchStatistics stats_from_json(const nlohmann::json& j) {
    SwitchStatistics st;
    st.i_clock = j.at("i_clock").get<double>();
    st.i_write = j.at("i_write").get<double>();
    st.trials = j.at("trials").get<long>();
    st.successes = j.at("successes").get<long>();
    st.ap_count = j.at("ap_count").get<long>();
    st.failed = j.value("failed", false);
    if (st.failed) {
        st.error = j.value("error", "unknown");
        st.p_hat = st.p_ap = st.ci95 = std::numeric_limits<double>::quiet_NaN();
    } else {
        st.p_hat = j.at("p_hat").get<double>();
        st.p_ap = j.at("p_ap").get<double>();
        st.ci95 = j.at("ci95").get<double>();
    }
    return st;
}

}  // namespace

void write_trajectory_csv(const std::string& path, const std::vector<TrajectorySample>& samples,
                          const DeviceParams& dev, const nlohmann::json& echo) {
    std::ofstream out = open_out(path);
    write_echo_comments(out, echo);
    const double t_ref = dev.material.temperature > 0.0 ? dev.material.temperature : 300.0;
    if (dev.material.temperature <= 0.0) out << "# energy_reference_kelvin = 300\n";
    const double kt = kConst.k_b * t_ref;
    out << "t,mx,my,mz,E_kT\n";
    out << std::setprecision(12);
    for (const auto& s : samples) {
        const double e = magnetic_energy(s.m, dev.material, dev.geometry, dev.demag) / kt;
        out << s.t << "," << s.m.x << "," << s.m.y << "," << s.m.z << "," << e << "\n";
    }
    if (!out) throw IoError(path + ": write failed");
}

void write_phase_diagram_csv(const std::string& path, const PhaseDiagram& pd,
                             const nlohmann::json& echo) {
    std::ofstream out = open_out(path);
    write_echo_comments(out, echo);
    out << "i_clock,i_write,trials,p_hat,p_ap,ci95\n";
    out << std::setprecision(12);
    for (const auto& st : pd.cells)
        out << st.i_clock << "," << st.i_write << "," << st.trials << "," << st.p_hat << ","
            << st.p_ap << "," << st.ci95 << "\n";
    if (!out) throw IoError(path + ": write failed");
}

void write_phase_diagram_json(const std::string& path, const PhaseDiagram& pd,
                              const nlohmann::json& echo) {
    nlohmann::json cells = nlohmann::json::array();
    for (const auto& st : pd.cells) cells.push_back(stats_json(st));
    write_json_file(path, nlohmann::json{{"format", "sotsim-phase-diagram"},
                                         {"version", 1},
                                         {"clock_levels", pd.clock_levels},
                                         {"write_levels", pd.write_levels},
                                         {"trials", pd.trials},
                                         {"elapsed_s", pd.elapsed_s},
                                         {"trials_per_s", pd.trials_per_s},
                                         {"cells", cells},
                                         {"config", echo}});
}

PhaseDiagram read_phase_diagram_json(const std::string& path) {
    const nlohmann::json j = read_json_file(path);
    if (j.value("format", "") != "sotsim-phase-diagram" || j.value("version", 0) != 1)
        throw IoError(path + ": not a version-1 phase diagram file");
    PhaseDiagram pd;
    pd.clock_levels = j.at("clock_levels").get<std::vector<double>>();
    pd.write_levels = j.at("write_levels").get<std::vector<double>>();
    pd.trials = j.at("trials").get<long>();
    pd.elapsed_s = j.value("elapsed_s", 0.0);
    pd.trials_per_s = j.value("trials_per_s", 0.0);
    for (const auto& cj : j.at("cells")) pd.cells.push_back(stats_from_json(cj));
    if (pd.cells.size() != pd.clock_levels.size() * pd.write_levels.size())
        throw IoError(path + ": cell count does not match axes");
    return pd;
}

namespace {

nlohmann::json layer_json(const QuantizedLayer& q) {
    return {{"rows", q.level_plus.rows},
            {"cols", q.level_plus.cols},
            {"scale", q.scale},
            {"level_plus", q.level_plus.v},
            {"level_minus", q.level_minus.v}};
}

QuantizedLayer layer_from_json(const nlohmann::json& j, const CrossbarParams& p) {
    const auto rows = j.at("rows").get<std::size_t>();
    const auto cols = j.at("cols").get<std::size_t>();
    QuantizedLayer q;
    q.scale = j.at("scale").get<double>();
    q.level_plus = Grid<int>(rows, cols);
    q.level_minus = Grid<int>(rows, cols);
    q.level_plus.v = j.at("level_plus").get<std::vector<int>>();
    q.level_minus.v = j.at("level_minus").get<std::vector<int>>();
    if (q.level_plus.v.size() != rows * cols || q.level_minus.v.size() != rows * cols)
        throw IoError("conductances: level array length mismatch");
    q.g_plus = Grid<double>(rows, cols);
    q.g_minus = Grid<double>(rows, cols);
    for (std::size_t i = 0; i < rows * cols; ++i) {
        const int lp = q.level_plus.v[i], lm = q.level_minus.v[i];
        if (lp >= p.levels || lm >= p.levels) throw IoError("conductances: level index out of range");
        q.g_plus.v[i] = lp < 0 ? p.g_off : p.g_min + lp * p.step();
        q.g_minus.v[i] = lm < 0 ? p.g_off : p.g_min + lm * p.step();
    }
    return q;
}

nlohmann::json quant_params_json(const CrossbarParams& p) {
    return {{"g_min", p.g_min}, {"g_max", p.g_max}, {"levels", p.levels}, {"g_off", p.g_off}};
}

}  // namespace

void write_conductances_json(const std::string& path, const NetworkConductances& net,
                             const CrossbarParams& p, const nlohmann::json& echo) {
    write_json_file(path, nlohmann::json{{"format", "sotsim-conductances"},
                                         {"version", 1},
                                         {"quantization", quant_params_json(p)},
                                         {"layers", {layer_json(net.hidden), layer_json(net.output)}},
                                         {"config", echo}});
}

NetworkConductances read_conductances_json(const std::string& path) {
    const nlohmann::json j = read_json_file(path);
    if (j.value("format", "") != "sotsim-conductances" || j.value("version", 0) != 1)
        throw IoError(path + ": not a version-1 conductance file");
    const auto& qp = j.at("quantization");
    CrossbarParams p;
    p.g_min = qp.at("g_min").get<double>();
    p.g_max = qp.at("g_max").get<double>();
    p.levels = qp.at("levels").get<int>();
    p.g_off = qp.at("g_off").get<double>();
    const auto& layers = j.at("layers");
    if (!layers.is_array() || layers.size() != 2) throw IoError(path + ": expected 2 layers");
    NetworkConductances net{layer_from_json(layers[0], p), layer_from_json(layers[1], p)};
    if (net.output.level_plus.rows != net.hidden.level_plus.cols + 1)
        throw IoError(path + ": layer shapes do not chain");
    return net;
}

void write_eval_report_json(const std::string& path, const EvalReport& rep, const std::string& mode,
                            const nlohmann::json& echo) {
    nlohmann::json confusion = nlohmann::json::array();
    for (const auto& row : rep.confusion) confusion.push_back(row);
    write_json_file(path, nlohmann::json{{"format", "sotsim-accuracy-report"},
                                         {"version", 1},
                                         {"mode", mode},
                                         {"images", rep.images},
                                         {"runs", rep.runs},
                                         {"accuracy", rep.accuracy},
                                         {"per_class_accuracy", rep.per_class_accuracy},
                                         {"confusion", confusion},
                                         {"ambiguous_rate", rep.ambiguous_rate},
                                         {"per_run_accuracy", rep.per_run_accuracy},
                                         {"config", echo}});
}

void write_eval_runs_csv(const std::string& path, const EvalReport& rep, const nlohmann::json& echo) {
    std::ofstream out = open_out(path);
    write_echo_comments(out, echo);
    out << "run,accuracy\n";
    out << std::setprecision(12);
    for (std::size_t r = 0; r < rep.per_run_accuracy.size(); ++r)
        out << r << "," << rep.per_run_accuracy[r] << "\n";
    if (!out) throw IoError(path + ": write failed");
}

void write_json_file(const std::string& path, const nlohmann::json& j) {
    std::ofstream out = open_out(path);
    out << j.dump(2) << "\n";
    if (!out) throw IoError(path + ": write failed");
}

nlohmann::json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError(path + ": cannot open");
    try {
        nlohmann::json j;
        in >> j;
        return j;
    } catch (const std::exception& e) {
        throw IoError(path + ": " + e.what());
    }
}

}  // namespace sot
