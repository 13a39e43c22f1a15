#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "sot/crossbar.hpp"
#include "sot/evaluate.hpp"
#include "sot/llg.hpp"
#include "sot/montecarlo.hpp"

namespace sot {

// Trajectory CSV: `# key = value` header comments with the full config echo,
// then `t,mx,my,mz,E_kT` rows. Energy is in units of kB*T; for T == 0 a
// 300 K reference is used and noted in the header.
void write_trajectory_csv(const std::string& path, const std::vector<TrajectorySample>& samples,
                          const DeviceParams& dev, const nlohmann::json& echo);

// Long-form sweep CSV: header comments, then `i_clock,i_write,trials,p_hat,p_ap,ci95`.
void write_phase_diagram_csv(const std::string& path, const PhaseDiagram& pd,
                             const nlohmann::json& echo);

void write_phase_diagram_json(const std::string& path, const PhaseDiagram& pd,
                              const nlohmann::json& echo);
PhaseDiagram read_phase_diagram_json(const std::string& path);

// Conductance file: per-layer level indices plus scale, together with the
// quantization parameters that defined the level grid.
void write_conductances_json(const std::string& path, const NetworkConductances& net,
                             const CrossbarParams& p, const nlohmann::json& echo);
NetworkConductances read_conductances_json(const std::string& path);

void write_eval_report_json(const std::string& path, const EvalReport& rep, const std::string& mode,
                            const nlohmann::json& echo);
void write_eval_runs_csv(const std::string& path, const EvalReport& rep, const nlohmann::json& echo);

void write_json_file(const std::string& path, const nlohmann::json& j);
nlohmann::json read_json_file(const std::string& path);

}  // namespace sot
