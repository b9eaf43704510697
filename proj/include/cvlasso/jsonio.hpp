#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "cvlasso/crossval.hpp"
#include "cvlasso/simlab.hpp"

namespace cvlasso {

/// Scenario schema (JSON object):
///   n, p, sigma, delta, replications, master_seed : numbers
///   design      : "gaussian-iid" | "rademacher" | "fixed-from-file"
///   design_file : path, required for fixed-from-file (resolved against
///                 base_dir when relative)
///   beta_star   : array of p numbers
///   grid_rule   : {"type":"ridge"} (default)
///               | {"type":"fixed","n1":int,"n2":int}
///               | {"type":"sqrt","coeff":number}
Scenario scenario_from_json(const nlohmann::json& j, const std::string& base_dir);
Scenario load_scenario(const std::string& path);
nlohmann::json scenario_to_json(const Scenario& s);

/// Meta line embedded at the top of every report: tool version, generator id,
/// seed and the full resolved configuration.
nlohmann::json meta_json(std::uint64_t seed, const nlohmann::json& config);

std::string cv_estimate_jsonl(const CvEstimate& est, const nlohmann::json& config);
std::string cv_estimate_csv(const CvEstimate& est, const nlohmann::json& config);

std::string simulation_report_jsonl(const SimulationReport& rep);
std::string simulation_report_csv(const SimulationReport& rep);

std::string path_report_jsonl(const LassoPath& path, std::uint64_t seed,
                              const nlohmann::json& config);
std::string path_report_csv(const LassoPath& path, std::uint64_t seed,
                            const nlohmann::json& config);

std::string bound_report_jsonl(const BoundInputs& in, const BoundReport& rep);
std::string bound_report_csv(const BoundInputs& in, const BoundReport& rep);

}  // namespace cvlasso
