#include "cvlasso/jsonio.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cvlasso/csvio.hpp"
#include "cvlasso/errors.hpp"
#include "cvlasso/rng.hpp"
#include "cvlasso/version.hpp"

namespace cvlasso {

namespace {

using nlohmann::json;

json grid_rule_to_json(const GridRule& g) {
  switch (g.type) {
    case GridRule::Type::Ridge:
      return json{{"type", "ridge"}};
    case GridRule::Type::Fixed:
      return json{{"type", "fixed"}, {"n1", g.n1}, {"n2", g.n2}};
    case GridRule::Type::SqrtN:
      return json{{"type", "sqrt"}, {"coeff", g.coeff}};
  }
  return json{{"type", "ridge"}};
}

GridRule grid_rule_from_json(const json& j) {
  GridRule g;
  const std::string type = j.at("type").get<std::string>();
  if (type == "ridge") {
    g.type = GridRule::Type::Ridge;
  } else if (type == "fixed") {
    g.type = GridRule::Type::Fixed;
    g.n1 = j.at("n1").get<std::size_t>();
    g.n2 = j.at("n2").get<std::size_t>();
  } else if (type == "sqrt") {
    g.type = GridRule::Type::SqrtN;
    g.coeff = j.at("coeff").get<double>();
    if (!(g.coeff > 0.0)) {
      throw DataError("scenario: sqrt grid rule needs coeff > 0");
    }
  } else {
    throw DataError("scenario: unknown grid_rule type '" + type + "'");
  }
  return g;
}

}  // namespace

Scenario scenario_from_json(const json& j, const std::string& base_dir) {
  Scenario sc;
  try {
    sc.n = j.at("n").get<std::size_t>();
    sc.p = j.at("p").get<std::size_t>();
    sc.design = design_family_from_string(j.at("design").get<std::string>());
    sc.beta_star = j.at("beta_star").get<std::vector<double>>();
    sc.sigma = j.at("sigma").get<double>();
    sc.delta = j.at("delta").get<double>();
    sc.replications = j.at("replications").get<std::size_t>();
    sc.master_seed = j.at("master_seed").get<std::uint64_t>();
    if (j.contains("grid_rule")) {
      sc.grid_rule = grid_rule_from_json(j.at("grid_rule"));
    }
    if (j.contains("tol")) sc.solver.tol = j.at("tol").get<double>();
    if (j.contains("max_iter")) {
      sc.solver.max_iter = j.at("max_iter").get<std::size_t>();
    }
    if (sc.design == DesignFamily::FixedFromFile) {
      std::filesystem::path p = j.at("design_file").get<std::string>();
      if (p.is_relative() && !base_dir.empty()) {
        p = std::filesystem::path(base_dir) / p;
      }
      sc.design_file = p.string();
      sc.fixed_design = load_csv_matrix(sc.design_file);
    }
  } catch (const json::exception& e) {
    throw DataError(std::string("scenario: ") + e.what());
  }
  return sc;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError(path + ": cannot open file");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw DataError(path + ": " + e.what());
  }
  return scenario_from_json(j, std::filesystem::path(path).parent_path().string());
}

json scenario_to_json(const Scenario& s) {
  json j{{"n", s.n},
         {"p", s.p},
         {"design", to_string(s.design)},
         {"beta_star", s.beta_star},
         {"sigma", s.sigma},
         {"delta", s.delta},
         {"replications", s.replications},
         {"master_seed", s.master_seed},
         {"grid_rule", grid_rule_to_json(s.grid_rule)},
         {"tol", s.solver.tol},
         {"max_iter", s.solver.max_iter}};
  if (s.design == DesignFamily::FixedFromFile) j["design_file"] = s.design_file;
  return j;
}

json meta_json(std::uint64_t seed, const json& config) {
  return json{{"type", "meta"},
              {"tool", kToolName},
              {"version", kVersion},
              {"generator", rng::kGeneratorId},
              {"seed", seed},
              {"config", config}};
}

std::string cv_estimate_jsonl(const CvEstimate& est, const json& config) {
  std::ostringstream out;
  out << meta_json(est.seed, config).dump() << '\n';
  const json line{{"type", "estimate"},
                  {"k_hat_1", est.k_hat_1},
                  {"k_hat_2", est.k_hat_2},
                  {"k_hat", est.k_hat},
                  {"n1", est.n1},
                  {"n2", est.n2},
                  {"sigma2_hat", est.sigma2_hat},
                  {"beta_cv", est.beta_cv},
                  {"mu_prime", est.mu_prime},
                  {"iterations", est.total_iterations},
                  {"converged", est.all_converged}};
  out << line.dump() << '\n';
  return out.str();
}

std::string cv_estimate_csv(const CvEstimate& est, const json& config) {
  std::ostringstream out;
  out << "# " << meta_json(est.seed, config).dump() << '\n';
  out << "field,value\n";
  out << "k_hat_1," << format_double(est.k_hat_1) << '\n';
  out << "k_hat_2," << format_double(est.k_hat_2) << '\n';
  out << "k_hat," << format_double(est.k_hat) << '\n';
  out << "n1," << est.n1 << '\n';
  out << "n2," << est.n2 << '\n';
  out << "sigma2_hat," << format_double(est.sigma2_hat) << '\n';
  out << "iterations," << est.total_iterations << '\n';
  out << "converged," << (est.all_converged ? 1 : 0) << '\n';
  for (std::size_t j = 0; j < est.beta_cv.size(); ++j) {
    out << "beta_cv[" << j << "]," << format_double(est.beta_cv[j]) << '\n';
  }
  for (std::size_t i = 0; i < est.mu_prime.size(); ++i) {
    out << "mu_prime[" << i << "]," << format_double(est.mu_prime[i]) << '\n';
  }
  return out.str();
}

namespace {

json replicate_json(const ReplicateRecord& rec) {
  return json{{"type", "replicate"}, {"index", rec.index},
              {"event", rec.event},  {"mspe", rec.mspe},
              {"sigma2_hat", rec.sigma2_hat}, {"n1", rec.n1},
              {"n2", rec.n2},        {"k_hat", rec.k_hat},
              {"m_stat", rec.m_stat},  {"converged", rec.converged}};
}

json aggregate_json(const SimulationReport& rep) {
  const auto& a = rep.aggregates;
  return json{{"type", "aggregate"},
              {"replications", a.replications},
              {"event_frequency", a.event_frequency},
              {"mspe_event_mean", a.mspe_event_mean},
              {"mspe_event_se", a.mspe_event_se},
              {"sigma2_err_event_mean", a.sigma2_err_event_mean},
              {"sigma2_err_event_se", a.sigma2_err_event_se},
              {"l1_hat", a.l1_hat},
              {"l2_hat", a.l2_hat},
              {"m_used", a.m_used}};
}

json bound_json(const BoundReport& b) {
  return json{{"type", "bound"}, {"big_l", b.big_l}, {"c1", b.c1},
              {"c2", b.c2},      {"e_n", b.e_n},     {"r", b.r},
              {"sigma_bound", b.sigma_bound}};
}

json domination_json(const SimulationReport& rep) {
  return json{{"type", "domination"},
              {"mspe_dominated", rep.mspe_dominated},
              {"sigma2_dominated", rep.sigma2_dominated},
              {"event_ever", rep.event_ever}};
}

}  // namespace

std::string simulation_report_jsonl(const SimulationReport& rep) {
  std::ostringstream out;
  out << meta_json(rep.scenario.master_seed, scenario_to_json(rep.scenario)).dump()
      << '\n';
  for (const auto& rec : rep.records) out << replicate_json(rec).dump() << '\n';
  out << aggregate_json(rep).dump() << '\n';
  out << bound_json(rep.bound).dump() << '\n';
  out << domination_json(rep).dump() << '\n';
  return out.str();
}

std::string simulation_report_csv(const SimulationReport& rep) {
  std::ostringstream out;
  out << "# "
      << meta_json(rep.scenario.master_seed, scenario_to_json(rep.scenario)).dump()
      << '\n';
  out << "replicate,event,mspe,sigma2_hat,n1,n2,k_hat,m_stat,converged\n";
  for (const auto& rec : rep.records) {
    out << rec.index << ',' << (rec.event ? 1 : 0) << ','
        << format_double(rec.mspe) << ',' << format_double(rec.sigma2_hat)
        << ',' << rec.n1 << ',' << rec.n2 << ',' << format_double(rec.k_hat)
        << ',' << format_double(rec.m_stat) << ',' << (rec.converged ? 1 : 0)
        << '\n';
  }
  out << "# " << aggregate_json(rep).dump() << '\n';
  out << "# " << bound_json(rep.bound).dump() << '\n';
  out << "# " << domination_json(rep).dump() << '\n';
  return out.str();
}

std::string path_report_jsonl(const LassoPath& path, std::uint64_t seed,
                              const json& config) {
  std::ostringstream out;
  out << meta_json(seed, config).dump() << '\n';
  for (std::size_t i = 0; i < path.fits.size(); ++i) {
    const auto& fit = path.fits[i];
    double l1 = 0.0;
    for (double b : fit.beta) l1 += b < 0 ? -b : b;
    out << json{{"type", "path-point"},
                {"k", path.grid[i]},
                {"l1_norm", l1},
                {"residual_ss", fit.residual_ss},
                {"iterations", fit.iterations},
                {"converged", fit.converged}}
               .dump()
        << '\n';
  }
  return out.str();
}

std::string path_report_csv(const LassoPath& path, std::uint64_t seed,
                            const json& config) {
  std::ostringstream out;
  out << "# " << meta_json(seed, config).dump() << '\n';
  out << "k,l1_norm,residual_ss\n";
  for (std::size_t i = 0; i < path.fits.size(); ++i) {
    const auto& fit = path.fits[i];
    double l1 = 0.0;
    for (double b : fit.beta) l1 += b < 0 ? -b : b;
    out << format_double(path.grid[i]) << ',' << format_double(l1) << ','
        << format_double(fit.residual_ss) << '\n';
  }
  return out.str();
}

namespace {

json bound_inputs_json(const BoundInputs& in) {
  return json{{"n", in.n},         {"p", in.p},       {"sigma", in.sigma},
              {"l_star", in.l_star}, {"delta", in.delta}, {"m", in.m_stat},
              {"l1", in.l1},       {"l2", in.l2}};
}

}  // namespace

std::string bound_report_jsonl(const BoundInputs& in, const BoundReport& rep) {
  std::ostringstream out;
  out << meta_json(0, bound_inputs_json(in)).dump() << '\n';
  out << bound_json(rep).dump() << '\n';
  return out.str();
}

std::string bound_report_csv(const BoundInputs& in, const BoundReport& rep) {
  std::ostringstream out;
  out << "# " << meta_json(0, bound_inputs_json(in)).dump() << '\n';
  out << "field,value\n";
  out << "big_l," << format_double(rep.big_l) << '\n';
  out << "c1," << format_double(rep.c1) << '\n';
  out << "c2," << format_double(rep.c2) << '\n';
  out << "e_n," << format_double(rep.e_n) << '\n';
  out << "r," << format_double(rep.r) << '\n';
  out << "sigma_bound," << format_double(rep.sigma_bound) << '\n';
  return out.str();
}

}  // namespace cvlasso
