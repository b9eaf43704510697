#include "cvlasso/simlab.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "cvlasso/rng.hpp"

namespace cvlasso {

std::string to_string(DesignFamily f) {
  switch (f) {
    case DesignFamily::GaussianIid: return "gaussian-iid";
    case DesignFamily::Rademacher: return "rademacher";
    case DesignFamily::FixedFromFile: return "fixed-from-file";
  }
  return "unknown";
}

DesignFamily design_family_from_string(const std::string& s) {
  if (s == "gaussian-iid") return DesignFamily::GaussianIid;
  if (s == "rademacher") return DesignFamily::Rademacher;
  if (s == "fixed-from-file") return DesignFamily::FixedFromFile;
  throw std::invalid_argument("unknown design family: " + s);
}

namespace {

void validate(const Scenario& sc) {
  if (sc.replications < 1) {
    throw std::invalid_argument("scenario: replications must be >= 1");
  }
  if (sc.p < 1) throw std::invalid_argument("scenario: p must be >= 1");
  if (sc.beta_star.size() != sc.p) {
    throw std::invalid_argument("scenario: beta_star length != p");
  }
  if (!(sc.sigma >= 0.0)) throw std::invalid_argument("scenario: sigma must be >= 0");
  if (!(sc.delta > 0.0)) throw std::invalid_argument("scenario: delta must be > 0");
  if (!std::isfinite(linalg::l1_norm(sc.beta_star))) {
    throw std::invalid_argument("scenario: |beta_star|_1 must be finite");
  }
  if (sc.design == DesignFamily::FixedFromFile &&
      (sc.fixed_design.rows != sc.n || sc.fixed_design.cols != sc.p)) {
    throw std::invalid_argument("scenario: fixed design shape != (n, p)");
  }
}

std::optional<GridOverride> grid_override_for(const Scenario& sc) {
  switch (sc.grid_rule.type) {
    case GridRule::Type::Ridge:
      return std::nullopt;
    case GridRule::Type::Fixed:
      return GridOverride{sc.grid_rule.n1, sc.grid_rule.n2};
    case GridRule::Type::SqrtN: {
      const auto n = static_cast<std::size_t>(std::ceil(
          sc.grid_rule.coeff * std::sqrt(static_cast<double>(sc.n))));
      return GridOverride{n, n};
    }
  }
  return std::nullopt;
}

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
};

// Mean and Monte Carlo standard error of a sample vector.
MeanSe mean_se(const std::vector<double>& xs) {
  MeanSe out;
  const std::size_t n = xs.size();
  if (n == 0) return out;
  double sum = 0.0;
  for (double x : xs) sum += x;
  out.mean = sum / static_cast<double>(n);
  if (n > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - out.mean) * (x - out.mean);
    out.se = std::sqrt(ss / static_cast<double>(n - 1) / static_cast<double>(n));
  }
  return out;
}

}  // namespace

Problem generate_problem(const Scenario& scenario, std::size_t replicate_index) {
  validate(scenario);
  Problem prob;
  prob.beta_star = scenario.beta_star;
  rng::Xoshiro256pp gen(rng::derive_seed(scenario.master_seed,
                                         2 * replicate_index));
  switch (scenario.design) {
    case DesignFamily::GaussianIid: {
      prob.x = Matrix(scenario.n, scenario.p);
      for (auto& v : prob.x.data) v = gen.next_gaussian();
      break;
    }
    case DesignFamily::Rademacher: {
      prob.x = Matrix(scenario.n, scenario.p);
      for (auto& v : prob.x.data) v = gen.next_coin() ? 1.0 : -1.0;
      break;
    }
    case DesignFamily::FixedFromFile:
      prob.x = scenario.fixed_design;
      break;
  }
  prob.y.resize(scenario.n);
  linalg::matvec(prob.x, prob.beta_star, prob.y);
  if (scenario.sigma > 0.0) {
    for (auto& v : prob.y) v += scenario.sigma * gen.next_gaussian();
  }
  return prob;
}

double mspe_sample(const Matrix& x, std::span<const double> beta_star,
                   std::span<const double> beta_hat) {
  if (x.rows < 1) throw std::invalid_argument("mspe_sample: n must be >= 1");
  if (beta_star.size() != x.cols || beta_hat.size() != x.cols) {
    throw std::invalid_argument("mspe_sample: dimension mismatch");
  }
  double ss = 0.0;
  for (std::size_t i = 0; i < x.rows; ++i) {
    auto row = x.row(i);
    const double d = linalg::dot(row, beta_star) - linalg::dot(row, beta_hat);
    ss += d * d;
  }
  return ss / static_cast<double>(x.rows);
}

SimulationReport run_monte_carlo(const Scenario& scenario, unsigned threads) {
  validate(scenario);
  const std::size_t reps = scenario.replications;
  const double l_star = linalg::l1_norm(scenario.beta_star);
  const auto grid_ov = grid_override_for(scenario);

  std::vector<ReplicateRecord> records(reps);
  auto run_one = [&](std::size_t r) {
    const Problem prob = generate_problem(scenario, r);
    const std::uint64_t cv_seed = rng::derive_seed(scenario.master_seed, 2 * r + 1);
    const CvEstimate est = cv_lasso(prob.x, prob.y, scenario.delta, grid_ov,
                                    cv_seed, scenario.solver);
    ReplicateRecord rec;
    rec.index = r;
    rec.n1 = est.n1;
    rec.n2 = est.n2;
    rec.k_hat = est.k_hat;
    rec.event = static_cast<double>(est.n1) * scenario.delta >= l_star &&
                static_cast<double>(est.n2) * scenario.delta >= l_star;
    rec.mspe = scenario.n > 0
                   ? mspe_sample(prob.x, prob.beta_star, est.beta_cv)
                   : 0.0;
    rec.sigma2_hat = est.sigma2_hat;
    rec.m_stat = scenario.n > 0 ? compute_m(prob.x) : 0.0;
    rec.converged = est.all_converged;
    records[r] = rec;
  };

  if (threads <= 1 || reps == 1) {
    for (std::size_t r = 0; r < reps; ++r) run_one(r);
  } else {
    // Replicates are keyed by index, so any interleaving gives the same
    // records; the fold below always runs in index order.
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    const unsigned count = std::min<unsigned>(threads, static_cast<unsigned>(reps));
    pool.reserve(count);
    for (unsigned t = 0; t < count; ++t) {
      pool.emplace_back([&] {
        while (true) {
          const std::size_t r = next.fetch_add(1);
          if (r >= reps) return;
          run_one(r);
        }
      });
    }
    for (auto& t : pool) t.join();
  }

  SimulationReport rep;
  rep.scenario = scenario;
  rep.records = std::move(records);

  Aggregates agg;
  agg.replications = reps;
  std::vector<double> mspe_masked(reps), err_masked(reps);
  double m_used = 0.0;
  std::size_t event_count = 0;
  double l1_sum = 0.0, l2_sum = 0.0;
  const double sigma2 = scenario.sigma * scenario.sigma;
  for (std::size_t r = 0; r < reps; ++r) {
    const auto& rec = rep.records[r];
    event_count += rec.event ? 1 : 0;
    // E(X; A) = E(X 1_A): non-event replicates contribute zero.
    mspe_masked[r] = rec.event ? rec.mspe : 0.0;
    err_masked[r] = rec.event ? std::abs(rec.sigma2_hat - sigma2) : 0.0;
    l1_sum += std::log(static_cast<double>(rec.n1) + 1.0);
    l2_sum += std::log(static_cast<double>(rec.n2) + 1.0);
    m_used = std::max(m_used, rec.m_stat);
  }
  agg.event_frequency = static_cast<double>(event_count) / static_cast<double>(reps);
  const MeanSe mspe_stats = mean_se(mspe_masked);
  const MeanSe err_stats = mean_se(err_masked);
  agg.mspe_event_mean = mspe_stats.mean;
  agg.mspe_event_se = mspe_stats.se;
  agg.sigma2_err_event_mean = err_stats.mean;
  agg.sigma2_err_event_se = err_stats.se;
  agg.l1_hat = l1_sum / static_cast<double>(reps);
  agg.l2_hat = l2_sum / static_cast<double>(reps);
  agg.m_used = m_used;
  rep.aggregates = agg;

  BoundInputs inputs;
  inputs.n = scenario.n > 0 ? scenario.n : 1;
  inputs.p = scenario.p;
  inputs.sigma = scenario.sigma;
  inputs.l_star = l_star;
  inputs.delta = scenario.delta;
  inputs.m_stat = m_used;
  inputs.l1 = agg.l1_hat;
  inputs.l2 = agg.l2_hat;
  rep.bound = bound_constants(inputs);

  rep.mspe_dominated =
      agg.mspe_event_mean + 2.0 * agg.mspe_event_se <= rep.bound.r;
  rep.sigma2_dominated = agg.sigma2_err_event_mean +
                             2.0 * agg.sigma2_err_event_se <=
                         rep.bound.sigma_bound;
  rep.event_ever = event_count > 0;
  return rep;
}

std::vector<SimulationReport> consistency_sweep(const Scenario& base,
                                                std::span<const std::size_t> n_values,
                                                unsigned threads) {
  if (n_values.empty()) {
    throw std::invalid_argument("consistency_sweep: empty n list");
  }
  for (std::size_t i = 1; i < n_values.size(); ++i) {
    if (n_values[i] <= n_values[i - 1]) {
      throw std::invalid_argument("consistency_sweep: n values must ascend");
    }
  }
  std::vector<SimulationReport> out;
  out.reserve(n_values.size());
  for (std::size_t n : n_values) {
    Scenario sc = base;
    sc.n = n;
    out.push_back(run_monte_carlo(sc, threads));
  }
  return out;
}

}  // namespace cvlasso
