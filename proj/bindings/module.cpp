#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "cvlasso/bounds.hpp"
#include "cvlasso/crossval.hpp"
#include "cvlasso/rng.hpp"
#include "cvlasso/simlab.hpp"
#include "cvlasso/solver.hpp"
#include "cvlasso/version.hpp"

namespace py = pybind11;
using namespace cvlasso;

namespace {

Matrix matrix_from_array(const py::array_t<double, py::array::c_style |
                                                       py::array::forcecast>& a) {
  if (a.ndim() != 2) throw std::invalid_argument("design must be a 2-D array");
  Matrix m(static_cast<std::size_t>(a.shape(0)),
           static_cast<std::size_t>(a.shape(1)));
  std::copy(a.data(), a.data() + a.size(), m.data.begin());
  return m;
}

py::array_t<double> array_from_matrix(const Matrix& m) {
  py::array_t<double> a({m.rows, m.cols});
  std::copy(m.data.begin(), m.data.end(), a.mutable_data());
  return a;
}

std::vector<double> vector_from_array(
    const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
  if (a.ndim() != 1) throw std::invalid_argument("expected a 1-D array");
  return {a.data(), a.data() + a.size()};
}

SolverConfig make_config(double tol, std::size_t max_iter) {
  SolverConfig cfg;
  cfg.tol = tol;
  cfg.max_iter = max_iter;
  return cfg;
}

Scenario make_scenario(std::size_t n, std::size_t p, const std::string& design,
                       std::vector<double> beta_star, double sigma, double delta,
                       std::size_t replications, std::uint64_t master_seed,
                       const std::string& grid_rule, std::size_t n1,
                       std::size_t n2, double sqrt_coeff,
                       std::optional<py::array_t<double, py::array::c_style |
                                                             py::array::forcecast>>
                           fixed_design) {
  Scenario sc;
  sc.n = n;
  sc.p = p;
  sc.design = design_family_from_string(design);
  sc.beta_star = std::move(beta_star);
  sc.sigma = sigma;
  sc.delta = delta;
  sc.replications = replications;
  sc.master_seed = master_seed;
  if (grid_rule == "ridge") {
    sc.grid_rule.type = GridRule::Type::Ridge;
  } else if (grid_rule == "fixed") {
    sc.grid_rule = GridRule{GridRule::Type::Fixed, n1, n2, 0.0};
  } else if (grid_rule == "sqrt") {
    sc.grid_rule = GridRule{GridRule::Type::SqrtN, 0, 0, sqrt_coeff};
  } else {
    throw std::invalid_argument("grid_rule must be ridge, fixed or sqrt");
  }
  if (fixed_design) sc.fixed_design = matrix_from_array(*fixed_design);
  return sc;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Cross-validated l1-constrained least squares with closed-form "
            "prediction-error bounds";
  m.attr("__version__") = std::string(kVersion);
  m.attr("GENERATOR_ID") = std::string(rng::kGeneratorId);

  py::class_<ConstrainedFit>(m, "ConstrainedFit")
      .def_readonly("k", &ConstrainedFit::k)
      .def_readonly("beta", &ConstrainedFit::beta)
      .def_readonly("residual_ss", &ConstrainedFit::residual_ss)
      .def_readonly("iterations", &ConstrainedFit::iterations)
      .def_readonly("converged", &ConstrainedFit::converged);

  py::class_<LassoPath>(m, "LassoPath")
      .def_readonly("grid", &LassoPath::grid)
      .def_readonly("fits", &LassoPath::fits);

  py::class_<CvEstimate>(m, "CvEstimate")
      .def_readonly("k_hat_1", &CvEstimate::k_hat_1)
      .def_readonly("k_hat_2", &CvEstimate::k_hat_2)
      .def_readonly("k_hat", &CvEstimate::k_hat)
      .def_readonly("mu_prime", &CvEstimate::mu_prime)
      .def_readonly("beta_cv", &CvEstimate::beta_cv)
      .def_readonly("sigma2_hat", &CvEstimate::sigma2_hat)
      .def_readonly("n1", &CvEstimate::n1)
      .def_readonly("n2", &CvEstimate::n2)
      .def_readonly("seed", &CvEstimate::seed)
      .def_readonly("generator", &CvEstimate::generator)
      .def_readonly("iterations", &CvEstimate::total_iterations)
      .def_readonly("converged", &CvEstimate::all_converged);

  py::class_<BoundReport>(m, "BoundReport")
      .def_readonly("big_l", &BoundReport::big_l)
      .def_readonly("c1", &BoundReport::c1)
      .def_readonly("c2", &BoundReport::c2)
      .def_readonly("e_n", &BoundReport::e_n)
      .def_readonly("r", &BoundReport::r)
      .def_readonly("sigma_bound", &BoundReport::sigma_bound);

  py::class_<ReplicateRecord>(m, "ReplicateRecord")
      .def_readonly("index", &ReplicateRecord::index)
      .def_readonly("event", &ReplicateRecord::event)
      .def_readonly("mspe", &ReplicateRecord::mspe)
      .def_readonly("sigma2_hat", &ReplicateRecord::sigma2_hat)
      .def_readonly("n1", &ReplicateRecord::n1)
      .def_readonly("n2", &ReplicateRecord::n2)
      .def_readonly("k_hat", &ReplicateRecord::k_hat)
      .def_readonly("m_stat", &ReplicateRecord::m_stat)
      .def_readonly("converged", &ReplicateRecord::converged);

  py::class_<Aggregates>(m, "Aggregates")
      .def_readonly("replications", &Aggregates::replications)
      .def_readonly("event_frequency", &Aggregates::event_frequency)
      .def_readonly("mspe_event_mean", &Aggregates::mspe_event_mean)
      .def_readonly("mspe_event_se", &Aggregates::mspe_event_se)
      .def_readonly("sigma2_err_event_mean", &Aggregates::sigma2_err_event_mean)
      .def_readonly("sigma2_err_event_se", &Aggregates::sigma2_err_event_se)
      .def_readonly("l1_hat", &Aggregates::l1_hat)
      .def_readonly("l2_hat", &Aggregates::l2_hat)
      .def_readonly("m_used", &Aggregates::m_used);

  py::class_<SimulationReport>(m, "SimulationReport")
      .def_readonly("records", &SimulationReport::records)
      .def_readonly("aggregates", &SimulationReport::aggregates)
      .def_readonly("bound", &SimulationReport::bound)
      .def_readonly("mspe_dominated", &SimulationReport::mspe_dominated)
      .def_readonly("sigma2_dominated", &SimulationReport::sigma2_dominated)
      .def_readonly("event_ever", &SimulationReport::event_ever);

  py::class_<Scenario>(m, "Scenario")
      .def(py::init(&make_scenario), py::arg("n"), py::arg("p"),
           py::arg("design"), py::arg("beta_star"), py::arg("sigma") = 1.0,
           py::arg("delta") = 0.05, py::arg("replications") = 1,
           py::arg("master_seed") = 1, py::arg("grid_rule") = "ridge",
           py::arg("n1") = 0, py::arg("n2") = 0, py::arg("sqrt_coeff") = 0.0,
           py::arg("fixed_design") = std::nullopt)
      .def_readonly("n", &Scenario::n)
      .def_readonly("p", &Scenario::p)
      .def_readonly("sigma", &Scenario::sigma)
      .def_readonly("delta", &Scenario::delta)
      .def_readonly("replications", &Scenario::replications)
      .def_readonly("master_seed", &Scenario::master_seed);

  m.def(
      "project_l1_ball",
      [](const py::array_t<double, py::array::c_style | py::array::forcecast>& v,
         double k) { return project_l1_ball(vector_from_array(v), k); },
      py::arg("v"), py::arg("k"),
      "Euclidean projection onto the l1 ball of radius k");

  m.def(
      "solve_constrained_lasso",
      [](const py::array_t<double, py::array::c_style | py::array::forcecast>& x,
         const py::array_t<double, py::array::c_style | py::array::forcecast>& y,
         double k, double tol, std::size_t max_iter) {
        return solve_constrained_lasso(matrix_from_array(x),
                                       vector_from_array(y), k,
                                       make_config(tol, max_iter));
      },
      py::arg("x"), py::arg("y"), py::arg("k"), py::arg("tol") = 1e-8,
      py::arg("max_iter") = 50'000,
      "Minimize ||y - X beta||^2 subject to |beta|_1 <= k");

  m.def(
      "fit_path",
      [](const py::array_t<double, py::array::c_style | py::array::forcecast>& x,
         const py::array_t<double, py::array::c_style | py::array::forcecast>& y,
         const py::array_t<double, py::array::c_style | py::array::forcecast>& grid,
         double tol, std::size_t max_iter) {
        const auto g = vector_from_array(grid);
        return fit_path(matrix_from_array(x), vector_from_array(y), g,
                        make_config(tol, max_iter));
      },
      py::arg("x"), py::arg("y"), py::arg("grid"), py::arg("tol") = 1e-8,
      py::arg("max_iter") = 50'000,
      "Warm-started fits over an ascending budget grid");

  m.def(
      "random_split",
      [](std::size_t n, std::uint64_t seed) {
        const SplitAssignment s = random_split(n, seed);
        std::vector<bool> member(s.membership.begin(), s.membership.end());
        return py::make_tuple(member, s.seed, s.generator);
      },
      py::arg("n"), py::arg("seed"),
      "Fair-coin half split; returns (membership, seed, generator)");

  m.def(
      "cv_lasso",
      [](const py::array_t<double, py::array::c_style | py::array::forcecast>& x,
         const py::array_t<double, py::array::c_style | py::array::forcecast>& y,
         double delta, std::uint64_t seed, std::optional<std::size_t> n1,
         std::optional<std::size_t> n2, double tol, std::size_t max_iter) {
        std::optional<GridOverride> grid_ov;
        if (n1 && n2) {
          grid_ov = GridOverride{*n1, *n2};
        } else if (n1 || n2) {
          throw std::invalid_argument("n1 and n2 must be given together");
        }
        return cv_lasso(matrix_from_array(x), vector_from_array(y), delta,
                        grid_ov, seed, make_config(tol, max_iter));
      },
      py::arg("x"), py::arg("y"), py::arg("delta") = 0.05, py::arg("seed") = 1,
      py::arg("n1") = std::nullopt, py::arg("n2") = std::nullopt,
      py::arg("tol") = 1e-8, py::arg("max_iter") = 50'000,
      "Full cross-validation pipeline; deterministic given the seed");

  m.def(
      "estimate_sigma2",
      [](const py::array_t<double, py::array::c_style | py::array::forcecast>& y,
         const py::array_t<double, py::array::c_style | py::array::forcecast>& x,
         const py::array_t<double, py::array::c_style | py::array::forcecast>& beta) {
        return estimate_sigma2(vector_from_array(y), matrix_from_array(x),
                               vector_from_array(beta));
      },
      py::arg("y"), py::arg("x"), py::arg("beta"),
      "||y - X beta||^2 / n");

  m.def(
      "compute_m",
      [](const py::array_t<double, py::array::c_style | py::array::forcecast>& x) {
        return compute_m(matrix_from_array(x));
      },
      py::arg("x"), "max over columns of the mean fourth power");

  m.def(
      "bound_constants",
      [](std::size_t n, std::size_t p, double sigma, double l_star, double delta,
         double m_stat, double l1, double l2) {
        return bound_constants(
            BoundInputs{n, p, sigma, l_star, delta, m_stat, l1, l2});
      },
      py::arg("n"), py::arg("p"), py::arg("sigma"), py::arg("l_star"),
      py::arg("delta"), py::arg("m"), py::arg("l1"), py::arg("l2"),
      "Closed-form constants and composed bounds");

  m.def(
      "prediction_error_bound",
      [](std::size_t n, std::size_t p, double sigma, double l_star, double delta,
         double m_stat, double l1, double l2) {
        return prediction_error_bound(
            BoundInputs{n, p, sigma, l_star, delta, m_stat, l1, l2});
      },
      py::arg("n"), py::arg("p"), py::arg("sigma"), py::arg("l_star"),
      py::arg("delta"), py::arg("m"), py::arg("l1"), py::arg("l2"));

  m.def("variance_error_bound", &variance_error_bound, py::arg("r"), py::arg("sigma"),
        py::arg("n"));
  m.def("gaussian_square_mgf", &gaussian_square_mgf, py::arg("mu"),
        py::arg("sigma"), py::arg("a"));
  m.def("subgaussian_max_bound", &subgaussian_max_bound, py::arg("m"),
        py::arg("sigma"), "Returns (one_sided, two_sided)");
  m.def(
      "hoeffding_mgf_bound",
      [](const py::array_t<double, py::array::c_style | py::array::forcecast>& g,
         double theta) { return hoeffding_mgf_bound(vector_from_array(g), theta); },
      py::arg("gammas"), py::arg("theta"));

  m.def(
      "generate_problem",
      [](const Scenario& sc, std::size_t replicate_index) {
        Problem prob = generate_problem(sc, replicate_index);
        return py::make_tuple(array_from_matrix(prob.x), prob.y, prob.beta_star);
      },
      py::arg("scenario"), py::arg("replicate_index") = 0,
      "Returns (X, y, beta_star) for one replicate");

  m.def(
      "mspe_sample",
      [](const py::array_t<double, py::array::c_style | py::array::forcecast>& x,
         const py::array_t<double, py::array::c_style | py::array::forcecast>& bs,
         const py::array_t<double, py::array::c_style | py::array::forcecast>& bh) {
        return mspe_sample(matrix_from_array(x), vector_from_array(bs),
                           vector_from_array(bh));
      },
      py::arg("x"), py::arg("beta_star"), py::arg("beta_hat"),
      "||X beta* - X beta_hat||^2 / n");

  m.def("run_monte_carlo", &run_monte_carlo, py::arg("scenario"),
        py::arg("threads") = 1,
        py::call_guard<py::gil_scoped_release>());

  m.def(
      "consistency_sweep",
      [](const Scenario& base, const std::vector<std::size_t>& n_values,
         unsigned threads) {
        py::gil_scoped_release release;
        return consistency_sweep(base, n_values, threads);
      },
      py::arg("scenario"), py::arg("n_values"), py::arg("threads") = 1);
}
