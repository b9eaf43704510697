"""Cross-validated l1-constrained least squares with closed-form bounds."""

from ._core import (
    GENERATOR_ID,
    Aggregates,
    BoundReport,
    ConstrainedFit,
    CvEstimate,
    LassoPath,
    ReplicateRecord,
    Scenario,
    SimulationReport,
    __version__,
    compute_m,
    consistency_sweep,
    cv_lasso,
    estimate_sigma2,
    fit_path,
    gaussian_square_mgf,
    generate_problem,
    hoeffding_mgf_bound,
    mspe_sample,
    project_l1_ball,
    random_split,
    run_monte_carlo,
    solve_constrained_lasso,
    subgaussian_max_bound,
    bound_constants,
    prediction_error_bound,
    variance_error_bound,
)

__all__ = [
    "GENERATOR_ID",
    "Aggregates",
    "BoundReport",
    "ConstrainedFit",
    "CvEstimate",
    "LassoPath",
    "ReplicateRecord",
    "Scenario",
    "SimulationReport",
    "__version__",
    "compute_m",
    "consistency_sweep",
    "cv_lasso",
    "estimate_sigma2",
    "fit_path",
    "gaussian_square_mgf",
    "generate_problem",
    "hoeffding_mgf_bound",
    "mspe_sample",
    "project_l1_ball",
    "random_split",
    "run_monte_carlo",
    "solve_constrained_lasso",
    "subgaussian_max_bound",
    "bound_constants",
    "prediction_error_bound",
    "variance_error_bound",
]
