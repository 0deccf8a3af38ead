"""Sparse linear classification with a reject option.

An L1-penalized hinge-type classifier that may abstain from predicting at a
fixed cost, trained by linear programming, plus exact population-level risk
tools, data-driven error/reject bounds, and simulation studies.
"""

from .constants import FEAS_TOL, PIVOT_TOL, SUPPORT_TOL
from .dictionary import (
    DesignMatrix,
    Dictionary,
    build_constant_linear,
    build_custom_rbf,
    build_linear,
    build_rbf_lattice,
    estimated_c_f,
)
from .evaluate import (
    BoundReport,
    RiskReport,
    bounds,
    default_gamma_grid,
    margins,
    predict,
    rate_r,
    risk_report,
)
from .losses import (
    CostParams,
    DiscreteDistribution,
    bayes_phi_risk,
    bayes_risk,
    bayes_rule,
    gen_hinge,
    population_risk,
    ramp_reject,
    ramp_upper,
    reject_loss,
)
from .lp import (
    LinearProgram,
    LpError,
    LpInputError,
    LpNumericalError,
    LpOversizeError,
    LpSolution,
    enumerate_vertices_oracle,
    solve_lp,
)
from .model_io import (
    DataError,
    load_data,
    load_distribution,
    load_model,
    save_model,
    write_rows_csv,
)
from .sim import (
    ExperimentConfig,
    gen_mixture,
    gen_two_gaussian,
    mixture_eta_density,
    run_mixture_boundaries,
    run_reject_vs_plain,
)
from .theory import (
    CheckReport,
    ComplexityEstimate,
    TheoryContext,
    check_excess_domination,
    check_lemma_a1,
    check_prop21,
    complexity_estimate,
    gram_psi,
    kappa_estimate,
    make_context,
    weighted_norm,
)
from .train import (
    Model,
    concentration_bracket,
    cross_validate,
    default_r_grid,
    fit,
    fit_population,
    theoretical_r,
)

__all__ = [
    "FEAS_TOL",
    "PIVOT_TOL",
    "SUPPORT_TOL",
    "BoundReport",
    "CheckReport",
    "ComplexityEstimate",
    "CostParams",
    "DataError",
    "DesignMatrix",
    "Dictionary",
    "DiscreteDistribution",
    "ExperimentConfig",
    "LinearProgram",
    "LpError",
    "LpInputError",
    "LpNumericalError",
    "LpOversizeError",
    "LpSolution",
    "Model",
    "RiskReport",
    "TheoryContext",
    "bayes_phi_risk",
    "bayes_risk",
    "bayes_rule",
    "bounds",
    "build_constant_linear",
    "build_custom_rbf",
    "build_linear",
    "build_rbf_lattice",
    "check_excess_domination",
    "check_lemma_a1",
    "check_prop21",
    "complexity_estimate",
    "concentration_bracket",
    "cross_validate",
    "default_gamma_grid",
    "default_r_grid",
    "enumerate_vertices_oracle",
    "estimated_c_f",
    "fit",
    "fit_population",
    "gen_hinge",
    "gen_mixture",
    "gen_two_gaussian",
    "gram_psi",
    "kappa_estimate",
    "load_data",
    "load_distribution",
    "load_model",
    "make_context",
    "margins",
    "mixture_eta_density",
    "population_risk",
    "predict",
    "ramp_reject",
    "ramp_upper",
    "rate_r",
    "reject_loss",
    "risk_report",
    "run_mixture_boundaries",
    "run_reject_vs_plain",
    "save_model",
    "solve_lp",
    "theoretical_r",
    "weighted_norm",
    "write_rows_csv",
]
