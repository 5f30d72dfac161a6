"""Multirate exponential Rosenbrock (MERB) time integrators."""

from ._core import (
    BidirectionalConfig,
    CallCounters,
    ConvergenceReport,
    IntegrationResult,
    IvpProblem,
    MerbMethod,
    ReactionDiffusionConfig,
    StepOptions,
    SweepRow,
    TrajectoryPoint,
    __version__,
    bidirectional,
    check_order_conditions,
    evenly_spaced_outputs,
    exprb_step,
    fit_rate,
    integrate,
    linear_problem,
    merb2,
    merb3,
    merb4,
    merb5,
    merb6,
    merb_step,
    method_by_name,
    method_names,
    optimal_m_search,
    phi_stack,
    reaction_diffusion,
    run_sweep,
)

__all__ = [
    "BidirectionalConfig",
    "CallCounters",
    "ConvergenceReport",
    "IntegrationResult",
    "IvpProblem",
    "MerbMethod",
    "ReactionDiffusionConfig",
    "StepOptions",
    "SweepRow",
    "TrajectoryPoint",
    "__version__",
    "bidirectional",
    "check_order_conditions",
    "evenly_spaced_outputs",
    "exprb_step",
    "fit_rate",
    "integrate",
    "linear_problem",
    "merb2",
    "merb3",
    "merb4",
    "merb5",
    "merb6",
    "merb_step",
    "method_by_name",
    "method_names",
    "optimal_m_search",
    "phi_stack",
    "reaction_diffusion",
    "run_sweep",
]
