"""Spectral two-step iteration solver for the forced 2-D incompressible flow problem."""

from ._core import (
    __version__,
    border_mu,
    convective_term,
    convergence_predicate,
    dot_set_mu,
    evaluate_force,
    reference_sample_set,
    profiles,
    run_point,
)

__all__ = [
    "__version__",
    "border_mu",
    "convective_term",
    "convergence_predicate",
    "dot_set_mu",
    "evaluate_force",
    "reference_sample_set",
    "profiles",
    "run_point",
]
