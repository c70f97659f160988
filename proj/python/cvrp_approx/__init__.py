"""Approximation algorithms for CVRP with unsplittable demands.

Thin python surface over the C++ core: instance generation and parsing,
the combinatorial matching-based solver, the configuration-LP solver,
the classic tour-splitting baseline, and an exact oracle for small
instances.
"""

from ._core import (
    Instance,
    classify_clients,
    exact_opt,
    format_instance,
    generate_instance,
    parse_instance,
    radial_bounds,
    solve_classic,
    solve_combinatorial,
    solve_lp,
    validate_solution,
)

__all__ = [
    "Instance",
    "classify_clients",
    "exact_opt",
    "format_instance",
    "generate_instance",
    "parse_instance",
    "radial_bounds",
    "solve_classic",
    "solve_combinatorial",
    "solve_lp",
    "validate_solution",
]
