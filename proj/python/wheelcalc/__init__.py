"""Exact diagrammatic calculus on Jacobi and Weil diagrams."""

from ._wheelcalc import (
    BudgetExceeded,
    ConvergenceError,
    LinComb,
    ParseError,
    apply_map,
    canonical,
    check_ids,
    descent,
    dim,
    disjoint_union,
    enumerate_slice,
    equal_mod,
    family_count,
    juxtapose,
    map_source,
    phi_number,
    psi_number,
    reduce,
    run_check,
    series,
    vdash,
    vdash_rewrite,
)

__all__ = [
    "BudgetExceeded",
    "ConvergenceError",
    "LinComb",
    "ParseError",
    "apply_map",
    "canonical",
    "check_ids",
    "descent",
    "dim",
    "disjoint_union",
    "enumerate_slice",
    "equal_mod",
    "family_count",
    "juxtapose",
    "map_source",
    "phi_number",
    "psi_number",
    "reduce",
    "run_check",
    "series",
    "vdash",
    "vdash_rewrite",
]
