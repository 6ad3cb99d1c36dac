"""Exact factor structure and special parameter points of z**2 + c.

The package constructs the iterated-map polynomials p_n and their
differences q_{l,n} in exact integer arithmetic, splits each q_{l,n} into
its complete product of squarefree factors with proved multiplicities,
verifies the counting identities behind that product, locates every root
as a certified multiprecision parameter point, and renders the parameter
plane with those points overlaid.
"""

from .counting import (
    BudgetMismatch,
    CountRecord,
    degree_budget,
    divisors,
    eta,
    hyp_count,
    mis_count,
    mobius,
    phi,
    strict_divisors,
)
from .families import (
    DEFAULT_CAP,
    CapExceeded,
    FamilyIndex,
    InvalidIndex,
    diff_squares_step,
    mt_poly,
    orbit_poly,
    simple_part,
)
from .factoring import (
    CACHE_ENV,
    FactorTable,
    clear_caches,
    factorize,
    gleason,
    misiurewicz_factor,
    verify,
)
from .intpoly import ONE, ZERO, Z, IntPoly, NonzeroRemainder
from .render import PlotSpec, escape_time, render
from .roots import (
    Hyperbolic,
    Misiurewicz,
    ParamPoint,
    PrecisionExhausted,
    Unclassified,
    find_roots,
    orbit_classify,
    points_of_order,
)
from .cli import cli_main

__version__ = "1.0.0"

__all__ = [
    "BudgetMismatch",
    "CACHE_ENV",
    "CapExceeded",
    "CountRecord",
    "DEFAULT_CAP",
    "FactorTable",
    "FamilyIndex",
    "Hyperbolic",
    "IntPoly",
    "InvalidIndex",
    "Misiurewicz",
    "NonzeroRemainder",
    "ONE",
    "ParamPoint",
    "PlotSpec",
    "PrecisionExhausted",
    "Unclassified",
    "Z",
    "ZERO",
    "cli_main",
    "clear_caches",
    "degree_budget",
    "diff_squares_step",
    "divisors",
    "escape_time",
    "eta",
    "factorize",
    "find_roots",
    "gleason",
    "hyp_count",
    "mis_count",
    "misiurewicz_factor",
    "mobius",
    "mt_poly",
    "orbit_classify",
    "orbit_poly",
    "phi",
    "points_of_order",
    "render",
    "simple_part",
    "strict_divisors",
    "verify",
]
