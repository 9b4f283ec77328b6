"""Gamma-conformal algebras with exact arithmetic.

Modules: ``scalar`` (the coefficient field Q(q)), ``group`` (the index
groups and their characters), ``conformal`` (alpha-products, axioms,
modules), ``modes`` (mode Lie algebras), ``dist`` (truncated formal
distributions), ``catalog`` (concrete algebras and oracles), ``suite`` and
``cli``.
"""

__version__ = "0.1.0"

from .catalog import build_algebra, default_character, oracle_diff
from .conformal import (
    AXIOMS,
    GammaConformalAlgebra,
    GenId,
    SamplePlan,
    alpha_product,
    check_conformal_axiom,
    gc1,
)
from .group import character_make, parse_group
from .modes import derived_mode_algebra, mode_bracket
from .scalar import Q, Scalar, parse_scalar

__all__ = [
    "__version__",
    "AXIOMS",
    "GammaConformalAlgebra",
    "GenId",
    "Q",
    "SamplePlan",
    "Scalar",
    "alpha_product",
    "build_algebra",
    "character_make",
    "check_conformal_axiom",
    "default_character",
    "derived_mode_algebra",
    "gc1",
    "mode_bracket",
    "oracle_diff",
    "parse_group",
    "parse_scalar",
]
