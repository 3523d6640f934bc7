"""Exact parametrized Euler characteristics of the GHJ matrix model."""

from .closed_forms import (
    chi_orbifold,
    check_identity,
    xi_closed,
    xi_even,
    xi_ghj_polynomial,
    xi_odd,
)
from .continuum import even_sector_expansion, odd_sector_expansion, resummation_check
from .errors import PreconditionError, TruncationError
from .exact_math import (
    bernoulli_number,
    bernoulli_polynomial,
    power_sum_polynomial,
    weighted_bernoulli_sum,
)
from .ghj import (
    ModelParams,
    XiRecord,
    free_energy_concrete,
    free_energy_formal,
    oracle_check,
    product_identity_sides,
    xi_by_extraction,
)

__version__ = "0.1.0"

__all__ = [
    "ModelParams",
    "PreconditionError",
    "TruncationError",
    "XiRecord",
    "bernoulli_number",
    "bernoulli_polynomial",
    "check_identity",
    "chi_orbifold",
    "even_sector_expansion",
    "free_energy_concrete",
    "free_energy_formal",
    "odd_sector_expansion",
    "oracle_check",
    "power_sum_polynomial",
    "product_identity_sides",
    "resummation_check",
    "weighted_bernoulli_sum",
    "xi_by_extraction",
    "xi_closed",
    "xi_even",
    "xi_ghj_polynomial",
    "xi_odd",
]
