"""gausslab: exact character sums, additive energies, and subgroup structure
over finite fields F_{p^m}, with an inequality-verification harness."""

from ._backend import BACKEND_NAME, HAVE_COMPILED
from .bounds import BoundReport
from .chars import (
    WeightedSum,
    bilinear_sum,
    gauss_sum,
    incomplete_sum,
    max_over_characters,
    psi_exponent,
    subgroup_sum,
    trilinear_sum,
)
from .cyclo import CycloSum
from .energy import (
    EnergyRecord,
    additive_energy,
    difference_set,
    dyadic_select,
    energy_via_fourth_moment,
    multiplicative_energy,
    ratio_set,
)
from .errors import GaussLabError
from .field import FieldCtx, build_field, field_arith
from .groups import (
    ConditionReport,
    SubgroupSpec,
    check_condition,
    coset_intersection_size,
    divisors,
    nth_power_subgroup,
    subfield_intersection_size,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND_NAME",
    "HAVE_COMPILED",
    "BoundReport",
    "CycloSum",
    "ConditionReport",
    "EnergyRecord",
    "FieldCtx",
    "GaussLabError",
    "SubgroupSpec",
    "WeightedSum",
    "additive_energy",
    "bilinear_sum",
    "build_field",
    "check_condition",
    "coset_intersection_size",
    "difference_set",
    "divisors",
    "dyadic_select",
    "energy_via_fourth_moment",
    "field_arith",
    "gauss_sum",
    "incomplete_sum",
    "max_over_characters",
    "multiplicative_energy",
    "nth_power_subgroup",
    "psi_exponent",
    "ratio_set",
    "subfield_intersection_size",
    "subgroup_sum",
    "trilinear_sum",
]
