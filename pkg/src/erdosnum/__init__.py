"""erdosnum: Erdos numbers of planar lattices, population constants of
positive definite binary quadratic forms, and the finite search for all
discriminants below a distance-density threshold."""

from .arith import FactoredInt, bernoulli, discriminant_decompose, factorize, kronecker
from .bigreal import BigReal, PrecisionError
from .constants import (
    ConstantReport,
    SHANKS_SCHMID_NS,
    bernays_C,
    erdos_number,
    euler_minus_product,
    james_J,
    pall_P,
    shanks_schmid_table,
)
from .extremal import SearchResult, lower_bound_E2, search_below
from .forms import (
    QuadForm,
    ResourceLimitError,
    class_number,
    population_count,
    reduce_form,
    reduced_forms,
    represents,
    unit_count,
    xi_D,
)
from .genus import Discriminant, g_count, t_of_D, v_closed, v_series
from .lfun import L1, dirichlet_L, hurwitz_zeta, pi_const, zeta_int

__version__ = "0.1.0"

__all__ = [
    "BigReal",
    "ConstantReport",
    "Discriminant",
    "FactoredInt",
    "L1",
    "PrecisionError",
    "QuadForm",
    "ResourceLimitError",
    "SHANKS_SCHMID_NS",
    "SearchResult",
    "bernays_C",
    "bernoulli",
    "class_number",
    "dirichlet_L",
    "discriminant_decompose",
    "erdos_number",
    "euler_minus_product",
    "factorize",
    "g_count",
    "hurwitz_zeta",
    "james_J",
    "kronecker",
    "lower_bound_E2",
    "pall_P",
    "pi_const",
    "population_count",
    "reduce_form",
    "reduced_forms",
    "represents",
    "search_below",
    "shanks_schmid_table",
    "t_of_D",
    "unit_count",
    "v_closed",
    "v_series",
    "xi_D",
    "zeta_int",
]
