"""Global, K-way and partial K-way negativities of four-qubit pure states,
with the nine SLOCC family constructors and their closed-form oracles."""
__version__ = "0.1.0"

from ._backend import BACKEND
from ._config import DEFAULT_TOLERANCES, Tolerances
from .document import ReportDocument
from .errors import (
    ContractError,
    DomainError,
    InputError,
    KwayNegError,
    NormalizationError,
    NumericalError,
)
from .families import (
    FAMILY_NAMES,
    FamilyParams,
    build_family,
    build_general_class1,
    fixed_state_expected,
    make_params,
    oracle_class1,
    oracle_la4,
    oracle_pairwise,
    oracle_schmidt,
)
from .linalg import density_from_state, hermitian_eigen, partial_trace, pure_state, schmidt_pair
from .negativity import (
    NegativityReport,
    build_report,
    e_zero,
    evaluate_quantities,
    global_negativity,
    kway_negativity,
    monogamy_check,
    partial_kway_negativity,
    partial_pair_negativity,
    partial_triple_negativity,
)
from .reduction import measure_qubit, psd_negativity_sq, reduced_negativity_bound_check
from .transpose import TransposeSpec, global_pt, kway_pt, pair_pt, triple_pt

import types as _types

__all__ = [k for k, v in dict(globals()).items() if not k.startswith("_") and not isinstance(v, _types.ModuleType)]
