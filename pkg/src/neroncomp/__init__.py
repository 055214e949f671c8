"""Component groups of Neron models from Galois-lattice data.

Submodules:

- ``partitions``: partition invariants ``delta_l``, ``delta'_l``, ``f_l`` and orders
- ``abgroups``: finite abelian groups, subgroup enumeration, extension inequalities
- ``exactlinalg``: exact integer and l-adic linear algebra
- ``models``: Galois-lattice models and their component groups
- ``classify``: realizability of a group with given ranks, with witness plans
- ``suites``: reproducible verification suites
- ``cli``: command-line front end
"""

__version__ = "0.1.0"

from .abgroups import AbGroup, ConcreteLGroup, enumerate_subgroup_pairs
from .classify import (
    BlockSpec,
    ConstructionPlan,
    RealizabilityQuery,
    end_to_end_check,
    is_realizable,
    plan,
    rhs_bound,
    verify_plan,
)
from .errors import BudgetExceeded, ModelError, NonUnitError, PrecisionError
from .models import (
    GaloisLatticeModel,
    PhiReport,
    Ranks,
    check_cor34,
    check_thm33,
    compute_phi,
    direct_sum,
)
from .partitions import Partition, delta_l, delta_prime_l, f_l

__all__ = [
    "__version__",
    "AbGroup",
    "ConcreteLGroup",
    "enumerate_subgroup_pairs",
    "BlockSpec",
    "ConstructionPlan",
    "RealizabilityQuery",
    "end_to_end_check",
    "is_realizable",
    "plan",
    "rhs_bound",
    "verify_plan",
    "BudgetExceeded",
    "ModelError",
    "NonUnitError",
    "PrecisionError",
    "GaloisLatticeModel",
    "PhiReport",
    "Ranks",
    "check_cor34",
    "check_thm33",
    "compute_phi",
    "direct_sum",
    "Partition",
    "delta_l",
    "delta_prime_l",
    "f_l",
]
