"""Exact cost-based filtering for weighted constraints by dual linear programs.

The package treats a weighted constraint (minimum-cost assignment, shortest
path in a DAG) as a small LP whose dual solutions carry reduced costs.  One
dual solve per set of pairwise-incompatible edges yields *exact* reduced
costs on the whole set, so full arc consistency with respect to a cost bound
takes at most one solve per variable.  Everything is rational arithmetic;
every optimum is certified against its dual before being believed.
"""

from .duality import (
    DualSolution,
    ExactnessCertificate,
    averaged_satisfaction_dual,
    dual_solution,
    exact_reduced_cost,
    exactness_certificate,
    is_dual_feasible,
    reduced_cost,
    shifted_cost_dual,
    solve_family_dual,
    solve_primal,
    zstar_from_family_dual,
)
from .formulations import (
    IncompatibleFamily,
    Support,
    bg01_encode,
    dual_program,
    family,
    find_support,
    primal_program,
    restricted_program,
    worst_case_alldiff,
)
from .model import (
    ALLDIFF,
    PATH,
    EdgeId,
    InfeasibleConstraintError,
    SatisfactionInstance,
    WeightedInstance,
    instance_from_dict,
    instance_to_dict,
    load_instance,
    save_instance,
    validate,
    weighted_instance,
)
from .oracle import OracleReport, SizeGuardError
from .propagation import (
    AS_LISTED,
    CONSISTENT,
    INCONSISTENT,
    MOST_UNMARKED,
    UNMARKED,
    FilterResult,
    ac_by_lp,
    lower_bound,
)

__all__ = [
    "ALLDIFF",
    "AS_LISTED",
    "CONSISTENT",
    "DualSolution",
    "EdgeId",
    "ExactnessCertificate",
    "FilterResult",
    "INCONSISTENT",
    "IncompatibleFamily",
    "InfeasibleConstraintError",
    "MOST_UNMARKED",
    "OracleReport",
    "PATH",
    "SatisfactionInstance",
    "SizeGuardError",
    "Support",
    "UNMARKED",
    "WeightedInstance",
    "ac_by_lp",
    "averaged_satisfaction_dual",
    "bg01_encode",
    "dual_program",
    "dual_solution",
    "exact_reduced_cost",
    "exactness_certificate",
    "family",
    "find_support",
    "instance_from_dict",
    "instance_to_dict",
    "is_dual_feasible",
    "load_instance",
    "lower_bound",
    "primal_program",
    "reduced_cost",
    "restricted_program",
    "save_instance",
    "shifted_cost_dual",
    "solve_family_dual",
    "solve_primal",
    "validate",
    "weighted_instance",
    "worst_case_alldiff",
    "zstar_from_family_dual",
]

__version__ = "0.1.0"
