"""Reduced-cost arithmetic on dual solutions and the family dual programs.

A dual solution assigns a rational potential to every variable row (and value
row, for alldiff).  The reduced cost of an edge is the slack of its dual
constraint; the exact reduced cost is the true increase of the optimum when
the edge is forced.  The operations here produce dual solutions whose reduced
costs are exact on whole sets of pairwise-incompatible edges at once, which
is what the filtering loop consumes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

from . import formulations, lp_core
from .formulations import Support, edge_column
from .model import (
    ALLDIFF,
    PATH,
    EdgeId,
    InfeasibleConstraintError,
    SatisfactionInstance,
    WeightedInstance,
)


@dataclass(frozen=True)
class DualSolution:
    """Potentials per variable (u) and per value (v; empty for path instances).

    For path instances ``u`` covers every vertex, the sink pinned to 0 since
    its flow row does not exist.  ``w`` is the dual objective.
    """

    kind: str
    u: Mapping[int, Fraction]
    v: Mapping[int, Fraction]
    w: Fraction


@dataclass(frozen=True)
class ExactnessCertificate:
    """Outcome of the exactness test for one edge under one optimal dual.

    When ``exact`` the witness is a support through the edge whose other
    members all have zero reduced cost, and ``value`` is the exact reduced
    cost (equal to the edge's reduced cost under the tested dual).
    """

    edge: EdgeId
    exact: bool
    witness: Optional[Support]
    value: Optional[Fraction]


def dual_solution(
    instance: WeightedInstance,
    u: Mapping[int, Fraction],
    v: Optional[Mapping[int, Fraction]] = None,
) -> DualSolution:
    """Package potentials, computing the dual objective from the components."""
    u = {k: Fraction(x) for k, x in u.items()}
    v = {} if v is None else {k: Fraction(x) for k, x in v.items()}
    if instance.kind == ALLDIFF:
        w = sum(u.values()) + sum(v.values())
    else:
        meta = instance.path
        assert meta is not None
        u.setdefault(meta.sink, Fraction(0))
        w = u[meta.source]
    return DualSolution(kind=instance.kind, u=u, v=v, w=Fraction(w))


def from_row_duals(
    instance: WeightedInstance, row_duals: Mapping
) -> DualSolution:
    """Build a DualSolution from the row duals of a primal solve."""
    u: dict[int, Fraction] = {}
    v: dict[int, Fraction] = {}
    for tag, value in row_duals.items():
        if tag[0] == "u":
            u[tag[1]] = Fraction(value)
        elif tag[0] == "v":
            v[tag[1]] = Fraction(value)
        # any other tag (a forcing row) has no potential attached
    return dual_solution(instance, u, v)


def row_values(instance: WeightedInstance, dual: DualSolution) -> dict:
    """Potentials keyed by primal row tag, the shape lp_core's checks expect."""
    out: dict = {}
    if instance.kind == ALLDIFF:
        for i in range(instance.n_vars):
            out[("u", i)] = dual.u[i]
        for j in instance.values:
            out[("v", j)] = dual.v[j]
    else:
        for vtx in instance.variables():
            out[("u", vtx)] = dual.u[vtx]
    return out


def is_dual_feasible(instance: WeightedInstance, dual: DualSolution) -> bool:
    """Exact feasibility of the potentials for the dual of the support LP."""
    return lp_core.dual_feasible(
        formulations.primal_program(instance), row_values(instance, dual)
    )


def reduced_cost(instance: WeightedInstance, dual: DualSolution, ij: EdgeId) -> Fraction:
    """Slack of edge ij's dual constraint: c - u_i - v_j, or c - u_i + u_j on arcs."""
    ij = EdgeId(*ij)
    if ij not in instance.cost:
        raise ValueError(f"edge {ij} not in the instance")
    c = Fraction(instance.cost[ij])
    if instance.kind == ALLDIFF:
        return c - dual.u[ij.i] - dual.v[ij.j]
    return c - dual.u[ij.i] + dual.u[ij.j]


def solve_primal(instance: WeightedInstance):
    """Solve the support LP; returns (z*, primal values, optimal DualSolution)."""
    sol = lp_core.solve(formulations.primal_program(instance))
    if sol.status != lp_core.OPTIMAL:
        raise InfeasibleConstraintError(f"support LP is {sol.status}")
    return sol.objective, sol.primal, from_row_duals(instance, sol.dual)


def exact_reduced_cost(instance: WeightedInstance, ij: EdgeId) -> Fraction:
    """True cost increase of forcing edge ij: optimum of the restricted LP minus z*."""
    ij = EdgeId(*ij)
    base = lp_core.solve(formulations.primal_program(instance))
    if base.status != lp_core.OPTIMAL:
        raise InfeasibleConstraintError(f"support LP is {base.status}")
    forced = lp_core.solve(formulations.restricted_program(instance, ij))
    if forced.status != lp_core.OPTIMAL:
        raise InfeasibleConstraintError(f"edge {ij} lies on no support")
    return forced.objective - base.objective


def exactness_certificate(
    instance: WeightedInstance, dual: DualSolution, kl: EdgeId
) -> ExactnessCertificate:
    """Decide whether kl's reduced cost under an optimal dual is exact.

    Searches for a support through kl inside the subgraph of zero-reduced-cost
    edges.  Finding one proves exactness; the witness's cost then equals
    w + r_kl by construction, which is checked.
    """
    kl = EdgeId(*kl)
    if not is_dual_feasible(instance, dual):
        raise ValueError("dual solution is not feasible")
    z_star, _, _ = solve_primal(instance)
    if dual.w != z_star:
        raise ValueError("dual solution is not optimal")
    r_kl = reduced_cost(instance, dual, kl)
    allowed = {
        e for e in instance.edges if e == kl or reduced_cost(instance, dual, e) == 0
    }
    witness = formulations.find_support(instance, allowed, forced=kl)
    if witness is None:
        return ExactnessCertificate(edge=kl, exact=False, witness=None, value=None)
    # cost = w + sum of member reduced costs, and all but kl's vanish
    assert witness.cost == dual.w + r_kl
    return ExactnessCertificate(edge=kl, exact=True, witness=witness, value=r_kl)


def shifted_cost_dual(instance: WeightedInstance, kl: EdgeId) -> DualSolution:
    """An optimal dual whose reduced cost on kl is exact.

    Obtained by re-solving the support LP with kl's cost lowered by its exact
    reduced cost; any optimal dual of that program is optimal for the original
    dual and pins kl's reduced cost to the exact value.
    """
    kl = EdgeId(*kl)
    R = exact_reduced_cost(instance, kl)
    lp = formulations.primal_program(instance)
    objective = dict(lp.objective)
    objective[kl] = objective[kl] - R
    shifted = lp_core.LinearProgram(
        sense=lp.sense,
        columns=lp.columns,
        objective=objective,
        rows=lp.rows,
    )
    sol = lp_core.solve(shifted)
    if sol.status != lp_core.OPTIMAL:
        raise InfeasibleConstraintError(f"support LP is {sol.status}")
    dual = from_row_duals(instance, sol.dual)
    assert is_dual_feasible(instance, dual)
    assert reduced_cost(instance, dual, kl) == R
    return dual


# ---------------------------------------------------------------------------
# one dual solution per incompatible set


def big_m(instance: WeightedInstance) -> Fraction:
    # any support costs at most the sum of the positive costs, so this
    # strictly dominates every restricted optimum
    return Fraction(1) + sum(
        Fraction(c) for c in instance.cost.values() if c > 0
    )


def family_dual_program(
    instance: WeightedInstance,
    edge_set: Sequence[EdgeId],
    mode: str = "big_m",
) -> lp_core.LinearProgram:
    """The dual program whose optima carry exact reduced costs on the whole set.

    ``big_m``: maximize the dual objective plus the average reduced cost over
    the set, with each of those reduced costs capped.  ``with_z_star``: maximize
    the plain sum of the set's reduced costs over the optimal face of the dual
    (requires one preliminary primal solve).
    """
    edges = tuple(EdgeId(*e) for e in edge_set)
    if not edges:
        raise ValueError("empty edge set")
    for e in edges:
        if e not in instance.cost:
            raise ValueError(f"edge {e} not in the instance")
    primal = formulations.primal_program(instance)
    col_tags = tuple(r.tag for r in primal.rows)
    b = {r.tag: r.rhs for r in primal.rows}

    feas_rows = [
        lp_core.row(edge_column(instance, e), lp_core.LE, instance.cost[e], e)
        for e in instance.edges
    ]

    if mode == "big_m":
        share = Fraction(1, len(edges))
        objective = dict(b)
        constant = Fraction(0)
        for e in edges:
            constant += share * Fraction(instance.cost[e])
            for tag, a in edge_column(instance, e).items():
                objective[tag] = objective.get(tag, Fraction(0)) - share * a
        M = big_m(instance)
        cap_rows = [
            lp_core.row(
                {t: -a for t, a in edge_column(instance, e).items()},
                lp_core.LE,
                M - instance.cost[e],
                ("cap", e),
            )
            for e in edges
        ]
        return lp_core.LinearProgram(
            sense=lp_core.MAX,
            columns=col_tags,
            objective=objective,
            rows=tuple(feas_rows + cap_rows),
            free=frozenset(col_tags),
            objective_constant=constant,
        )
    if mode == "with_z_star":
        z_star, _, _ = solve_primal(instance)
        objective: dict = {}
        constant = Fraction(0)
        for e in edges:
            constant += Fraction(instance.cost[e])
            for tag, a in edge_column(instance, e).items():
                objective[tag] = objective.get(tag, Fraction(0)) - a
        opt_row = lp_core.row(b, lp_core.EQ, z_star, ("opt",))
        return lp_core.LinearProgram(
            sense=lp_core.MAX,
            columns=col_tags,
            objective=objective,
            rows=tuple(feas_rows + [opt_row]),
            free=frozenset(col_tags),
            objective_constant=constant,
        )
    raise ValueError(f"unknown mode {mode!r}")


def solve_family_dual(
    instance: WeightedInstance, edge_set: Sequence[EdgeId], mode: str = "big_m"
) -> DualSolution:
    """A dual solution with w + r_e equal to the restricted optimum for every e in the set."""
    lp = family_dual_program(instance, edge_set, mode=mode)
    sol = lp_core.solve(lp)
    if sol.status != lp_core.OPTIMAL:
        # feasible duals always exist, so this means the primal side is empty
        raise InfeasibleConstraintError(f"family dual program is {sol.status}")
    u = {tag[1]: val for tag, val in sol.primal.items() if tag[0] == "u"}
    v = {tag[1]: val for tag, val in sol.primal.items() if tag[0] == "v"}
    return dual_solution(instance, u, v)


def zstar_from_family_dual(
    instance: WeightedInstance,
    edge_set: Sequence[EdgeId],
    dual: DualSolution,
    covering: bool,
) -> Fraction:
    """z* recovered from a covering set's dual: w plus the smallest reduced cost."""
    if not covering:
        raise ValueError("the edge set must be covering to recover z*")
    edges = tuple(EdgeId(*e) for e in edge_set)
    return dual.w + min(reduced_cost(instance, dual, e) for e in edges)


# ---------------------------------------------------------------------------
# satisfaction constraints through the 0/1-cost encoding


def averaged_satisfaction_dual(
    sat: SatisfactionInstance,
) -> tuple[WeightedInstance, DualSolution]:
    """One optimal dual of the 0/1-cost encoding separating all inconsistent edges.

    Averages one exactness-carrying dual per inconsistent original edge; the
    average is still optimal and keeps every one of those reduced costs
    strictly positive, while consistent original edges stay at zero.
    """
    encoded = formulations.bg01_encode(sat)
    z_star, _, base = solve_primal(encoded)
    if z_star != 0:
        # every completion uses a non-edge: the constraint itself has no support
        raise InfeasibleConstraintError("no support exists", z_lb=z_star)
    inconsistent = [
        e for e in sat.edges if exact_reduced_cost(encoded, EdgeId(*e)) > 0
    ]
    if not inconsistent:
        return encoded, base
    parts = [shifted_cost_dual(encoded, e) for e in inconsistent]
    k = Fraction(1, len(parts))
    u = {
        i: k * sum(p.u[i] for p in parts) for i in range(encoded.n_vars)
    }
    v = {
        j: k * sum(p.v[j] for p in parts) for j in encoded.values
    }
    return encoded, dual_solution(encoded, u, v)
