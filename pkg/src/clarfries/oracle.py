"""Exhaustive reference implementations for cross-checking the solvers.

Everything here enumerates: reorientations by trying every arc subset,
matchings by backtracking.  Budgets keep the blow-up honest; exceeding one
raises :class:`BudgetExceeded` rather than silently truncating.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .digraph import Digraph, sources_sinks
from .errors import BudgetExceeded, InputError
from .plane import PlaneBipartiteGraph, alternating_faces


@dataclass(frozen=True)
class OracleBudget:
    max_arcs: int = 14
    max_matchings: int = 100_000


def enumerate_reorientations(
    d: Digraph, budget: OracleBudget | None = None
) -> Iterator[tuple[frozenset[int], Digraph]]:
    """Yield every (reversed arc set, reoriented digraph) reachable by
    reversing disjoint directed cuts, in increasing bitmask order.

    A subset qualifies exactly when some potential drops by 1 on it and 0
    elsewhere; since those are equality constraints, the potential is
    propagated over a spanning traversal and checked against every arc,
    which is much cheaper than a full tension solve per subset.
    """
    budget = budget or OracleBudget()
    m = d.arc_count
    if m > budget.max_arcs:
        raise BudgetExceeded(f"{m} arcs exceeds the budget of {budget.max_arcs}")
    n = d.node_count
    incidence: list[list[tuple[int, int, bool]]] = [[] for _ in range(n)]
    for a, (u, v) in enumerate(d.arcs):
        incidence[u].append((v, a, True))
        incidence[v].append((u, a, False))

    arcs = d.arcs
    for mask in range(1 << m):
        pot = [None] * n
        pot[0] = 0
        stack = [0]
        ok = True
        while stack and ok:
            x = stack.pop()
            px = pot[x]
            for y, a, forward in incidence[x]:
                drop = (mask >> a) & 1
                val = px + drop if forward else px - drop
                if pot[y] is None:
                    pot[y] = val
                    stack.append(y)
                elif pot[y] != val:
                    ok = False
                    break
        if not ok:
            continue
        reversed_arcs = frozenset(a for a in range(m) if (mask >> a) & 1)
        new_arcs = tuple(
            (v, u) if (mask >> a) & 1 else (u, v) for a, (u, v) in enumerate(arcs)
        )
        yield reversed_arcs, Digraph(n, new_arcs)


def brute_max_source_sink(
    d: Digraph, weights, budget: OracleBudget | None = None
) -> tuple:
    """Max over all reorientations of total source weight plus sink weight,
    with the first argmax (full source and sink sets) as witness."""
    best = None
    best_pair = None
    for _rset, dd in enumerate_reorientations(d, budget):
        so, si = sources_sinks(dd)
        value = sum(weights.source_weight[v] for v in so) + sum(
            weights.sink_weight[v] for v in si
        )
        if best is None or value > best:
            best = value
            best_pair = (so, si)
    return best, best_pair


def enumerate_matchings(
    g: PlaneBipartiteGraph, budget: OracleBudget | None = None
) -> Iterator[frozenset[int]]:
    """Yield every perfect matching as an edge-index set, duplicate-free.

    Backtracks over S-nodes in index order; deterministic.
    """
    budget = budget or OracleBudget()
    ns = g.s_count
    nt = g.node_count - ns
    if ns != nt:
        raise InputError("graph cannot have a perfect matching: |S| != |T|")
    adj: list[list[tuple[int, int]]] = [[] for _ in range(ns)]
    for i, (s, t) in enumerate(g.edges):
        adj[s].append((t - ns, i))
    used = [False] * nt
    chosen: list[int] = []
    count = 0

    def backtrack(s: int) -> Iterator[frozenset[int]]:
        nonlocal count
        if s == ns:
            count += 1
            if count > budget.max_matchings:
                raise BudgetExceeded(
                    f"more than {budget.max_matchings} perfect matchings"
                )
            yield frozenset(chosen)
            return
        for t, e in adj[s]:
            if not used[t]:
                used[t] = True
                chosen.append(e)
                yield from backtrack(s + 1)
                chosen.pop()
                used[t] = False

    yield from backtrack(0)


def brute_clar_fries(
    g: PlaneBipartiteGraph,
    cw_weights: Sequence | None = None,
    acw_weights: Sequence | None = None,
    budget: OracleBudget | None = None,
) -> tuple:
    """Max over all perfect matchings of total alternating-face weight:
    (value, matching, clockwise faces, anticlockwise faces)."""
    if cw_weights is None:
        cw_weights = g.cw_weights
    if acw_weights is None:
        acw_weights = g.acw_weights
    best = None
    for matching in enumerate_matchings(g, budget):
        cw, acw = alternating_faces(g, matching)
        value = sum(cw_weights[f] for f in cw) + sum(acw_weights[f] for f in acw)
        if best is None or value > best[0]:
            best = (value, matching, cw, acw)
    if best is None:
        raise InputError("graph has no perfect matching")
    return best
