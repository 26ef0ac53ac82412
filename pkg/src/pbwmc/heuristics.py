"""Variable orders and cluster routing.

The primal graph is a plain ``dict`` mapping each variable to the set of
variables it shares a constraint with.  Ties are always broken towards the
smallest variable index so every order is deterministic.
"""
from __future__ import annotations

from typing import Dict, Iterable, List, Mapping, Sequence, Set

from .formula import PBConstraint, PBFormula

PrimalGraph = Dict[int, Set[int]]


def primal_graph(constraints: Iterable[PBConstraint], vertices: Iterable[int] = ()) -> PrimalGraph:
    if isinstance(constraints, PBFormula):
        constraints = constraints.constraints
    graph: PrimalGraph = {v: set() for v in vertices}
    for c in constraints:
        vs = c.variables
        for v in vs:
            graph.setdefault(v, set()).update(u for u in vs if u != v)
    return graph


def mcs_order(graph: PrimalGraph) -> List[int]:
    """Maximum-cardinality search: visit the vertex with most visited neighbours."""
    visited_nbrs = {v: 0 for v in graph}
    order = []
    while visited_nbrs:
        v = min(visited_nbrs, key=lambda u: (-visited_nbrs[u], u))
        del visited_nbrs[v]
        order.append(v)
        for u in graph[v]:
            if u in visited_nbrs:
                visited_nbrs[u] += 1
    return order


def lexp_order(graph: PrimalGraph) -> Dict[int, int]:
    """Lexicographic BFS; returns ``{var: rank}`` with ranks 1, 2, ... in visit order.

    A vertex's label lists the stamps of its visited neighbours, stamps
    decreasing from ``n``; the unvisited vertex with the lexicographically
    largest label goes next.
    """
    labels: Dict[int, List[int]] = {v: [] for v in graph}
    n = len(graph)
    rank = {}
    for i in range(n):
        v = min(labels, key=lambda u: (_neg_label(labels[u]), u))
        del labels[v]
        rank[v] = i + 1
        for u in graph[v]:
            if u in labels:
                labels[u].append(n - i)
    return rank


def _neg_label(label: List[int]):
    # min() over this key == max() over the label, prefixes counting as smaller
    return [-x for x in label] + [0]


def index_order(graph: PrimalGraph) -> List[int]:
    return sorted(graph)


def index_rank(graph: PrimalGraph) -> Dict[int, int]:
    return {v: v for v in graph}


def constraint_rank(c: PBConstraint, rank: Mapping[int, int]) -> int:
    """Cluster index of a constraint: the smallest rank among its variables."""
    if not c.terms:
        raise ValueError("empty constraint has no cluster")
    return min(rank[v] for v in c.variables)


def choose_cluster(support: Iterable[int], i: int, project_cluster: Mapping[int, int], m: int) -> int:
    """Earliest cluster after ``i`` that projects one of ``support``.

    ``project_cluster`` maps each variable to the cluster that sums it out.
    A constant diagram moves on to ``i + 1``.
    """
    later = []
    for v in support:
        if project_cluster[v] <= i:
            raise RuntimeError(f"x{v} outlived its projection in cluster {project_cluster[v]}")
        later.append(project_cluster[v])
    if later:
        return min(later)
    return min(i + 1, m)
