"""Weighted model counting by clustered products and early projection.

Constraints are grouped into clusters by the cluster variable order.  Each
cluster multiplies its diagrams, sums out the variables no later cluster
mentions, and hands the result to the earliest later cluster that sums out
one of its remaining variables.  The last cluster ends with a constant.
"""
from __future__ import annotations

import heapq
import logging
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional

from .build import construct_constraint
from .dd import CountTimeout, Manager, ResourceLimit
from .formula import PBFormula, WeightFunction, normalize_formula
from .heuristics import (choose_cluster, constraint_rank, index_order, index_rank,
                         lexp_order, mcs_order, primal_graph)
from .preprocess import DEFAULT_MAX_LITERALS, PreprocessReport, preprocess

logger = logging.getLogger(__name__)

__all__ = ["CountConfig", "CountResult", "count", "CountTimeout", "ResourceLimit"]

DIAGRAM_ORDERS = ("mcs", "index")
CLUSTER_ORDERS = ("lexp", "index")


@dataclass
class CountConfig:
    preprocess: str = "full"
    diagram_order: str = "mcs"
    cluster_order: str = "lexp"
    exact: bool = False
    max_literals: int = DEFAULT_MAX_LITERALS
    timeout: Optional[float] = None
    max_nodes: Optional[int] = None
    check_safety: bool = False


@dataclass
class CountResult:
    value: object
    stats: Dict[str, object] = field(default_factory=dict)
    report: PreprocessReport = field(default_factory=PreprocessReport)


def _number(value, exact: bool):
    return Fraction(value) if exact else float(value)


def count(formula: PBFormula, weights: Optional[WeightFunction] = None,
          config: Optional[CountConfig] = None) -> CountResult:
    """Weighted model count of ``formula`` over ``x_1 .. x_num_vars``."""
    config = config or CountConfig()
    weights = weights or WeightFunction()
    if config.diagram_order not in DIAGRAM_ORDERS:
        raise ValueError(f"diagram order must be one of {DIAGRAM_ORDERS}")
    if config.cluster_order not in CLUSTER_ORDERS:
        raise ValueError(f"cluster order must be one of {CLUSTER_ORDERS}")
    exact = config.exact
    start = time.monotonic()
    deadline = None if config.timeout is None else start + config.timeout
    stats: Dict[str, object] = {}

    phi = normalize_formula(formula)
    phi, report = preprocess(phi, config.preprocess, config.max_literals)
    stats["time_preprocess"] = time.monotonic() - start
    stats["backbone"] = len(report.backbone)
    stats["deleted"] = report.deleted
    stats["constraints"] = len(phi.constraints)
    if phi.unsat:
        stats["time_total"] = time.monotonic() - start
        return CountResult(_number(0, exact), stats, report)

    # literals fixed by preprocessing and variables no constraint mentions
    factor = _number(1, exact)
    for lit in sorted(phi.fixed, key=abs):
        factor *= _number(weights.literal(lit), exact)
    used = phi.variables()
    fixed_vars = {abs(l) for l in phi.fixed}
    for v in range(1, phi.num_vars + 1):
        if v not in used and v not in fixed_vars:
            factor *= _number(weights.positive(v), exact) + _number(weights.negative(v), exact)

    if not phi.constraints:
        stats["time_total"] = time.monotonic() - start
        return CountResult(factor, stats, report)

    graph = primal_graph(phi)
    order = mcs_order(graph) if config.diagram_order == "mcs" else index_order(graph)
    rank = lexp_order(graph) if config.cluster_order == "lexp" else index_rank(graph)
    mgr = Manager(order, exact=exact, max_nodes=config.max_nodes, deadline=deadline)

    value = _run_clusters(phi, weights, mgr, rank, config, stats)
    stats["nodes"] = len(mgr)
    stats["time_total"] = time.monotonic() - start
    return CountResult(value * factor, stats, report)


def _run_clusters(phi, weights, mgr, rank, config, stats):
    t0 = time.monotonic()
    m = max(rank[v] for v in phi.variables())
    clusters: Dict[int, list] = {}
    for c in phi.constraints:
        clusters.setdefault(constraint_rank(c, rank), []).append(c)
    # a variable is summed out by the last cluster that mentions it
    project_cluster: Dict[int, int] = {}
    for i in sorted(clusters):
        for c in clusters[i]:
            for v in c.variables:
                project_cluster[v] = i
    to_project: Dict[int, List[int]] = {}
    for v, i in project_cluster.items():
        to_project.setdefault(i, []).append(v)

    kappa: Dict[int, List[int]] = {i: [construct_constraint(mgr, c) for c in cs]
                                   for i, cs in clusters.items()}
    stats["clusters"] = len(clusters)
    stats["time_build"] = time.monotonic() - t0
    live = sum(len(ds) for ds in kappa.values())
    peak_live = live
    peak_size = 0
    result = None

    for i in range(1, m + 1):
        if config.timeout is not None and time.monotonic() > mgr.deadline:
            raise CountTimeout(f"deadline passed in cluster {i}")
        diagrams = kappa.pop(i, None)
        if not diagrams:
            continue
        live -= len(diagrams)
        acc = _multiply_all(mgr, diagrams)
        for x in sorted(to_project.get(i, ()), key=mgr.level):
            if config.check_safety:
                _assert_safe(mgr, kappa, x, i)
            acc = mgr.project(acc, x, weights.positive(x), weights.negative(x))
        peak_size = max(peak_size, mgr.node_count(acc))
        if i < m:
            j = choose_cluster(mgr.support(acc), i, project_cluster, m)
            kappa.setdefault(j, []).append(acc)
            live += 1
            peak_live = max(peak_live, live)
        else:
            result = acc

    stats["peak_live_diagrams"] = peak_live
    stats["peak_diagram_nodes"] = peak_size
    stats["time_compile"] = time.monotonic() - t0
    if result is None or not mgr.is_terminal(result):
        raise RuntimeError("final cluster did not reduce to a constant")
    return mgr.value(result)


def _multiply_all(mgr: Manager, diagrams: List[int]) -> int:
    # smallest two first keeps intermediate products small
    heap = [(mgr.node_count(d), n, d) for n, d in enumerate(diagrams)]
    heapq.heapify(heap)
    tick = len(heap)
    while len(heap) > 1:
        _, _, f = heapq.heappop(heap)
        _, _, g = heapq.heappop(heap)
        p = mgr.product(f, g)
        heapq.heappush(heap, (mgr.node_count(p), tick, p))
        tick += 1
    return heap[0][2]


def _assert_safe(mgr: Manager, kappa, x: int, i: int) -> None:
    for j, diagrams in kappa.items():
        for d in diagrams:
            if x in mgr.support(d):
                raise AssertionError(f"x{x} projected in cluster {i} but still used in cluster {j}")
