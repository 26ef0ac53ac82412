"""Diagrams for normalized constraints.

Both builders walk the terms in diagram order and split on one literal at a
time.  Position ``j`` is 0-based: the sub-constraint at ``j`` is
``sum(a_i * l_i for i >= j) <op> k``.

``GeqBuilder`` also returns, for every sub-constraint, the widest interval
of residual degrees that yields the same diagram, and looks up stored
intervals before recursing.  Its base cases are those of a ``>=``
constraint with nonnegative coefficients: ``k <= 0`` is always true and
``k`` above the suffix sum is always false.
"""
from __future__ import annotations

import bisect
from typing import Dict, List, NamedTuple, Sequence, Tuple

from .dd import INF, Manager
from .formula import EQ, GE, PBConstraint


class Interval(NamedTuple):
    lo: float
    hi: float

    def __contains__(self, k) -> bool:
        return self.lo <= k <= self.hi

    def __and__(self, other: "Interval") -> "Interval":
        return Interval(max(self.lo, other.lo), min(self.hi, other.hi))

    def shift(self, a: int) -> "Interval":
        return Interval(self.lo + a, self.hi + a)


def sort_terms(c: PBConstraint, mgr: Manager) -> Tuple[Tuple[int, int], ...]:
    return tuple(sorted(c.terms, key=lambda t: mgr.level(abs(t[1]))))


class EqBuilder:
    """Memoized construction of ``sum(a_i l_i) = k`` keyed by ``(j, k)``."""

    def __init__(self, mgr: Manager, terms: Sequence[Tuple[int, int]]):
        self.mgr = mgr
        self.terms = tuple(terms)
        self.suffix = _suffix_sums(self.terms)
        self.memo: Dict[Tuple[int, int], int] = {}

    def build(self, j: int, k: int) -> int:
        mgr = self.mgr
        if k < 0:
            return mgr.zero
        if j == len(self.terms):
            return mgr.one if k == 0 else mgr.zero
        if k > self.suffix[j]:
            return mgr.zero
        node = self.memo.get((j, k))
        if node is not None:
            return node
        a, lit = self.terms[j]
        when_false = self.build(j + 1, k)
        when_true = self.build(j + 1, k - a)
        if lit > 0:
            node = mgr.ite(lit, when_true, when_false)
        else:
            node = mgr.ite(-lit, when_false, when_true)
        self.memo[(j, k)] = node
        return node


class GeqBuilder:
    """Construction of ``sum(a_i l_i) >= k`` with interval memoization.

    ``memo[j]`` is a pair of parallel lists (sorted interval lower bounds,
    ``(Interval, node)`` entries); stored intervals never overlap.
    """

    def __init__(self, mgr: Manager, terms: Sequence[Tuple[int, int]], use_memo: bool = True):
        self.mgr = mgr
        self.terms = tuple(terms)
        self.suffix = _suffix_sums(self.terms)
        self.use_memo = use_memo
        self.memo: List[Tuple[list, list]] = [([], []) for _ in self.terms]
        self.calls = 0

    def _find(self, j: int, k: int):
        los, entries = self.memo[j]
        i = bisect.bisect_right(los, k) - 1
        if i >= 0 and k in entries[i][0]:
            return entries[i]
        return None

    def _store(self, j: int, interval: Interval, node: int) -> None:
        los, entries = self.memo[j]
        i = bisect.bisect_left(los, interval.lo)
        los.insert(i, interval.lo)
        entries.insert(i, (interval, node))

    def build(self, j: int, k: int) -> Tuple[Interval, int]:
        self.calls += 1
        mgr = self.mgr
        if k <= 0:
            return Interval(-INF, 0), mgr.one
        if k > self.suffix[j]:
            return Interval(self.suffix[j] + 1, INF), mgr.zero
        if self.use_memo:
            hit = self._find(j, k)
            if hit is not None:
                return hit
        a, lit = self.terms[j]
        i_false, when_false = self.build(j + 1, k)
        i_true, when_true = self.build(j + 1, k - a)
        if lit > 0:
            node = mgr.ite(lit, when_true, when_false)
        else:
            node = mgr.ite(-lit, when_false, when_true)
        interval = i_false & i_true.shift(a)
        if self.use_memo:
            self._store(j, interval, node)
        return interval, node


def _suffix_sums(terms) -> List[int]:
    out = [0] * (len(terms) + 1)
    for j in range(len(terms) - 1, -1, -1):
        out[j] = out[j + 1] + terms[j][0]
    return out


def construct_eq(mgr: Manager, c: PBConstraint) -> int:
    return EqBuilder(mgr, sort_terms(c, mgr)).build(0, c.degree)


def construct_geq(mgr: Manager, c: PBConstraint) -> Tuple[Interval, int]:
    return GeqBuilder(mgr, sort_terms(c, mgr)).build(0, c.degree)


def construct_constraint(mgr: Manager, c: PBConstraint) -> int:
    """0/1 diagram of a normalized constraint."""
    if c.op == EQ:
        return construct_eq(mgr, c)
    if c.op == GE:
        return construct_geq(mgr, c)[1]
    raise ValueError(f"constraint must be normalized, got operator {c.op!r}")
