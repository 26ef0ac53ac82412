"""Brute-force reference answers for small instances.

Nothing here touches the diagram code: PB questions are answered by
enumerating every assignment and evaluating the constraints as written, in
exact rational arithmetic.  The CNF counter is an exhaustive split on
variables with unit propagation only to cut dead branches.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Iterator, Optional, Set

from .formula import (PBConstraint, PBFormula, WeightFunction, evaluate,
                      iter_assignments, satisfies)

MAX_VARS = 20


class BudgetExceeded(ValueError):
    pass


def _check_budget(n: int, max_vars: int) -> None:
    if n > max_vars:
        raise BudgetExceeded(f"{n} variables exceeds the oracle budget of {max_vars}")


def models(formula: PBFormula, max_vars: int = MAX_VARS) -> Iterator[Dict[int, int]]:
    _check_budget(formula.num_vars, max_vars)
    for assignment in iter_assignments(range(1, formula.num_vars + 1)):
        if satisfies(formula, assignment):
            yield assignment


def brute_force_count(formula: PBFormula, weights: Optional[WeightFunction] = None,
                      max_vars: int = MAX_VARS) -> Fraction:
    weights = weights or WeightFunction()
    total = Fraction(0)
    for assignment in models(formula, max_vars):
        w = Fraction(1)
        for v, value in assignment.items():
            w *= Fraction(weights.positive(v) if value else weights.negative(v))
        total += w
    return total


def brute_force_backbone(formula: PBFormula, max_vars: int = MAX_VARS) -> Set[int]:
    """Literals true in every model; empty when there is none."""
    common = None
    for assignment in models(formula, max_vars):
        lits = {v if value else -v for v, value in assignment.items()}
        common = lits if common is None else common & lits
    return common or set()


def brute_force_entails(formula: PBFormula, c: PBConstraint, max_vars: int = MAX_VARS) -> bool:
    return all(evaluate(c, a) for a in models(formula, max_vars))


def cnf_count(clauses: Iterable[Iterable[int]], num_vars: int, weight=None,
              assumptions: Iterable[int] = ()) -> Fraction:
    """Weighted model count of a CNF over ``1..num_vars``.

    ``weight(lit)`` gives literal weights (default 1).  ``assumptions`` are
    literals fixed true without contributing their weight.
    """
    weight = weight or (lambda lit: 1)
    clauses = [tuple(c) for c in clauses]
    if any(not c for c in clauses):
        return Fraction(0)
    occurs: Dict[int, list] = {}
    for i, c in enumerate(clauses):
        for lit in c:
            occurs.setdefault(-lit, []).append(i)  # clauses hurt when lit is set false
    assign: Dict[int, bool] = {}

    def value(lit):
        v = assign.get(abs(lit))
        return None if v is None else (v if lit > 0 else not v)

    def set_lit(lit, trail) -> bool:
        """Assign ``lit`` true and propagate; False on conflict."""
        queue = [lit]
        while queue:
            l = queue.pop()
            current = value(l)
            if current is True:
                continue
            if current is False:
                return False
            assign[abs(l)] = l > 0
            trail.append(abs(l))
            for ci in occurs.get(l, ()):
                unassigned = None
                n_free = 0
                satisfied = False
                for x in clauses[ci]:
                    vx = value(x)
                    if vx is True:
                        satisfied = True
                        break
                    if vx is None:
                        n_free += 1
                        unassigned = x
                if satisfied:
                    continue
                if n_free == 0:
                    return False
                if n_free == 1:
                    queue.append(unassigned)
        return True

    def undo(trail, mark):
        while len(trail) > mark:
            del assign[trail.pop()]

    trail: list = []
    assumed = {abs(l) for l in assumptions}
    for lit in assumptions:
        if not set_lit(lit, trail):
            return Fraction(0)
    for c in clauses:
        if len(c) == 1 and not set_lit(c[0], trail):
            return Fraction(0)
    start_weight = Fraction(1)
    for v in trail:
        if v not in assumed:
            start_weight *= Fraction(weight(v if assign[v] else -v))

    def rec(v: int) -> Fraction:
        while v <= num_vars and v in assign:
            v += 1
        if v > num_vars:
            return Fraction(1)
        total = Fraction(0)
        for lit in (v, -v):
            mark = len(trail)
            if set_lit(lit, trail):
                w = Fraction(1)
                for u in trail[mark:]:
                    w *= Fraction(weight(u if assign[u] else -u))
                total += w * rec(v + 1)
            undo(trail, mark)
        return total

    return start_weight * rec(1)
