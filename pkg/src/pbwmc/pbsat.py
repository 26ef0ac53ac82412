"""A small complete decision procedure for normalized PB formulas.

Plain DPLL: slack-based propagation, decisions on the smallest unassigned
variable with the positive phase first, chronological backtracking.  Good
enough for preprocessing at desk scale; anything with the same call
signature as :func:`solve` can be plugged into :mod:`pbwmc.preprocess`.
"""
from __future__ import annotations

from collections import deque
from typing import Dict, Iterable, Optional

from .formula import EQ, PBFormula

Assignment = Dict[int, int]


def _check(terms, is_eq, degree, assign, forced) -> bool:
    true_sum = 0
    free_sum = 0
    free = []
    for a, lit in terms:
        value = assign.get(abs(lit))
        if value is None:
            free.append((a, lit))
            free_sum += a
        elif (value == 1) == (lit > 0):
            true_sum += a
    slack = true_sum + free_sum - degree
    if slack < 0:
        return False
    for a, lit in free:
        if a > slack:
            forced.append(lit)
    if is_eq:
        room = degree - true_sum
        if room < 0:
            return False
        for a, lit in free:
            if a > room:
                forced.append(-lit)
    return True


class _Search:
    def __init__(self, formula: PBFormula):
        self.cons = [(c.terms, c.op == EQ, c.degree) for c in formula.constraints]
        self.occurs: Dict[int, list] = {}
        for i, c in enumerate(formula.constraints):
            for v in c.variables:
                self.occurs.setdefault(v, []).append(i)
        self.vars = sorted(self.occurs)

    def propagate(self, assign: Assignment, queue: Iterable[int]) -> bool:
        """Run propagation to fixpoint from the constraint indices in ``queue``."""
        pending = deque(queue)
        queued = set(pending)
        while pending:
            ci = pending.popleft()
            queued.discard(ci)
            forced = []
            if not _check(*self.cons[ci], assign, forced):
                return False
            for lit in forced:
                v, value = abs(lit), int(lit > 0)
                old = assign.get(v)
                if old is None:
                    assign[v] = value
                    for cj in self.occurs[v]:
                        if cj not in queued:
                            queued.add(cj)
                            pending.append(cj)
                elif old != value:
                    return False
        return True

    def run(self, assign: Assignment) -> Optional[Assignment]:
        for v in self.vars:
            if v not in assign:
                break
        else:
            return assign
        for value in (1, 0):
            trial = dict(assign)
            trial[v] = value
            if self.propagate(trial, self.occurs[v]):
                found = self.run(trial)
                if found is not None:
                    return found
        return None


def solve(formula: PBFormula, assumptions: Iterable[int] = ()) -> Optional[Assignment]:
    """A model of ``formula`` (total over ``1..num_vars``) or ``None`` if UNSAT.

    ``assumptions`` are literals forced true; the formula's fixed literals
    are always respected.  Variables left free default to 0.
    """
    if formula.unsat:
        return None
    search = _Search(formula)
    assign: Assignment = {}
    for lit in list(formula.fixed) + list(assumptions):
        v, value = abs(lit), int(lit > 0)
        if assign.get(v, value) != value:
            return None
        assign[v] = value
    if not search.propagate(assign, range(len(search.cons))):
        return None
    model = search.run(assign)
    if model is None:
        return None
    return {v: model.get(v, 0) for v in range(1, formula.num_vars + 1)}


def solve_assuming(formula: PBFormula, lit: int) -> Optional[Assignment]:
    return solve(formula, (lit,))
