"""Formula simplification before counting.

``add_backbone`` finds literals true in every model and propagates them
away, keeping each as a fixed fact.  ``delete_constraints`` drops every
constraint that the rest of the formula already entails, checked by walking
the constraint's 0-paths and propagating their literals through the others.
Both keep the weighted count unchanged.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Tuple

from .dd import Manager
from .build import construct_constraint
from .formula import Contradiction, PBFormula, propagate_constraints, unit_propagate
from .pbsat import solve

logger = logging.getLogger(__name__)

MODES = ("none", "backbone", "full")
DEFAULT_MAX_LITERALS = 20


@dataclass
class PreprocessReport:
    backbone: List[int] = field(default_factory=list)
    deleted: int = 0
    unsat: bool = False
    solver_calls: int = 0

    def merge(self, other: "PreprocessReport") -> "PreprocessReport":
        return PreprocessReport(self.backbone + other.backbone, self.deleted + other.deleted,
                                self.unsat or other.unsat, self.solver_calls + other.solver_calls)


def add_backbone(formula: PBFormula, solver: Callable = solve) -> Tuple[PBFormula, PreprocessReport]:
    report = PreprocessReport()
    if formula.unsat:
        report.unsat = True
        return formula, report
    witness = solver(formula)
    report.solver_calls += 1
    if witness is None:
        report.unsat = True
        return formula.replace(constraints=(), unsat=True), report

    in_constraints = formula.variables()
    candidates = {v if value else -v for v, value in witness.items() if v in in_constraints}
    confirmed = set()
    while True:
        open_lits = sorted(candidates - confirmed, key=lambda l: (abs(l), l))
        if not open_lits:
            break
        lit = open_lits[0]
        other = solver(formula, (-lit,))
        report.solver_calls += 1
        if other is None:
            confirmed.add(lit)
            report.backbone.append(lit)
            # a true backbone literal cannot contradict the formula
            formula = unit_propagate(formula, lit)
            formula = formula.replace(fixed=formula.fixed | {lit})
        else:
            candidates &= {v if value else -v for v, value in other.items()}
    return formula, report


def _entailed(others, path_diagram, mgr: Manager) -> bool:
    def step(cons, lit):
        try:
            return propagate_constraints(cons, lit)
        except Contradiction:
            return None

    # any 0-path that survives propagation is a countermodel
    for _ in mgr.zero_paths(path_diagram, step, tuple(others)):
        return False
    return True


def delete_constraints(formula: PBFormula,
                       max_literals: int = DEFAULT_MAX_LITERALS) -> Tuple[PBFormula, PreprocessReport]:
    report = PreprocessReport()
    if formula.unsat:
        report.unsat = True
        return formula, report
    kept = list(formula.constraints)
    alive = [True] * len(kept)
    mgr = Manager(sorted(formula.variables()), exact=True)
    for i, c in enumerate(kept):
        if len(c.terms) > max_literals:
            continue
        others = [d for j, d in enumerate(kept) if alive[j] and j != i]
        if _entailed(others, construct_constraint(mgr, c), mgr):
            alive[i] = False
            report.deleted += 1
            logger.debug("deleted entailed constraint %s", c)
    constraints = tuple(c for c, a in zip(kept, alive) if a)
    return formula.replace(constraints=constraints), report


def preprocess(formula: PBFormula, mode: str = "full",
               max_literals: int = DEFAULT_MAX_LITERALS,
               solver: Callable = solve) -> Tuple[PBFormula, PreprocessReport]:
    """``none``: identity; ``backbone``: backbone only; ``full``: backbone then deletion."""
    if mode not in MODES:
        raise ValueError(f"preprocessing mode must be one of {MODES}")
    report = PreprocessReport(unsat=formula.unsat)
    if mode == "none":
        return formula, report
    formula, r = add_backbone(formula, solver)
    report = report.merge(r)
    if mode == "full" and not formula.unsat:
        formula, r = delete_constraints(formula, max_literals)
        report = report.merge(r)
    return formula, report
