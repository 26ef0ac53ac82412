"""Counting-safe CNF export.

Every internal node of a constraint's decision diagram gets an auxiliary
variable ``a`` defined by ``a <-> ite(x, hi, lo)``.  The definition fixes
``a`` once the original variables are fixed, so each model of the formula
extends to exactly one CNF model.  Auxiliaries weigh 1 on both polarities,
which makes the weighted counts equal.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Tuple

from .build import construct_constraint
from .dd import Manager
from .formula import PBFormula, WeightFunction, normalize_formula
from .opb import format_number, parse_weight_value

Clause = Tuple[int, ...]


@dataclass
class CnfInstance:
    num_vars: int
    clauses: List[Clause] = field(default_factory=list)
    # (positive, negative) weight per variable; missing means (1, 1)
    weights: Dict[int, Tuple[object, object]] = field(default_factory=dict)
    num_original: int = 0

    def weight(self, lit: int):
        pos, negw = self.weights.get(abs(lit), (1, 1))
        return pos if lit > 0 else negw


def _ite_clauses(a: int, v: int, hi, lo) -> List[Clause]:
    """Clauses of ``a <-> ite(v, hi, lo)``; ``hi``/``lo`` are literals or bools."""
    raw = [
        (-a, -v, hi), (-a, v, lo), (a, -v, _not(hi)), (a, v, _not(lo)),
        (-a, hi, lo), (a, _not(hi), _not(lo)),
    ]
    out = []
    for clause in raw:
        if any(l is True for l in clause):
            continue
        out.append(tuple(l for l in clause if l is not False))
    return out


def _not(x):
    if x is True or x is False:
        return not x
    return -x


def encode(formula: PBFormula, weights: WeightFunction = None) -> CnfInstance:
    """CNF with the same weighted model count as ``formula``."""
    weights = weights or WeightFunction()
    phi = normalize_formula(formula)
    n = phi.num_vars
    cnf = CnfInstance(num_vars=n, num_original=n)
    for v in range(1, n + 1):
        cnf.weights[v] = (weights.positive(v), weights.negative(v))
    if phi.unsat:
        cnf.clauses.append(())
        return cnf
    for lit in sorted(phi.fixed, key=abs):
        cnf.clauses.append((lit,))

    mgr = Manager(sorted(phi.variables()), exact=True)
    aux: Dict[int, int] = {}

    def as_lit(node):
        if node == mgr.one:
            return True
        if node == mgr.zero:
            return False
        return aux[node]

    for c in phi.constraints:
        root = construct_constraint(mgr, c)
        # handles grow with creation time, so children come before parents
        for node in sorted(mgr.descendants(root)):
            if mgr.is_terminal(node) or node in aux:
                continue
            cnf.num_vars += 1
            a = aux[node] = cnf.num_vars
            cnf.weights[a] = (1, 1)
            cnf.clauses.extend(_ite_clauses(a, mgr.var(node), as_lit(mgr.high(node)), as_lit(mgr.low(node))))
        r = as_lit(root)
        if r is False:
            cnf.clauses.append(())
        elif r is not True:
            cnf.clauses.append((r,))
    return cnf


def to_dimacs(cnf: CnfInstance) -> str:
    """Weighted DIMACS in the model-counting-competition layout."""
    out = ["c t wmc", f"p cnf {cnf.num_vars} {len(cnf.clauses)}"]
    for v in range(1, cnf.num_vars + 1):
        pos, negw = cnf.weights.get(v, (1, 1))
        out.append(f"c p weight {v} {format_number(pos)} 0")
        out.append(f"c p weight {-v} {format_number(negw)} 0")
    for clause in cnf.clauses:
        out.append(" ".join(map(str, clause + (0,))))
    return "\n".join(out) + "\n"


def parse_dimacs(text: str) -> CnfInstance:
    cnf = None
    pending: List[int] = []
    weights: Dict[int, list] = {}
    for line in text.splitlines():
        fields = line.split()
        if not fields:
            continue
        if fields[0] == "c":
            if fields[1:3] == ["p", "weight"]:
                lit, w = int(fields[3]), parse_weight_value(fields[4])
                weights.setdefault(abs(lit), [1, 1])[0 if lit > 0 else 1] = w
            continue
        if fields[0] == "p":
            cnf = CnfInstance(num_vars=int(fields[2]))
            continue
        if cnf is None:
            raise ValueError("clause before the 'p cnf' header")
        for tok in fields:
            lit = int(tok)
            if lit == 0:
                cnf.clauses.append(tuple(pending))
                pending = []
            else:
                pending.append(lit)
    if cnf is None:
        raise ValueError("missing 'p cnf' header")
    if pending:
        raise ValueError("last clause is not 0-terminated")
    cnf.weights = {v: (Fraction(p), Fraction(q)) for v, (p, q) in weights.items()}
    cnf.num_original = cnf.num_vars
    return cnf
