"""Pseudo-Boolean formulas, literal weights, normalization and propagation.

Literals follow the DIMACS convention: the nonzero int ``v`` stands for the
variable ``x_v`` and ``-v`` for its negation.  Coefficients and degrees are
plain Python ints, so they never overflow.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, Iterator, Mapping, Tuple, Union

LT, LE, EQ, GE, GT = "<", "<=", "=", ">=", ">"
OPERATORS = (LT, LE, EQ, GE, GT)

Term = Tuple[int, int]  # (coefficient, literal)


class Contradiction(Exception):
    """A constraint became unsatisfiable under the literals set so far."""


def neg(lit: int) -> int:
    return -lit


def var(lit: int) -> int:
    return abs(lit)


def lit_value(lit: int, assignment: Mapping[int, int]) -> int:
    """Truth value (0/1) of ``lit`` under ``assignment``."""
    value = assignment[abs(lit)]
    return value if lit > 0 else 1 - value


def lit_str(lit: int) -> str:
    return f"x{lit}" if lit > 0 else f"~x{-lit}"


@dataclass(frozen=True)
class PBConstraint:
    """``sum(a * l for a, l in terms) <op> degree``."""

    terms: Tuple[Term, ...]
    op: str
    degree: int

    def __post_init__(self):
        if self.op not in OPERATORS:
            raise ValueError(f"unknown operator {self.op!r}")
        terms = tuple((int(a), int(l)) for a, l in self.terms)
        for _, lit in terms:
            if lit == 0:
                raise ValueError("literal 0 is not a variable")
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "degree", int(self.degree))

    @property
    def variables(self) -> frozenset:
        return frozenset(abs(l) for _, l in self.terms)

    @property
    def literals(self) -> Tuple[int, ...]:
        return tuple(l for _, l in self.terms)

    @property
    def coef_sum(self) -> int:
        return sum(a for a, _ in self.terms)

    def is_normalized(self) -> bool:
        if self.op not in (EQ, GE):
            return False
        seen = set()
        for a, lit in self.terms:
            if a <= 0 or abs(lit) in seen:
                return False
            seen.add(abs(lit))
        return True

    def __len__(self) -> int:
        return len(self.terms)

    def __str__(self) -> str:
        lhs = " ".join(f"{a:+d} {lit_str(l)}" for a, l in self.terms) or "0"
        return f"{lhs} {self.op} {self.degree}"


@dataclass(frozen=True)
class PBFormula:
    """A conjunction of constraints over ``x_1 .. x_num_vars``.

    ``fixed`` holds unit facts produced by preprocessing; their variables no
    longer occur in ``constraints``.  ``unsat`` marks a formula already known
    to have no model.
    """

    constraints: Tuple[PBConstraint, ...]
    num_vars: int
    fixed: frozenset = frozenset()
    unsat: bool = False

    def __post_init__(self):
        object.__setattr__(self, "constraints", tuple(self.constraints))
        object.__setattr__(self, "fixed", frozenset(self.fixed))
        for c in self.constraints:
            for v in c.variables:
                if v > self.num_vars:
                    raise ValueError(f"x{v} exceeds num_vars={self.num_vars}")
        for lit in self.fixed:
            if -lit in self.fixed:
                raise ValueError(f"conflicting fixed literals on x{abs(lit)}")
            if abs(lit) > self.num_vars:
                raise ValueError(f"x{abs(lit)} exceeds num_vars={self.num_vars}")

    def variables(self) -> set:
        """Variables occurring in some constraint."""
        out = set()
        for c in self.constraints:
            out.update(c.variables)
        return out

    def replace(self, **changes) -> "PBFormula":
        fields = dict(constraints=self.constraints, num_vars=self.num_vars,
                      fixed=self.fixed, unsat=self.unsat)
        fields.update(changes)
        return PBFormula(**fields)


Number = Union[int, float, Fraction]


@dataclass
class WeightFunction:
    """Per-literal weights; unmentioned variables weigh 1 on both sides."""

    pos: Dict[int, Number] = field(default_factory=dict)
    neg: Dict[int, Number] = field(default_factory=dict)

    def set(self, v: int, pos_weight: Number, neg_weight: Number) -> None:
        self.pos[v] = pos_weight
        self.neg[v] = neg_weight

    def positive(self, v: int) -> Number:
        return self.pos.get(v, 1)

    def negative(self, v: int) -> Number:
        return self.neg.get(v, 1)

    def literal(self, lit: int) -> Number:
        return self.positive(lit) if lit > 0 else self.negative(-lit)

    def total(self, v: int) -> Number:
        return self.positive(v) + self.negative(v)

    def weighted_vars(self) -> list:
        return sorted(set(self.pos) | set(self.neg))


def assignment_weight(assignment: Mapping[int, int], weights: WeightFunction):
    """Product of the literal weights picked out by ``assignment``."""
    w = Fraction(1)
    for v, value in assignment.items():
        w *= Fraction(weights.positive(v) if value else weights.negative(v))
    return w


def evaluate(c: PBConstraint, assignment: Mapping[int, int]) -> int:
    try:
        lhs = sum(a * lit_value(l, assignment) for a, l in c.terms)
    except KeyError as exc:
        raise ValueError(f"x{exc.args[0]} is unassigned") from None
    b = c.degree
    op = c.op
    if op == GE:
        return int(lhs >= b)
    if op == EQ:
        return int(lhs == b)
    if op == LE:
        return int(lhs <= b)
    if op == GT:
        return int(lhs > b)
    return int(lhs < b)


def satisfies(formula: PBFormula, assignment: Mapping[int, int]) -> bool:
    """Whether a total assignment is a model of ``formula`` (fixed facts included)."""
    if formula.unsat:
        return False
    if any(lit_value(l, assignment) == 0 for l in formula.fixed):
        return False
    return all(evaluate(c, assignment) for c in formula.constraints)


def normalize(c: PBConstraint) -> Union[PBConstraint, bool]:
    """Rewrite ``c`` with op in {>=, =}, positive coefficients, one term per variable.

    Returns ``True`` when the result is a tautology and ``False`` when it can
    never be satisfied.
    """
    op, degree, sign = c.op, c.degree, 1
    if op == GT:
        op, degree = GE, degree + 1
    elif op == LT:
        op, degree = LE, degree - 1
    if op == LE:
        op, degree, sign = GE, -degree, -1

    # collect coefficients over positive variables: a*~x == a - a*x
    coef: Dict[int, int] = {}
    for a, lit in c.terms:
        a *= sign
        if lit > 0:
            coef[lit] = coef.get(lit, 0) + a
        else:
            coef[-lit] = coef.get(-lit, 0) - a
            degree -= a

    terms = []
    for v in sorted(coef):
        a = coef[v]
        if a > 0:
            terms.append((a, v))
        elif a < 0:
            # a*x == |a|*~x - |a|
            terms.append((-a, -v))
            degree -= a
    return _settle(terms, op, degree)


def _settle(terms, op, degree):
    total = sum(a for a, _ in terms)
    if op == GE:
        if degree <= 0:
            return True
        if degree > total:
            return False
    else:
        if degree < 0 or degree > total:
            return False
        if not terms:
            return True
    return PBConstraint(tuple(terms), op, degree)


def normalize_formula(formula: PBFormula) -> PBFormula:
    """Normalize every constraint, dropping tautologies.

    An unsatisfiable constraint turns the result into an ``unsat`` formula
    with no constraints.
    """
    out = []
    for c in formula.constraints:
        r = normalize(c)
        if r is False:
            return formula.replace(constraints=(), unsat=True)
        if r is not True:
            out.append(r)
    return formula.replace(constraints=tuple(out))


def assign_literal(c: PBConstraint, lit: int) -> Union[PBConstraint, bool]:
    """Set ``lit`` true inside a normalized constraint.

    Returns the residual constraint, or ``True`` if it is now satisfied.
    Raises :class:`Contradiction` if it can no longer be satisfied.
    """
    terms = []
    degree = c.degree
    touched = False
    for a, l in c.terms:
        if l == lit:
            degree -= a
            touched = True
        elif l == -lit:
            touched = True
        else:
            terms.append((a, l))
    if not touched:
        return c
    r = _settle(terms, c.op, degree)
    if r is False:
        raise Contradiction(str(c))
    return r


def propagate_constraints(constraints: Iterable[PBConstraint], lit: int) -> Tuple[PBConstraint, ...]:
    out = []
    for c in constraints:
        r = assign_literal(c, lit)
        if r is not True:
            out.append(r)
    return tuple(out)


def unit_propagate(formula: PBFormula, lit: int) -> PBFormula:
    """Remove ``lit`` and its negation from every constraint.

    The literal itself is not recorded as a fact; callers that want
    ``{lit = 1}`` kept add it to ``fixed``.  Raises :class:`Contradiction`
    when ``formula`` has no model with ``lit`` true.
    """
    if formula.unsat or -lit in formula.fixed:
        raise Contradiction(f"{lit_str(lit)} conflicts with the formula")
    return formula.replace(constraints=propagate_constraints(formula.constraints, lit))


def iter_assignments(variables: Iterable[int]) -> Iterator[Dict[int, int]]:
    """All total 0/1 assignments over ``variables`` in binary counting order."""
    vs = sorted(variables)
    n = len(vs)
    for bits in range(1 << n):
        yield {v: (bits >> i) & 1 for i, v in enumerate(vs)}
