"""Reading and writing OPB files and literal-weight sidecars.

Grammar (one constraint per line)::

    * #variable= N #constraint= M       optional header comment
    * w <var> <pos> <neg>               optional embedded weight directive
    * anything else                     comment
    <coef> <lit> ... <op> <degree> ;    constraint, op in >= <= > < =

``<lit>`` is ``x<k>`` or ``~x<k>`` with ``k >= 1``.  Weight values may be
decimals (``0.3``), scientific (``1e-3``) or fractions (``1/3``); they are
kept as exact :class:`~fractions.Fraction` values.
"""
from __future__ import annotations

import logging
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, List, Optional, Union

from .formula import EQ, GE, GT, LE, LT, PBConstraint, PBFormula, WeightFunction, lit_str

logger = logging.getLogger(__name__)

_TOKEN = re.compile(r"\s*(?:(>=|<=|=|>|<)|(;)|(~?x\d+)|([+-]?\s*\d+)|(\S+))")
_HEADER = re.compile(r"#variable=\s*(\d+)\s+#constraint=\s*(\d+)")


class OpbSyntaxError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class WeightError(ValueError):
    pass


@dataclass
class ParsedInstance:
    formula: PBFormula
    weights: WeightFunction = field(default_factory=WeightFunction)
    comments: List[str] = field(default_factory=list)


def parse_weight_value(text: str) -> Fraction:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise WeightError(f"bad weight {text!r}") from None
    return value


def _weight_directive(fields: List[str], weights: WeightFunction, where: str) -> None:
    if len(fields) != 4 or fields[0] != "w":
        raise WeightError(f"{where}: expected 'w <var> <pos> <neg>'")
    try:
        v = int(fields[1])
    except ValueError:
        raise WeightError(f"{where}: bad variable {fields[1]!r}") from None
    if v <= 0:
        raise WeightError(f"{where}: variable index must be positive")
    if v in weights.pos:
        raise WeightError(f"{where}: duplicate weight for x{v}")
    weights.set(v, parse_weight_value(fields[2]), parse_weight_value(fields[3]))


def _parse_constraint(line: str, lineno: int) -> PBConstraint:
    terms = []
    coef = None
    op = degree = None
    pos = 0
    terminated = False
    while pos < len(line):
        m = _TOKEN.match(line, pos)
        if m is None or m.end() == pos:  # trailing whitespace
            break
        col = m.start(m.lastindex) + 1
        pos = m.end()
        op_tok, semi, lit_tok, num_tok, junk = m.groups()
        if terminated:
            raise OpbSyntaxError("text after ';'", lineno, col)
        if junk is not None:
            raise OpbSyntaxError(f"unexpected token {junk!r}", lineno, col)
        if op_tok is not None:
            if op is not None or coef is not None:
                raise OpbSyntaxError(f"misplaced operator {op_tok!r}", lineno, col)
            op = op_tok
        elif num_tok is not None:
            value = int(num_tok.replace(" ", ""))
            if op is not None:
                if degree is not None:
                    raise OpbSyntaxError("more than one degree", lineno, col)
                degree = value
            elif coef is not None:
                raise OpbSyntaxError("coefficient without a literal", lineno, col)
            else:
                coef = value
        elif lit_tok is not None:
            if op is not None:
                raise OpbSyntaxError("literal after the operator", lineno, col)
            index = int(lit_tok.lstrip("~x"))
            if index <= 0:
                raise OpbSyntaxError(f"variable index must be positive in {lit_tok!r}", lineno, col)
            lit = -index if lit_tok.startswith("~") else index
            terms.append((1 if coef is None else coef, lit))
            coef = None
        else:
            if op is None or degree is None:
                raise OpbSyntaxError("incomplete constraint before ';'", lineno, col)
            terminated = True
    if not terminated:
        raise OpbSyntaxError("missing ';' terminator", lineno, len(line.rstrip()) + 1)
    if coef is not None:
        raise OpbSyntaxError("dangling coefficient", lineno, 1)
    return PBConstraint(tuple(terms), op, degree)


def parse_opb(text: Union[str, Iterable[str]]) -> ParsedInstance:
    """Parse OPB text.  Operators are kept as written; nothing is normalized."""
    lines = text.splitlines() if isinstance(text, str) else [l.rstrip("\n") for l in text]
    constraints = []
    comments = []
    weights = WeightFunction()
    declared_vars = declared_cons = None
    for lineno, line in enumerate(lines, 1):
        stripped = line.strip()
        if not stripped:
            continue
        if stripped.startswith("*"):
            body = stripped[1:].split()
            header = _HEADER.search(stripped)
            if header:
                declared_vars, declared_cons = int(header.group(1)), int(header.group(2))
            elif body and body[0] == "w":
                _weight_directive(body, weights, f"line {lineno}")
            else:
                comments.append(stripped)
            continue
        if stripped.startswith("min:") or stripped.startswith("max:"):
            logger.warning("line %d: objective ignored", lineno)
            continue
        constraints.append(_parse_constraint(line, lineno))

    used = max((v for c in constraints for v in c.variables), default=0)
    used = max([used] + weights.weighted_vars())
    num_vars = used
    if declared_vars is not None:
        if declared_vars < used:
            logger.warning("header declares %d variables but x%d is used", declared_vars, used)
        num_vars = max(declared_vars, used)
    if declared_cons is not None and declared_cons != len(constraints):
        logger.warning("header declares %d constraints, found %d", declared_cons, len(constraints))
    return ParsedInstance(PBFormula(tuple(constraints), num_vars), weights, comments)


def parse_weights(text: Union[str, Iterable[str]], num_vars: Optional[int] = None) -> WeightFunction:
    """Parse ``w <var> <pos> <neg>`` lines; ``#`` starts a comment."""
    lines = text.splitlines() if isinstance(text, str) else list(text)
    weights = WeightFunction()
    for lineno, line in enumerate(lines, 1):
        fields = line.split("#", 1)[0].split()
        if not fields:
            continue
        _weight_directive(fields, weights, f"line {lineno}")
    if num_vars is not None:
        extra = [v for v in weights.pos if v > num_vars]
        if extra:
            raise WeightError(f"weight given for x{min(extra)} beyond num_vars={num_vars}")
    return weights


def format_number(value) -> str:
    """Shortest exact text for a weight: decimal when finite, else ``p/q``."""
    if isinstance(value, float):
        if not math.isfinite(value):
            raise WeightError(f"non-finite weight {value}")
        return repr(value)
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    d = value.denominator
    twos = fives = 0
    while d % 2 == 0:
        d //= 2
        twos += 1
    while d % 5 == 0:
        d //= 5
        fives += 1
    if d != 1:
        return f"{value.numerator}/{value.denominator}"
    places = max(twos, fives)
    scaled = value * 10 ** places
    sign = "-" if scaled < 0 else ""
    digits = str(abs(scaled.numerator)).rjust(places + 1, "0")
    return f"{sign}{digits[:-places]}.{digits[-places:]}"


def format_constraint(c: PBConstraint) -> str:
    lhs = " ".join(f"{a:+d} {lit_str(l)}" for a, l in c.terms)
    return f"{lhs} {c.op} {c.degree} ;" if lhs else f"{c.op} {c.degree} ;"


def serialize_opb(instance: ParsedInstance) -> str:
    """Write ``instance`` as OPB; fixed literals become ``1 x >= 1`` units."""
    f = instance.formula
    units = [PBConstraint(((1, lit),), GE, 1) for lit in sorted(f.fixed, key=lambda l: (abs(l), l))]
    body = list(f.constraints) + units
    if f.unsat:
        body.append(PBConstraint((), GE, 1))
    out = [f"* #variable= {f.num_vars} #constraint= {len(body)}"]
    for v in instance.weights.weighted_vars():
        w = instance.weights
        out.append(f"* w {v} {format_number(w.positive(v))} {format_number(w.negative(v))}")
    out.extend(instance.comments)
    out.extend(format_constraint(c) for c in body)
    return "\n".join(out) + "\n"


def read_instance(path: str, weights_path: Optional[str] = None) -> ParsedInstance:
    """Load an OPB file (``-`` for stdin) and an optional weights sidecar."""
    import sys

    if path == "-":
        text = sys.stdin.read()
    else:
        with open(path) as fh:
            text = fh.read()
    instance = parse_opb(text)
    if weights_path is not None:
        with open(weights_path) as fh:
            extra = parse_weights(fh.read())
        for v in extra.weighted_vars():
            if v in instance.weights.pos:
                raise WeightError(f"x{v} weighted both inline and in {weights_path}")
            instance.weights.set(v, extra.positive(v), extra.negative(v))
        if extra.weighted_vars() and max(extra.weighted_vars()) > instance.formula.num_vars:
            instance.formula = instance.formula.replace(num_vars=max(extra.weighted_vars()))
    return instance
