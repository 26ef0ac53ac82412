"""Exact weighted model counting for pseudo-Boolean formulas."""

from .dd import CountTimeout, Manager, ResourceLimit
from .engine import CountConfig, CountResult, count
from .formula import (EQ, GE, GT, LE, LT, Contradiction, PBConstraint, PBFormula,
                      WeightFunction, evaluate, normalize, normalize_formula, unit_propagate)
from .opb import ParsedInstance, parse_opb, parse_weights, serialize_opb

__version__ = "0.1.0"
