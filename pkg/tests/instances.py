"""Random small instances shared by the test modules."""
import random
from fractions import Fraction

from hypothesis import strategies as st

from pbwmc.formula import OPERATORS, PBConstraint, PBFormula, WeightFunction


def random_constraint(rng, num_vars, max_terms=None, coef_range=(1, 10), signed=False, planted=None):
    """Random raw constraint; with ``planted`` the degree is chosen so that
    assignment satisfies it."""
    size = rng.randint(1, min(num_vars, max_terms or num_vars))
    vs = rng.sample(range(1, num_vars + 1), size)
    terms = []
    for v in vs:
        a = rng.randint(*coef_range)
        if signed and rng.random() < 0.5:
            a = -a
        terms.append((a, v if rng.random() < 0.5 else -v))
    lo = sum(min(a, 0) for a, _ in terms)
    hi = sum(max(a, 0) for a, _ in terms)
    op = rng.choice(OPERATORS)
    if planted is None:
        return PBConstraint(tuple(terms), op, rng.randint(lo - 1, hi + 1))
    value = sum(a for a, l in terms if planted[abs(l)] == (l > 0))
    degree = {
        "<": lambda: rng.randint(value + 1, hi + 1),
        "<=": lambda: rng.randint(value, hi + 1),
        "=": lambda: value,
        ">=": lambda: rng.randint(lo - 1, value),
        ">": lambda: rng.randint(lo - 1, value - 1),
    }[op]()
    return PBConstraint(tuple(terms), op, degree)


def random_formula(rng, vars_range=(4, 12), cons_range=(1, 8), max_terms=6, planted_rate=0.8):
    """Random formula; most are built around a hidden model so counts are nonzero."""
    n = rng.randint(*vars_range)
    m = rng.randint(*cons_range)
    planted = None
    if rng.random() < planted_rate:
        planted = {v: rng.randint(0, 1) for v in range(1, n + 1)}
    cons = tuple(random_constraint(rng, n, max_terms, planted=planted) for _ in range(m))
    return PBFormula(cons, n)


def random_weights(rng, num_vars):
    w = WeightFunction()
    for v in range(1, num_vars + 1):
        p = Fraction(rng.randint(1, 99), 100)
        w.set(v, p, 1 - p)
    return w


def suite(count, seed=2024, **kw):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        f = random_formula(rng, **kw)
        out.append((f, random_weights(rng, f.num_vars)))
    return out


@st.composite
def constraints(draw, max_vars=6, coef=10, signed=True, ops=OPERATORS):
    n = draw(st.integers(1, max_vars))
    vs = draw(st.lists(st.integers(1, n), min_size=0, max_size=n + 2))
    lo = -coef if signed else 1
    terms = []
    for v in vs:
        a = draw(st.integers(lo, coef))
        terms.append((a, v if draw(st.booleans()) else -v))
    degree = draw(st.integers(-2 * coef, 2 * coef))
    return PBConstraint(tuple(terms), draw(st.sampled_from(ops)), degree), n


@st.composite
def formulas(draw, max_vars=6, max_cons=4):
    n = draw(st.integers(1, max_vars))
    m = draw(st.integers(0, max_cons))
    cons = []
    for _ in range(m):
        size = draw(st.integers(1, n))
        vs = draw(st.lists(st.integers(1, n), min_size=size, max_size=size, unique=True))
        terms = tuple((draw(st.integers(1, 6)), v if draw(st.booleans()) else -v) for v in vs)
        span = sum(a for a, _ in terms)
        cons.append(PBConstraint(terms, draw(st.sampled_from(OPERATORS)), draw(st.integers(-1, span + 1))))
    return PBFormula(tuple(cons), n)


@st.composite
def weight_functions(draw, num_vars):
    w = WeightFunction()
    for v in range(1, num_vars + 1):
        p = Fraction(draw(st.integers(1, 99)), 100)
        w.set(v, p, 1 - p)
    return w


def random_add(mgr, rng, variables, values=(0, 1, 2, Fraction(1, 2), Fraction(3, 10))):
    """Diagram of a random function over ``variables`` built by Shannon expansion."""
    vs = sorted(variables, key=mgr.level)
    table = [rng.choice(values) for _ in range(1 << len(vs))]

    def build(i, offset):
        if i == len(vs):
            return mgr.terminal(table[offset])
        hi = build(i + 1, offset | (1 << i))
        lo = build(i + 1, offset)
        return mgr.ite(vs[i], hi, lo)

    return build(0, 0), vs, table


def table_value(vs, table, assignment):
    return table[sum(assignment[v] << i for i, v in enumerate(vs))]
