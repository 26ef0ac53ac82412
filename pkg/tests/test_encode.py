import random
from fractions import Fraction

from instances import random_formula, random_weights
from pbwmc.encode import CnfInstance, encode, parse_dimacs, to_dimacs
from pbwmc.formula import GE, PBConstraint, PBFormula, WeightFunction, iter_assignments, satisfies
from pbwmc.oracle import brute_force_count, cnf_count


def C(terms, degree):
    return PBConstraint(tuple(terms), GE, degree)


def test_single_literal_is_a_unit_clause():
    cnf = encode(PBFormula((C([(1, 1)], 1),), 1))
    # the node for x1 is defined, then asserted; propagation reduces it to x1
    assert cnf.num_vars == 2
    assert cnf_count(cnf.clauses, 2) == 1
    assert cnf_count(cnf.clauses, 2, assumptions=[-1]) == 0


def test_single_model_instance():
    cnf = encode(PBFormula((C([(2, 1), (3, 2)], 4),), 2))
    assert cnf_count(cnf.clauses, cnf.num_vars) == 1


def test_empty_formula():
    cnf = encode(PBFormula((), 3))
    assert cnf.clauses == []
    assert cnf_count(cnf.clauses, cnf.num_vars) == 8
    assert to_dimacs(cnf).splitlines()[1] == "p cnf 3 0"


def test_unsat_formula_gives_empty_clause():
    cnf = encode(PBFormula((C([(1, 1)], 2),), 1))
    assert () in cnf.clauses
    assert cnf_count(cnf.clauses, cnf.num_vars) == 0


def test_dimacs_golden():
    w = WeightFunction()
    w.set(1, Fraction(3, 10), Fraction(7, 10))
    cnf = encode(PBFormula((C([(1, 1)], 1),), 1), w)
    assert to_dimacs(cnf) == (
        "c t wmc\n"
        "p cnf 2 3\n"
        "c p weight 1 0.3 0\n"
        "c p weight -1 0.7 0\n"
        "c p weight 2 1 0\n"
        "c p weight -2 1 0\n"
        "-2 1 0\n"
        "2 -1 0\n"
        "2 0\n"
    )


def test_unit_clause_format():
    cnf = CnfInstance(1, [(1,)], {1: (Fraction(3, 10), Fraction(7, 10))}, 1)
    text = to_dimacs(cnf)
    assert "\n1 0\n" in text and "c p weight 1 0.3 0" in text


def test_dimacs_round_trip():
    rng = random.Random(1)
    for _ in range(20):
        f = random_formula(rng, vars_range=(3, 8))
        cnf = encode(f, random_weights(rng, f.num_vars))
        back = parse_dimacs(to_dimacs(cnf))
        assert back.num_vars == cnf.num_vars
        assert back.clauses == cnf.clauses
        for v in range(1, cnf.num_vars + 1):
            assert back.weight(v) == cnf.weight(v) and back.weight(-v) == cnf.weight(-v)


def test_counting_safety():
    rng = random.Random(8)
    for _ in range(60):
        f = random_formula(rng, vars_range=(3, 8), cons_range=(1, 5), max_terms=5)
        w = random_weights(rng, f.num_vars)
        cnf = encode(f, w)
        assert cnf_count(cnf.clauses, cnf.num_vars, cnf.weight) == brute_force_count(f, w)


def test_auxiliaries_are_functionally_defined():
    rng = random.Random(12)
    for _ in range(40):
        f = random_formula(rng, vars_range=(3, 6), cons_range=(1, 4), max_terms=4)
        cnf = encode(f)
        for tau in iter_assignments(range(1, f.num_vars + 1)):
            units = [v if b else -v for v, b in tau.items()]
            extensions = cnf_count(cnf.clauses, cnf.num_vars, assumptions=units)
            assert extensions == (1 if satisfies(f, tau) else 0)


def test_nodes_shared_across_constraints_get_one_variable():
    c = C([(1, 1), (1, 2)], 1)
    one = encode(PBFormula((c,), 2))
    two = encode(PBFormula((c, c), 2))
    assert two.num_vars == one.num_vars
