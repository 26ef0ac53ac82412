"""Acceptance criteria, one test per criterion.

Each test prints a single ``PASS``/``FAIL`` line (visible in ``pytest -v``
output and when the module is run directly with ``python tests/test_acceptance.py``).
"""
import functools
import itertools
import math
import random
import subprocess
import sys
import time
from fractions import Fraction

from instances import random_add, suite
from pbwmc.build import construct_geq
from pbwmc.dd import Manager
from pbwmc.encode import encode
from pbwmc.engine import CountConfig, count
from pbwmc.formula import (GE, OPERATORS, PBConstraint, PBFormula, evaluate, iter_assignments,
                           normalize, normalize_formula)
from pbwmc.oracle import brute_force_backbone, brute_force_count, cnf_count
from pbwmc.preprocess import add_backbone, delete_constraints

SUITE_SIZE = 1000
SUITE_SEED = 2024
FLOAT_RTOL = 1e-9

ENTAILED_FIRST = PBFormula((PBConstraint(((3, 1), (4, 2)), GE, 4),
                       PBConstraint(((3, 1), (1, 3), (1, 4)), GE, 4),
                       PBConstraint(((3, 2), (1, 3), (1, 4)), GE, 4)), 4)


def report(capsys, name, failures, detail=""):
    line = f"{'PASS' if not failures else 'FAIL'} {name}"
    if detail:
        line += f" ({detail})"
    if failures:
        line += f": {failures[0]}"
    if capsys is None:
        print(line)
    else:
        with capsys.disabled():
            print("\n" + line)
    assert not failures, line


@functools.lru_cache(maxsize=None)
def random_suite():
    """Criterion 1's instances with their brute-force count and backbone."""
    out = []
    for f, w in suite(SUITE_SIZE, seed=SUITE_SEED, vars_range=(4, 12), cons_range=(1, 8)):
        out.append((f, w, brute_force_count(f, w), brute_force_backbone(f)))
    return tuple(out)


def close(a, b):
    return abs(float(a) - float(b)) <= FLOAT_RTOL * abs(float(b))


def test_criterion_1_oracle_equivalence(capsys):
    start = time.monotonic()
    failures = []
    for n, (f, w, truth, _) in enumerate(random_suite()):
        exact = count(f, w, CountConfig(exact=True)).value
        approx = count(f, w, CountConfig(exact=False)).value
        if exact != truth:
            failures.append(f"instance {n}: rational {exact} != {truth}")
        if not close(approx, truth):
            failures.append(f"instance {n}: float {approx!r} vs {float(truth)!r}")
    elapsed = time.monotonic() - start
    if elapsed > 120:
        failures.append(f"took {elapsed:.1f}s, budget 120s")
    report(capsys, "criterion 1: oracle equivalence", failures,
           f"{SUITE_SIZE} formulas, rational exact, float rtol {FLOAT_RTOL}, {elapsed:.1f}s incl. oracle cache")


def test_criterion_2_threshold_intervals(capsys):
    m = Manager([1, 2])
    c = lambda b: PBConstraint(((2, 1), (3, 2)), GE, b)
    handles, intervals, failures = set(), set(), []
    for b in range(-2, 8):
        interval, node = construct_geq(m, c(b))
        handles.add(node)
        intervals.add((interval.lo, interval.hi))
        if b not in interval:
            failures.append(f"b={b} outside its interval {interval}")
    # endpoints from brute force: group b by the model set it induces
    groups = {}
    for b in range(-2, 8):
        key = tuple(evaluate(c(b), t) for t in iter_assignments([1, 2]))
        groups.setdefault(key, []).append(b)
    expected = {(-math.inf, 0), (1, 2), (3, 3), (4, 5), (6, math.inf)}
    oracle = sorted((g[0], g[-1]) for g in groups.values())
    if oracle != [(-2, 0), (1, 2), (3, 3), (4, 5), (6, 7)]:
        failures.append(f"brute-force partition {oracle}")
    if len(handles) != 5:
        failures.append(f"{len(handles)} distinct handles")
    if intervals != expected:
        failures.append(f"intervals {sorted(intervals)}")
    report(capsys, "criterion 2: five diagrams of 2x1 + 3x2 >= b", failures)


def test_criterion_3_entailed_constraint_deletion(capsys):
    failures = []
    phi, rep = delete_constraints(ENTAILED_FIRST)
    if rep.deleted != 1 or phi.constraints != ENTAILED_FIRST.constraints[1:]:
        failures.append(f"kept {[str(c) for c in phi.constraints]}")
    before, after = brute_force_count(ENTAILED_FIRST), brute_force_count(phi)
    engine = count(phi, None, CountConfig(exact=True, preprocess="none")).value
    if not before == after == engine:
        failures.append(f"count {before} -> oracle {after}, engine {engine}")
    report(capsys, "criterion 3: entailed first constraint deleted", failures, f"count {before}")


def test_criterion_4_preprocessing_invariance(capsys):
    failures = []
    for n, (f, w, truth, backbone) in enumerate(random_suite()):
        values = {pre: count(f, w, CountConfig(exact=True, preprocess=pre)).value
                  for pre in ("none", "backbone", "full")}
        if set(values.values()) != {truth}:
            failures.append(f"instance {n}: {values} vs {truth}")
        found = set(add_backbone(normalize_formula(f))[1].backbone)
        if found != backbone:
            failures.append(f"instance {n}: backbone {sorted(found)} vs {sorted(backbone)}")
    report(capsys, "criterion 4: preprocessing invariance and backbone", failures,
           f"{SUITE_SIZE} formulas x 3 modes")


def test_criterion_5_heuristic_invariance(capsys):
    failures = []
    combos = list(itertools.product(("mcs", "index"), ("lexp", "index")))
    for n, (f, w, truth, _) in enumerate(random_suite()):
        values = {(o, c): count(f, w, CountConfig(exact=True, diagram_order=o, cluster_order=c,
                                                  check_safety=True)).value
                  for o, c in combos}
        if set(values.values()) != {truth}:
            failures.append(f"instance {n}: {values} vs {truth}")
    report(capsys, "criterion 5: heuristic invariance", failures, f"{SUITE_SIZE} formulas x 4 orders")


def test_criterion_6_early_projection(capsys):
    rng = random.Random(6)
    failures = []
    values = (0, 1, 2, 3, Fraction(1, 2), Fraction(3, 10))
    for n in range(1000):
        num = rng.randint(2, 7)
        order = list(range(1, num + 1))
        rng.shuffle(order)
        m = Manager(order, exact=True)
        x = rng.randint(1, num)
        rest = [v for v in range(1, num + 1) if v != x]
        f_vars = [x] + rng.sample(rest, rng.randint(0, len(rest)))
        g_vars = rng.sample(rest, rng.randint(0, len(rest)))
        f = random_add(m, rng, f_vars, values)[0]
        g = random_add(m, rng, g_vars, values)[0]
        pos, negw = Fraction(rng.randint(1, 99), 100), Fraction(rng.randint(1, 99), 100)
        a = m.project(m.product(f, g), x, pos, negw)
        b = m.product(m.project(f, x, pos, negw), g)
        if a != b:
            failures.append(f"check {n}: handles {a} != {b}")
    report(capsys, "criterion 6: early projection", failures, "1000 checks")


def test_criterion_7_counting_safe_encoding(capsys):
    failures = []
    instances = suite(100, seed=7, vars_range=(4, 10), cons_range=(1, 6))
    for n, (f, w) in enumerate(instances):
        cnf = encode(f, w)
        got = cnf_count(cnf.clauses, cnf.num_vars, cnf.weight)
        truth = brute_force_count(f, w)
        if got != truth:
            failures.append(f"instance {n}: cnf {got} vs {truth}")
    report(capsys, "criterion 7: counting-safe CNF", failures, "100 formulas")


def test_criterion_8_normalization(capsys):
    rng = random.Random(8)
    failures = []
    for n in range(1000):
        num = rng.randint(1, 12)
        size = rng.randint(0, num + 2)
        terms = tuple((rng.randint(-10, 10), rng.choice((1, -1)) * rng.randint(1, num))
                      for _ in range(size))
        span = sum(abs(a) for a, _ in terms)
        c = PBConstraint(terms, rng.choice(OPERATORS), rng.randint(-span - 2, span + 2))
        d = normalize(c)
        if d is not True and d is not False and not d.is_normalized():
            failures.append(f"{c} -> {d} is not normalized")
            continue
        for t in iter_assignments(range(1, num + 1)):
            want = evaluate(c, t)
            got = d if isinstance(d, bool) else evaluate(d, t)
            if got != want:
                failures.append(f"{c} -> {d} differs at {t}")
                break
    report(capsys, "criterion 8: normalization", failures, "1000 constraints")


def test_criterion_9_cli_determinism(tmp_path, capsys):
    import tempfile
    from pathlib import Path
    workdir = Path(tmp_path or tempfile.mkdtemp())
    path = workdir / "instance.opb"
    rng = random.Random(9)
    lines = ["* #variable= 12 #constraint= 6"]
    lines += [f"* w {v} {rng.randint(1, 99) / 100} {rng.randint(1, 99) / 100}" for v in range(1, 13)]
    for _ in range(6):
        vs = rng.sample(range(1, 13), 5)
        lhs = " ".join(f"+{rng.randint(1, 9)} {'~' if rng.random() < 0.5 else ''}x{v}" for v in vs)
        lines.append(f"{lhs} {rng.choice(['>=', '=', '<='])} {rng.randint(3, 15)} ;")
    path.write_text("\n".join(lines) + "\n")
    failures = []
    configs = [[], ["--mode", "rational"], ["--pre", "none", "--order", "index", "-v"],
               ["--cluster", "index", "--oracle"]]
    for extra in configs:
        cmd = [sys.executable, "-m", "pbwmc", str(path), *extra]
        runs = [subprocess.run(cmd, capture_output=True, check=False) for _ in range(2)]
        if runs[0].returncode != 0:
            failures.append(f"{extra}: exit {runs[0].returncode} {runs[0].stderr!r}")
        elif runs[0].stdout != runs[1].stdout:
            failures.append(f"{extra}: {runs[0].stdout!r} != {runs[1].stdout!r}")
    report(capsys, "criterion 9: CLI determinism", failures, f"{len(configs)} configs x 2 runs")


if __name__ == "__main__":
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_criterion_")]
    failed = 0
    for test in tests:
        try:
            test(*[None] * test.__code__.co_argcount)
        except AssertionError:
            failed += 1
    sys.exit(1 if failed else 0)
