"""Acceptance criteria.  Each test carries a ``criterion`` marker; the terminal
summary prints one PASS/FAIL line per criterion."""
import itertools
import os
import random
import subprocess
import sys
import time
from pathlib import Path

import numpy as np
import pytest

from cli_cases import CASES
from conftest import (
    CONSTS, all_assignment_values, brute_solutions, consts_as_vars, random_system, random_term,
    set_eval, set_holds, subsets,
)
from ershov.models import PowersetModel, verify_ershov_axioms
from ershov.noetherian import (
    compact_system, dedupe_system, equation_classes, generated_subalgebra, inf_via_sup,
    one_variable_inequalities,
)
from ershov.rewrite import check_dnf_shape, normalize_term_dnf
from ershov.rules import check_rule, rule
from ershov.semantics import ModelProbe, equivalent, solve
from ershov.sysnf import NormalInequality, normalize_system
from ershov.terms import free_vars

pytestmark = pytest.mark.acceptance

IDENTITIES = [
    "diff-below-base", "diff-join-base", "diff-split", "diff-join-minus", "diff-meet-base",
    "diff-meet-minus", "left-join", "left-meet", "left-diff", "right-join", "right-meet",
    "right-diff", "merge-meet", "merge-meet-3", "move-left-diff", "split-right-diff",
]
P3 = frozenset({1, 2, 3})


# --- criterion 1 ------------------------------------------------------------

def _holds_by_sets(r):
    """Independent check of a catalogue rule with frozensets over powerset(3)."""
    variables = sorted(r.variables)
    space = subsets(P3)
    if r.relation == "~":
        left = brute_solutions(r.lhs, P3, {}, variables)
        right = brute_solutions(r.rhs, P3, {}, variables)
        return left == right
    for values in itertools.product(space, repeat=len(variables)):
        a = dict(zip(variables, values))
        lhs, rhs = set_eval(r.lhs, {}, a), set_eval(r.rhs, {}, a)
        if not (lhs == rhs if r.relation == "=" else lhs <= rhs):
            return False
    return True


@pytest.mark.criterion(1, "axioms on 1-4 atoms; identities exhaustive over powerset(3); < 5 s")
def test_axiom_suite():
    start = time.perf_counter()
    for n in (1, 2, 3, 4):
        report = verify_ershov_axioms(PowersetModel.over(n))
        assert report.passed, (n, report)
    for name in IDENTITIES:
        r = rule(name)
        res = check_rule(r, atoms=3)
        assert res.holds, (name, res.counterexample)
        assert res.checked == 8 ** len(r.variables)
        if len(r.variables) <= 4:
            assert _holds_by_sets(r), name
    assert time.perf_counter() - start < 5.0


# --- criterion 2 ------------------------------------------------------------

@pytest.mark.criterion(2, "counterexample to the two-clause join merge; one-sided <= holds")
def test_merge_join_refutation():
    counterexamples = []
    space = subsets(P3)
    for a1, b1, a2, b2 in itertools.product(space, repeat=4):
        lhs = (a1 - b1) | (a2 - b2)
        rhs = (a1 | a2) - (b1 & b2)
        assert lhs <= rhs
        if lhs != rhs:
            counterexamples.append((a1, b1, a2, b2))
    assert counterexamples
    assert (frozenset({1, 2}), frozenset({1}), frozenset({3}), frozenset({2})) in counterexamples
    # the engine agrees
    assert not check_rule(rule("merge-join")).holds
    assert check_rule(rule("merge-join-bound")).holds


# --- criterion 3 ------------------------------------------------------------

@pytest.mark.criterion(3, ">= 1000 random terms: DNF shape valid and value-equal; < 60 s")
def test_term_normal_form():
    rng = random.Random(31)
    start = time.perf_counter()
    count = 0
    for _ in range(1000):
        t = random_term(rng, 5, nvars=4, consts=CONSTS)
        d = normalize_term_dnf(t)
        assert check_dnf_shape(d) == [], (t, check_dnf_shape(d))
        u = d.to_term()
        # every assignment over powerset(3), constants under a random interpretation
        consts = {c: rng.randrange(8) for c in CONSTS}
        lhs, rhs = all_assignment_values(t, u, atoms=3, consts=consts)
        assert np.array_equal(lhs, rhs), t
        # constants as free symbols on the two-element algebra; operations act atom by
        # atom, so this covers every interpretation in every powerset model
        lhs, rhs = all_assignment_values(consts_as_vars(t), consts_as_vars(u), atoms=1)
        assert np.array_equal(lhs, rhs), t
        count += 1
    assert count >= 1000
    assert time.perf_counter() - start < 60.0


# --- criterion 4 ------------------------------------------------------------

@pytest.mark.criterion(4, ">= 200 random systems: normal form valid and solve-equivalent; < 120 s")
def test_system_normal_form():
    rng = random.Random(41)
    start = time.perf_counter()
    for _ in range(200):
        consts = {c: frozenset(x for x in (1, 2) if rng.random() < 0.5) for c in CONSTS}
        system = random_system(rng, max_eqs=3, nvars=3, depth=4)
        nf = normalize_system(system, consts)
        if not (len(nf) == 1 and nf[0].is_contradiction):
            for ni in nf:
                assert ni.problems() == [], (system, ni)
        probe = ModelProbe(consts, (0, 1, 2), support=frozenset({1, 2}), max_atoms=4)
        verdict = equivalent(system, nf, probe)
        assert verdict, (system, nf, verdict)
        assert verdict.models_checked == 3
    assert time.perf_counter() - start < 120.0


# --- criterion 5 ------------------------------------------------------------

def _pairwise_classes(nis, probe):
    parent = list(range(len(nis)))

    def find(i):
        while parent[i] != i:
            i = parent[i]
        return i

    for i, j in itertools.combinations(range(len(nis)), 2):
        if equivalent([nis[i]], [nis[j]], probe):
            parent[find(j)] = find(i)
    return len({find(i) for i in range(len(nis))})


def _greedy_dedupe_by_sets(nis, atoms):
    kept = list(dict.fromkeys(nis))
    full = brute_solutions(kept, atoms, {}, [1])
    i = 0
    while i < len(kept):
        rest = kept[:i] + kept[i + 1:]
        if brute_solutions(rest, atoms, {}, [1]) == full:
            kept = rest
        else:
            i += 1
    return kept


@pytest.mark.criterion(5, "closure sizes; one-variable dedupe and class counts agree across oracles")
def test_noetherian_criterion():
    assert len(generated_subalgebra([{1, 2}, {2, 3}])) == 8
    nis = one_variable_inequalities(generated_subalgebra([{1}]))
    probe = ModelProbe(fresh=(0, 1, 2))
    by_enumeration = len(equation_classes(nis, probe))
    by_pairs = _pairwise_classes(nis, probe)
    assert by_enumeration == by_pairs == 4
    kept = dedupe_system(nis, probe)
    independent = _greedy_dedupe_by_sets(nis, (1, 2, 3))
    assert len(kept) == len(independent)
    assert brute_solutions(kept, (1, 2, 3), {}, [1]) == brute_solutions(nis, (1, 2, 3), {}, [1])


# --- criterion 6 ------------------------------------------------------------

@pytest.mark.criterion(6, "singleton groups compact to one inequality with only x1 = 0; inf = intersection")
def test_weak_noetherian_compaction():
    for n in range(1, 13):
        system = [NormalInequality({1}, {j}) for j in range(n)]
        out = compact_system(system)
        assert out == [NormalInequality({1}, frozenset(range(n)))]
        m = PowersetModel.over(n, start=0)
        for s in (system, out):
            sols = solve(s, m)
            assert [m.element_of(row[0]) for row in sols.rows] == [frozenset()]
    rng = random.Random(61)
    for _ in range(100):
        fam = [frozenset(rng.sample(range(10), rng.randint(0, 6))) for _ in range(rng.randint(1, 6))]
        expected = set(fam[0])
        for c in fam[1:]:
            expected &= c
        assert inf_via_sup(fam) == expected


# --- criterion 7 ------------------------------------------------------------

DATA = Path(__file__).parent / "data"
GOLDEN = Path(__file__).parent / "golden"


@pytest.mark.criterion(7, "CLI golden files reproduce byte for byte across runs")
def test_cli_determinism():
    env = {k: v for k, v in os.environ.items() if k != "ERSHOV_BUDGET"}
    for name, argv, code in CASES:
        runs = [subprocess.run([sys.executable, "-m", "ershov", *argv], cwd=DATA,
                               capture_output=True, env=env) for _ in range(2)]
        for proc in runs:
            assert proc.returncode == code, name
            assert proc.stdout == (GOLDEN / f"{name}.out").read_bytes(), name
