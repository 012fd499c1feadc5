import itertools
import random

import numpy as np
import pytest
from hypothesis import strategies as st

from ershov.terms import ZERO, Const, Diff, Equation, Join, Meet, Relation, Var, Zero

CONSTS = ("c1", "c2", "c3")


def random_term(rng: random.Random, depth: int, nvars: int = 4, consts=CONSTS):
    if depth == 0 or rng.random() < 0.25:
        r = rng.random()
        if r < 0.1:
            return ZERO
        if r < 0.65 or not consts:
            return Var(rng.randint(1, nvars))
        return Const(rng.choice(consts))
    op = rng.choice((Join, Meet, Diff, Diff))
    return op(random_term(rng, depth - 1, nvars, consts), random_term(rng, depth - 1, nvars, consts))


def random_system(rng: random.Random, max_eqs=3, nvars=3, depth=4, consts=CONSTS):
    return [Equation(random_term(rng, depth, nvars, consts), random_term(rng, depth, nvars, consts),
                     rng.choice(list(Relation)))
            for _ in range(rng.randint(1, max_eqs))]


def terms(max_depth=4, nvars=3, consts=CONSTS):
    leaves = st.one_of(
        st.just(ZERO),
        st.integers(1, nvars).map(Var),
        st.sampled_from(consts).map(Const),
    )
    return st.recursive(
        leaves,
        lambda sub: st.one_of(
            st.tuples(sub, sub).map(lambda p: Join(*p)),
            st.tuples(sub, sub).map(lambda p: Meet(*p)),
            st.tuples(sub, sub).map(lambda p: Diff(*p)),
        ),
        max_leaves=2 ** max_depth,
    )


# --- set-based oracle -------------------------------------------------------
# Plain frozensets and Python loops; shares no code with the numpy solver.

def set_eval(t, consts, a):
    if isinstance(t, Var):
        return a[t.index]
    if isinstance(t, Const):
        return frozenset(consts[t.name])
    if isinstance(t, Zero):
        return frozenset()
    left, right = set_eval(t.left, consts, a), set_eval(t.right, consts, a)
    if isinstance(t, Join):
        return left | right
    if isinstance(t, Meet):
        return left & right
    return left - right


def set_holds(c, consts, a):
    if isinstance(c, Equation):
        lhs, rhs = set_eval(c.lhs, consts, a), set_eval(c.rhs, consts, a)
        return lhs == rhs if c.kind is Relation.EQUAL else lhs <= rhs
    # normal inequality
    left = None
    for v in c.left_vars:
        left = a[v] if left is None else left & a[v]
    if c.left_const is not None:
        left = c.left_const if left is None else left & c.left_const
    right = set(c.right_const or ())
    for v in c.right_vars:
        right |= a[v]
    return left <= right


def subsets(atoms):
    atoms = list(atoms)
    return [frozenset(s) for r in range(len(atoms) + 1) for s in itertools.combinations(atoms, r)]


def brute_solutions(constraints, atoms, consts, variables):
    out = set()
    for values in itertools.product(subsets(atoms), repeat=len(variables)):
        a = dict(zip(variables, values))
        if all(set_holds(c, consts, a) for c in constraints):
            out.add(tuple(values))
    return out


def consts_as_vars(t, offset=100):
    """Replace constant ``c<i>`` by ``x<offset+i>`` so constants range over all values too."""
    if isinstance(t, Const):
        return Var(offset + CONSTS.index(t.name) + 1)
    if isinstance(t, (Join, Meet, Diff)):
        return type(t)(consts_as_vars(t.left, offset), consts_as_vars(t.right, offset))
    return t


def mask_eval(t, env, consts=None):
    """Bitmask evaluation; ``env`` maps variable index to an int array, ``consts`` name to int."""
    if isinstance(t, Var):
        return env[t.index]
    if isinstance(t, Const):
        return consts[t.name]
    if isinstance(t, Zero):
        return 0
    left, right = mask_eval(t.left, env, consts), mask_eval(t.right, env, consts)
    if isinstance(t, Join):
        return left | right
    if isinstance(t, Meet):
        return left & right
    return left & ~right


def all_assignment_values(t, u, atoms=3, consts=None):
    """Evaluate ``t`` and ``u`` on every assignment of their variables over powerset(atoms).

    ``consts`` maps constant names to bitmasks.
    """
    from ershov.terms import free_vars
    variables = sorted(free_vars(t) | free_vars(u))
    n = len(variables)
    digit = (1 << atoms) - 1
    idx = np.arange(1 << (atoms * n), dtype=np.int64)
    env = {v: (idx >> (atoms * (n - 1 - i))) & digit for i, v in enumerate(variables)}
    lhs = np.broadcast_to(np.asarray(mask_eval(t, env, consts)), idx.shape)
    rhs = np.broadcast_to(np.asarray(mask_eval(u, env, consts)), idx.shape)
    return lhs, rhs


@pytest.fixture
def rng():
    return random.Random(20261018)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, text): acceptance criterion")


_CRITERIA = {}


def pytest_runtest_logreport(report):
    marker = getattr(report, "criterion", None)
    if marker is None:
        return
    number, text = marker
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        prev = _CRITERIA.get(number, (text, True))
        _CRITERIA[number] = (text, prev[1] and report.outcome == "passed")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    m = item.get_closest_marker("criterion")
    if m is not None:
        report.criterion = tuple(m.args)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        text, ok = _CRITERIA[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'} - {text}")
