"""Evaluation, solving by enumeration, and the finite-model equivalence oracle.

``solve`` enumerates every assignment of the system's variables to model
elements.  Assignments are numbered so that the first variable is the most
significant digit (base ``2**atoms``); evaluation runs over numpy arrays of
bitmasks one chunk at a time, so the order of the returned solutions is
lexicographic over the bitmask encodings.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

from .errors import BudgetExceeded, UnknownSymbolError
from .models import PowersetModel, label_key
from .terms import Const, Diff, EqSystem, Equation, Join, Meet, Relation, Term, Var, Zero

DEFAULT_BUDGET = 1 << 24
CHUNK = 1 << 16

__all__ = [
    "eval_term", "satisfies", "solve", "SolutionSet", "ModelProbe", "Verdict",
    "equivalent", "budget_from_env", "constraint_vars",
]


def budget_from_env() -> int:
    raw = os.environ.get("ERSHOV_BUDGET")
    if not raw:
        return DEFAULT_BUDGET
    return int(raw, 0)


def eval_term(t: Term, m: PowersetModel, a: Mapping[int, int]) -> int:
    """Value of ``t`` as a bitmask, with variables bound by ``a`` (index -> mask)."""
    if isinstance(t, Var):
        try:
            return a[t.index]
        except KeyError:
            raise UnknownSymbolError(f"x{t.index}", f"unbound variable x{t.index}") from None
    if isinstance(t, Const):
        return m.const_mask(t.name)
    if isinstance(t, Zero):
        return 0
    left = eval_term(t.left, m, a)
    right = eval_term(t.right, m, a)
    if isinstance(t, Join):
        return left | right
    if isinstance(t, Meet):
        return left & right
    return left & ~right


def satisfies(e: Equation, m: PowersetModel, a: Mapping[int, int]) -> bool:
    lhs = eval_term(e.lhs, m, a)
    rhs = eval_term(e.rhs, m, a)
    if e.kind is Relation.EQUAL:
        return lhs == rhs
    return lhs & ~rhs == 0


def _eval_vec(t: Term, m: PowersetModel, env: Mapping[int, object]):
    # same recursion as eval_term; env values may be numpy arrays
    if isinstance(t, Var):
        try:
            return env[t.index]
        except KeyError:
            raise UnknownSymbolError(f"x{t.index}", f"unbound variable x{t.index}") from None
    if isinstance(t, Const):
        return m.const_mask(t.name)
    if isinstance(t, Zero):
        return 0
    left = _eval_vec(t.left, m, env)
    right = _eval_vec(t.right, m, env)
    if isinstance(t, Join):
        return left | right
    if isinstance(t, Meet):
        return left & right
    return left & ~right


def _holds_vec(c, m: PowersetModel, env: Mapping[int, object]):
    if isinstance(c, Equation):
        lhs = _eval_vec(c.lhs, m, env)
        rhs = _eval_vec(c.rhs, m, env)
        if c.kind is Relation.EQUAL:
            return lhs == rhs
        return (lhs & ~rhs) == 0
    return c.holds_in(m, env)


def constraint_vars(constraints: Iterable) -> set[int]:
    out: set[int] = set()
    for c in constraints:
        out |= c.free_vars()
    return out


def _as_list(s) -> list:
    if isinstance(s, EqSystem):
        return list(s.equations)
    if isinstance(s, Equation):
        return [s]
    return list(s)


@dataclass(frozen=True)
class SolutionSet:
    model: PowersetModel
    variables: tuple[int, ...]
    rows: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.rows)

    def __iter__(self) -> Iterator[dict[int, int]]:
        for row in self.rows:
            yield dict(zip(self.variables, row))

    @property
    def assignments(self) -> list[dict[int, int]]:
        return list(self)

    def as_set(self) -> frozenset[tuple[int, ...]]:
        return frozenset(self.rows)


def _enumerate(constraints: list, m: PowersetModel, variables: tuple[int, ...], budget: int):
    k = len(m.atoms)
    v = len(variables)
    total = 1 << (k * v)
    if total > budget or k * v > 62:
        raise BudgetExceeded(total, budget)
    if v == 0:
        ok = all(bool(_holds_vec(c, m, {})) for c in constraints)
        yield np.ones(1, dtype=bool) if ok else np.zeros(1, dtype=bool), {}
        return
    digit = (1 << k) - 1
    for start in range(0, total, CHUNK):
        idx = np.arange(start, min(total, start + CHUNK), dtype=np.int64)
        env = {var: (idx >> (k * (v - 1 - i))) & digit for i, var in enumerate(variables)}
        ok = np.ones(idx.shape, dtype=bool)
        for c in constraints:
            ok &= np.broadcast_to(np.asarray(_holds_vec(c, m, env), dtype=bool), idx.shape)
        yield ok, env


def solve(s, m: PowersetModel, budget: int | None = None,
          variables: Sequence[int] | None = None) -> SolutionSet:
    """All assignments satisfying every constraint of ``s`` in ``m``.

    ``s`` is an EqSystem, an Equation, or a list of equations and normal
    inequalities.  ``variables`` widens the variable universe beyond those
    occurring in ``s``.
    """
    constraints = _as_list(s)
    budget = budget_from_env() if budget is None else budget
    universe = constraint_vars(constraints) | set(variables or ())
    variables = tuple(sorted(universe))
    rows: list[tuple[int, ...]] = []
    for ok, env in _enumerate(constraints, m, variables, budget):
        if not variables:
            if ok[0]:
                rows.append(())
            continue
        hits = np.flatnonzero(ok)
        if hits.size:
            cols = [np.asarray(env[var])[hits].tolist() for var in variables]
            rows.extend(zip(*cols))
    return SolutionSet(m, variables, tuple(rows))


def _fresh_labels(support: Iterable, n: int) -> list:
    support = list(support)
    if all(isinstance(x, int) for x in support):
        base = max(support, default=0) + 1
        return list(range(base, base + n))
    if all(isinstance(x, str) and x.isdigit() for x in support):
        base = max((int(x) for x in support), default=0) + 1
        return [str(i) for i in range(base, base + n)]
    taken = {str(x) for x in support}
    out, i = [], 1
    while len(out) < n:
        if f"_f{i}" not in taken:
            out.append(f"_f{i}")
        i += 1
    return out


@dataclass(frozen=True)
class ModelProbe:
    """Powerset models over the constants' support plus ``f`` fresh atoms.

    Fresh atoms stand for elements outside the constant subalgebra.  The
    probe can falsify an equivalence but cannot prove one in general.
    """

    constants: Mapping[str, frozenset] = field(default_factory=dict)
    fresh: tuple[int, ...] = (0, 1, 2)
    support: frozenset = frozenset()
    max_atoms: int | None = None

    def base_support(self, extra: Iterable = ()) -> list:
        atoms = set(self.support) | set(extra)
        for v in self.constants.values():
            atoms |= set(v)
        return sorted(atoms, key=label_key)

    def models(self, extra_support: Iterable = ()) -> Iterator[PowersetModel]:
        base = self.base_support(extra_support)
        for f in self.fresh:
            if self.max_atoms is not None and len(base) + f > self.max_atoms:
                continue
            atoms = tuple(base) + tuple(_fresh_labels(base, f))
            yield PowersetModel(atoms, dict(self.constants))


@dataclass(frozen=True)
class Verdict:
    equivalent: bool
    model: PowersetModel | None = None
    assignment: dict | None = None
    satisfied_by: str | None = None   # "first" or "second"
    models_checked: int = 0

    def __bool__(self) -> bool:
        return self.equivalent


def _element_support(constraints: Iterable) -> set:
    out: set = set()
    for c in constraints:
        for e in getattr(c, "elements", lambda: ())():
            out |= set(e)
    return out


def equivalent(s1, s2, probe: ModelProbe | None = None, budget: int | None = None) -> Verdict:
    """Compare the solution sets of two systems on every probe model."""
    c1, c2 = _as_list(s1), _as_list(s2)
    probe = probe or ModelProbe()
    variables = tuple(sorted(constraint_vars(c1) | constraint_vars(c2)))
    checked = 0
    for m in probe.models(_element_support(c1) | _element_support(c2)):
        checked += 1
        a = solve(c1, m, budget, variables)
        b = solve(c2, m, budget, variables)
        if a.rows == b.rows:
            continue
        only_a = a.as_set() - b.as_set()
        only_b = b.as_set() - a.as_set()
        # earliest witness in enumeration order
        first = min(only_a | only_b)
        side = "first" if first in only_a else "second"
        assignment = {var: m.element_of(x) for var, x in zip(variables, first)}
        return Verdict(False, m, assignment, side, checked)
    return Verdict(True, models_checked=checked)
