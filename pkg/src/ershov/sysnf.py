"""Rewriting whole systems into atomic inequalities.

Every equation is split into two inequalities.  The left side goes to DNF
and is split clause by clause; each clause of difference atoms
``a1\\b1 * ... * ak\\bk`` is moved across as ``a1*...*ak <= s + b1 + ... + bk``.
The right side then goes to CNF, is split clause by clause, and its
differences are removed one atom at a time with

    t <= s + a\\b   ~   {t <= s + a,  t*b <= s}

Finally constants are folded in the interpretation, which leaves one of

    X*c <= Y      X*c = 0      X <= Y + c      X <= Y

with disjoint variable sets ``X``, ``Y`` and ``c`` nonempty.  ``c <= Y``
(no left variables) is kept as an extra shape.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Mapping

from .errors import UnknownSymbolError
from .models import PowersetModel, element_key
from .rewrite import RewriteStep, normalize_term_cnf, normalize_term_dnf
from .terms import (
    ZERO, Clause, Const, Diff, DifferenceAtom, EqSystem, Equation, Relation, Simple,
    Term, Var, Zero, eq_as_pair_of_inequalities, join_all, meet_all,
)

__all__ = [
    "NormalInequality", "eliminate_left_diffs", "eliminate_right_diff", "dist_normalize",
    "merge_two_constants", "normalize_system", "is_unsatisfiable", "SHAPES",
]

SHAPES = ("1", "2", "3", "4", "5-ext", "unsat")


def _key(e: frozenset | None) -> tuple:
    return (0,) if e is None else (1,) + element_key(e)


@dataclass(frozen=True)
class NormalInequality:
    """``/\\X * left_const <= \\/Y + right_const`` over an interpreted constant table."""

    left_vars: frozenset = frozenset()
    left_const: frozenset | None = None
    right_vars: frozenset = frozenset()
    right_const: frozenset | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "left_vars", frozenset(self.left_vars))
        object.__setattr__(self, "right_vars", frozenset(self.right_vars))
        for name in ("left_const", "right_const"):
            v = getattr(self, name)
            if v is not None:
                object.__setattr__(self, name, frozenset(v))

    @property
    def shape(self) -> str:
        if not self.left_vars:
            return "5-ext" if self.right_vars else "unsat"
        if self.left_const is not None:
            return "1" if self.right_vars else "2"
        if self.right_const is not None:
            return "3"
        return "4"

    @property
    def is_contradiction(self) -> bool:
        return self.shape == "unsat"

    @property
    def constant(self) -> frozenset | None:
        return self.left_const if self.left_const is not None else self.right_const

    def problems(self) -> list[str]:
        """Violated invariants; empty when the inequality is well-formed."""
        out = []
        if self.left_vars & self.right_vars:
            out.append("a variable occurs on both sides")
        if self.left_const is not None and self.right_const is not None:
            out.append("constants on both sides")
        if self.left_const is not None and not self.left_const:
            out.append("left constant is 0")
        if self.right_const is not None and not self.right_const:
            out.append("right constant is 0")
        if not self.left_vars and self.left_const is None:
            out.append("empty left side")
        if any(not isinstance(v, int) or v < 1 for v in self.left_vars | self.right_vars):
            out.append("bad variable index")
        return out

    def free_vars(self) -> set[int]:
        return set(self.left_vars | self.right_vars)

    def elements(self) -> list[frozenset]:
        return [e for e in (self.left_const, self.right_const) if e is not None]

    def sort_key(self) -> tuple:
        return (sorted(self.left_vars), _key(self.left_const), sorted(self.right_vars),
                _key(self.right_const))

    def holds_in(self, m: PowersetModel, env: Mapping[int, object]):
        left = None
        for v in sorted(self.left_vars):
            left = env[v] if left is None else left & env[v]
        if self.left_const is not None:
            c = m.mask_of(self.left_const)
            left = c if left is None else left & c
        right = m.mask_of(self.right_const) if self.right_const is not None else 0
        for v in sorted(self.right_vars):
            right = right | env[v]
        return (left & ~right) == 0

    def to_equation(self, names: Mapping[frozenset, str]) -> Equation:
        """Back to an inequality between terms; ``names`` maps elements to constant names."""
        left = [Var(i) for i in sorted(self.left_vars)]
        if self.left_const is not None:
            left.append(Const(names[self.left_const]))
        right: list[Term] = [Var(i) for i in sorted(self.right_vars)]
        if self.right_const is not None:
            right.append(Const(names[self.right_const]))
        return Equation.le(meet_all(left), join_all(right))


def _interp(name: str, constants: Mapping[str, frozenset]) -> frozenset:
    try:
        return frozenset(constants[name])
    except KeyError:
        raise UnknownSymbolError(name, f"unknown constant {name!r}") from None


def _fold(left: Iterable[Simple], right: Iterable[Simple], constants) -> NormalInequality | None:
    """Fold a ``meet of symbols <= join of symbols`` into normal form.

    Returns None for inequalities that hold under every assignment.
    """
    left, right = set(left), set(right)
    if any(isinstance(s, Zero) for s in left):
        return None
    X = frozenset(s.index for s in left if isinstance(s, Var))
    Y = frozenset(s.index for s in right if isinstance(s, Var))
    if X & Y:
        return None
    left_c = [_interp(s.name, constants) for s in left if isinstance(s, Const)]
    right_c = [_interp(s.name, constants) for s in right if isinstance(s, Const)]
    ca = reduce(frozenset.intersection, left_c) if left_c else None
    cb = reduce(frozenset.union, right_c) if right_c else None
    if ca is not None and not ca:
        return None
    if cb is not None and not cb:
        cb = None
    if ca is not None and cb is not None:
        if ca <= cb:
            return None
        return merge_two_constants(NormalInequality(X, ca, Y, cb))
    return NormalInequality(X, ca, Y, cb)


def merge_two_constants(ni: NormalInequality) -> NormalInequality:
    """``X*ca <= Y + cb``  ~  ``X*(ca\\cb) <= Y``."""
    if ni.left_const is None or ni.right_const is None:
        return ni
    if ni.left_const <= ni.right_const:
        raise ValueError("constants already ordered; the inequality is trivially true")
    return NormalInequality(ni.left_vars, ni.left_const - ni.right_const, ni.right_vars, None)


def eliminate_left_diffs(clause: Clause | Iterable[DifferenceAtom], rhs: Term) -> Equation:
    """``a1\\b1 * ... * ak\\bk <= rhs``  ~  ``a1 * ... * ak <= rhs + b1 + ... + bk``."""
    atoms = list(clause)
    bases = meet_all(a.base for a in atoms)
    minuses = [a.minus for a in atoms if not isinstance(a.minus, Zero)]
    if isinstance(rhs, Zero) and minuses:
        return Equation.le(bases, join_all(minuses))
    return Equation.le(bases, join_all([rhs, *minuses]))


def eliminate_right_diff(lhs: Term, rest: Term | None, atom: DifferenceAtom) -> list[Equation]:
    """``t <= s + a\\b``  ~  ``{t <= s + a, t*b <= s}``; ``rest`` None means ``s = 0``."""
    s = ZERO if rest is None else rest
    first = Equation.le(lhs, atom.base if rest is None else join_all([rest, atom.base]))
    if isinstance(atom.minus, Zero):
        return [first]
    return [first, Equation.le(meet_all([lhs, atom.minus]), s)]


def dist_normalize(ineq: Equation, constants: Mapping[str, frozenset]) -> list[NormalInequality]:
    """Split a difference-free inequality into folded atomic inequalities."""
    if ineq.kind is not Relation.LESS_EQUAL:
        raise ValueError("dist_normalize expects an inequality")
    if _has_diff(ineq.lhs) or _has_diff(ineq.rhs):
        raise ValueError("dist_normalize expects a difference-free inequality")
    out = []
    lhs = normalize_term_dnf(ineq.lhs)
    if lhs.is_zero():
        return []
    rhs = normalize_term_cnf(ineq.rhs)
    for lc in lhs.clauses:
        for rc in rhs.clauses:
            ni = _fold((a.base for a in lc), (a.base for a in rc), constants)
            if ni is not None:
                out.append(ni)
    return _canonical(out)


def _has_diff(t: Term) -> bool:
    if isinstance(t, Diff):
        return True
    if hasattr(t, "left"):
        return _has_diff(t.left) or _has_diff(t.right)
    return False


def _canonical(items: Iterable[NormalInequality]) -> list[NormalInequality]:
    return sorted(set(items), key=NormalInequality.sort_key)


def _log(trace, rule: str, before, after) -> None:
    if trace is not None:
        trace.append(RewriteStep(rule, before, after))


def _right_items(left: list[Simple], atoms: list[DifferenceAtom], trace):
    """Remove differences from ``meet(left) <= join(atoms)`` one atom at a time."""
    todo = [(left, atoms)]
    while todo:
        lhs, rhs = todo.pop()
        pending = [i for i, a in enumerate(rhs) if not isinstance(a.minus, Zero)]
        if not pending:
            yield lhs, [a.base for a in rhs]
            continue
        i = pending[0]
        atom, rest = rhs[i], rhs[:i] + rhs[i + 1:]
        plain = DifferenceAtom(atom.base)
        first = (lhs, rest + [plain])
        second = (lhs + [atom.minus], rest)
        if trace is not None:
            rest_term = join_all(a.to_term() for a in rest) if rest else None
            _log(trace, "split-right-join-diff",
                 Equation.le(meet_all(lhs), join_all(a.to_term() for a in rhs)),
                 tuple(eliminate_right_diff(meet_all(lhs), rest_term, atom)))
        # second first so the pop order follows the rule's output order
        todo.append(second)
        todo.append(first)


def normalize_system(s: EqSystem | Iterable[Equation], constants: Mapping[str, frozenset],
                     trace: list | None = None) -> list[NormalInequality]:
    """Equivalent list of normal inequalities, canonically sorted and deduplicated.

    If some ground inequality is false the result is the single contradiction
    ``c = 0`` (``c`` nonempty) it produced.
    """
    out: list[NormalInequality] = []
    equations = s.equations if isinstance(s, EqSystem) else tuple(s)
    for eq in equations:
        pair = eq_as_pair_of_inequalities(eq)
        if eq.kind is Relation.EQUAL:
            _log(trace, "equality-split", eq, tuple(pair))
        for ineq in pair:
            lhs = normalize_term_dnf(ineq.lhs, trace)
            if lhs.is_zero():
                continue
            if trace is not None and len(lhs.clauses) > 1:
                _log(trace, "split-join-left", ineq,
                     tuple(Equation.le(meet_all(a.to_term() for a in c), ineq.rhs) for c in lhs.clauses))
            for clause in lhs.clauses:
                moved = eliminate_left_diffs(clause, ineq.rhs)
                if trace is not None and any(not isinstance(a.minus, Zero) for a in clause):
                    if len(clause) > 1:
                        _log(trace, "merge-meet", meet_all(a.to_term() for a in clause),
                             Diff(moved.lhs, join_all(a.minus for a in clause if not isinstance(a.minus, Zero))))
                    _log(trace, "move-left-diff", Equation.le(meet_all(a.to_term() for a in clause), ineq.rhs),
                         moved)
                rhs = normalize_term_cnf(moved.rhs, trace)
                if trace is not None and len(rhs.clauses) > 1:
                    _log(trace, "split-meet-right", moved,
                         tuple(Equation.le(moved.lhs, join_all(a.to_term() for a in c)) for c in rhs.clauses))
                left = [a.base for a in clause]
                for rc in rhs.clauses:
                    atoms = [a for a in rc if not a.is_zero]
                    for lsyms, rsyms in _right_items(left, atoms, trace):
                        ni = _fold(lsyms, rsyms, constants)
                        if ni is None:
                            continue
                        if ni.is_contradiction:
                            _log(trace, "ground-false", Equation.le(meet_all(lsyms), join_all(rsyms)), (ni,))
                            return [ni]
                        out.append(ni)
    return _canonical(out)


def is_unsatisfiable(result: list[NormalInequality]) -> bool:
    return any(ni.is_contradiction for ni in result)

