"""Term and equation normalizers.

Normal forms are built bottom-up.  Joins and meets of normal forms are
unions and distributive products; a difference ``L \\ R`` of two normal
forms is resolved with the left rules first (over the clauses and atoms of
``L``) and then the right rules (over the clauses and atoms of ``R``), so
both operands are simple by the time an atom is formed.  Every intermediate
result is canonicalized (``x \\ x`` and ``0 \\ x`` become 0, zero clauses are
dropped, subsumed clauses removed), which keeps intermediate sizes close to
the size of the final form.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from itertools import product

from .terms import (
    Clause, CnfTerm, Diff, DifferenceAtom, DnfTerm, Equation, Join, Meet,
    Relation, Term, Var, Const, Zero, is_simple, join_all, meet_all, term_size,
)

__all__ = [
    "RewriteStep", "normalize_term_dnf", "normalize_term_cnf", "normalize_equation",
    "DnfEquation", "termination_measure", "check_dnf_shape",
]


@dataclass(frozen=True)
class RewriteStep:
    rule: str
    before: object
    after: object


def termination_measure(t: Term) -> int:
    """Sum of ``2**(|left| + |right|)`` over differences with a compound operand.

    Each rule application lowers it.
    """
    if isinstance(t, (Join, Meet, Diff)):
        own = 0
        if isinstance(t, Diff) and not (is_simple(t.left) and is_simple(t.right)):
            own = 1 << (term_size(t.left) + term_size(t.right))
        return own + termination_measure(t.left) + termination_measure(t.right)
    return 0


def _union(a: DnfTerm, b: DnfTerm) -> DnfTerm:
    return DnfTerm(a.clauses + b.clauses)


def _product(a: DnfTerm, b: DnfTerm) -> DnfTerm:
    return DnfTerm(tuple(Clause(p.atoms + q.atoms) for p, q in product(a.clauses, b.clauses)))


def _plain_atom(a: DifferenceAtom) -> Term:
    return a.base if isinstance(a.minus, Zero) else a.to_term()


def _plain(d: DnfTerm) -> Term:
    """Term for a DNF with bare symbols instead of ``v \\ 0``; used in traces."""
    return join_all(meet_all(_plain_atom(a) for a in c) for c in d.clauses)


def _single(atom: DifferenceAtom) -> DnfTerm:
    return DnfTerm((Clause.of(atom),))


class _Normalizer:
    def __init__(self, trace):
        self.trace = trace

    def step(self, rule: str, before: Term, after) -> None:
        if self.trace is not None:
            self.trace.append(RewriteStep(rule, before, after))

    def dnf(self, t: Term) -> DnfTerm:
        if is_simple(t):
            return _single(DifferenceAtom(t))
        if isinstance(t, Diff) and is_simple(t.left) and is_simple(t.right):
            return _single(DifferenceAtom(t.left, t.right))
        left, right = self.dnf(t.left), self.dnf(t.right)
        if isinstance(t, Join):
            return _union(left, right)
        if isinstance(t, Meet):
            return _product(left, right)
        return self.diff(left, right)

    def diff(self, left: DnfTerm, right: DnfTerm) -> DnfTerm:
        if left.is_zero():
            return left
        r = _plain(right)
        if len(left.clauses) > 1:
            parts = [DnfTerm((c,)) for c in left.clauses]
            self.step("left-join", Diff(_plain(left), r), join_all(Diff(_plain(p), r) for p in parts))
            return reduce(_union, (self.clause_diff(c, right) for c in left.clauses))
        return self.clause_diff(left.clauses[0], right)

    def clause_diff(self, clause: Clause, right: DnfTerm) -> DnfTerm:
        r = _plain(right)
        if len(clause) > 1:
            self.step("left-meet", Diff(meet_all(_plain_atom(a) for a in clause), r),
                      meet_all(Diff(_plain_atom(a), r) for a in clause))
        return reduce(_product, (self.atom_diff(a, right) for a in clause))

    def atom_diff(self, atom: DifferenceAtom, right: DnfTerm) -> DnfTerm:
        if isinstance(atom.minus, Zero):
            return self.simple_diff(atom.base, right)
        r = _plain(right)
        self.step("left-diff", Diff(_plain_atom(atom), r), Meet(_plain_atom(atom), Diff(atom.base, r)))
        return _product(_single(atom), self.simple_diff(atom.base, right))

    def simple_diff(self, b, right: DnfTerm) -> DnfTerm:
        if right.is_zero():
            return _single(DifferenceAtom(b))
        if len(right.clauses) > 1:
            parts = [DnfTerm((c,)) for c in right.clauses]
            self.step("right-join", Diff(b, _plain(right)), meet_all(Diff(b, _plain(p)) for p in parts))
            return reduce(_product, (self.simple_clause_diff(b, c) for c in right.clauses))
        return self.simple_clause_diff(b, right.clauses[0])

    def simple_clause_diff(self, b, clause: Clause) -> DnfTerm:
        if len(clause) > 1:
            self.step("right-meet", Diff(b, meet_all(_plain_atom(a) for a in clause)),
                      join_all(Diff(b, _plain_atom(a)) for a in clause))
        return reduce(_union, (self.simple_atom_diff(b, a) for a in clause))

    def simple_atom_diff(self, b, atom: DifferenceAtom) -> DnfTerm:
        a, m = atom.base, atom.minus
        if isinstance(m, Zero):
            return _single(DifferenceAtom(b, a))
        self.step("right-diff", Diff(b, _plain_atom(atom)), Join(Diff(b, a), Meet(Meet(b, a), m)))
        return _union(_single(DifferenceAtom(b, a)),
                      DnfTerm((Clause.of(DifferenceAtom(b), DifferenceAtom(a), DifferenceAtom(m)),)))

    def cnf(self, t: Term) -> CnfTerm:
        if is_simple(t) or isinstance(t, Diff):
            return _to_cnf(self.dnf(t))
        left, right = self.cnf(t.left), self.cnf(t.right)
        if isinstance(t, Meet):
            return CnfTerm(left.clauses + right.clauses)
        return _cnf_join(left, right)


def _cnf_join(a: CnfTerm, b: CnfTerm) -> CnfTerm:
    return CnfTerm(tuple(Clause(p.atoms + q.atoms) for p, q in product(a.clauses, b.clauses)))


def _to_cnf(d: DnfTerm) -> CnfTerm:
    """Distribute a DNF into a CNF, one clause at a time."""
    parts = [CnfTerm(tuple(Clause.of(a) for a in c)) for c in d.clauses]
    return reduce(_cnf_join, parts)


def normalize_term_dnf(t: Term, trace: list | None = None) -> DnfTerm:
    """Join of meets of difference atoms, value-equal to ``t`` in every model.

    Applied rules are appended to ``trace`` as RewriteStep values.
    """
    return _Normalizer(trace).dnf(t)


def normalize_term_cnf(t: Term, trace: list | None = None) -> CnfTerm:
    """Meet of joins of difference atoms, value-equal to ``t`` in every model."""
    return _Normalizer(trace).cnf(t)


@dataclass(frozen=True)
class DnfEquation:
    lhs: DnfTerm
    rhs: DnfTerm
    kind: Relation = Relation.EQUAL

    def to_equation(self) -> Equation:
        return Equation(self.lhs.to_term(), self.rhs.to_term(), self.kind)


def normalize_equation(e: Equation, trace: list | None = None) -> DnfEquation:
    return DnfEquation(normalize_term_dnf(e.lhs, trace), normalize_term_dnf(e.rhs, trace), e.kind)


def check_dnf_shape(d: DnfTerm | CnfTerm) -> list[str]:
    """Problems with a normal form; an empty list means it is well-formed."""
    problems = []
    if not d.clauses:
        problems.append("no clauses")
    for c in d.clauses:
        keys = [a.sort_key() for a in c.atoms]
        if keys != sorted(set(keys)):
            problems.append(f"clause {c} is not canonically ordered")
        for a in c.atoms:
            if not all(isinstance(x, (Var, Const, Zero)) for x in (a.base, a.minus)):
                problems.append(f"atom {a} has a compound operand")
    keys = [c.sort_key() for c in d.clauses]
    if keys != sorted(set(keys)):
        problems.append("clauses are not canonically ordered")
    for i, c in enumerate(d.clauses):
        for j, other in enumerate(d.clauses):
            if i != j and other.issubset(c):
                problems.append(f"clause {c} is subsumed")
    if len(d.clauses) > 1 and any(a.is_zero for c in d.clauses for a in c):
        problems.append("zero atom in a nonzero normal form")
    return problems
