"""Term language over the signature {+, *, \\, 0} with variables and named constants.

Terms are immutable trees.  ``Join`` is the lattice join, ``Meet`` the meet
and ``Diff(l, r)`` the relative complement ``l \\ r``.  The canonical shapes
produced by the normalizers (difference atoms, clauses, DNF and CNF terms)
live here as well so every module shares one ordering.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Union

__all__ = [
    "Term", "Zero", "Var", "Const", "Join", "Meet", "Diff", "ZERO",
    "Simple", "DifferenceAtom", "Clause", "DnfTerm", "CnfTerm",
    "Relation", "Equation", "EqSystem",
    "is_simple", "free_vars", "constants_of", "term_size", "diff_count",
    "join_all", "meet_all", "eq_as_pair_of_inequalities",
]


class Term:
    """Base class of term nodes."""

    __slots__ = ()

    def __or__(self, other: "Term") -> "Join":
        return Join(self, other)

    def __and__(self, other: "Term") -> "Meet":
        return Meet(self, other)

    def __sub__(self, other: "Term") -> "Diff":
        return Diff(self, other)


@dataclass(frozen=True, slots=True)
class Zero(Term):
    def __repr__(self) -> str:
        return "Zero()"


ZERO = Zero()


@dataclass(frozen=True, slots=True)
class Var(Term):
    index: int

    def __post_init__(self) -> None:
        if not isinstance(self.index, int) or self.index < 1:
            raise ValueError(f"variable index must be a positive integer, got {self.index!r}")


@dataclass(frozen=True, slots=True)
class Const(Term):
    name: str

    def __post_init__(self) -> None:
        if not self.name:
            raise ValueError("constant name must be nonempty")


@dataclass(frozen=True, slots=True)
class Join(Term):
    left: Term
    right: Term


@dataclass(frozen=True, slots=True)
class Meet(Term):
    left: Term
    right: Term


@dataclass(frozen=True, slots=True)
class Diff(Term):
    left: Term
    right: Term


Simple = Union[Var, Const, Zero]


def is_simple(t: Term) -> bool:
    return isinstance(t, (Var, Const, Zero))


def _simple_key(t: Simple) -> tuple:
    # variables first (by index), then constants (by name), zero last
    if isinstance(t, Var):
        return (0, t.index, "")
    if isinstance(t, Const):
        return (1, 0, t.name)
    return (2, 0, "")


def free_vars(t: Term) -> set[int]:
    """Indices of the variables occurring in ``t``."""
    out: set[int] = set()
    stack = [t]
    while stack:
        node = stack.pop()
        if isinstance(node, Var):
            out.add(node.index)
        elif isinstance(node, (Join, Meet, Diff)):
            stack.append(node.left)
            stack.append(node.right)
    return out


def constants_of(t: Term) -> set[str]:
    out: set[str] = set()
    stack = [t]
    while stack:
        node = stack.pop()
        if isinstance(node, Const):
            out.add(node.name)
        elif isinstance(node, (Join, Meet, Diff)):
            stack.append(node.left)
            stack.append(node.right)
    return out


def term_size(t: Term) -> int:
    if isinstance(t, (Join, Meet, Diff)):
        return 1 + term_size(t.left) + term_size(t.right)
    return 1


def diff_count(t: Term) -> int:
    if isinstance(t, (Join, Meet, Diff)):
        return int(isinstance(t, Diff)) + diff_count(t.left) + diff_count(t.right)
    return 0


def join_all(terms: Iterable[Term]) -> Term:
    """Left-nested join; the empty join is 0."""
    out: Term | None = None
    for t in terms:
        out = t if out is None else Join(out, t)
    return ZERO if out is None else out


def meet_all(terms: Iterable[Term]) -> Term:
    out: Term | None = None
    for t in terms:
        out = t if out is None else Meet(out, t)
    if out is None:
        raise ValueError("empty meet has no value in an algebra without a greatest element")
    return out


@dataclass(frozen=True, slots=True)
class DifferenceAtom:
    """``base \\ minus`` with simple operands; a bare symbol ``v`` is ``v \\ 0``."""

    base: Simple
    minus: Simple = ZERO

    def __post_init__(self) -> None:
        if not (is_simple(self.base) and is_simple(self.minus)):
            raise TypeError("difference atom operands must be variables, constants or 0")
        # 0 \ x and x \ x are both 0
        if isinstance(self.base, Zero) or self.base == self.minus:
            object.__setattr__(self, "base", ZERO)
            object.__setattr__(self, "minus", ZERO)

    @property
    def is_zero(self) -> bool:
        return isinstance(self.base, Zero)

    def sort_key(self) -> tuple:
        return (_simple_key(self.base), _simple_key(self.minus))

    def __lt__(self, other: "DifferenceAtom") -> bool:
        return self.sort_key() < other.sort_key()

    def to_term(self) -> Term:
        return Diff(self.base, self.minus)


ZERO_ATOM = DifferenceAtom(ZERO, ZERO)


@dataclass(frozen=True, slots=True)
class Clause:
    """Sorted, duplicate-free tuple of atoms.

    Whether the atoms are met or joined depends on the enclosing normal form.
    """

    atoms: tuple[DifferenceAtom, ...]

    def __post_init__(self) -> None:
        if not self.atoms:
            raise ValueError("a clause needs at least one atom")
        canon = tuple(sorted(set(self.atoms), key=DifferenceAtom.sort_key))
        object.__setattr__(self, "atoms", canon)

    @classmethod
    def of(cls, *atoms: DifferenceAtom) -> "Clause":
        return cls(tuple(atoms))

    def sort_key(self) -> tuple:
        return (len(self.atoms), tuple(a.sort_key() for a in self.atoms))

    def issubset(self, other: "Clause") -> bool:
        return set(self.atoms) <= set(other.atoms)

    def __iter__(self):
        return iter(self.atoms)

    def __len__(self) -> int:
        return len(self.atoms)


def _canonical_clauses(clauses: Iterable[Clause]) -> tuple[Clause, ...]:
    unique = sorted(set(clauses), key=Clause.sort_key)
    kept: list[Clause] = []
    # sorted by size, so any subset of a clause has already been seen
    for c in unique:
        if not any(k.issubset(c) for k in kept):
            kept.append(c)
    return tuple(kept)


ZERO_CLAUSE = Clause((ZERO_ATOM,))


def _bases_minuses(c: Clause) -> tuple[frozenset, frozenset]:
    return (frozenset(a.base for a in c),
            frozenset(a.minus for a in c if not isinstance(a.minus, Zero)))


def _contradictory(c: Clause) -> bool:
    """A meet of atoms is 0 when a symbol is both a base and a minus: (x\\y)*(y\\z) <= (x\\y)*y = 0."""
    bases, minuses = _bases_minuses(c)
    return bool(bases & minuses)


def _canonical_meets(clauses: Iterable[Clause]) -> tuple[Clause, ...]:
    """Like _canonical_clauses, but a meet-clause is read as (meet of bases) \\ (join of minuses).

    K absorbs C when K's bases and minuses are subsets of C's.
    """
    unique = sorted(set(clauses), key=lambda c: (sum(map(len, _bases_minuses(c))), c.sort_key()))
    kept: list[tuple[Clause, frozenset, frozenset]] = []
    for c in unique:
        b, m = _bases_minuses(c)
        if not any(kb <= b and km <= m for _, kb, km in kept):
            kept.append((c, b, m))
    return tuple(sorted((c for c, _, _ in kept), key=Clause.sort_key))


def _absorb(c: Clause, meet: bool) -> Clause:
    """Drop atoms absorbed by another atom on the same base (``b \\ m <= b``).

    In a meet ``b \\ 0`` is redundant next to ``b \\ m``; in a join it is the
    other way round.
    """
    bare = {a.base for a in c if isinstance(a.minus, Zero)}
    minused = {a.base for a in c if not isinstance(a.minus, Zero)}
    both = bare & minused
    if not both:
        return c
    if meet:
        return Clause(tuple(a for a in c if not (a.base in both and isinstance(a.minus, Zero))))
    return Clause(tuple(a for a in c if not (a.base in both and not isinstance(a.minus, Zero))))


class _NormalForm:
    __slots__ = ()
    clauses: tuple[Clause, ...]

    def atoms(self) -> list[DifferenceAtom]:
        return [a for c in self.clauses for a in c]

    def is_zero(self) -> bool:
        return self.clauses == (ZERO_CLAUSE,)


@dataclass(frozen=True, slots=True)
class DnfTerm(_NormalForm):
    """Join of meet-clauses.  Zero is the single clause ``{0 \\ 0}``."""

    clauses: tuple[Clause, ...]

    def __post_init__(self) -> None:
        # a meet containing 0 is 0, and 0 is the identity of the join
        live = [_absorb(c, meet=True) for c in self.clauses
                if not any(a.is_zero for a in c) and not _contradictory(c)]
        canon = _canonical_meets(live) or (ZERO_CLAUSE,)
        object.__setattr__(self, "clauses", canon)

    def to_term(self) -> Term:
        return join_all(meet_all(a.to_term() for a in c) for c in self.clauses)


@dataclass(frozen=True, slots=True)
class CnfTerm(_NormalForm):
    """Meet of join-clauses.  Zero is the single clause ``{0 \\ 0}``."""

    clauses: tuple[Clause, ...]

    def __post_init__(self) -> None:
        live = []
        for c in self.clauses:
            atoms = tuple(a for a in c if not a.is_zero)
            if not atoms:
                # an empty join is 0, so the whole meet is 0
                live = None
                break
            live.append(_absorb(Clause(atoms), meet=False))
        canon = (ZERO_CLAUSE,) if live is None else _canonical_clauses(live)
        if not canon:
            raise ValueError("a CNF term needs at least one clause")
        object.__setattr__(self, "clauses", canon)

    def to_term(self) -> Term:
        return meet_all(join_all(a.to_term() for a in c) for c in self.clauses)


class Relation(Enum):
    EQUAL = "="
    LESS_EQUAL = "<="


@dataclass(frozen=True, slots=True)
class Equation:
    lhs: Term
    rhs: Term
    kind: Relation = Relation.EQUAL

    @classmethod
    def le(cls, lhs: Term, rhs: Term) -> "Equation":
        return cls(lhs, rhs, Relation.LESS_EQUAL)

    def free_vars(self) -> set[int]:
        return free_vars(self.lhs) | free_vars(self.rhs)

    def constants(self) -> set[str]:
        return constants_of(self.lhs) | constants_of(self.rhs)

    def as_join_equation(self) -> "Equation":
        """``X <= Y`` rewritten as ``X + Y = Y``; equalities are returned unchanged."""
        if self.kind is Relation.EQUAL:
            return self
        return Equation(Join(self.lhs, self.rhs), self.rhs)


@dataclass(frozen=True, slots=True)
class EqSystem:
    equations: tuple[Equation, ...] = ()

    def __init__(self, equations: Iterable[Equation] = ()) -> None:
        object.__setattr__(self, "equations", tuple(equations))

    def __iter__(self):
        return iter(self.equations)

    def __len__(self) -> int:
        return len(self.equations)

    def __getitem__(self, i: int) -> Equation:
        return self.equations[i]

    def free_vars(self) -> set[int]:
        out: set[int] = set()
        for e in self.equations:
            out |= e.free_vars()
        return out

    def constants(self) -> set[str]:
        out: set[str] = set()
        for e in self.equations:
            out |= e.constants()
        return out


def eq_as_pair_of_inequalities(e: Equation) -> list[Equation]:
    """Split ``t = s`` into ``[t <= s, s <= t]``; inequalities pass through."""
    if e.kind is Relation.LESS_EQUAL:
        return [e]
    return [Equation.le(e.lhs, e.rhs), Equation.le(e.rhs, e.lhs)]
