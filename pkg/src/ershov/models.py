"""Finite Ershov algebras: powersets of a finite atom set.

Elements are exposed as frozensets of atom labels and stored internally as
bitmasks over the model's atom list (bit ``i`` is ``atoms[i]``).  Join is
union, meet intersection, difference set difference and 0 the empty set.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Iterator, Mapping, NamedTuple

from .errors import DomainError, UnknownSymbolError

Label = Hashable
Element = frozenset

__all__ = [
    "Element", "finset", "label_key", "element_key", "format_element",
    "PowersetModel", "ModelOps", "AxiomReport", "verify_ershov_axioms",
    "enumerate_elements", "ConstantFamily",
]


def finset(*members: int) -> frozenset:
    """An element of the algebra of finite subsets of the naturals."""
    for m in members:
        if not isinstance(m, int) or m < 0:
            raise DomainError(f"finite-set members are natural numbers, got {m!r}")
    return frozenset(members)


def label_key(label: Label) -> tuple:
    # numbers (and numeric strings) sort numerically, before everything else
    if isinstance(label, int):
        return (0, label, "")
    s = str(label)
    if s.isdigit():
        return (0, int(s), s)
    return (1, 0, s)


def element_key(e: Iterable[Label]) -> tuple:
    keys = sorted(label_key(x) for x in e)
    return (len(keys), tuple(keys))


def format_element(e: Iterable[Label]) -> str:
    return "{" + ",".join(str(x) for x in sorted(e, key=label_key)) + "}"


class ModelOps(NamedTuple):
    join: Callable[[int, int], int]
    meet: Callable[[int, int], int]
    diff: Callable[[int, int], int]
    zero: int


@dataclass(frozen=True)
class PowersetModel:
    """Powerset algebra over ``atoms`` with a table of named constants."""

    atoms: tuple
    constants: Mapping[str, frozenset] = field(default_factory=dict)

    def __post_init__(self) -> None:
        atoms = tuple(self.atoms)
        if len(set(atoms)) != len(atoms):
            raise DomainError("duplicate atom labels")
        object.__setattr__(self, "atoms", atoms)
        index = {a: i for i, a in enumerate(atoms)}
        object.__setattr__(self, "_index", index)
        consts = {name: frozenset(v) for name, v in dict(self.constants).items()}
        object.__setattr__(self, "constants", consts)
        object.__setattr__(self, "_const_masks", {n: self.mask_of(v) for n, v in consts.items()})

    @classmethod
    def over(cls, n: int, constants: Mapping[str, Iterable] | None = None, start: int = 1) -> "PowersetModel":
        """Powerset of the integer atoms ``start .. start+n-1``."""
        consts = {k: frozenset(v) for k, v in (constants or {}).items()}
        return cls(tuple(range(start, start + n)), consts)

    @property
    def size(self) -> int:
        return 1 << len(self.atoms)

    @property
    def top(self) -> int:
        return self.size - 1

    def mask_of(self, element: Iterable[Label]) -> int:
        mask = 0
        for label in element:
            try:
                mask |= 1 << self._index[label]
            except KeyError:
                raise DomainError(f"{label!r} is not an atom of this model") from None
        return mask

    def element_of(self, mask: int) -> frozenset:
        self._check(mask)
        return frozenset(a for i, a in enumerate(self.atoms) if mask >> i & 1)

    def const_mask(self, name: str) -> int:
        try:
            return self._const_masks[name]
        except KeyError:
            raise UnknownSymbolError(name, f"unknown constant {name!r}") from None

    def _check(self, mask: int) -> None:
        if not isinstance(mask, int) or mask < 0 or mask >= self.size:
            raise DomainError(f"{mask!r} does not encode a subset of the atoms")

    def join(self, a: int, b: int) -> int:
        self._check(a), self._check(b)
        return a | b

    def meet(self, a: int, b: int) -> int:
        self._check(a), self._check(b)
        return a & b

    def diff(self, b: int, a: int) -> int:
        """``b \\ a``: the complement of ``a`` in the interval ``[0, a + b]``."""
        self._check(a), self._check(b)
        return b & ~a

    @property
    def zero(self) -> int:
        return 0

    def ops(self) -> ModelOps:
        return ModelOps(self.join, self.meet, self.diff, 0)

    def elements(self) -> range:
        return range(self.size)

    def with_constants(self, constants: Mapping[str, Iterable]) -> "PowersetModel":
        return PowersetModel(self.atoms, {k: frozenset(v) for k, v in constants.items()})


def enumerate_elements(m: PowersetModel) -> list[frozenset]:
    """All subsets of the atoms, in bitmask order."""
    return [m.element_of(mask) for mask in m.elements()]


@dataclass(frozen=True)
class AxiomReport:
    passed: bool
    law: str | None = None
    witness: tuple | None = None
    checked: int = 0

    def __bool__(self) -> bool:
        return self.passed


def _laws(ops: ModelOps):
    j, m, d, z = ops
    unary = {
        "idempotence": lambda a: m(a, a) == a and j(a, a) == a,
        "least element": lambda a: j(z, a) == a and m(z, a) == z,
    }
    binary = {
        "commutativity": lambda a, b: m(a, b) == m(b, a) and j(a, b) == j(b, a),
        "absorption": lambda a, b: m(a, j(a, b)) == a and j(a, m(a, b)) == a,
        "interval complement": lambda a, b: m(d(b, a), a) == z and j(d(b, a), a) == j(a, b),
    }
    ternary = {
        "associativity": lambda a, b, c: m(m(a, b), c) == m(a, m(b, c)) and j(j(a, b), c) == j(a, j(b, c)),
        "meet distributivity": lambda a, b, c: m(a, j(b, c)) == j(m(a, b), m(a, c)),
        "join distributivity": lambda a, b, c: j(a, m(b, c)) == m(j(a, b), j(a, c)),
    }
    return unary, binary, ternary


def verify_ershov_axioms(m: PowersetModel, ops: ModelOps | None = None, max_atoms: int = 5) -> AxiomReport:
    """Exhaustively check the lattice, distributivity and relative-complement laws.

    ``ops`` overrides the model's own operations, which lets callers test
    deliberately broken tables.  Returns the first violated law and tuple.
    """
    if len(m.atoms) > max_atoms:
        raise DomainError(f"exhaustive axiom check limited to {max_atoms} atoms")
    ops = ops or m.ops()
    elems = list(m.elements())
    checked = 0
    for arity, laws in enumerate(_laws(ops), start=1):
        for name, law in laws.items():
            for args in itertools.product(elems, repeat=arity):
                checked += 1
                if not law(*args):
                    return AxiomReport(False, name, tuple(m.element_of(x) for x in args), checked)
    return AxiomReport(True, checked=checked)


@dataclass(frozen=True)
class ConstantFamily:
    """An indexed set of constants ``{c_j | j in J}``.

    Either ``elements`` lists the members explicitly, or ``generator`` names a
    built-in family.  The only built-in generator is ``"singletons"``: the
    sets ``{j}`` for ``j < size`` (all naturals when ``size`` is None).  A
    generator of any other name is opaque; its finiteness and boundedness are
    whatever the caller declares.
    """

    label: str
    elements: tuple[frozenset, ...] | None = None
    generator: str | None = None
    size: int | None = None
    bounded_above: bool | None = None
    finite: bool | None = None
    witness_c: frozenset | None = None

    def __post_init__(self) -> None:
        if (self.elements is None) == (self.generator is None):
            raise ValueError("a family is either explicit or generated")
        if self.elements is not None:
            object.__setattr__(self, "elements", tuple(frozenset(e) for e in self.elements))
        if self.witness_c is not None:
            object.__setattr__(self, "witness_c", frozenset(self.witness_c))

    @classmethod
    def explicit(cls, label: str, elements: Iterable[Iterable[int]], **kw) -> "ConstantFamily":
        return cls(label, elements=tuple(frozenset(e) for e in elements), **kw)

    @classmethod
    def singletons(cls, label: str, size: int | None = None, **kw) -> "ConstantFamily":
        return cls(label, generator="singletons", size=size, **kw)

    @property
    def is_finite(self) -> bool | None:
        if self.elements is not None:
            return True
        if self.generator == "singletons":
            return self.size is not None
        return self.finite

    @property
    def is_bounded(self) -> bool | None:
        """Whether the family has an upper bound among finite sets."""
        if self.bounded_above is not None:
            return self.bounded_above
        if self.is_finite:
            return True
        if self.generator == "singletons":
            return False
        return None

    def members(self, limit: int | None = None) -> Iterator[frozenset]:
        """The members in index order, at most ``limit`` of them."""
        if self.elements is not None:
            yield from self.elements[:limit]
            return
        if self.generator != "singletons":
            raise ValueError(f"family {self.label!r} has an opaque generator")
        stop = self.size
        if limit is not None:
            stop = limit if stop is None else min(stop, limit)
        if stop is None:
            raise ValueError(f"family {self.label!r} is infinite; pass a limit")
        for j in range(stop):
            yield frozenset({j})
