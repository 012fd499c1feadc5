"""Constant subalgebras, the Noetherian criterion, and system compaction.

An Ershov algebra with constants is equationally Noetherian exactly when the
constant subalgebra is finite.  Weak Noetherianity lets a whole group of
normal inequalities that share their variable sets collapse into one:
suprema merge ``X*c_j <= Y`` groups, infima (computed from suprema as
``d \\ d'``) merge ``X <= Y + c_j`` groups, and an upper-unbounded family
needs a witness ``c`` with ``{x * c_j = 0} ~ {x <= c}``.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import UnboundedFamilyError
from .models import ConstantFamily, PowersetModel, element_key, label_key
from .semantics import ModelProbe, constraint_vars, solve
from .sysnf import NormalInequality

__all__ = [
    "generated_subalgebra", "SubalgebraDescriptor", "NoetherianVerdict",
    "is_equationally_noetherian", "dedupe_system", "equation_classes",
    "Unbounded", "sup_of_family", "inf_via_sup", "FamilyGroup", "EquationGroup",
    "compact_system", "group_inequalities", "verify_witness", "one_variable_inequalities",
]


def generated_subalgebra(gens: Iterable[Iterable]) -> set[frozenset]:
    """Closure of ``gens`` and 0 under union, intersection and difference."""
    closed = {frozenset()} | {frozenset(g) for g in gens}
    frontier = list(closed)
    while frontier:
        fresh = set()
        for a in frontier:
            for b in list(closed):
                for c in (a | b, a & b, a - b, b - a):
                    if c not in closed:
                        fresh.add(c)
        closed |= fresh
        frontier = list(fresh)
    return closed


@dataclass(frozen=True)
class SubalgebraDescriptor:
    generators: tuple[frozenset, ...] = ()
    families: tuple[ConstantFamily, ...] = ()
    declared_finite: bool | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "generators", tuple(frozenset(g) for g in self.generators))
        object.__setattr__(self, "families", tuple(self.families))


@dataclass(frozen=True)
class NoetherianVerdict:
    value: bool | None        # None: indeterminate
    reason: str
    size: int | None = None

    @property
    def indeterminate(self) -> bool:
        return self.value is None

    def __str__(self) -> str:
        word = {True: "yes", False: "no", None: "indeterminate"}[self.value]
        return f"equationally Noetherian: {word} ({self.reason})"


def is_equationally_noetherian(d: SubalgebraDescriptor | Sequence[Iterable]) -> NoetherianVerdict:
    """Noetherian iff the constant subalgebra is finite."""
    if not isinstance(d, SubalgebraDescriptor):
        d = SubalgebraDescriptor(tuple(frozenset(g) for g in d))
    gens = list(d.generators)
    unknown = []
    for fam in d.families:
        finite = fam.is_finite
        if finite is False:
            return NoetherianVerdict(False, f"family {fam.label!r} is infinite")
        if finite is None:
            unknown.append(fam.label)
            continue
        try:
            gens.extend(fam.members())
        except ValueError:
            unknown.append(fam.label)
    if unknown:
        if d.declared_finite is not None:
            return NoetherianVerdict(d.declared_finite, "declared")
        names = ", ".join(repr(u) for u in unknown)
        return NoetherianVerdict(None, f"finiteness of family {names} is unknown")
    size = len(generated_subalgebra(gens))
    return NoetherianVerdict(True, f"|C| = {size}", size)


def _support(nis: Iterable[NormalInequality]) -> set:
    out: set = set()
    for ni in nis:
        for e in ni.elements():
            out |= set(e)
    return out


def _signature(nis: Sequence[NormalInequality], probe: ModelProbe, variables, support,
               budget=None) -> tuple:
    return tuple(solve(list(nis), m, budget, variables).rows for m in probe.models(support))


def dedupe_system(s: Sequence[NormalInequality], probe: ModelProbe | None = None,
                  budget: int | None = None) -> list[NormalInequality]:
    """Drop every inequality implied by the others.

    Implication is judged by solution sets on the probe models.  Removal is
    greedy in input order; each kept inequality is not implied by the rest,
    so no further single removal is possible.
    """
    probe = probe or ModelProbe()
    kept: list[NormalInequality] = []
    for ni in s:
        if ni not in kept:
            kept.append(ni)
    variables = tuple(sorted(constraint_vars(kept)))
    support = _support(kept)
    full = _signature(kept, probe, variables, support, budget)
    i = 0
    while i < len(kept):
        rest = kept[:i] + kept[i + 1:]
        if _signature(rest, probe, variables, support, budget) == full:
            kept = rest
        else:
            i += 1
    return kept


def equation_classes(nis: Sequence[NormalInequality], probe: ModelProbe | None = None,
                     budget: int | None = None) -> list[list[NormalInequality]]:
    """Group inequalities with identical solution sets on every probe model."""
    probe = probe or ModelProbe()
    variables = tuple(sorted(constraint_vars(nis)))
    support = _support(nis)
    groups: dict[tuple, list] = {}
    for ni in nis:
        groups.setdefault(_signature([ni], probe, variables, support, budget), []).append(ni)
    return list(groups.values())


def one_variable_inequalities(constants: Iterable[frozenset], var: int = 1) -> list[NormalInequality]:
    """Every well-formed normal inequality in one variable over the given constants."""
    nonzero = sorted({frozenset(c) for c in constants if c}, key=element_key)
    out = []
    sides = [(frozenset({var}), frozenset()), (frozenset(), frozenset({var}))]
    for X, Y in sides:
        options = [(None, None)] + [(c, None) for c in nonzero] + [(None, c) for c in nonzero]
        for lc, rc in options:
            ni = NormalInequality(X, lc, Y, rc)
            if not ni.problems():
                out.append(ni)
    return out


@dataclass(frozen=True)
class Unbounded:
    label: str

    def __str__(self) -> str:
        return f"family {self.label!r} is upper-unbounded"


def sup_of_family(f: ConstantFamily | Sequence[Iterable]) -> frozenset | Unbounded:
    if not isinstance(f, ConstantFamily):
        f = ConstantFamily.explicit("explicit", f)
    if not f.is_bounded:
        return Unbounded(f.label)
    if f.is_finite:
        return reduce(frozenset.union, f.members(), frozenset())
    raise UnboundedFamilyError(f.label, f"family {f.label!r} is declared bounded but its supremum "
                                        "cannot be enumerated")


def inf_via_sup(f: ConstantFamily | Sequence[Iterable]) -> frozenset:
    """Infimum as ``d \\ d'`` with ``d = sup c_j`` and ``d' = sup (d \\ c_j)``."""
    if not isinstance(f, ConstantFamily):
        f = ConstantFamily.explicit("explicit", f)
    d = sup_of_family(f)
    if isinstance(d, Unbounded):
        raise UnboundedFamilyError(f.label)
    d_prime = sup_of_family(ConstantFamily.explicit(f.label + "'", [d - c for c in f.members()]))
    return d - d_prime


@dataclass(frozen=True)
class EquationGroup:
    X: frozenset
    Y: frozenset
    shape: str
    constants: tuple[frozenset, ...]


@dataclass(frozen=True)
class FamilyGroup:
    """The inequalities ``X*c_j <= Y`` (shape 1/2), ``X <= Y + c_j`` (shape 3) or
    ``c_j <= Y`` (shape 5-ext) for every member ``c_j`` of ``family``."""

    left_vars: frozenset
    right_vars: frozenset
    shape: str
    family: ConstantFamily

    def __post_init__(self) -> None:
        object.__setattr__(self, "left_vars", frozenset(self.left_vars))
        object.__setattr__(self, "right_vars", frozenset(self.right_vars))

    def instance(self, c: frozenset) -> NormalInequality:
        if self.shape == "3":
            return NormalInequality(self.left_vars, None, self.right_vars, c)
        return NormalInequality(self.left_vars, c, self.right_vars, None)


def verify_witness(family: ConstantFamily, witness: frozenset, members: int = 6) -> bool:
    """Check ``{x * c_j = 0} ~ {x <= c}`` on a finite stand-in for the family.

    Uses the first ``members`` members and the powerset of their support
    together with the witness.
    """
    sample = list(family.members(limit=members))
    atoms = set(witness)
    for c in sample:
        atoms |= set(c)
    m = PowersetModel(tuple(sorted(atoms, key=label_key)))
    x = np.arange(m.size, dtype=np.int64)
    lhs = np.ones(m.size, dtype=bool)
    for c in sample:
        lhs &= (x & m.mask_of(c)) == 0
    rhs = (x & ~m.mask_of(witness)) == 0
    return bool(np.array_equal(lhs, rhs))


def group_inequalities(s: Iterable[NormalInequality]) -> tuple[list[EquationGroup], list[NormalInequality]]:
    """Split into groups sharing ``(X, Y, shape)`` and the constant-free rest."""
    groups: dict[tuple, list[frozenset]] = defaultdict(list)
    plain: list[NormalInequality] = []
    for ni in s:
        if ni.constant is None or ni.is_contradiction:
            plain.append(ni)
        else:
            groups[(ni.left_vars, ni.right_vars, ni.shape)].append(ni.constant)
    return [EquationGroup(X, Y, shape, tuple(cs)) for (X, Y, shape), cs in groups.items()], plain


def compact_system(s: Iterable[NormalInequality | FamilyGroup],
                   witness: Mapping[str, Iterable] | None = None,
                   check_witness: bool = True) -> list[NormalInequality]:
    """Replace each group of inequalities sharing ``(X, Y, shape)`` by one inequality.

    Raises UnboundedFamilyError naming the group when an unbounded family
    has no witness (the algebra is then not weakly Noetherian for it).
    """
    witness = {k: frozenset(v) for k, v in (witness or {}).items()}
    items = list(s)
    families = [it for it in items if isinstance(it, FamilyGroup)]
    groups, out = group_inequalities(it for it in items if not isinstance(it, FamilyGroup))
    for g in groups:
        fam = ConstantFamily.explicit("group", g.constants)
        out.append(_merge_group(g.X, g.Y, g.shape, fam, witness, check_witness))
    for fg in families:
        out.append(_merge_group(fg.left_vars, fg.right_vars, fg.shape, fg.family, witness, check_witness))
    return sorted(set(out), key=NormalInequality.sort_key)


def _merge_group(X, Y, shape, fam: ConstantFamily, witness, check_witness) -> NormalInequality:
    where = f"group X={sorted(X)} Y={sorted(Y)} shape {shape}"
    if shape in ("1", "2", "5-ext"):
        sup = sup_of_family(fam)
        if not isinstance(sup, Unbounded):
            return NormalInequality(X, sup, Y, None) if sup else NormalInequality(X, None, Y, None)
        if shape == "5-ext":
            raise UnboundedFamilyError(fam.label, f"{where}: c_j <= Y over an unbounded family has no solution")
        c = witness.get(fam.label, fam.witness_c)
        if c is None:
            raise UnboundedFamilyError(fam.label, f"{where}: family {fam.label!r} is upper-unbounded "
                                                  "and has no witness")
        if check_witness and not verify_witness(fam, c):
            raise UnboundedFamilyError(fam.label, f"{where}: witness for {fam.label!r} fails on probe models")
        # (meet X \ join Y) <= c  ~  meet X <= join Y + c
        c = frozenset(c)
        return NormalInequality(X, None, Y, c if c else None)
    if shape == "3":
        inf = inf_via_sup(fam)
        return NormalInequality(X, None, Y, inf if inf else None)
    raise ValueError(f"cannot compact shape {shape!r}")
