import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import brute_solutions
from ershov.errors import UnboundedFamilyError
from ershov.models import ConstantFamily
from ershov.noetherian import (
    FamilyGroup, SubalgebraDescriptor, Unbounded, compact_system, dedupe_system,
    equation_classes, generated_subalgebra, inf_via_sup, is_equationally_noetherian,
    one_variable_inequalities, sup_of_family, verify_witness,
)
from ershov.semantics import ModelProbe
from ershov.sysnf import NormalInequality as NI

fs = frozenset


@pytest.mark.parametrize("gens, size", [([{1}], 2), ([{1, 2}, {2, 3}], 8), ([], 1), ([{1}, {2}], 4)])
def test_generated_subalgebra_sizes(gens, size):
    assert len(generated_subalgebra(gens)) == size


def test_generated_subalgebra_examples():
    assert generated_subalgebra([{1}]) == {fs(), fs({1})}
    assert generated_subalgebra([]) == {fs()}


@settings(max_examples=40, deadline=None)
@given(st.lists(st.frozensets(st.integers(0, 4), max_size=3), max_size=3))
def test_generated_subalgebra_closed(gens):
    closure = generated_subalgebra(gens)
    for a, b in itertools.product(closure, repeat=2):
        assert {a | b, a & b, a - b} <= closure
    assert all(fs(g) in closure for g in gens)


def test_noetherian_verdicts():
    v = is_equationally_noetherian([{1}, {2}])
    assert v.value is True and str(v) == "equationally Noetherian: yes (|C| = 4)"
    assert is_equationally_noetherian([]).value is True
    infinite = SubalgebraDescriptor((), (ConstantFamily.singletons("N"),))
    assert is_equationally_noetherian(infinite).value is False
    opaque = SubalgebraDescriptor((), (ConstantFamily("T", generator="opaque"),))
    assert is_equationally_noetherian(opaque).indeterminate
    finite = SubalgebraDescriptor(({1},), (ConstantFamily.singletons("S", 3),))
    assert is_equationally_noetherian(finite).size == 8


def test_dedupe_examples():
    probe = ModelProbe(fresh=(0, 1))
    a = NI({1}, None, {2})
    assert dedupe_system([a, a], probe) == [a]
    small, big = NI({1}, {1}), NI({1}, {1, 2})
    assert dedupe_system([small, big], probe) == [big]
    b = NI({2}, None, {1})
    assert dedupe_system([a, b], probe) == [a, b]


def test_dedupe_minimal_and_equivalent():
    nis = one_variable_inequalities(generated_subalgebra([{1}, {2}]))
    probe = ModelProbe(fresh=(0, 1))
    kept = dedupe_system(nis, probe)
    atoms = (1, 2, 3)
    assert brute_solutions(kept, atoms, {}, [1]) == brute_solutions(nis, atoms, {}, [1])
    for i in range(len(kept)):
        rest = kept[:i] + kept[i + 1:]
        assert brute_solutions(rest, atoms, {}, [1]) != brute_solutions(kept, atoms, {}, [1])


def test_one_variable_classes_over_singleton_closure():
    nis = one_variable_inequalities(generated_subalgebra([{1}]))
    # x <= 0, x*{1} = 0, x <= {1}, {1} <= x
    assert len(nis) == 4
    assert len(equation_classes(nis, ModelProbe(fresh=(0, 1, 2)))) == 4


def test_sup_examples():
    assert sup_of_family([{1}, {2, 3}]) == {1, 2, 3}
    assert sup_of_family(ConstantFamily.singletons("S", 5)) == {0, 1, 2, 3, 4}
    assert isinstance(sup_of_family(ConstantFamily.singletons("N")), Unbounded)


@pytest.mark.parametrize("fam, inf", [([{1, 2}, {2, 3}], {2}), ([{1}], {1}), ([{1}, {2}], set())])
def test_inf_examples(fam, inf):
    assert inf_via_sup(fam) == inf


def test_inf_matches_intersection():
    rng = random.Random(7)
    for _ in range(50):
        fam = [fs(rng.sample(range(8), rng.randint(0, 5))) for _ in range(rng.randint(1, 5))]
        assert inf_via_sup(fam) == fs.intersection(*fam)


def test_inf_of_unbounded_family_fails():
    with pytest.raises(UnboundedFamilyError):
        inf_via_sup(ConstantFamily.singletons("N"))


def test_compact_examples():
    assert compact_system([NI({1}, {1}), NI({1}, {2})]) == [NI({1}, {1, 2})]
    got = compact_system([NI({1}, None, {2}, {1, 2}), NI({1}, None, {2}, {2, 3})])
    assert got == [NI({1}, None, {2}, {2})]
    group = FamilyGroup({1}, (), "2", ConstantFamily.singletons("S"))
    assert compact_system([group], {"S": []}) == [NI({1})]


def test_compact_unbounded_without_witness():
    group = FamilyGroup({1}, (), "2", ConstantFamily.singletons("S"))
    with pytest.raises(UnboundedFamilyError) as exc:
        compact_system([group])
    assert "X=[1]" in str(exc.value)


def test_bad_witness_rejected():
    fam = ConstantFamily.singletons("S")
    assert verify_witness(fam, fs())
    assert not verify_witness(fam, fs({0}))
    with pytest.raises(UnboundedFamilyError):
        compact_system([FamilyGroup({1}, (), "2", fam)], {"S": [0]})


def test_compact_preserves_solutions():
    rng = random.Random(3)
    for _ in range(30):
        nis = []
        for _ in range(rng.randint(1, 5)):
            X = fs(rng.sample((1, 2), rng.randint(1, 2)))
            Y = fs({1, 2} - X) if rng.random() < 0.5 else fs()
            c = fs(rng.sample((1, 2, 3), rng.randint(1, 3)))
            nis.append(NI(X, c, Y) if rng.random() < 0.5 or not Y else NI(X, None, Y, c))
        out = compact_system(nis)
        atoms = (1, 2, 3, 4)
        assert brute_solutions(out, atoms, {}, [1, 2]) == brute_solutions(nis, atoms, {}, [1, 2])
        assert len(out) <= len({(n.left_vars, n.right_vars, n.shape) for n in nis})
