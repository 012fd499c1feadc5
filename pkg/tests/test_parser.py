import json

import pytest
from hypothesis import given, settings

from conftest import terms
from ershov.errors import ModelFileError, ParseError, SystemParseError
from ershov.io import load_model, model_from_dict
from ershov.parser import parse_equation, parse_normal_inequality, parse_system, parse_term
from ershov.render import render
from ershov.rewrite import normalize_term_cnf, normalize_term_dnf
from ershov.sysnf import NormalInequality as NI
from ershov.terms import ZERO, Const, Diff, Join, Meet, Relation, Var


@pytest.mark.parametrize("text, tree", [
    ("x1 + x2 \\ c1", Join(Var(1), Diff(Var(2), Const("c1")))),
    ("x1 \\ x2 \\ x3", Diff(Diff(Var(1), Var(2)), Var(3))),
    ("x1 * (x2 + 0)", Meet(Var(1), Join(Var(2), ZERO))),
    ("x1 ∨ x2 ∧ c", Join(Var(1), Meet(Var(2), Const("c")))),
    ("x1 ∖ x2", Diff(Var(1), Var(2))),
    ("xy", Const("xy")),
])
def test_parse_term_examples(text, tree):
    assert parse_term(text) == tree


def test_parse_system_examples():
    s = parse_system("x1 = 0\nx2 <= c")
    assert len(s) == 2 and s[1].kind is Relation.LESS_EQUAL
    assert len(parse_system("# comment\n")) == 0
    assert len(parse_system("x1 = x2\r\n\r\nx2 ≤ x3  # tail\r\n")) == 2
    with pytest.raises(SystemParseError) as exc:
        parse_system("x1 =")
    assert exc.value.span.line == 1


def test_errors_are_aggregated_with_spans():
    with pytest.raises(SystemParseError) as exc:
        parse_system("x1 = x2\nx1 = )\nok = x1\nx0 = 1")
    assert [e.span.line for e in exc.value.errors] == [2, 4]
    assert exc.value.errors[0].span.column == 6


@pytest.mark.parametrize("text", ["x1 +", "(x1", "x1 x2", "x0", "x1a", "1", "x1 = x2 = x3", "{1}", "$"])
def test_bad_input(text):
    with pytest.raises(ParseError):
        if "=" in text:
            parse_equation(text)
        else:
            parse_term(text)


def test_render_examples():
    assert render(Diff(Var(1), ZERO)) == "x1 \\ 0"
    assert render(NI({1}, {1})) == "x1*{1} = 0"
    assert render(NI({1, 2}, {1, 2}, {3, 4})) == "x1*x2*{1,2} <= x3+x4"
    assert parse_term(render(parse_term("x1+(x2*x3)"))) == parse_term("x1+(x2*x3)")
    assert render(parse_term("x1 \\ (x2 \\ x3)")) == "x1 \\ (x2 \\ x3)"
    assert render(parse_term("(x1 + x2) * x3")) == "(x1 + x2) * x3"


@settings(max_examples=300, deadline=None)
@given(terms(max_depth=5))
def test_render_round_trip(t):
    assert parse_term(render(t)) == t


@settings(max_examples=100, deadline=None)
@given(terms(max_depth=4))
def test_normal_form_round_trip(t):
    for normalize in (normalize_term_dnf, normalize_term_cnf):
        nf = normalize(t)
        assert normalize(parse_term(render(nf))) == nf


@pytest.mark.parametrize("ni", [NI({1}, {1}), NI({1, 2}, None, {3}, {2, 5}), NI({1}, None, {2}),
                                NI((), {1}, {2}), NI({3})])
def test_normal_inequality_round_trip(ni):
    assert parse_normal_inequality(render(ni)) == ni


def test_load_model_examples(tmp_path):
    p = tmp_path / "m.json"
    p.write_text('{"type":"powerset","atoms":["1","2"],"constants":{"c":["1"]}}')
    mf = load_model(p)
    assert mf.model.size == 4 and mf.constants["c"] == {1}
    assert model_from_dict({"type": "powerset", "atoms": [], "constants": {}}).model.size == 1
    with pytest.raises(ModelFileError) as exc:
        model_from_dict({"type": "powerset", "atoms": ["1"], "constants": {"c": ["2"]}})
    assert exc.value.key == "constants.c"


def test_load_model_rejects(tmp_path):
    p = tmp_path / "dup.json"
    p.write_text('{"type":"powerset","atoms":["1"],"constants":{"c":["1"],"c":[]}}')
    with pytest.raises(ModelFileError):
        load_model(p)
    p.write_text('{"type": "powerset",')
    with pytest.raises(ParseError):
        load_model(p)
    with pytest.raises(ModelFileError):
        load_model(tmp_path / "missing.json")
    for bad in ({"type": "boolean", "atoms": []},
                {"type": "powerset", "atoms": ["1", "1"]},
                {"type": "powerset", "atoms": ["1"], "constants": {"x1": ["1"]}},
                {"type": "powerset", "atoms": [], "families": {"S": {"kind": "weird"}}}):
        with pytest.raises(ModelFileError):
            model_from_dict(bad)


def test_load_families_and_witnesses():
    mf = model_from_dict(json.loads("""{"type":"powerset","atoms":["a"],"constants":{},
        "witnesses":{"S":[]},"families":{"S":{"kind":"singletons","size":null},
        "E":{"kind":"explicit","elements":[["1"],["2","3"]]}}}"""))
    assert mf.witnesses["S"] == frozenset()
    assert mf.families["S"].is_finite is False and mf.families["S"].witness_c == frozenset()
    assert list(mf.families["E"].members()) == [{1}, {2, 3}]
