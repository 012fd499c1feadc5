"""Plain-text renderers.  Output re-parses to the same structure."""
from __future__ import annotations

from functools import singledispatch

from .models import format_element
from .rewrite import DnfEquation, RewriteStep
from .sysnf import NormalInequality
from .terms import (
    Clause, CnfTerm, Const, Diff, DifferenceAtom, DnfTerm, EqSystem, Equation, Join, Meet,
    Term, Var, Zero,
)

__all__ = ["render", "render_term", "render_atom", "render_dnf", "render_cnf", "render_normal"]

_PREC = {Join: 1, Meet: 2, Diff: 3}
_SYM = {Join: "+", Meet: "*", Diff: "\\"}


def _symbol(t: Term) -> str:
    if isinstance(t, Var):
        return f"x{t.index}"
    if isinstance(t, Const):
        return t.name
    return "0"


def render_term(t: Term, spaced: bool = True) -> str:
    if isinstance(t, (Var, Const, Zero)):
        return _symbol(t)
    prec = _PREC[type(t)]
    left = render_term(t.left, spaced)
    right = render_term(t.right, spaced)
    # operators are left-associative: only a right operand of equal precedence needs parentheses
    if type(t.left) in _PREC and _PREC[type(t.left)] < prec:
        left = f"({left})"
    if type(t.right) in _PREC and _PREC[type(t.right)] <= prec:
        right = f"({right})"
    sym = _SYM[type(t)]
    return f"{left} {sym} {right}" if spaced else f"{left}{sym}{right}"


def render_atom(a: DifferenceAtom) -> str:
    return f"{_symbol(a.base)}\\{_symbol(a.minus)}"


def _clause(c: Clause, sep: str) -> str:
    return sep.join(render_atom(a) for a in c)


def render_dnf(d: DnfTerm) -> str:
    if d.is_zero():
        return "0"
    if len(d.clauses) == 1:
        return _clause(d.clauses[0], "*")
    return "+".join(f"({_clause(c, '*')})" for c in d.clauses)


def render_cnf(d: CnfTerm) -> str:
    if d.is_zero():
        return "0"
    if len(d.clauses) == 1:
        return _clause(d.clauses[0], "+")
    return "*".join(f"({_clause(c, '+')})" if len(c) > 1 else _clause(c, "+") for c in d.clauses)


def render_normal(ni: NormalInequality) -> str:
    left = [f"x{i}" for i in sorted(ni.left_vars)]
    if ni.left_const is not None:
        left.append(format_element(ni.left_const))
    right = [f"x{i}" for i in sorted(ni.right_vars)]
    if ni.right_const is not None:
        right.append(format_element(ni.right_const))
    if not right:
        return "*".join(left) + " = 0"
    return "*".join(left) + " <= " + "+".join(right)


@singledispatch
def render(value) -> str:
    if isinstance(value, Term):
        return render_term(value)
    if isinstance(value, (list, tuple)):
        return "\n".join(render(v) for v in value)
    raise TypeError(f"cannot render {type(value).__name__}")


@render.register
def _(value: Equation) -> str:
    return f"{render_term(value.lhs)} {value.kind.value} {render_term(value.rhs)}"


@render.register
def _(value: EqSystem) -> str:
    return "\n".join(render(e) for e in value)


@render.register
def _(value: DnfTerm) -> str:
    return render_dnf(value)


@render.register
def _(value: CnfTerm) -> str:
    return render_cnf(value)


@render.register
def _(value: DnfEquation) -> str:
    return f"{render_dnf(value.lhs)} {value.kind.value} {render_dnf(value.rhs)}"


@render.register
def _(value: NormalInequality) -> str:
    return render_normal(value)


@render.register
def _(value: RewriteStep) -> str:
    def side(v):
        if isinstance(v, tuple):
            return "{" + ", ".join(render(x) for x in v) + "}"
        return render(v)
    return f"[{value.rule}] {side(value.before)}  ~>  {side(value.after)}"
