"""Text syntax for terms, equations and systems.

    term     := sum
    sum      := product ("+" product)*
    product  := diff ("*" diff)*
    diff     := primary ("\\" primary)*
    primary  := "0" | variable | constant | "(" sum ")"
    variable := "x" digits            (index >= 1)
    constant := identifier not of the form "x" digits...

All binary operators are left-associative.  Unicode input aliases:
``∨`` for ``+``, ``∧`` for ``*``, ``∖`` for ``\\`` and ``≤`` for ``<=``.
A system file has one ``term = term`` or ``term <= term`` per line; ``#``
starts a comment.  Element literals such as ``{1,3}`` are accepted only by
``parse_normal_inequality``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import ParseError, SourceSpan, SystemParseError
from .terms import ZERO, Const, Diff, EqSystem, Equation, Join, Meet, Relation, Term, Var

__all__ = ["Token", "tokenize", "parse_term", "parse_equation", "parse_system",
           "parse_normal_inequality"]

ALIASES = {"∨": "+", "∧": "*", "∖": "\\", "≤": "<="}

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r]+)
  | (?P<le><=|≤)
  | (?P<op>[+*\\=()∨∧∖])
  | (?P<lit>\{[^}]*\})
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<num>[0-9]+)
""", re.VERBOSE)

_VAR = re.compile(r"x([0-9]+)")


@dataclass(frozen=True)
class Token:
    kind: str   # "op", "var", "const", "zero", "lit", "end"
    text: str
    span: SourceSpan
    value: object = None


def tokenize(text: str, line: int = 1, literals: bool = False) -> list[Token]:
    out: list[Token] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        span = SourceSpan(line, pos + 1, 1)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", span)
        kind, raw = m.lastgroup, m.group()
        span = SourceSpan(line, pos + 1, len(raw))
        pos = m.end()
        if kind == "ws":
            continue
        if kind in ("le", "op"):
            out.append(Token("op", ALIASES.get(raw, raw), span))
        elif kind == "num":
            if raw != "0":
                raise ParseError(f"numeral {raw!r}: only 0 is a term", span)
            out.append(Token("zero", raw, span))
        elif kind == "lit":
            if not literals:
                raise ParseError("element literals are not allowed in terms", span)
            out.append(Token("lit", raw, span, _literal(raw, span)))
        else:
            var = _VAR.match(raw)
            if var and var.end() == len(raw):
                index = int(var.group(1))
                if index < 1:
                    raise ParseError("variable indices start at 1", span)
                out.append(Token("var", raw, span, index))
            elif var:
                raise ParseError(f"{raw!r}: names starting with x and a digit are reserved for variables",
                                 span)
            else:
                out.append(Token("const", raw, span, raw))
    out.append(Token("end", "", SourceSpan(line, len(text) + 1, 0)))
    return out


def _literal(raw: str, span: SourceSpan) -> frozenset:
    body = raw[1:-1].strip()
    if not body:
        return frozenset()
    members = []
    for part in body.split(","):
        part = part.strip()
        if not part:
            raise ParseError("empty member in element literal", span)
        members.append(int(part) if part.isdigit() else part)
    return frozenset(members)


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0

    @property
    def peek(self) -> Token:
        return self.tokens[self.pos]

    def take(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def at_op(self, *ops: str) -> bool:
        return self.peek.kind == "op" and self.peek.text in ops

    def expect_end(self) -> None:
        if self.peek.kind != "end":
            raise ParseError(f"unexpected {self.peek.text!r}", self.peek.span)

    def term(self) -> Term:
        node = self.product()
        while self.at_op("+"):
            self.take()
            node = Join(node, self.product())
        return node

    def product(self) -> Term:
        node = self.diff()
        while self.at_op("*"):
            self.take()
            node = Meet(node, self.diff())
        return node

    def diff(self) -> Term:
        node = self.primary()
        while self.at_op("\\"):
            self.take()
            node = Diff(node, self.primary())
        return node

    def primary(self) -> Term:
        tok = self.take()
        if tok.kind == "zero":
            return ZERO
        if tok.kind == "var":
            return Var(tok.value)
        if tok.kind == "const":
            return Const(tok.value)
        if tok.kind == "op" and tok.text == "(":
            node = self.term()
            close = self.take()
            if not (close.kind == "op" and close.text == ")"):
                raise ParseError("expected ')'", close.span)
            return node
        if tok.kind == "end":
            raise ParseError("unexpected end of input", tok.span)
        raise ParseError(f"unexpected {tok.text!r}", tok.span)


def _tokens_all_lines(text: str) -> list[Token]:
    tokens: list[Token] = []
    for n, line in enumerate(text.splitlines() or [""], start=1):
        tokens.extend(t for t in tokenize(line, n) if t.kind != "end")
    last = text.splitlines()[-1] if text.splitlines() else ""
    tokens.append(Token("end", "", SourceSpan(max(1, len(text.splitlines())), len(last) + 1, 0)))
    return tokens


def parse_term(text: str) -> Term:
    p = _Parser(_tokens_all_lines(text))
    node = p.term()
    p.expect_end()
    return node


def _split_relation(tokens: list[Token], span: SourceSpan):
    rels = [i for i, t in enumerate(tokens) if t.kind == "op" and t.text in ("=", "<=")]
    if not rels:
        raise ParseError("expected '=' or '<='", span)
    if len(rels) > 1:
        raise ParseError("more than one relation symbol", tokens[rels[1]].span)
    i = rels[0]
    kind = Relation.EQUAL if tokens[i].text == "=" else Relation.LESS_EQUAL
    left = tokens[:i] + [Token("end", "", tokens[i].span)]
    return left, tokens[i], tokens[i + 1:], kind


def _parse_side(tokens: list[Token]) -> Term:
    p = _Parser(tokens)
    node = p.term()
    p.expect_end()
    return node


def parse_equation(text: str, line: int = 1) -> Equation:
    tokens = tokenize(text, line)
    left, _, right, kind = _split_relation(tokens, SourceSpan(line, 1, len(text)))
    return Equation(_parse_side(left), _parse_side(right), kind)


def _strip_comment(line: str) -> str:
    i = line.find("#")
    return line if i < 0 else line[:i]


def parse_system(text: str) -> EqSystem:
    """One equation per line; errors from all lines are reported together."""
    equations, errors = [], []
    for n, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        if not line.strip():
            continue
        try:
            equations.append(parse_equation(line, n))
        except ParseError as e:
            errors.append(e)
    if errors:
        raise SystemParseError(errors)
    return EqSystem(equations)


def parse_normal_inequality(text: str):
    """Parse the rendered form of a normal inequality, e.g. ``x1*x2*{1,2} <= x3+{4}``."""
    from .sysnf import NormalInequality

    tokens = tokenize(text, 1, literals=True)
    left, rel, right, kind = _split_relation(tokens, SourceSpan(1, 1, len(text)))
    X, lc = _factors(left, "*")
    Y, rc = _factors(right, "+")
    if kind is Relation.EQUAL and (Y or rc is not None):
        raise ParseError("only '= 0' is allowed with '='", rel.span)
    if not X and lc is None:
        raise ParseError("empty left side", rel.span)
    return NormalInequality(frozenset(X), lc, frozenset(Y), rc)


def _factors(tokens: list[Token], sep: str):
    vars_, const = [], None
    items = [t for t in tokens if t.kind != "end"]
    if len(items) == 1 and items[0].kind == "zero":
        return vars_, const
    expect_item = True
    for t in items:
        if expect_item:
            if t.kind == "var":
                vars_.append(t.value)
            elif t.kind == "lit":
                if const is not None:
                    raise ParseError("at most one element literal per side", t.span)
                const = t.value
            else:
                raise ParseError(f"unexpected {t.text!r}", t.span)
        elif not (t.kind == "op" and t.text == sep):
            raise ParseError(f"expected {sep!r}", t.span)
        expect_item = not expect_item
    if items and expect_item:
        raise ParseError("dangling operator", items[-1].span)
    if not items:
        raise ParseError("empty side", tokens[-1].span)
    return vars_, const
