"""Catalogue of the rewrite laws used by the normalizers, with exhaustive audits.

Every entry is checked on a powerset algebra by enumerating all assignments
of its pattern variables.  An entry's status is one of

* ``verified``  - the law holds as stated;
* ``corrected`` - the law as originally stated fails, ``printed`` keeps that
  form and ``lhs``/``rhs`` hold the repaired version;
* ``refuted``   - the law fails and no rewriting uses it.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Sequence

from .models import PowersetModel
from .semantics import solve
from .terms import ZERO, Diff, Equation, Join, Meet, Var, join_all, meet_all

VERIFIED, CORRECTED, REFUTED = "verified", "corrected", "refuted"

__all__ = ["Rule", "RuleCheck", "rule_catalogue", "rule", "check_rule", "audit_catalogue",
           "VERIFIED", "CORRECTED", "REFUTED", "chain_meet_rule", "chain_join_rule"]


@dataclass(frozen=True)
class Rule:
    name: str
    relation: str            # "=", "<=" or "~" (equivalent systems)
    lhs: object              # Term, or tuple of Equations for "~"
    rhs: object
    law: str
    status: str = VERIFIED
    printed: object = None   # original right-hand side of a corrected law
    rewrites: bool = True

    @property
    def variables(self) -> set[int]:
        out: set[int] = set()
        for side in (self.lhs, self.rhs):
            for e in _equations(self.relation, side, side):
                out |= e.free_vars()
        return out


def _equations(relation: str, lhs, rhs) -> list[Equation]:
    if relation == "=":
        return [Equation(lhs, rhs)]
    if relation == "<=":
        return [Equation.le(lhs, rhs)]
    return list(lhs) + list(rhs)


x, y, a, b = Var(1), Var(2), Var(3), Var(4)


def chain_meet_rule(n: int) -> Rule:
    """``a1\\b1 * ... * an\\bn = (a1 * ... * an) \\ (b1 + ... + bn)``."""
    tops = [Var(2 * i + 1) for i in range(n)]
    bottoms = [Var(2 * i + 2) for i in range(n)]
    lhs = meet_all(Diff(p, q) for p, q in zip(tops, bottoms))
    rhs = Diff(meet_all(tops), join_all(bottoms))
    name = "merge-meet" if n == 2 else f"merge-meet-{n}"
    return Rule(name, "=", lhs, rhs, "a1\\b1 * ... * an\\bn = (a1*...*an) \\ (b1+...+bn)")


def chain_join_rule(n: int, relation: str = "=") -> Rule:
    """``a1\\b1 + ... + an\\bn`` against ``(a1 + ... + an) \\ (b1 * ... * bn)``.

    As an identity this fails; only the ``<=`` direction holds.
    """
    tops = [Var(2 * i + 1) for i in range(n)]
    bottoms = [Var(2 * i + 2) for i in range(n)]
    lhs = join_all(Diff(p, q) for p, q in zip(tops, bottoms))
    rhs = Diff(join_all(tops), meet_all(bottoms))
    if relation == "=":
        return Rule("merge-join" if n == 2 else f"merge-join-{n}", "=", lhs, rhs,
                    "a1\\b1 + ... + an\\bn = (a1+...+an) \\ (b1*...*bn)", REFUTED, rewrites=False)
    return Rule("merge-join-bound", "<=", lhs, rhs,
                "a1\\b1 + ... + an\\bn <= (a1+...+an) \\ (b1*...*bn)", rewrites=False)


@lru_cache(maxsize=None)
def rule_catalogue() -> tuple[Rule, ...]:
    le = Equation.le
    return (
        Rule("diff-below-base", "<=", Diff(x, y), x, "x\\y <= x"),
        Rule("diff-join-base", "=", Join(Diff(x, y), x), x, "(x\\y) + x = x"),
        Rule("diff-split", "=", Join(Diff(x, y), Meet(x, y)), x, "(x\\y) + (x*y) = x"),
        Rule("diff-join-minus", "=", Join(Diff(x, y), y), Join(x, y), "(x\\y) + y = x + y"),
        Rule("diff-meet-base", "=", Meet(Diff(x, y), x), Diff(x, y), "(x\\y) * x = x\\y"),
        Rule("diff-meet-minus", "=", Meet(Diff(x, y), y), ZERO, "(x\\y) * y = 0"),
        Rule("left-join", "=", Diff(Join(x, y), a), Join(Diff(x, a), Diff(y, a)),
             "(x+y)\\a = (x\\a) + (y\\a)"),
        Rule("left-meet", "=", Diff(Meet(x, y), a), Meet(Diff(x, a), Diff(y, a)),
             "(x*y)\\a = (x\\a) * (y\\a)"),
        Rule("left-diff", "=", Diff(Diff(x, y), a), Meet(Diff(x, y), Diff(x, a)),
             "(x\\y)\\a = (x\\y) * (x\\a)", CORRECTED, printed=Join(Diff(x, y), Diff(x, a))),
        Rule("right-join", "=", Diff(x, Join(a, b)), Meet(Diff(x, a), Diff(x, b)),
             "x\\(a+b) = (x\\a) * (x\\b)"),
        Rule("right-meet", "=", Diff(x, Meet(a, b)), Join(Diff(x, a), Diff(x, b)),
             "x\\(a*b) = (x\\a) + (x\\b)"),
        Rule("right-diff", "=", Diff(x, Diff(a, b)), Join(Diff(x, a), Meet(Meet(x, a), b)),
             "x\\(a\\b) = (x\\a) + (x*a*b)"),
        chain_meet_rule(2),
        chain_meet_rule(3),
        chain_join_rule(2),
        chain_join_rule(2, "<="),
        Rule("move-left-diff", "~", (le(Diff(x, y), a),), (le(x, Join(y, a)),),
             "{a\\b <= c} ~ {a <= b + c}"),
        Rule("split-right-diff", "~", (le(x, Diff(y, a)),), (le(x, y), le(Meet(x, a), ZERO)),
             "{a <= b\\c} ~ {a <= b, a*c <= 0}"),
        Rule("split-right-join-diff", "~", (le(x, Join(y, Diff(a, b))),),
             (le(x, Join(y, a)), le(Meet(x, b), y)),
             "{t <= s + a\\b} ~ {t <= s + a, t*b <= s}"),
        Rule("fold-constants", "~", (le(Meet(x, a), Join(y, b)),), (le(Meet(x, Diff(a, b)), y),),
             "{X*ca <= Y + cb} ~ {X*(ca\\cb) <= Y}"),
        Rule("split-join-left", "~", (le(Join(x, y), a),), (le(x, a), le(y, a)),
             "{s + t <= u} ~ {s <= u, t <= u}"),
        Rule("split-meet-right", "~", (le(a, Meet(x, y)),), (le(a, x), le(a, y)),
             "{u <= s * t} ~ {u <= s, u <= t}"),
        Rule("equality-split", "~", (Equation(x, y),), (le(x, y), le(y, x)),
             "{t = s} ~ {t <= s, s <= t}"),
    )


def rule(name: str) -> Rule:
    for r in rule_catalogue():
        if r.name == name:
            return r
    raise KeyError(name)


@dataclass(frozen=True)
class RuleCheck:
    holds: bool
    checked: int
    counterexample: dict | None = None


def _check(relation: str, lhs, rhs, atoms: int, variables: Sequence[int]) -> RuleCheck:
    m = PowersetModel.over(atoms)
    variables = tuple(sorted(variables))
    total = m.size ** len(variables)
    if relation in ("=", "<="):
        sols = solve(_equations(relation, lhs, rhs), m, variables=variables)
        if len(sols) == total:
            return RuleCheck(True, total)
        good = sols.as_set()
        witness = next(_rows(m.size, len(variables), good))
        return RuleCheck(False, total, {v: m.element_of(e) for v, e in zip(variables, witness)})
    left = solve(list(lhs), m, variables=variables)
    right = solve(list(rhs), m, variables=variables)
    if left.rows == right.rows:
        return RuleCheck(True, total)
    witness = min(left.as_set() ^ right.as_set())
    return RuleCheck(False, total, {v: m.element_of(e) for v, e in zip(variables, witness)})


def _rows(size: int, n: int, exclude):
    for row in product(range(size), repeat=n):
        if row not in exclude:
            yield row


def check_rule(r: Rule, atoms: int = 3, printed: bool = False) -> RuleCheck:
    """Exhaustively test ``r`` (or its printed form) over the powerset of ``atoms`` atoms."""
    rhs = r.printed if printed else r.rhs
    if rhs is None:
        raise ValueError(f"rule {r.name!r} has no printed variant")
    return _check(r.relation, r.lhs, rhs, atoms, sorted(r.variables))


def audit_catalogue(atoms: int = 3) -> dict[str, str]:
    """Recompute each entry's status from exhaustive checks."""
    out = {}
    for r in rule_catalogue():
        holds = check_rule(r, atoms).holds
        if r.printed is not None:
            status = CORRECTED if holds and not check_rule(r, atoms, printed=True).holds else (
                VERIFIED if holds else REFUTED)
        else:
            status = VERIFIED if holds else REFUTED
        out[r.name] = status
    return out

