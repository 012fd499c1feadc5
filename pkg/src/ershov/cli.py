"""Command-line interface.

Exit codes: 0 success, 1 negative verdict, 2 parse error, 3 unknown symbol or
bad model file, 4 system unsatisfiable, 5 enumeration budget exceeded,
6 indeterminate verdict.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .errors import ErshovError, UnknownSymbolError
from .io import ModelFile, load_model
from .models import format_element, verify_ershov_axioms
from .noetherian import FamilyGroup, SubalgebraDescriptor, compact_system, is_equationally_noetherian
from .parser import parse_system, parse_term
from .render import render
from .rewrite import normalize_term_cnf, normalize_term_dnf
from .rules import audit_catalogue, rule_catalogue
from .semantics import ModelProbe, equivalent, solve
from .sysnf import normalize_system
from .terms import EqSystem, constants_of

EXIT_UNSAT = 4
EXIT_INDETERMINATE = 6


def _out(text: str = "") -> None:
    sys.stdout.write(text + "\n")


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _require_constants(names, mf: ModelFile) -> None:
    for name in sorted(names):
        if name not in mf.constants:
            raise UnknownSymbolError(name, f"unknown constant {name!r}")


def _print_trace(trace) -> None:
    laws = {r.name: r.law for r in rule_catalogue()}
    for step in trace:
        law = laws.get(step.rule)
        suffix = f"    ({law})" if law else ""
        _out(f"trace: {render(step)}{suffix}")


def cmd_normalize_term(args, mf: ModelFile) -> int:
    term = parse_term(args.term)
    _require_constants(constants_of(term), mf)
    trace = [] if args.trace else None
    nf = normalize_term_cnf(term, trace) if args.cnf else normalize_term_dnf(term, trace)
    if trace is not None:
        _print_trace(trace)
    _out(render(nf))
    return 0


def cmd_normalize_system(args, mf: ModelFile) -> int:
    system = parse_system(_read(args.file))
    _require_constants(system.constants(), mf)
    trace = [] if args.trace else None
    result = normalize_system(system, mf.constants, trace)
    if trace is not None:
        _print_trace(trace)
    for ni in result:
        _out(render(ni))
    if any(ni.is_contradiction for ni in result):
        _out("unsatisfiable")
        return EXIT_UNSAT
    return 0


def _assignment(variables, row, model) -> str:
    if not variables:
        return "(no variables)"
    return ", ".join(f"x{v} = {format_element(model.element_of(x))}" for v, x in zip(variables, row))


def cmd_solve(args, mf: ModelFile) -> int:
    system = parse_system(_read(args.file))
    _require_constants(system.constants(), mf)
    variables = range(1, args.vars + 1) if args.vars else ()
    sols = solve(system, mf.model, variables=variables)
    n = len(sols)
    _out(f"{n} solution{'' if n == 1 else 's'}")
    if not args.count_only:
        for row in sols.rows:
            _out(_assignment(sols.variables, row, mf.model))
    return 0


def cmd_equiv(args, mf: ModelFile) -> int:
    s1 = parse_system(_read(args.file1))
    s2 = parse_system(_read(args.file2))
    _require_constants(s1.constants() | s2.constants(), mf)
    probe = ModelProbe(mf.constants, tuple(range(args.fresh_atoms + 1)))
    verdict = equivalent(s1, s2, probe)
    if verdict.equivalent:
        _out(f"equivalent ({verdict.models_checked} probe models)")
        return 0
    m = verdict.model
    _out("not equivalent")
    _out(f"model atoms: {format_element(m.atoms)}")
    if verdict.assignment:
        _out(", ".join(f"x{v} = {format_element(e)}" for v, e in sorted(verdict.assignment.items())))
    else:
        _out("(no variables)")
    which = args.file1 if verdict.satisfied_by == "first" else args.file2
    _out(f"satisfies only {Path(which).name}")
    return 1


def _family_system(system: EqSystem, mf: ModelFile):
    """Split off equations that mention a family label.

    Such an equation is a schema over all members of the family and may not
    mention any other constant.
    """
    plain, schemas = [], []
    for eq in system:
        names = eq.constants()
        fams = names & set(mf.families)
        if not fams:
            plain.append(eq)
            continue
        if len(names) > 1:
            raise UnknownSymbolError(sorted(fams)[0], f"family {sorted(fams)[0]!r} must be the only "
                                                      "constant in its equation")
        schemas.append((eq, fams.pop()))
    return EqSystem(plain), schemas


def cmd_compact(args, mf: ModelFile) -> int:
    system = parse_system(_read(args.file))
    _require_constants(system.constants() - set(mf.families), mf)
    plain, schemas = _family_system(system, mf)
    items = list(normalize_system(plain, mf.constants))
    for eq, label in schemas:
        marker = frozenset({f"<{label}>"})
        for ni in normalize_system([eq], {label: marker}):
            if ni.constant is None:
                items.append(ni)
            else:
                items.append(FamilyGroup(ni.left_vars, ni.right_vars, ni.shape, mf.families[label]))
    if any(getattr(it, "is_contradiction", False) for it in items):
        _out("unsatisfiable")
        return EXIT_UNSAT
    for ni in compact_system(items, mf.witnesses):
        _out(render(ni))
    return 0


def cmd_check_noetherian(args, mf: ModelFile) -> int:
    desc = SubalgebraDescriptor(tuple(mf.constants.values()), tuple(mf.families.values()))
    verdict = is_equationally_noetherian(desc)
    _out(str(verdict))
    if verdict.indeterminate:
        return EXIT_INDETERMINATE
    return 0 if verdict.value else 1


def cmd_verify_axioms(args, mf: ModelFile) -> int:
    report = verify_ershov_axioms(mf.model)
    if report.passed:
        _out(f"axioms: pass ({report.checked} checks)")
        return 0
    witness = ", ".join(format_element(e) for e in report.witness)
    _out(f"axioms: fail at {report.law} ({witness})")
    return 1


def cmd_rules(args, mf: ModelFile | None) -> int:
    audit = audit_catalogue(args.atoms) if args.audit else {}
    for r in rule_catalogue():
        line = f"{r.name:<22} {r.relation:<2} {r.status:<9} {r.law}"
        if args.audit:
            line += f"    [audit: {audit[r.name]}]"
        _out(line)
    if args.audit and any(audit[r.name] != r.status for r in rule_catalogue()):
        return 1
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ershov", description="Normal forms and Noetherian "
                                     "checks for equations over Ershov algebras.")
    model = argparse.ArgumentParser(add_help=False)
    model.add_argument("--model", "-m", required=True, help="model JSON file")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("normalize-term", parents=[model], help="DNF (or CNF) of a term")
    p.add_argument("term")
    p.add_argument("--cnf", action="store_true")
    p.add_argument("--trace", action="store_true")
    p.set_defaults(func=cmd_normalize_term)

    p = sub.add_parser("normalize-system", parents=[model], help="system normal form")
    p.add_argument("file")
    p.add_argument("--trace", action="store_true")
    p.set_defaults(func=cmd_normalize_system)

    p = sub.add_parser("solve", parents=[model], help="enumerate solutions in the model")
    p.add_argument("file")
    p.add_argument("--count-only", action="store_true")
    p.add_argument("--vars", type=int, default=0, help="solve over at least x1..xN")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("equiv", parents=[model], help="compare two systems on probe models")
    p.add_argument("file1")
    p.add_argument("file2")
    p.add_argument("--fresh-atoms", type=int, default=2)
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("compact", parents=[model], help="merge inequality groups")
    p.add_argument("file")
    p.set_defaults(func=cmd_compact)

    p = sub.add_parser("check-noetherian", parents=[model], help="finiteness of the constant subalgebra")
    p.set_defaults(func=cmd_check_noetherian)

    p = sub.add_parser("verify-axioms", parents=[model], help="exhaustive axiom check of the model")
    p.set_defaults(func=cmd_verify_axioms)

    p = sub.add_parser("rules", help="print the rewrite-rule catalogue")
    p.add_argument("--audit", action="store_true", help="re-check every rule exhaustively")
    p.add_argument("--atoms", type=int, default=3)
    p.add_argument("--model", "-m", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_rules)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        mf = load_model(args.model) if getattr(args, "model", None) else None
        return args.func(args, mf)
    except ErshovError as e:
        sys.stderr.write(f"error: {e}\n")
        return e.exit_code
    except ValueError as e:
        # e.g. ERSHOV_BUDGET that is not an integer
        sys.stderr.write(f"error: {e}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
