"""Canonical forms and Noetherian procedures for equations over Ershov algebras."""
from .errors import (
    BudgetExceeded, DomainError, ErshovError, ModelFileError, ParseError, SourceSpan,
    SystemParseError, UnboundedFamilyError, UnknownSymbolError,
)
from .io import ModelFile, load_model, model_from_dict
from .models import ConstantFamily, PowersetModel, enumerate_elements, finset, verify_ershov_axioms
from .noetherian import (
    FamilyGroup, SubalgebraDescriptor, compact_system, dedupe_system, generated_subalgebra,
    inf_via_sup, is_equationally_noetherian, sup_of_family,
)
from .parser import parse_equation, parse_normal_inequality, parse_system, parse_term
from .render import render
from .rewrite import normalize_equation, normalize_term_cnf, normalize_term_dnf
from .rules import audit_catalogue, rule_catalogue
from .semantics import ModelProbe, equivalent, eval_term, satisfies, solve
from .sysnf import NormalInequality, normalize_system
from .terms import (
    ZERO, Clause, CnfTerm, Const, Diff, DifferenceAtom, DnfTerm, EqSystem, Equation, Join, Meet,
    Relation, Term, Var, Zero, eq_as_pair_of_inequalities, free_vars,
)

__version__ = "0.1.0"
