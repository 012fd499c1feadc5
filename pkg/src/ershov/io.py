"""Model files.

    {"type": "powerset",
     "atoms": ["1", "2", "3"],
     "constants": {"c1": ["1", "2"], "c2": ["3"]},
     "witnesses": {"S": []},
     "families": {"S": {"kind": "singletons", "size": null}}}

Atom labels are strings; labels made only of digits are read as natural
numbers so that they line up with generated families and witnesses.
``families`` entries are ``{"kind": "singletons", "size": N or null}``,
``{"kind": "explicit", "elements": [[...], ...]}`` or
``{"kind": "opaque", "finite": true/false/null, "bounded": ...}``.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Mapping

from .errors import ModelFileError, ParseError, SourceSpan
from .models import ConstantFamily, PowersetModel

__all__ = ["ModelFile", "load_model", "model_from_dict"]

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
_VARLIKE = re.compile(r"x[0-9]")


@dataclass(frozen=True)
class ModelFile:
    model: PowersetModel
    witnesses: Mapping[str, frozenset] = field(default_factory=dict)
    families: Mapping[str, ConstantFamily] = field(default_factory=dict)

    @property
    def constants(self) -> Mapping[str, frozenset]:
        return self.model.constants


def _label(raw: Any, key: str):
    if isinstance(raw, bool) or not isinstance(raw, (str, int)):
        raise ModelFileError(f"atom labels are strings, got {raw!r}", key)
    if isinstance(raw, int):
        if raw < 0:
            raise ModelFileError(f"negative atom {raw}", key)
        return raw
    return int(raw) if raw.isdigit() else raw


def _no_duplicates(pairs):
    out = {}
    for k, v in pairs:
        if k in out:
            raise ModelFileError("duplicate name", k)
        out[k] = v
    return out


def _set_of(raw: Any, key: str, atoms: set | None) -> frozenset:
    if not isinstance(raw, list):
        raise ModelFileError("expected a list of atoms", key)
    members = frozenset(_label(x, key) for x in raw)
    if atoms is not None:
        unknown = members - atoms
        if unknown:
            raise ModelFileError(f"unknown atom(s) {sorted(map(str, unknown))}", key)
    return members


def _family(label: str, raw: Any, witness) -> ConstantFamily:
    key = f"families.{label}"
    if not isinstance(raw, dict) or "kind" not in raw:
        raise ModelFileError("family needs a 'kind'", key)
    kind = raw["kind"]
    if kind == "singletons":
        size = raw.get("size")
        if size is not None and (not isinstance(size, int) or size < 0):
            raise ModelFileError("size must be a natural number or null", key)
        return ConstantFamily.singletons(label, size, witness_c=witness)
    if kind == "explicit":
        elems = raw.get("elements")
        if not isinstance(elems, list):
            raise ModelFileError("explicit family needs 'elements'", key)
        return ConstantFamily.explicit(label, [_set_of(e, key, None) for e in elems], witness_c=witness)
    if kind == "opaque":
        return ConstantFamily(label, generator="opaque", finite=raw.get("finite"),
                              bounded_above=raw.get("bounded"), witness_c=witness)
    raise ModelFileError(f"unknown family kind {kind!r}", key)


def model_from_dict(doc: Mapping[str, Any]) -> ModelFile:
    if not isinstance(doc, Mapping):
        raise ModelFileError("model file must hold a JSON object")
    if doc.get("type") != "powerset":
        raise ModelFileError(f"unsupported model type {doc.get('type')!r}", "type")
    raw_atoms = doc.get("atoms")
    if not isinstance(raw_atoms, list):
        raise ModelFileError("expected a list", "atoms")
    atoms = [_label(a, "atoms") for a in raw_atoms]
    if len(set(atoms)) != len(atoms):
        raise ModelFileError("duplicate atom", "atoms")
    atom_set = set(atoms)
    constants = {}
    raw_consts = doc.get("constants", {})
    if not isinstance(raw_consts, Mapping):
        raise ModelFileError("expected an object", "constants")
    for name, value in raw_consts.items():
        key = f"constants.{name}"
        if not _NAME.match(name) or _VARLIKE.match(name):
            raise ModelFileError("not a valid constant name", key)
        constants[name] = _set_of(value, key, atom_set)
    witnesses = {label: _set_of(v, f"witnesses.{label}", None)
                 for label, v in dict(doc.get("witnesses", {})).items()}
    families = {label: _family(label, v, witnesses.get(label))
                for label, v in dict(doc.get("families", {})).items()}
    clash = set(families) & set(constants)
    if clash:
        raise ModelFileError("name used for both a constant and a family", sorted(clash)[0])
    return ModelFile(PowersetModel(tuple(atoms), constants), witnesses, families)


def load_model(path: str | Path) -> ModelFile:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ModelFileError(str(e), str(path)) from None
    try:
        doc = json.loads(text, object_pairs_hook=_no_duplicates)
    except json.JSONDecodeError as e:
        raise ParseError(f"{path}: invalid JSON: {e.msg}", SourceSpan(e.lineno, e.colno)) from None
    return model_from_dict(doc)
