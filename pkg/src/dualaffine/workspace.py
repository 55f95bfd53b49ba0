"""Workspace documents: named objects, spaces, morphisms and quotients.

A document is JSON::

    {
      "instance": "finset" | "finmod:Z/4" | "rose",
      "theory": "module" | "empty",            (finmod only, default module)
      "objects":    {"X": "finset:3", ...},
      "spaces":     {"P": {"object": "X", "structure": {"elements": [0, 1]}}},
      "morphisms":  {"f": {"dom": "X", "cod": "Y", "data": [0, 0, 1]}},
      "quotients":  {"q": {"space": "P", "map": "f"}}
    }

Objects may also be written inline wherever a name is expected.  A
structure is ``{"generators": [...]}``, ``{"elements": [...]}``, ``"full"``
or ``"discrete"``.  Points are integers (finset), integer lists (finmod)
or word strings such as ``"a b^-1"`` (rose).  Morphism data is an index
array, a matrix (one row per domain generator) or a list of words.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Any

from .affine import DuallyAffineSpace, discrete, indiscrete
from .errors import DomainError
from .freegroup import format_word, parse_word
from .instances.finmod import FinMod
from .instances.finset import FinSet
from .instances.rose import Rose
from .zariski import RegularQuotient


class ParseError(DomainError):
    """A document or textual description could not be read."""


_FINMOD = re.compile(r"^finmod:Z/(\d+):gens=(\d+)(?::rels=(\[.*\]))?$")


def make_instance(name: str, theory: str | None = None):
    if name == "finset":
        if theory not in (None, "empty"):
            raise ParseError("finset only supports the empty theory")
        return FinSet()
    if name == "rose":
        if theory not in (None, "group"):
            raise ParseError("rose only supports the group theory")
        return Rose()
    m = re.match(r"^finmod:Z/(\d+)$", name)
    if m:
        return FinMod(int(m.group(1)), theory or "module")
    raise ParseError(f"unknown instance {name!r}; expected finset, finmod:Z/m or rose")


def instance_name(inst) -> str:
    if isinstance(inst, FinMod):
        return f"finmod:Z/{inst.modulus}"
    return inst.name


def parse_object(inst, text: str):
    if not isinstance(text, str):
        raise ParseError(f"object description must be a string, got {text!r}")
    if isinstance(inst, FinSet):
        m = re.match(r"^finset:(\d+)$", text)
        if m:
            return int(m.group(1))
    elif isinstance(inst, Rose):
        m = re.match(r"^rose:(\d+)$", text)
        if m:
            return int(m.group(1))
    elif isinstance(inst, FinMod):
        m = _FINMOD.match(text)
        if m:
            if int(m.group(1)) != inst.modulus:
                raise ParseError(f"{text!r} is over Z/{m.group(1)}, the workspace is over Z/{inst.modulus}")
            try:
                rels = json.loads(m.group(3)) if m.group(3) else []
            except json.JSONDecodeError as exc:
                raise ParseError(f"bad relation matrix in {text!r} at column {exc.pos}") from None
            gens = int(m.group(2))
            if any(not isinstance(r, list) or len(r) != gens for r in rels):
                raise ParseError(f"relations in {text!r} must be rows of length {gens}")
            return inst.obj(gens, rels)
    raise ParseError(f"cannot read object {text!r} for instance {inst.name}")


def format_object(inst, X) -> str:
    return inst.format_object(X)


def parse_point(inst, X, value):
    if isinstance(inst, FinSet):
        if not isinstance(value, int) or not 0 <= value < X:
            raise ParseError(f"{value!r} is not a point of finset:{X}")
        return value
    if isinstance(inst, FinMod):
        if not isinstance(value, list) or len(value) != X.gens or not all(isinstance(c, int) for c in value):
            raise ParseError(f"{value!r} is not a vector with {X.gens} coordinates")
        return X.reduce(value)
    if isinstance(inst, Rose):
        if not isinstance(value, str):
            raise ParseError(f"{value!r} is not a word")
        return parse_word(value, X)
    raise ParseError(f"unsupported instance {inst.name}")


def format_point(inst, x):
    if isinstance(inst, FinMod):
        return list(x)
    if isinstance(inst, Rose):
        return format_word(x)
    return x


def parse_morphism(inst, dom, cod, data):
    try:
        if isinstance(inst, FinSet):
            return inst.map(dom, cod, data)
        if isinstance(inst, FinMod):
            return inst.map(dom, cod, [tuple(r) for r in data])
        if isinstance(inst, Rose):
            return inst.map(dom, cod, [parse_word(w, cod) if isinstance(w, str) else w for w in data])
    except (TypeError, DomainError) as exc:
        raise ParseError(f"bad morphism data {data!r}: {exc}") from None
    raise ParseError(f"unsupported instance {inst.name}")


def format_morphism(inst, f):
    if isinstance(inst, FinSet):
        return list(f.table)
    if isinstance(inst, FinMod):
        return [list(r) for r in f.matrix]
    return [format_word(w) for w in f.words]


@dataclass
class Workspace:
    instance: Any
    theory: str | None = None
    objects: dict = field(default_factory=dict)
    spaces: dict = field(default_factory=dict)
    morphisms: dict = field(default_factory=dict)
    quotients: dict = field(default_factory=dict)
    # the declarations as read, for faithful re-emission
    _space_decl: dict = field(default_factory=dict, repr=False)
    _morph_decl: dict = field(default_factory=dict, repr=False)
    _quot_decl: dict = field(default_factory=dict, repr=False)

    def resolve_object(self, ref, where: str):
        if isinstance(ref, str) and ref in self.objects:
            return self.objects[ref]
        try:
            return parse_object(self.instance, ref)
        except ParseError:
            raise ParseError(f"{where}: unknown object {ref!r}") from None

    def space(self, name: str) -> DuallyAffineSpace:
        if name not in self.spaces:
            raise ParseError(f"no space named {name!r}")
        return self.spaces[name]

    def morphism(self, name: str):
        if name not in self.morphisms:
            raise ParseError(f"no morphism named {name!r}")
        return self.morphisms[name]

    def quotient(self, name: str) -> RegularQuotient:
        if name not in self.quotients:
            raise ParseError(f"no quotient named {name!r}")
        return self.quotients[name]

    def to_dict(self) -> dict:
        inst = self.instance
        doc: dict = {"instance": instance_name(inst)}
        if self.theory is not None:
            doc["theory"] = self.theory
        doc["objects"] = {k: format_object(inst, X) for k, X in self.objects.items()}
        doc["spaces"] = dict(self._space_decl)
        doc["morphisms"] = {}
        for k, f in self.morphisms.items():
            decl = self._morph_decl[k]
            doc["morphisms"][k] = {"dom": decl["dom"], "cod": decl["cod"], "data": format_morphism(inst, f)}
        doc["quotients"] = dict(self._quot_decl)
        return doc

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Workspace):
            return NotImplemented
        return (
            instance_name(self.instance) == instance_name(other.instance)
            and self.instance.theory == other.instance.theory
            and self.objects == other.objects
            and self.spaces == other.spaces
            and self.morphisms == other.morphisms
            and {k: (q.source, q.p) for k, q in self.quotients.items()}
            == {k: (q.source, q.p) for k, q in other.quotients.items()}
        )


def _structure(inst, X, decl, where: str) -> DuallyAffineSpace:
    if decl == "full":
        return indiscrete(inst, X)
    if decl == "discrete":
        return discrete(inst, X)
    if isinstance(decl, dict) and len(decl) == 1:
        (kind, values), = decl.items()
        if kind in ("elements", "generators") and isinstance(values, list):
            pts = [parse_point(inst, X, v) for v in values]
            try:
                if kind == "elements":
                    return DuallyAffineSpace(inst, X, elements=pts)
                return DuallyAffineSpace(inst, X, generators=pts)
            except DomainError as exc:
                raise ParseError(f"{where}: {exc}") from None
    raise ParseError(f"{where}: structure must be 'full', 'discrete', {{'elements': [...]}} or {{'generators': [...]}}")


def load(doc: dict) -> Workspace:
    """Build and validate a workspace; every reference must resolve."""
    if not isinstance(doc, dict) or "instance" not in doc:
        raise ParseError("a workspace needs an 'instance' entry")
    theory = doc.get("theory")
    try:
        inst = make_instance(doc["instance"], theory)
    except DomainError as exc:
        raise ParseError(str(exc)) from None
    ws = Workspace(inst, theory)
    unknown = set(doc) - {"instance", "theory", "objects", "spaces", "morphisms", "quotients"}
    if unknown:
        raise ParseError(f"unknown workspace entries {sorted(unknown)}")
    for name, text in doc.get("objects", {}).items():
        ws.objects[name] = parse_object(inst, text)
    for name, decl in doc.get("spaces", {}).items():
        where = f"space {name!r}"
        if not isinstance(decl, dict) or "object" not in decl or "structure" not in decl:
            raise ParseError(f"{where} needs 'object' and 'structure'")
        X = ws.resolve_object(decl["object"], where)
        ws.spaces[name] = _structure(inst, X, decl["structure"], where)
        ws._space_decl[name] = decl
    for name, decl in doc.get("morphisms", {}).items():
        where = f"morphism {name!r}"
        if not isinstance(decl, dict) or not {"dom", "cod", "data"} <= set(decl):
            raise ParseError(f"{where} needs 'dom', 'cod' and 'data'")
        dom = ws.resolve_object(decl["dom"], where)
        cod = ws.resolve_object(decl["cod"], where)
        ws.morphisms[name] = parse_morphism(inst, dom, cod, decl["data"])
        ws._morph_decl[name] = decl
    for name, decl in doc.get("quotients", {}).items():
        where = f"quotient {name!r}"
        if not isinstance(decl, dict) or not {"space", "map"} <= set(decl):
            raise ParseError(f"{where} needs 'space' and 'map'")
        if decl["space"] not in ws.spaces:
            raise ParseError(f"{where}: no space named {decl['space']!r}")
        if decl["map"] not in ws.morphisms:
            raise ParseError(f"{where}: no morphism named {decl['map']!r}")
        try:
            ws.quotients[name] = RegularQuotient(ws.spaces[decl["space"]], ws.morphisms[decl["map"]])
        except DomainError as exc:
            raise ParseError(f"{where}: {exc}") from None
        ws._quot_decl[name] = decl
    return ws


def loads(text: str) -> Workspace:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return load(doc)


def read(path: str) -> Workspace:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())
