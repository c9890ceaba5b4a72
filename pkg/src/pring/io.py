"""YAML ring and presentation documents.

Ring document::

    elements: ["0", "1"]
    zero: "0"
    one: "1"            # rings only
    add: [[a, b, c], ...]   # summable pairs and their sums
    mul: [[a, b, c], ...]   # total
    relate: [[a, b], ...]   # optional, generating pairs for a congruence
    raw: false              # true disables the automatic completions

Unless ``raw`` is set, ``add`` is closed under swapping and the pairs with
zero are filled in, and ``mul`` is closed under swapping.  A swapped entry
that is already listed with a different value is kept as written, so an
asymmetric table still reaches the validator.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Any

import yaml

from .catalog import builtin
from .core import UNDEF, PartialMagma, PartialRing
from .errors import ParseError, StructureError
from .presentations import Presentation


@dataclass
class RingDocument:
    structure: PartialMagma
    relate: list[tuple[int, int]] = field(default_factory=list)
    raw: bool = False


def _names(doc) -> list[str]:
    els = doc.get("elements")
    if not isinstance(els, list) or not els:
        raise ParseError("'elements' must be a non-empty list")
    names = [str(e) for e in els]
    if len(set(names)) != len(names):
        raise ParseError("element names must be distinct")
    return names


def _lookup(pos, name, where):
    key = str(name)
    if key not in pos:
        raise ParseError(f"unknown element {key!r} in {where}")
    return pos[key]


def _triples(doc, key, pos) -> list[tuple[int, int, int]]:
    rows = doc.get(key) or []
    if not isinstance(rows, list):
        raise ParseError(f"'{key}' must be a list of [a, b, c] triples")
    out = []
    for row in rows:
        if not isinstance(row, (list, tuple)) or len(row) != 3:
            raise ParseError(f"bad entry {row!r} in '{key}'")
        out.append(tuple(_lookup(pos, x, key) for x in row))
    return out


def parse_ring_document(doc: Any) -> RingDocument:
    if not isinstance(doc, dict):
        raise ParseError("ring document must be a mapping")
    if "builtin" in doc:
        A = builtin(str(doc["builtin"]))
        pos = {nm: i for i, nm in enumerate(A.names)}
        relate = [(_lookup(pos, a, "relate"), _lookup(pos, b, "relate")) for a, b in doc.get("relate") or []]
        return RingDocument(A, relate, False)
    names = _names(doc)
    pos = {nm: i for i, nm in enumerate(names)}
    n = len(names)
    raw = bool(doc.get("raw", False))
    if "zero" not in doc:
        raise ParseError("missing 'zero'")
    zero = _lookup(pos, doc["zero"], "zero")
    add = [[UNDEF] * n for _ in range(n)]
    explicit = set()
    for a, b, c in _triples(doc, "add", pos):
        if (a, b) in explicit and add[a][b] != c:
            raise ParseError(f"pair ({names[a]}, {names[b]}) listed twice with different sums")
        add[a][b] = c
        explicit.add((a, b))
    if not raw:
        for a, b in list(explicit):
            if (b, a) not in explicit:
                add[b][a] = add[a][b]
        for a in range(n):
            if (zero, a) not in explicit:
                add[zero][a] = a
            if (a, zero) not in explicit:
                add[a][zero] = a
    label = str(doc.get("label", ""))
    is_ring = "one" in doc or "mul" in doc
    if not is_ring:
        return RingDocument(PartialMagma(names, zero, add, label=label), [], raw)
    if "one" not in doc or "mul" not in doc:
        raise ParseError("a ring document needs both 'one' and 'mul'")
    one = _lookup(pos, doc["one"], "one")
    mul = [[None] * n for _ in range(n)]
    given = set()
    for a, b, c in _triples(doc, "mul", pos):
        if (a, b) in given and mul[a][b] != c:
            raise ParseError(f"product ({names[a]}, {names[b]}) listed twice with different values")
        mul[a][b] = c
        given.add((a, b))
    if not raw:
        for a, b in list(given):
            if (b, a) not in given:
                mul[b][a] = mul[a][b]
    missing = [(names[a], names[b]) for a in range(n) for b in range(n) if mul[a][b] is None]
    if missing:
        raise StructureError(f"multiplication table is not total, missing {missing[:3]}")
    relate = []
    for pair in doc.get("relate") or []:
        if not isinstance(pair, (list, tuple)) or len(pair) != 2:
            raise ParseError(f"bad relate entry {pair!r}")
        relate.append((_lookup(pos, pair[0], "relate"), _lookup(pos, pair[1], "relate")))
    A = PartialRing(names, zero, add, one=one, mul=mul, label=label)
    return RingDocument(A, relate, raw)


def load_yaml(text: str) -> Any:
    try:
        return yaml.safe_load(text)
    except yaml.YAMLError as e:
        raise ParseError(f"invalid YAML: {e}") from None


def load_ring_document(path: str) -> RingDocument:
    with open(path, encoding="utf-8") as fh:
        return parse_ring_document(load_yaml(fh.read()))


def resolve_ring(spec: str, search_paths: list[str] | None = None) -> RingDocument:
    """A document path, a path found on the search paths, or a built-in name."""
    candidates = [spec] + [os.path.join(d, spec) for d in (search_paths or [])]
    for c in candidates:
        if os.path.isfile(c):
            return load_ring_document(c)
    try:
        return RingDocument(builtin(spec))
    except StructureError:
        raise ParseError(f"{spec!r} is neither a file nor a built-in ring") from None


def ring_to_document(A: PartialMagma, relate=None) -> dict:
    n = A.names
    doc: dict[str, Any] = {"elements": list(n), "zero": n[A.zero]}
    if isinstance(A, PartialRing):
        doc["one"] = n[A.one]
    doc["add"] = [[n[a], n[b], n[A.add[a][b]]] for a in A.elements for b in A.elements
                  if a <= b and a != A.zero and b != A.zero and A.add[a][b] != UNDEF]
    if isinstance(A, PartialRing):
        doc["mul"] = [[n[a], n[b], n[A.mul[a][b]]] for a in A.elements for b in A.elements if a <= b]
    if relate:
        doc["relate"] = [[n[a], n[b]] for a, b in relate]
    if A.label:
        doc["label"] = A.label
    return doc


def dump_ring(A: PartialMagma, relate=None) -> str:
    return yaml.safe_dump(ring_to_document(A, relate), sort_keys=False, allow_unicode=True,
                          default_flow_style=None)


def parse_presentation_document(doc: Any) -> Presentation:
    if not isinstance(doc, dict) or "generators" not in doc:
        raise ParseError("presentation document needs 'generators'")
    gens = [str(g) for g in doc["generators"]]
    rels = doc.get("relations") or []
    return Presentation.parse(gens, [str(s) for s in doc.get("summable") or []],
                              [(str(u), str(v)) for u, v in rels], label=str(doc.get("label", "")))


def load_presentation(path: str) -> Presentation:
    with open(path, encoding="utf-8") as fh:
        return parse_presentation_document(load_yaml(fh.read()))


def presentation_to_document(P: Presentation) -> dict:
    g = P.generators
    return {"generators": list(g), "summable": [s.show(g) for s in P.summable],
            "relations": [[u.show(g), v.show(g)] for u, v in P.relations]}
