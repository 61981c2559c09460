"""JSON documents for complexes, posets, results and certificates.

Input schema::

    {"type": "complex", "facets": [[v, ...], ...], "name": optional}
    {"type": "poset", "points": [p, ...], "le": [[p, q], ...], "name": optional}

Identifiers are strings, integers, or (nested) lists, which become tuples so
that face-poset points survive a round trip. Output field order is fixed,
which makes reports byte-for-byte reproducible.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Optional, Union

from .category import CategoryResult, InequalityReport
from .collapse import CollapseTrace
from .complex import ContiguityCertificate, SimplicialComplex, build_complex
from .errors import InputSyntaxError, SchemaError
from .poset import DownSet, FinitePoset, HomotopyCertificate, build_poset, t0_quotient
from .search import sort_canonical

_FIELDS = {
    "complex": {"type", "name", "facets"},
    "poset": {"type", "name", "points", "le"},
}


@dataclass
class InputDocument:
    kind: str
    payload: dict
    name: Optional[str] = None
    obj: Union[SimplicialComplex, FinitePoset, None] = field(default=None, repr=False)
    classes: Optional[dict] = field(default=None, repr=False)


def _ident(value: Any, where: str):
    if isinstance(value, bool) or value is None:
        raise SchemaError(f"identifier must be a string, integer or list, got {value!r}", where)
    if isinstance(value, (str, int)):
        return value
    if isinstance(value, list):
        if not value:
            raise SchemaError("empty list is not an identifier", where)
        return tuple(_ident(v, f"{where}[{k}]") for k, v in enumerate(value))
    raise SchemaError(f"identifier must be a string, integer or list, got {value!r}", where)


def _list(value: Any, where: str) -> list:
    if not isinstance(value, list):
        raise SchemaError("expected a list", where)
    return value


def parse_input(text: Union[str, bytes], preorder: bool = False) -> InputDocument:
    """Parse and build a document.

    With ``preorder`` a poset's ``le`` may contain cycles; the document then
    holds the T0 quotient and its class map.
    """
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise InputSyntaxError(f"input is not UTF-8: {exc}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputSyntaxError(f"{exc.msg} at line {exc.lineno}, column {exc.colno}") from None
    if not isinstance(data, dict):
        raise SchemaError("top level must be a JSON object")
    kind = data.get("type")
    if kind not in _FIELDS:
        raise SchemaError(f"type must be 'complex' or 'poset', got {kind!r}", "type")
    extra = sorted(set(data) - _FIELDS[kind])
    if extra:
        raise SchemaError(f"unknown field {extra[0]!r}", extra[0])
    name = data.get("name")
    if name is not None and not isinstance(name, str):
        raise SchemaError("name must be a string", "name")

    if kind == "complex":
        if "facets" not in data:
            raise SchemaError("missing field", "facets")
        facets = [
            [_ident(v, f"facets[{k}][{j}]") for j, v in enumerate(_list(f, f"facets[{k}]"))]
            for k, f in enumerate(_list(data["facets"], "facets"))
        ]
        K = build_complex(facets)
        return InputDocument(kind, {"facets": facets}, name, K)

    for key in ("points", "le"):
        if key not in data:
            raise SchemaError("missing field", key)
    points = [_ident(p, f"points[{k}]") for k, p in enumerate(_list(data["points"], "points"))]
    pairs = []
    for k, pair in enumerate(_list(data["le"], "le")):
        pair = _list(pair, f"le[{k}]")
        if len(pair) != 2:
            raise SchemaError("an 'le' entry must be a pair", f"le[{k}]")
        pairs.append((_ident(pair[0], f"le[{k}][0]"), _ident(pair[1], f"le[{k}][1]")))
    payload = {"points": points, "le": pairs}
    if preorder:
        X, classes = t0_quotient(points, pairs)
        return InputDocument(kind, payload, name, X, classes)
    return InputDocument(kind, payload, name, build_poset(points, pairs))


def load_document(path: str, preorder: bool = False) -> InputDocument:
    with open(path, "rb") as fh:
        return parse_input(fh.read(), preorder)


# -- output ------------------------------------------------------------------------


def plain(value: Any):
    """Identifiers back to JSON values (tuples become lists)."""
    if isinstance(value, tuple):
        return [plain(v) for v in value]
    return value


def complex_document(K: SimplicialComplex, name: Optional[str] = None) -> dict:
    doc: dict = {"type": "complex"}
    if name is not None:
        doc["name"] = name
    doc["facets"] = [plain(list(f.vertices)) for f in K.facets]
    return doc


def poset_document(X: FinitePoset, name: Optional[str] = None) -> dict:
    doc: dict = {"type": "poset"}
    if name is not None:
        doc["name"] = name
    doc["points"] = [plain(p) for p in X.canonical_points()]
    doc["le"] = [[plain(a), plain(b)] for a, b in X.cover_relations()]
    return doc


def object_document(obj: Union[SimplicialComplex, FinitePoset], name: Optional[str] = None) -> dict:
    if isinstance(obj, SimplicialComplex):
        return complex_document(obj, name)
    return poset_document(obj, name)


def _flat(value: Any) -> bool:
    return not isinstance(value, dict) and (
        not isinstance(value, list) or all(not isinstance(v, dict) for v in value) and len(json.dumps(value)) <= 100
    )


def _format(value: Any, depth: int) -> str:
    if _flat(value):
        return json.dumps(value, ensure_ascii=False)
    pad, inner = "  " * depth, "  " * (depth + 1)
    if isinstance(value, dict):
        items = [f"{inner}{json.dumps(k, ensure_ascii=False)}: {_format(v, depth + 1)}" for k, v in value.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}" if items else "{}"
    items = [inner + _format(v, depth + 1) for v in value]
    return "[\n" + ",\n".join(items) + "\n" + pad + "]"


def dumps(doc: Any) -> str:
    """Deterministic JSON: objects one field per line, short lists inline."""
    return _format(doc, 0) + "\n"


def _table(m) -> list:
    return [[plain(a), plain(b)] for a, b in m.table()]


def certificate_document(cert: Any) -> dict:
    if isinstance(cert, ContiguityCertificate):
        return {"kind": "contiguity", "chain": [_table(m) for m in cert.chain]}
    if isinstance(cert, HomotopyCertificate):
        return {"kind": "fence", "chain": [_table(m) for m in cert.chain]}
    if isinstance(cert, CollapseTrace):
        steps = []
        for s in cert.steps:
            row = [plain(s.removed), plain(s.witness)]
            if s.direction is not None:
                row.append(s.direction)
            steps.append(row)
        return {"kind": "collapse", "steps": steps, "end": object_document(cert.end)}
    raise TypeError(f"not a certificate: {cert!r}")


def witness_document(element: Union[SimplicialComplex, DownSet]) -> dict:
    if isinstance(element, SimplicialComplex):
        return {"facets": [plain(list(f.vertices)) for f in element.facets]}
    return {
        "maximal": [plain(p) for p in sort_canonical(element.maximal_points)],
        "points": [plain(p) for p in element.members],
    }


def result_document(result: CategoryResult, include_object: bool = True) -> dict:
    doc: dict = {
        "invariant": result.invariant,
        "value": result.lower if result.exact else [result.lower, result.upper],
        "exact": result.exact,
        "lower": result.lower,
        "upper": result.upper,
        "mode": result.mode,
    }
    if include_object:
        doc["object"] = object_document(result.obj)
    doc["witness"] = [witness_document(w) for w in result.witness]
    doc["certificates"] = [certificate_document(c) for c in result.certificates]
    return doc


def report_document(report: InequalityReport) -> dict:
    values = {}
    for key, val in report.values.items():
        values[key] = result_document(val) if isinstance(val, CategoryResult) else val
    return {
        "values": values,
        "checks": [
            {
                "name": c.name,
                "lhs": list(c.lhs),
                "relation": c.relation,
                "rhs": list(c.rhs),
                "status": c.status,
            }
            for c in report.checks
        ],
        "violations": len(report.violations),
        "inconclusive": len(report.inconclusive),
    }
