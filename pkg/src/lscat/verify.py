"""Independent replay of emitted reports.

Works on JSON documents only and relies on nothing but the ``complex`` and
``poset`` modules: covers are re-checked, every contiguity or fence chain is
re-validated map by map, and every collapse trace is replayed from scratch.
"""

from __future__ import annotations

from typing import Any

from .complex import SimplicialComplex, SimplicialMap, are_contiguous, build_complex
from .errors import LSCatError, VerificationError
from .poset import FinitePoset, MonotoneMap, build_poset, pointwise_comparable


def _ident(v: Any):
    return tuple(_ident(x) for x in v) if isinstance(v, list) else v


def _object(doc: dict):
    if doc["type"] == "complex":
        return build_complex([[_ident(v) for v in f] for f in doc["facets"]])
    return build_poset([_ident(p) for p in doc["points"]], [(_ident(a), _ident(b)) for a, b in doc["le"]])


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise VerificationError(message)


def _assignment(table: list) -> dict:
    return {_ident(a): _ident(b) for a, b in table}


# -- complexes ------------------------------------------------------------------


def _facet_sets(K: SimplicialComplex) -> list[frozenset]:
    return [frozenset(f.vertices) for f in K.facets]


def replay_strong_collapse(K: SimplicialComplex, steps: list, end: dict, to_point: bool) -> None:
    facets = _facet_sets(K)
    vertices = set(K.vertex_table)
    for row in steps:
        v, w = _ident(row[0]), _ident(row[1])
        _require(v in vertices and w in vertices and v != w, f"bad collapse step {row!r}")
        _require(all(w in f for f in facets if v in f), f"{v!r} is not dominated by {w!r}")
        vertices.discard(v)
        shrunk = {f - {v} for f in facets}
        facets = [f for f in shrunk if f and not any(f < g for g in shrunk)]
    end_facets = {frozenset(f.vertices) for f in _object(end).facets}
    _require(set(facets) == end_facets, "collapse replay does not reach the stated end")
    if to_point:
        _require(len(vertices) == 1, "collapse does not end at a single vertex")
    else:
        for v in vertices:
            common = set(vertices)
            for f in facets:
                if v in f:
                    common &= f
            _require(common == {v}, f"end still has dominated vertex {v!r}")


def _verify_contiguity_chain(U: SimplicialComplex, K: SimplicialComplex, chain: list) -> None:
    _require(len(chain) >= 1, "empty contiguity chain")
    try:
        maps = [SimplicialMap(U, K, _assignment(t)) for t in chain]
    except LSCatError as exc:
        raise VerificationError(f"chain entry is not simplicial: {exc}") from None
    _require(all(maps[0](v) == v for v in U.vertex_table), "chain does not start at the inclusion")
    _require(len({maps[-1](v) for v in U.vertex_table}) == 1, "chain does not end at a constant")
    for a, b in zip(maps, maps[1:]):
        _require(are_contiguous(a, b), "consecutive maps are not contiguous")


def _verify_complex_result(doc: dict, K: SimplicialComplex) -> None:
    covered = set()
    for k, (w, cert) in enumerate(zip(doc["witness"], doc["certificates"])):
        U = build_complex([[_ident(v) for v in f] for f in w["facets"]])
        for f in U.facets:
            _require(K.contains_simplex(f.vertices), f"witness[{k}] is not a subcomplex")
        covered |= set(_facet_sets(U))
        if doc["invariant"] == "scat":
            _require(cert["kind"] == "contiguity", f"certificates[{k}] has the wrong kind")
            _verify_contiguity_chain(U, K, cert["chain"])
        else:
            _require(cert["kind"] == "collapse", f"certificates[{k}] has the wrong kind")
            replay_strong_collapse(U, cert["steps"], cert["end"], to_point=True)
    _require(set(_facet_sets(K)) <= covered, "witness does not cover every facet")


# -- posets -----------------------------------------------------------------------


def _strictly_above(X: FinitePoset, alive: set, x) -> set:
    return {y for y in alive if y != x and X.leq(x, y)}


def _strictly_below(X: FinitePoset, alive: set, x) -> set:
    return {y for y in alive if y != x and X.leq(y, x)}


def _is_beat(X: FinitePoset, alive: set, x, w) -> bool:
    if w == x or w not in alive or not (X.leq(x, w) or X.leq(w, x)):
        return False
    return all(X.leq(w, y) for y in _strictly_above(X, alive, x)) and all(
        X.leq(y, w) for y in _strictly_below(X, alive, x)
    )


def replay_beat_removals(X: FinitePoset, steps: list, end: dict, to_point: bool) -> None:
    alive = set(X.points)
    for row in steps:
        x, w = _ident(row[0]), _ident(row[1])
        _require(x in alive, f"bad removal step {row!r}")
        _require(_is_beat(X, alive, x, w), f"{x!r} is not a beat point with witness {w!r}")
        alive.discard(x)
    E = _object(end)
    _require(set(E.points) == alive, "removal replay does not reach the stated end")
    _require(set(E.relations()) == {(a, b) for a in alive for b in alive if a != b and X.leq(a, b)},
             "stated end is not the induced subposet")
    if to_point:
        _require(len(alive) == 1, "removals do not end at a single point")
    else:
        for x in alive:
            _require(not any(_is_beat(X, alive, x, w) for w in alive), f"end still has beat point {x!r}")


def _verify_fence(U: FinitePoset, X: FinitePoset, chain: list) -> None:
    _require(len(chain) >= 1, "empty fence")
    try:
        maps = [MonotoneMap(U, X, _assignment(t)) for t in chain]
    except LSCatError as exc:
        raise VerificationError(f"fence entry is not monotone: {exc}") from None
    _require(all(maps[0](p) == p for p in U.points), "fence does not start at the inclusion")
    _require(len({maps[-1](p) for p in U.points}) == 1, "fence does not end at a constant")
    for a, b in zip(maps, maps[1:]):
        _require(pointwise_comparable(a, b), "consecutive maps are not comparable")


def _verify_poset_result(doc: dict, X: FinitePoset) -> None:
    covered = set()
    for k, (w, cert) in enumerate(zip(doc["witness"], doc["certificates"])):
        members = {_ident(p) for p in w["points"]}
        _require(members and members <= set(X.points), f"witness[{k}] is not a set of points")
        _require(all(y in members for x in members for y in X.points if X.leq(y, x)),
                 f"witness[{k}] is not open")
        tops = {x for x in members if not any(y != x and X.leq(x, y) for y in members)}
        _require(tops == {_ident(p) for p in w["maximal"]}, f"witness[{k}] lists the wrong maximal points")
        covered |= members
        U = X.subposet(members)
        if doc["invariant"] == "cat":
            _require(cert["kind"] == "fence", f"certificates[{k}] has the wrong kind")
            _verify_fence(U, X, cert["chain"])
        else:
            _require(cert["kind"] == "collapse", f"certificates[{k}] has the wrong kind")
            replay_beat_removals(U, cert["steps"], cert["end"], to_point=True)
    _require(covered == set(X.points), "witness does not cover every point")


# -- entry points -------------------------------------------------------------------


def verify_result(doc: dict, obj=None) -> bool:
    """Re-validate one serialized CategoryResult; raises VerificationError."""
    if obj is None:
        obj = _object(doc["object"])
    _require(len(doc["witness"]) == len(doc["certificates"]), "one certificate per witness element")
    _require(len(doc["witness"]) == doc["upper"] + 1, "witness size does not match the upper bound")
    _require(doc["lower"] <= doc["upper"], "empty interval")
    _require(doc["exact"] == (doc["lower"] == doc["upper"]), "exact flag disagrees with the bounds")
    if doc["invariant"] in ("scat", "gscat"):
        _require(isinstance(obj, SimplicialComplex), "simplicial invariant on a poset")
        _verify_complex_result(doc, obj)
    elif doc["invariant"] in ("cat", "gcat"):
        _require(isinstance(obj, FinitePoset), "finite-space invariant on a complex")
        _verify_poset_result(doc, obj)
    else:
        raise VerificationError(f"unknown invariant {doc['invariant']!r}")
    return True


def verify_core(doc: dict) -> bool:
    start = _object(doc["object"])
    trace = doc["trace"]
    if isinstance(start, SimplicialComplex):
        replay_strong_collapse(start, trace["steps"], trace["end"], to_point=False)
    else:
        replay_beat_removals(start, trace["steps"], trace["end"], to_point=False)
    _require(trace["end"] == doc["core"], "trace end differs from the reported core")
    return True


def verify_report(doc: dict) -> int:
    """Verify any report emitted by the command line; returns the number of checks run."""
    if "invariant" in doc:
        verify_result(doc)
        return 1
    if "trace" in doc:
        verify_core(doc)
        return 1
    if "values" in doc:
        n = 0
        for val in doc["values"].values():
            if isinstance(val, dict):
                verify_result(val)
                n += 1
        return n
    raise VerificationError("nothing to verify in this document")
