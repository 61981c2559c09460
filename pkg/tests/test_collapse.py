import random

import pytest

from lscat import (
    barycentric_subdivision,
    beat_points,
    build_complex,
    build_poset,
    complexes_isomorphic,
    core_complex,
    core_poset,
    dominated_vertices,
    face_poset,
    is_contractible_poset,
    is_strongly_collapsible,
    order_complex,
    posets_isomorphic,
    remove_beat_point,
    same_strong_homotopy_type,
    strong_collapse_step,
)
from lscat.complex import compose, identity_map, inclusion_map
from lscat.errors import NotBeatPoint, NotDominated
from lscat.fixtures import load
from lscat.poset import minimal_open

from .oracles import random_complex, random_poset, relabel_complex

BOUNDARY = [["a", "b"], ["b", "c"], ["a", "c"]]
CIRCLE = (["c", "d", "a", "b"], [("c", "a"), ("c", "b"), ("d", "a"), ("d", "b")])


def test_dominated_vertices_examples():
    assert [v for v, _ in dominated_vertices(build_complex([["a", "b", "c"]]))] == ["a", "b", "c"]
    assert dominated_vertices(build_complex(BOUNDARY)) == []
    assert dominated_vertices(build_complex([["a", "b"], ["b", "c"]])) == [("a", "b"), ("c", "b")]


def test_strong_collapse_step_examples():
    L, r = strong_collapse_step(build_complex([["a", "b", "c"]]), "c", "a")
    assert {frozenset(f.vertices) for f in L.facets} == {frozenset("ab")}
    assert r("c") == "a"
    assert compose(r, inclusion_map(L, r.source)) == identity_map(L)
    L, _ = strong_collapse_step(build_complex([["a", "b"], ["b", "c"]]), "a", "b")
    assert {frozenset(f.vertices) for f in L.facets} == {frozenset("bc")}
    with pytest.raises(NotDominated):
        strong_collapse_step(build_complex(BOUNDARY), "a", "b")


def test_core_complex_examples():
    core, trace = core_complex(build_complex([["a", "b", "c", "d"]]))
    assert core.n_vertices == 1 and len(trace) == 3
    K = build_complex(BOUNDARY)
    core, trace = core_complex(K)
    assert core == K and len(trace) == 0
    core, _ = core_complex(load("punctured_octahedron"))
    assert core.n_vertices > 1


def test_strong_collapsibility_examples():
    assert is_strongly_collapsible(build_complex([["a", "b", "c"]]))
    assert not is_strongly_collapsible(build_complex(BOUNDARY))
    assert is_strongly_collapsible(build_complex([["a", "b"], ["b", "c"]]))


def test_same_strong_homotopy_type_examples():
    rng = random.Random(0)
    assert same_strong_homotopy_type(build_complex([["a", "b", "c"]]), build_complex([["p"]]))
    K = build_complex(BOUNDARY)
    sd = barycentric_subdivision(K)
    assert core_complex(sd)[0] == sd
    assert not same_strong_homotopy_type(K, sd)
    for _ in range(10):
        L = random_complex(rng, 6)
        assert same_strong_homotopy_type(L, relabel_complex(L, rng))


def test_beat_points_examples():
    C = build_poset(list("abc"), [("a", "b"), ("b", "c")])
    found = {b.point: b.direction for b in beat_points(C)}
    assert found == {"a": "up", "b": "both", "c": "down"}
    assert beat_points(build_poset(*CIRCLE)) == []
    assert beat_points(build_poset(["p"], [])) == []


def test_remove_beat_point_examples():
    C = build_poset(list("abc"), [("a", "b"), ("b", "c")])
    Y, r = remove_beat_point(C, "a")
    assert Y.points == ("b", "c") and r("a") == "b"
    with pytest.raises(NotBeatPoint):
        remove_beat_point(build_poset(*CIRCLE), "a")
    Y, _ = remove_beat_point(build_poset(["a", "b"], [("a", "b")]), "a")
    assert len(Y) == 1


def test_core_poset_examples():
    C = build_poset(list("abcd"), [("a", "b"), ("b", "c"), ("c", "d")])
    assert len(core_poset(C)[0]) == 1
    X = build_poset(*CIRCLE)
    assert core_poset(X)[0] == X
    core, trace = core_poset(load("core_raises_gcat"))
    assert posets_isomorphic(core, load("core_raises_gcat_core"))
    assert len(trace) == 4


def test_contractibility_examples():
    top = build_poset(list("abc"), [("a", "c"), ("b", "c")])
    assert is_contractible_poset(top)
    assert not is_contractible_poset(build_poset(*CIRCLE))
    rng = random.Random(1)
    for _ in range(20):
        X = random_poset(rng, 7)
        for x in X.points:
            assert is_contractible_poset(minimal_open(X, x).subposet())


def test_core_idempotence():
    rng = random.Random(21)
    for _ in range(40):
        K = random_complex(rng, 7)
        core = core_complex(K)[0]
        assert core_complex(core)[0] == core
        assert dominated_vertices(core) == []
        X = random_poset(rng, 8)
        P = core_poset(X)[0]
        assert core_poset(P)[0] == P
        assert beat_points(P) == []


def test_collapsibility_through_the_functors():
    rng = random.Random(22)
    for _ in range(60):
        X = random_poset(rng, 8)
        assert is_contractible_poset(X) == is_strongly_collapsible(order_complex(X))
        K = random_complex(rng, 5)
        assert is_strongly_collapsible(K) == is_contractible_poset(face_poset(K))
        assert is_strongly_collapsible(K) == is_strongly_collapsible(barycentric_subdivision(K))


def test_randomized_cores_are_isomorphic():
    rng = random.Random(23)
    for _ in range(30):
        K = random_complex(rng, 7)
        assert complexes_isomorphic(core_complex(K)[0], core_complex(K, random.Random(rng.random()))[0])
        X = random_poset(rng, 8)
        assert posets_isomorphic(core_poset(X)[0], core_poset(X, random.Random(rng.random()))[0])
