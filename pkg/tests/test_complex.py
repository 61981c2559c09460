import itertools
import random

import pytest

from lscat import (
    Simplex,
    SimplicialMap,
    are_contiguous,
    barycentric_subdivision,
    build_complex,
    complexes_isomorphic,
    constant_map,
    enumerate_simplices,
    generated_subcomplex,
    identity_map,
    same_contiguity_class,
)
from lscat.complex import compose, contiguity_class, inclusion_map
from lscat.errors import DuplicateVertexInFace, EmptyInput, EmptySubset, MismatchedEndpoints, NotSimplicial
from lscat.search import SearchBudget, Verdict

from .oracles import (
    all_complexes,
    closure_labels,
    contiguity_matrix,
    random_complex,
    relabel_complex,
    simplicial_maps,
)

BOUNDARY = [["a", "b"], ["b", "c"], ["a", "c"]]


def test_simplex_is_canonical_and_validated():
    assert Simplex(["c", "a", "b"]) == Simplex(["a", "b", "c"])
    assert Simplex([2, "x", 1]).vertices == (1, 2, "x")
    with pytest.raises(EmptyInput):
        Simplex([])
    with pytest.raises(DuplicateVertexInFace):
        Simplex(["a", "a"])


def test_build_complex_normalizes():
    assert build_complex([["a", "b"], ["b", "a"]]).facets == (Simplex("ab"),)
    assert build_complex([["a", "b", "c"], ["a", "b"]]).facets == (Simplex("abc"),)
    K = build_complex(BOUNDARY)
    assert len(K.facets) == 3 and K.n_vertices == 3
    assert K.vertex_table == ("a", "b", "c")


def test_build_complex_errors_name_the_face():
    with pytest.raises(EmptyInput):
        build_complex([])
    with pytest.raises(EmptyInput) as exc:
        build_complex([["a"], []])
    assert exc.value.field == "facets[1]"
    with pytest.raises(DuplicateVertexInFace) as exc:
        build_complex([["a", "b"], ["c", "c"]])
    assert exc.value.field == "facets[1]"


def test_enumerate_simplices():
    assert len(enumerate_simplices(build_complex([["a", "b", "c"]]))) == 7
    simplices = enumerate_simplices(build_complex(BOUNDARY))
    assert len(simplices) == 6
    assert [s.dim for s in simplices] == [0, 0, 0, 1, 1, 1]
    assert enumerate_simplices(build_complex([["v"]])) == [Simplex(["v"])]


def test_generated_subcomplex():
    K = build_complex(BOUNDARY)
    path = generated_subcomplex(K, [Simplex("ab"), Simplex("bc")])
    assert set(path.facets) == {Simplex("ab"), Simplex("bc")}
    edge = generated_subcomplex(K, [Simplex("ac")])
    assert edge.facets == (Simplex("ac"),) and edge.n_vertices == 2
    D = build_complex([["a", "b", "c"]])
    assert generated_subcomplex(D, D.facets) == D
    with pytest.raises(EmptySubset):
        generated_subcomplex(K, [])


def test_simplicial_map_validation():
    K = build_complex(BOUNDARY)
    E = build_complex([["x", "y"]])
    with pytest.raises(NotSimplicial):
        SimplicialMap(build_complex([["a", "b", "c"]]), K, {"a": "a", "b": "b", "c": "c"})
    m = SimplicialMap(E, K, {"x": "a", "y": "b"})
    assert m("x") == "a" and m.table() == [["x", "a"], ["y", "b"]]


def test_are_contiguous_examples():
    E = build_complex([["a", "b"]])
    assert are_contiguous(identity_map(E), constant_map(E, E, "a"))
    K = build_complex(BOUNDARY)
    assert not are_contiguous(identity_map(K), constant_map(K, K, "a"))
    assert are_contiguous(identity_map(K), identity_map(K))
    with pytest.raises(MismatchedEndpoints):
        are_contiguous(identity_map(K), identity_map(E))


def test_same_contiguity_class_examples():
    D = build_complex([["a", "b", "c"]])
    K = build_complex(BOUNDARY)
    out = same_contiguity_class(identity_map(K), identity_map(K), SearchBudget())
    assert out.verdict is Verdict.YES and len(out.certificate.chain) == 1
    out = same_contiguity_class(identity_map(D), constant_map(D, D, "a"), SearchBudget())
    assert out.verdict is Verdict.YES
    assert out.certificate.check(identity_map(D), constant_map(D, D, "a"))
    assert same_contiguity_class(identity_map(K), constant_map(K, K, "a"), SearchBudget()).verdict is Verdict.NO


def test_same_contiguity_class_budget_exhaustion():
    H = barycentric_subdivision(build_complex(BOUNDARY))
    far = next(v for v in H.vertex_table if len(v) == 2 and "a" not in v)
    a, b = constant_map(H, H, ("a",)), constant_map(H, H, far)
    out = same_contiguity_class(a, b, SearchBudget(max_visited_states=1))
    assert out.verdict is Verdict.EXHAUSTED and out.certificate is None
    out = same_contiguity_class(a, b, SearchBudget())
    assert out.verdict is Verdict.YES and out.certificate.check(a, b)


def test_barycentric_subdivision_examples():
    sd = barycentric_subdivision(build_complex([["a", "b"]]))
    assert sd.n_vertices == 3 and len(sd.facets) == 2
    sd = barycentric_subdivision(build_complex(BOUNDARY))
    assert sd.n_vertices == 6 and len(sd.facets) == 6
    assert all(len(f.vertices) == 2 for f in sd.facets)
    assert barycentric_subdivision(build_complex([["v"]])).n_vertices == 1


def test_complexes_isomorphic_examples():
    K = build_complex(BOUNDARY)
    assert complexes_isomorphic(K, build_complex([["x", "y"], ["y", "z"], ["z", "x"]]))
    assert not complexes_isomorphic(K, build_complex([["a", "b", "c"]]))
    assert complexes_isomorphic(build_complex([["a", "b"], ["b", "c"]]), build_complex([["x", "y"], ["y", "z"]]))


def test_compose_and_inclusion():
    K = build_complex(BOUNDARY)
    U = build_complex([["a", "b"]])
    i = inclusion_map(U, K)
    c = constant_map(K, K, "c")
    assert compose(c, i).is_constant()
    assert compose(identity_map(K), i) == i


# -- oracle agreement --------------------------------------------------------------


@pytest.mark.parametrize("K", all_complexes(3) + [build_complex([["a", "b"], ["b", "c"], ["c", "d"], ["d", "a"]])],
                         ids=lambda K: "|".join("".join(map(str, f.vertices)) for f in K.facets))
def test_contiguity_classes_match_brute_force_closure(K):
    maps = simplicial_maps(K, K)
    labels = closure_labels(contiguity_matrix(K, K, maps))
    objs = [SimplicialMap._raw(K, K, [int(x) for x in row]) for row in maps]
    for idx in range(0, len(objs), max(1, len(objs) // 8)):
        cls = contiguity_class(objs[idx], 10**6)
        expected = {tuple(int(x) for x in maps[j]) for j in range(len(maps)) if labels[j] == labels[idx]}
        assert cls == expected


def test_facet_check_suffices_for_contiguity():
    rng = random.Random(7)
    for _ in range(40):
        K = random_complex(rng, 5)
        maps = simplicial_maps(K, K)
        full = contiguity_matrix(K, K, maps)
        picks = [rng.randrange(len(maps)) for _ in range(6)]
        for a, b in itertools.product(picks, picks):
            phi = SimplicialMap._raw(K, K, [int(x) for x in maps[a]])
            psi = SimplicialMap._raw(K, K, [int(x) for x in maps[b]])
            assert are_contiguous(phi, psi) == bool(full[a, b])


def test_isomorphism_is_an_equivalence_on_a_pool():
    rng = random.Random(3)
    pool = all_complexes(3)
    pool += [relabel_complex(K, rng) for K in pool]
    for K in pool:
        assert complexes_isomorphic(K, K)
        for L in pool:
            assert complexes_isomorphic(K, L) == complexes_isomorphic(L, K)
