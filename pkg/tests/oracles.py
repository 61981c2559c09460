"""Random instance generators and brute-force reference implementations.

The oracles enumerate whole map spaces and use the full contiguity /
comparability relations, so they share no search code with the package.
"""

from __future__ import annotations

import itertools
import random

import networkx as nx
import numpy as np
from networkx.algorithms import isomorphism as nxiso
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from lscat import build_complex, build_poset
from lscat.complex import SimplicialComplex
from lscat.poset import FinitePoset

# -- generators ----------------------------------------------------------------


def random_poset(rng: random.Random, max_points: int = 8, min_points: int = 1) -> FinitePoset:
    n = rng.randint(min_points, max_points)
    p = rng.uniform(0.1, 0.6)
    pts = [f"p{i}" for i in range(n)]
    rel = [(pts[i], pts[j]) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    rng.shuffle(pts)
    return build_poset(pts, rel)


def random_complex(rng: random.Random, max_vertices: int = 6, max_facets: int = 6, max_size: int = 4) -> SimplicialComplex:
    n = rng.randint(1, max_vertices)
    verts = [f"v{i}" for i in range(n)]
    k = rng.randint(1, max_facets)
    faces = [rng.sample(verts, rng.randint(1, min(max_size, n))) for _ in range(k)]
    used = {v for f in faces for v in f}
    faces += [[v] for v in verts if v not in used and rng.random() < 0.3]
    return build_complex(faces)


def relabel_complex(K: SimplicialComplex, rng: random.Random) -> SimplicialComplex:
    vs = list(K.vertex_table)
    new = [f"w{i}" for i in range(len(vs))]
    rng.shuffle(new)
    m = dict(zip(vs, new))
    return build_complex([[m[v] for v in f.vertices] for f in K.facets])


def relabel_poset(X: FinitePoset, rng: random.Random) -> FinitePoset:
    new = [f"q{i}" for i in range(len(X))]
    rng.shuffle(new)
    m = dict(zip(X.points, new))
    return build_poset([m[p] for p in X.points], [(m[a], m[b]) for a, b in X.relations()])


# -- exhaustive families ----------------------------------------------------------


def _poset_graph(X: FinitePoset) -> nx.DiGraph:
    G = nx.DiGraph()
    G.add_nodes_from(X.points)
    G.add_edges_from(X.relations())
    return G


def _complex_graph(K: SimplicialComplex) -> nx.Graph:
    G = nx.Graph()
    for v in K.vertex_table:
        G.add_node(("v", v), side=0)
    for k, f in enumerate(K.facets):
        G.add_node(("f", k), side=1)
        for v in f.vertices:
            G.add_edge(("v", v), ("f", k))
    return G


def nx_posets_isomorphic(X: FinitePoset, Y: FinitePoset) -> bool:
    if len(X) != len(Y):
        return False
    return nxiso.DiGraphMatcher(_poset_graph(X), _poset_graph(Y)).is_isomorphic()


def nx_complexes_isomorphic(K: SimplicialComplex, L: SimplicialComplex) -> bool:
    if K.n_vertices != L.n_vertices or len(K.facets) != len(L.facets):
        return False
    match = nxiso.categorical_node_match("side", None)
    return nxiso.GraphMatcher(_complex_graph(K), _complex_graph(L), node_match=match).is_isomorphic()


def _dedupe(objs, iso):
    reps = []
    for o in objs:
        if not any(iso(o, r) for r in reps):
            reps.append(o)
    return reps


def all_posets(max_points: int) -> list[FinitePoset]:
    """Every poset with 1..max_points points, one per isomorphism class."""
    out = []
    for n in range(1, max_points + 1):
        pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
        seen = {}
        for bitsel in range(1 << len(pairs)):
            rel = [pairs[k] for k in range(len(pairs)) if bitsel >> k & 1]
            X = build_poset(list(range(n)), rel)
            key = frozenset(X.relations())
            if key in seen:
                continue
            seen[key] = X
        by_inv: dict = {}
        for X in seen.values():
            inv = (len(X.relations()), tuple(sorted(bin(m).count("1") for m in X.down_masks)))
            by_inv.setdefault(inv, []).append(X)
        for group in by_inv.values():
            out.extend(_dedupe(group, nx_posets_isomorphic))
    return out


def all_complexes(max_vertices: int) -> list[SimplicialComplex]:
    """Every complex on 1..max_vertices vertices (all used), one per isomorphism class."""
    out = []
    for n in range(1, max_vertices + 1):
        subsets = [s for r in range(1, n + 1) for s in itertools.combinations(range(n), r)]
        found = []

        def extend(start, chosen):
            if chosen and set().union(*map(set, chosen)) == set(range(n)):
                found.append(build_complex([list(c) for c in chosen]))
            for k in range(start, len(subsets)):
                s = set(subsets[k])
                if any(s <= set(c) or set(c) <= s for c in chosen):
                    continue
                chosen.append(subsets[k])
                extend(k + 1, chosen)
                chosen.pop()

        extend(0, [])
        by_inv: dict = {}
        for K in found:
            inv = tuple(sorted(len(f.vertices) for f in K.facets))
            by_inv.setdefault(inv, []).append(K)
        for group in by_inv.values():
            out.extend(_dedupe(group, nx_complexes_isomorphic))
    return out


# -- map spaces ---------------------------------------------------------------------


def _simplex_table(K: SimplicialComplex) -> np.ndarray:
    table = np.zeros(1 << K.n_vertices, dtype=bool)
    for m in range(1, 1 << K.n_vertices):
        table[m] = any(m & ~f == 0 for f in K.facet_masks)
    return table


def _or_bits(idx) -> int:
    m = 0
    for i in idx:
        m |= 1 << i
    return m


def simplicial_maps(S: SimplicialComplex, T: SimplicialComplex) -> np.ndarray:
    """All simplicial maps S -> T as rows of target indices."""
    table = _simplex_table(T)
    rows = []
    facets = [[S.index(v) for v in f.vertices] for f in S.facets]
    for imgs in itertools.product(range(T.n_vertices), repeat=S.n_vertices):
        if all(table[_or_bits(imgs[i] for i in f)] for f in facets):
            rows.append(imgs)
    return np.array(rows, dtype=np.int64).reshape(-1, S.n_vertices)


def monotone_maps(S: FinitePoset, T: FinitePoset) -> np.ndarray:
    le_s, le_t = leq_array(S), leq_array(T)
    pairs = [(i, j) for i in range(len(S)) for j in range(len(S)) if i != j and le_s[i, j]]
    rows = [imgs for imgs in itertools.product(range(len(T)), repeat=len(S)) if all(le_t[imgs[i], imgs[j]] for i, j in pairs)]
    return np.array(rows, dtype=np.int64).reshape(-1, len(S))


def leq_array(X: FinitePoset) -> np.ndarray:
    n = len(X)
    return np.array([[X.leq(X.points[i], X.points[j]) for j in range(n)] for i in range(n)], dtype=bool)


def contiguity_matrix(S: SimplicialComplex, T: SimplicialComplex, maps: np.ndarray) -> np.ndarray:
    """Boolean matrix of the contiguity relation, tested on every simplex of S."""
    table = _simplex_table(T)
    simplices = [list(s) for s in _all_simplices(S)]
    ok = np.ones((len(maps), len(maps)), dtype=bool)
    for s in simplices:
        mask = np.zeros(len(maps), dtype=np.int64)
        for i in s:
            mask |= np.left_shift(1, maps[:, i])
        ok &= table[mask[:, None] | mask[None, :]]
    return ok


def _all_simplices(S: SimplicialComplex):
    out = set()
    for f in S.facets:
        idx = [S.index(v) for v in f.vertices]
        for r in range(1, len(idx) + 1):
            out.update(itertools.combinations(idx, r))
    return sorted(out)


def comparability_matrix(T: FinitePoset, maps: np.ndarray) -> np.ndarray:
    le = leq_array(T)
    below = np.ones((len(maps), len(maps)), dtype=bool)
    above = np.ones((len(maps), len(maps)), dtype=bool)
    for i in range(maps.shape[1]):
        col = maps[:, i]
        below &= le[col[:, None], col[None, :]]
        above &= le[col[None, :], col[:, None]]
    return below | above


def closure_labels(relation: np.ndarray) -> np.ndarray:
    """Component labels of the equivalence relation generated by ``relation``."""
    _, labels = connected_components(csr_matrix(relation), directed=False)
    return labels


def _row_index(maps: np.ndarray, row) -> int:
    hits = np.where((maps == np.asarray(row)).all(axis=1))[0]
    assert len(hits) == 1
    return int(hits[0])


# -- unrestricted category values ---------------------------------------------------


def _min_cover(universe: frozenset, candidates: list[frozenset]) -> int:
    cands = [c for c in candidates if not any(c < d for d in candidates)]
    for k in range(1, len(universe) + 1):
        for combo in itertools.combinations(cands, k):
            if frozenset().union(*combo) >= universe:
                return k - 1
    raise AssertionError("no cover")


def brute_subcomplex_categorical(U: SimplicialComplex, K: SimplicialComplex) -> bool:
    maps = simplicial_maps(U, K)
    labels = closure_labels(contiguity_matrix(U, K, maps))
    start = labels[_row_index(maps, [K.index(v) for v in U.vertex_table])]
    consts = [labels[_row_index(maps, [t] * U.n_vertices)] for t in range(K.n_vertices)]
    return start in consts


def brute_scat(K: SimplicialComplex) -> int:
    """Minimum cover by categorical subcomplexes, over every subcomplex."""
    simplices = _all_simplices(K)
    cats = []
    closed = []
    # every subcomplex is generated by an antichain of simplices
    sets = [frozenset(s) for s in simplices]
    for r in range(1, len(sets) + 1):
        for combo in itertools.combinations(sets, r):
            if any(a < b for a in combo for b in combo):
                continue
            closed.append(combo)
    for combo in closed:
        U = build_complex([[K.vertex_table[i] for i in sorted(s)] for s in combo])
        if brute_subcomplex_categorical(U, K):
            faces = frozenset(t for t in sets if any(t <= s for s in combo))
            cats.append(faces)
    return _min_cover(frozenset(sets), cats)


def brute_open_categorical(members: list, X: FinitePoset) -> bool:
    U = X.subposet(members)
    maps = monotone_maps(U, X)
    labels = closure_labels(comparability_matrix(X, maps))
    start = labels[_row_index(maps, [X.index(p) for p in U.points])]
    consts = [labels[_row_index(maps, [t] * len(U))] for t in range(len(X))]
    return start in consts


def brute_cat(X: FinitePoset) -> int:
    """Minimum cover by categorical open sets, over every open set."""
    le = leq_array(X)
    n = len(X)
    cats = []
    for r in range(1, n + 1):
        for combo in itertools.combinations(range(n), r):
            s = set(combo)
            if any(le[j, i] and j not in s for i in s for j in range(n)):
                continue
            if brute_open_categorical([X.points[i] for i in combo], X):
                cats.append(frozenset(combo))
    return _min_cover(frozenset(range(n)), cats)
