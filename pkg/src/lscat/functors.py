"""Order complex K(X) and face poset χ(K), on objects and on maps."""

from __future__ import annotations

from .complex import SimplicialComplex, SimplicialMap, enumerate_simplices
from .errors import NotMonotone, NotSimplicial
from .poset import FinitePoset, MonotoneMap, is_monotone
from .search import bits


def maximal_chains(X: FinitePoset) -> list[list[int]]:
    """Saturated chains from a minimal to a maximal point, as index lists."""
    upper = X.upper_covers
    chains = []
    for start in X.canonical_indices:
        if X.down_masks[start] != 1 << start:
            continue
        stack = [[start]]
        while stack:
            path = stack.pop()
            nxt = list(bits(upper[path[-1]]))
            if not nxt:
                chains.append(path)
            for j in reversed(nxt):
                stack.append(path + [j])
    return chains


def order_complex(X: FinitePoset) -> SimplicialComplex:
    """K(X): vertices are the points, simplices the non-empty chains."""
    pts = X.points
    return SimplicialComplex(list(pts), [[pts[i] for i in c] for c in maximal_chains(X)])


def face_poset(K: SimplicialComplex) -> FinitePoset:
    """χ(K): simplices of K (as sorted vertex tuples) ordered by inclusion."""
    simplices = enumerate_simplices(K)
    masks = [K.mask_of(s) for s in simplices]
    rows = []
    for m in masks:
        r = 0
        for j, t in enumerate(masks):
            if m & ~t == 0:
                r |= 1 << j
        rows.append(r)
    return FinitePoset([s.vertices for s in simplices], rows)


def order_complex_map(f: MonotoneMap) -> SimplicialMap:
    """K(f): the same vertex assignment between order complexes."""
    if not is_monotone(f.source, f.target, f.images):
        raise NotMonotone("map is not order preserving")
    return SimplicialMap(order_complex(f.source), order_complex(f.target), f.assignment)


def face_poset_map(phi: SimplicialMap) -> MonotoneMap:
    """χ(φ): σ ↦ φ(σ)."""
    S, T = phi.source, phi.target
    for m in S.facet_masks:
        if not T.is_simplex_mask(phi.image_mask(m)):
            raise NotSimplicial("map does not send simplices to simplices")
    XS, XT = face_poset(S), face_poset(T)
    assignment = {sigma: phi.image(sigma).vertices for sigma in XS.points}
    return MonotoneMap(XS, XT, assignment)
