"""Finite abstract simplicial complexes, simplicial maps and contiguity.

Complexes are stored by their facets. Internally every facet is a bitmask
over the complex's vertex table, so simplex membership is a subset test
against the facet masks.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Any, Iterable, Iterator, Mapping, Optional, Sequence

from .errors import (
    DuplicateVertexInFace,
    EmptyInput,
    EmptySubset,
    MismatchedEndpoints,
    NotASubcomplex,
    NotSimplicial,
    UnknownPoint,
)
from .search import (
    DEFAULT_BUDGET,
    Deadline,
    Outcome,
    SearchBudget,
    Verdict,
    bfs,
    bits,
    canonical_key,
    component,
)


@dataclass(frozen=True)
class Simplex:
    """A non-empty set of vertices kept in canonical sorted order."""

    vertices: tuple

    def __init__(self, vertices: Iterable[Any]):
        vs = tuple(vertices)
        if not vs:
            raise EmptyInput("a simplex needs at least one vertex")
        if len(set(vs)) != len(vs):
            raise DuplicateVertexInFace(f"repeated vertex in {list(vs)!r}")
        object.__setattr__(self, "vertices", tuple(sorted(vs, key=canonical_key)))

    @property
    def dim(self) -> int:
        return len(self.vertices) - 1

    def sort_key(self) -> tuple:
        return (len(self.vertices), tuple(canonical_key(v) for v in self.vertices))

    def __iter__(self) -> Iterator:
        return iter(self.vertices)

    def __len__(self) -> int:
        return len(self.vertices)

    def __contains__(self, v) -> bool:
        return v in self.vertices

    def issubset(self, other: "Simplex") -> bool:
        return set(self.vertices) <= set(other.vertices)

    def __repr__(self) -> str:
        return "{" + ",".join(map(str, self.vertices)) + "}"


def _maximal_masks(masks: Iterable[int]) -> list[int]:
    uniq = sorted(set(masks), key=lambda m: -bin(m).count("1"))
    kept: list[int] = []
    for m in uniq:
        if not any(m & ~k == 0 for k in kept):
            kept.append(m)
    return kept


class SimplicialComplex:
    """A finite simplicial complex given by its facets.

    ``vertex_table`` keeps first-appearance order; facets are sorted by
    (dimension, canonical vertex order). Instances are immutable.
    """

    __slots__ = ("_vertices", "_index", "_masks", "_facets", "_canon", "_simplex_cache", "_hash")

    def __init__(self, vertex_table: Sequence[Any], facets: Iterable[Iterable[Any]]):
        index = {}
        for v in vertex_table:
            if v in index:
                raise DuplicateVertexInFace(f"vertex {v!r} listed twice in the vertex table")
            index[v] = len(index)
        masks = []
        for face in facets:
            s = Simplex(face)
            m = 0
            for v in s:
                if v not in index:
                    raise UnknownPoint(f"facet vertex {v!r} is not in the vertex table")
                m |= 1 << index[v]
            masks.append(m)
        self._setup(tuple(vertex_table), index, masks)

    def _setup(self, vertices: tuple, index: dict, masks: Iterable[int]) -> None:
        masks = list(masks)
        covered = 0
        for m in masks:
            covered |= m
        for i in range(len(vertices)):
            if not covered >> i & 1:
                masks.append(1 << i)
        kept = _maximal_masks(masks)
        self._vertices = vertices
        self._index = index
        canon = sorted(range(len(vertices)), key=lambda i: canonical_key(vertices[i]))
        self._canon = tuple(canon)
        rank = {i: r for r, i in enumerate(canon)}
        kept.sort(key=lambda m: (bin(m).count("1"), sorted(rank[i] for i in bits(m))))
        self._masks = tuple(kept)
        self._facets = tuple(Simplex(vertices[i] for i in bits(m)) for m in kept)
        self._simplex_cache: dict[int, bool] = {}
        self._hash = None

    @classmethod
    def _from_masks(cls, parent: "SimplicialComplex", masks: Iterable[int]) -> "SimplicialComplex":
        """Complex spanned by facet masks given in ``parent``'s vertex indexing."""
        masks = list(masks)
        used = 0
        for m in masks:
            used |= m
        old = [i for i in range(len(parent._vertices)) if used >> i & 1]
        remap = {o: n for n, o in enumerate(old)}
        verts = tuple(parent._vertices[i] for i in old)
        new_masks = []
        for m in masks:
            nm = 0
            for i in bits(m):
                nm |= 1 << remap[i]
            new_masks.append(nm)
        obj = cls.__new__(cls)
        obj._setup(verts, {v: i for i, v in enumerate(verts)}, new_masks)
        return obj

    # -- basic accessors -------------------------------------------------
    @property
    def vertex_table(self) -> tuple:
        return self._vertices

    @property
    def facets(self) -> tuple[Simplex, ...]:
        return self._facets

    @property
    def facet_masks(self) -> tuple[int, ...]:
        return self._masks

    @property
    def n_vertices(self) -> int:
        return len(self._vertices)

    @property
    def dimension(self) -> int:
        return max(len(f) for f in self._facets) - 1

    def canonical_vertices(self) -> list:
        return [self._vertices[i] for i in self._canon]

    @property
    def canonical_indices(self) -> tuple[int, ...]:
        return self._canon

    def index(self, v) -> int:
        try:
            return self._index[v]
        except KeyError:
            raise UnknownPoint(f"{v!r} is not a vertex") from None

    def has_vertex(self, v) -> bool:
        return v in self._index

    def mask_of(self, vertices: Iterable[Any]) -> int:
        m = 0
        for v in vertices:
            m |= 1 << self.index(v)
        return m

    def vertices_of(self, mask: int) -> list:
        return [self._vertices[i] for i in bits(mask)]

    def simplex_of(self, mask: int) -> Simplex:
        return Simplex(self.vertices_of(mask))

    def is_simplex_mask(self, mask: int) -> bool:
        cached = self._simplex_cache.get(mask)
        if cached is None:
            cached = mask != 0 and any(mask & ~f == 0 for f in self._masks)
            self._simplex_cache[mask] = cached
        return cached

    def contains_simplex(self, vertices: Iterable[Any]) -> bool:
        vs = list(vertices)
        if not vs or not all(v in self._index for v in vs):
            return False
        return self.is_simplex_mask(self.mask_of(vs))

    def is_subcomplex_of(self, other: "SimplicialComplex") -> bool:
        return all(other.contains_simplex(f) for f in self._facets)

    def facet_masks_containing(self, i: int) -> list[int]:
        return [m for m in self._masks if m >> i & 1]

    # -- derived complexes ----------------------------------------------
    def delete_vertex(self, v) -> "SimplicialComplex":
        """Full subcomplex on all vertices but ``v``."""
        i = self.index(v)
        if len(self._vertices) == 1:
            raise EmptySubset("cannot delete the only vertex of a complex")
        rest = [m & ~(1 << i) for m in self._masks]
        return SimplicialComplex._from_masks(self, [m for m in rest if m])

    def induced(self, vertices: Iterable[Any]) -> "SimplicialComplex":
        keep = self.mask_of(vertices)
        if not keep:
            raise EmptySubset("induced subcomplex on no vertices")
        return SimplicialComplex._from_masks(self, [m & keep for m in self._masks if m & keep])

    # -- dunder ----------------------------------------------------------
    def _key(self):
        return (frozenset(self._vertices), frozenset(self._facets))

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._key())
        return self._hash

    def __repr__(self) -> str:
        return f"SimplicialComplex({[list(f) for f in self._facets]!r})"


def build_complex(facet_lists: Sequence[Sequence[Any]]) -> SimplicialComplex:
    """Normalize a list of faces into a complex.

    >>> build_complex([["a", "b"], ["b", "a"]]).facets
    ({a,b},)
    """
    facet_lists = list(facet_lists)
    if not facet_lists:
        raise EmptyInput("no faces given")
    table: dict = {}
    for k, face in enumerate(facet_lists):
        face = list(face)
        if not face:
            raise EmptyInput("empty face", field=f"facets[{k}]")
        if len(set(face)) != len(face):
            raise DuplicateVertexInFace(f"repeated vertex in {face!r}", field=f"facets[{k}]")
        for v in face:
            table.setdefault(v, None)
    return SimplicialComplex(list(table), facet_lists)


def simplex(vertices: Iterable[Any]) -> SimplicialComplex:
    """The full simplex on ``vertices``."""
    return build_complex([list(vertices)])


def simplex_masks(K: SimplicialComplex) -> list[int]:
    """Masks of every simplex of ``K``, deduplicated, unordered."""
    seen: set[int] = set()
    for f in K.facet_masks:
        idx = list(bits(f))
        for r in range(1, len(idx) + 1):
            for combo in combinations(idx, r):
                m = 0
                for i in combo:
                    m |= 1 << i
                seen.add(m)
    return list(seen)


def enumerate_simplices(K: SimplicialComplex) -> list[Simplex]:
    """All simplices ordered by (dimension, canonical lexicographic order)."""
    out = [K.simplex_of(m) for m in simplex_masks(K)]
    out.sort(key=Simplex.sort_key)
    return out


def generated_subcomplex(K: SimplicialComplex, facet_subset: Iterable[Any]) -> SimplicialComplex:
    """Subcomplex generated by a set of simplices of ``K`` (usually facets)."""
    masks = []
    for face in facet_subset:
        vs = list(face)
        if not K.contains_simplex(vs):
            raise NotASubcomplex(f"{vs!r} is not a simplex of the complex")
        masks.append(K.mask_of(vs))
    if not masks:
        raise EmptySubset("empty facet subset")
    return SimplicialComplex._from_masks(K, masks)


class SimplicialMap:
    """Vertex map between complexes sending simplices to simplices."""

    __slots__ = ("source", "target", "images", "_hash")

    def __init__(self, source: SimplicialComplex, target: SimplicialComplex, assignment: Mapping[Any, Any]):
        images = []
        for v in source.vertex_table:
            if v not in assignment:
                raise UnknownPoint(f"no image given for vertex {v!r}")
            images.append(target.index(assignment[v]))
        extra = set(assignment) - set(source.vertex_table)
        if extra:
            raise UnknownPoint(f"assignment names non-vertices {sorted(extra, key=canonical_key)!r}")
        self.source = source
        self.target = target
        self.images = tuple(images)
        self._hash = None
        for f in source.facet_masks:
            if not target.is_simplex_mask(self.image_mask(f)):
                raise NotSimplicial(
                    f"image of facet {source.simplex_of(f)!r} is not a simplex of the target"
                )

    @classmethod
    def _raw(cls, source: SimplicialComplex, target: SimplicialComplex, images: Sequence[int]) -> "SimplicialMap":
        obj = cls.__new__(cls)
        obj.source = source
        obj.target = target
        obj.images = tuple(images)
        obj._hash = None
        return obj

    def image_mask(self, mask: int) -> int:
        out = 0
        imgs = self.images
        for i in bits(mask):
            out |= 1 << imgs[i]
        return out

    def __call__(self, v):
        return self.target.vertex_table[self.images[self.source.index(v)]]

    def image(self, s: Iterable[Any]) -> Simplex:
        return Simplex({self(v) for v in s})

    @property
    def assignment(self) -> dict:
        tv = self.target.vertex_table
        return {v: tv[i] for v, i in zip(self.source.vertex_table, self.images)}

    def table(self) -> list[list]:
        """Assignment as [source, image] pairs in canonical source order."""
        a = self.assignment
        return [[v, a[v]] for v in self.source.canonical_vertices()]

    def is_constant(self) -> bool:
        return len(set(self.images)) == 1

    def __eq__(self, other) -> bool:
        if not isinstance(other, SimplicialMap):
            return NotImplemented
        return (
            self.images == other.images
            and (self.source is other.source or self.source == other.source)
            and (self.target is other.target or self.target == other.target)
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.source, self.target, self.images))
        return self._hash

    def __repr__(self) -> str:
        return f"SimplicialMap({self.assignment!r})"


def identity_map(K: SimplicialComplex) -> SimplicialMap:
    return SimplicialMap._raw(K, K, range(K.n_vertices))


def constant_map(source: SimplicialComplex, target: SimplicialComplex, w) -> SimplicialMap:
    return SimplicialMap._raw(source, target, [target.index(w)] * source.n_vertices)


def inclusion_map(U: SimplicialComplex, K: SimplicialComplex) -> SimplicialMap:
    if not U.is_subcomplex_of(K):
        raise NotASubcomplex("not a subcomplex of the ambient complex")
    return SimplicialMap._raw(U, K, [K.index(v) for v in U.vertex_table])


def compose(outer: SimplicialMap, inner: SimplicialMap) -> SimplicialMap:
    """``outer ∘ inner``."""
    if not (inner.target is outer.source or inner.target == outer.source):
        raise MismatchedEndpoints("inner target differs from outer source")
    oi = outer.images
    return SimplicialMap._raw(inner.source, outer.target, [oi[i] for i in inner.images])


def _check_endpoints(phi: SimplicialMap, psi: SimplicialMap) -> None:
    if not (phi.source == psi.source and phi.target == psi.target):
        raise MismatchedEndpoints("maps do not share source and target")


def are_contiguous(phi: SimplicialMap, psi: SimplicialMap) -> bool:
    """Whether phi(σ) ∪ psi(σ) is a simplex for every simplex σ.

    Testing facets is enough: the union over a face is contained in the
    union over any facet containing it.
    """
    _check_endpoints(phi, psi)
    target = phi.target
    return all(
        target.is_simplex_mask(phi.image_mask(f) | psi.image_mask(f)) for f in phi.source.facet_masks
    )


def _contiguity_moves(source: SimplicialComplex, target: SimplicialComplex):
    """Neighbour generator for single-vertex moves on image tuples."""
    facet_list = source.facet_masks
    containing = [[k for k, f in enumerate(facet_list) if f >> i & 1] for i in range(source.n_vertices)]
    src_order = source.canonical_indices
    tgt_order = target.canonical_indices
    is_simplex = target.is_simplex_mask

    def neighbors(state: tuple) -> Iterator[tuple]:
        imgs = []
        for f in facet_list:
            m = 0
            for i in bits(f):
                m |= 1 << state[i]
            imgs.append(m)
        for u in src_order:
            cur = state[u]
            rel = [imgs[k] for k in containing[u]]
            for w in tgt_order:
                if w == cur:
                    continue
                bw = 1 << w
                if all(is_simplex(m | bw) for m in rel):
                    yield state[:u] + (w,) + state[u + 1:]

    return neighbors


@dataclass(frozen=True)
class ContiguityCertificate:
    """Chain of pairwise contiguous maps witnessing a contiguity class."""

    chain: tuple[SimplicialMap, ...]

    def check(self, first: Optional[SimplicialMap] = None, last: Optional[SimplicialMap] = None) -> bool:
        return check_contiguity_chain(self.chain, first, last)


def check_contiguity_chain(chain: Sequence[SimplicialMap], first=None, last=None) -> bool:
    if not chain:
        return False
    for m in chain:
        if not all(m.target.is_simplex_mask(m.image_mask(f)) for f in m.source.facet_masks):
            return False
    if any(not are_contiguous(a, b) for a, b in zip(chain, chain[1:])):
        return False
    if first is not None and chain[0] != first:
        return False
    if last is not None and chain[-1] != last:
        return False
    return True


def same_contiguity_class(
    phi: SimplicialMap, psi: SimplicialMap, budget: SearchBudget = DEFAULT_BUDGET
) -> Outcome:
    """Decide phi ~ psi by BFS over single-vertex moves.

    The search runs between the strong cores of source and target; the
    chain found there is lifted back to maps between the original complexes.
    """
    from .collapse import complex_reduction, reduced_search

    _check_endpoints(phi, psi)
    S, T = phi.source, phi.target
    if phi.images == psi.images:
        return Outcome(Verdict.YES, ContiguityCertificate((phi,)), 1)
    verdict, chain, visited = reduced_search(
        phi.images, psi.images, complex_reduction(S), complex_reduction(T), _contiguity_moves, budget
    )
    cert = None
    if verdict is Verdict.YES:
        cert = ContiguityCertificate(tuple(SimplicialMap._raw(S, T, p) for p in chain))
    return Outcome(verdict, cert, visited)


def contiguity_search_to_constant(
    phi: SimplicialMap, budget: SearchBudget = DEFAULT_BUDGET, deadline: Optional[Deadline] = None
) -> Outcome:
    """BFS from ``phi`` until any constant map is reached."""
    S, T = phi.source, phi.target
    verdict, path, visited = bfs(
        phi.images,
        lambda s: len(set(s)) == 1,
        _contiguity_moves(S, T),
        budget.max_visited_states,
        deadline or Deadline(budget),
    )
    cert = None
    if verdict is Verdict.YES:
        cert = ContiguityCertificate(tuple(SimplicialMap._raw(S, T, p) for p in path))
    return Outcome(verdict, cert, visited)


def contiguity_class(phi: SimplicialMap, max_states: int = 1_000_000) -> Optional[set[tuple]]:
    """Image tuples of every map in the contiguity class of ``phi``."""
    return component(phi.images, _contiguity_moves(phi.source, phi.target), max_states)


def barycentric_subdivision(K: SimplicialComplex) -> SimplicialComplex:
    """sd K, built as the order complex of the face poset."""
    from .functors import face_poset, order_complex

    return order_complex(face_poset(K))


# -- isomorphism -----------------------------------------------------------


def _complex_profile(K: SimplicialComplex):
    n = K.n_vertices
    sig = []
    for i in range(n):
        sig.append(tuple(sorted(bin(f).count("1") for f in K.facet_masks if f >> i & 1)))
    co = [[0] * n for _ in range(n)]
    for f in K.facet_masks:
        idx = list(bits(f))
        for a in idx:
            for b in idx:
                co[a][b] += 1
    return sig, co


def find_complex_isomorphism(K: SimplicialComplex, L: SimplicialComplex) -> Optional[dict]:
    """A vertex bijection carrying facets of K onto facets of L, or None."""
    if K.n_vertices != L.n_vertices or len(K.facet_masks) != len(L.facet_masks):
        return None
    if sorted(map(len, K.facets)) != sorted(map(len, L.facets)):
        return None
    sk, ck = _complex_profile(K)
    sl, cl = _complex_profile(L)
    if sorted(sk) != sorted(sl):
        return None
    n = K.n_vertices
    cands = [[w for w in range(n) if sl[w] == sk[u]] for u in range(n)]
    order: list[int] = []
    remaining = set(range(n))
    while remaining:
        # most constrained first, then most connected to already chosen vertices
        u = min(
            remaining,
            key=lambda x: (len(cands[x]), -sum(ck[x][y] for y in order), x),
        )
        order.append(u)
        remaining.discard(u)
    target_facets = set(L.facet_masks)
    assign = [-1] * n
    used = [False] * n

    def extend(pos: int) -> bool:
        if pos == n:
            for f in K.facet_masks:
                m = 0
                for i in bits(f):
                    m |= 1 << assign[i]
                if m not in target_facets:
                    return False
            return True
        u = order[pos]
        for w in cands[u]:
            if used[w]:
                continue
            if any(ck[u][order[q]] != cl[w][assign[order[q]]] for q in range(pos)):
                continue
            if ck[u][u] != cl[w][w]:
                continue
            assign[u] = w
            used[w] = True
            if extend(pos + 1):
                return True
            used[w] = False
        assign[u] = -1
        return False

    if not extend(0):
        return None
    return {K.vertex_table[u]: L.vertex_table[assign[u]] for u in range(n)}


def complexes_isomorphic(K: SimplicialComplex, L: SimplicialComplex) -> bool:
    return find_complex_isomorphism(K, L) is not None
