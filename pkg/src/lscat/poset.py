"""Finite T0-spaces as partial orders.

Open sets of the order topology are the down-sets. Points are stored in a
linear extension (x < y implies index(x) < index(y)), which lets beat
points and contractibility be tested with a handful of bit operations.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Iterable, Iterator, Mapping, Optional, Sequence

from .errors import (
    CycleDetected,
    DuplicatePoint,
    LimitExceeded,
    MismatchedEndpoints,
    NotAntichain,
    NotMonotone,
    NotOpen,
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

OPEN_SET_LIMIT = 1 << 20


def _closure(n: int, rows: list[int]) -> list[int]:
    """Reflexive-transitive closure of ``rows[i]`` = set of j with i ≤ j."""
    rows = [r | (1 << i) for i, r in enumerate(rows)]
    for k in range(n):
        bk = 1 << k
        rk = rows[k]
        for i in range(n):
            if rows[i] & bk:
                rows[i] |= rk
    return rows


class FinitePoset:
    """A finite partially ordered set (equivalently a finite T0-space)."""

    __slots__ = ("_points", "_index", "_down", "_up", "_canon", "_lower_covers", "_upper_covers", "_hash")

    def __init__(self, points: Sequence[Any], up_rows: Sequence[int]):
        """Build from points and closed ``up_rows`` (bit j of row i set iff p_i ≤ p_j).

        The relation must already be a partial order; use :func:`build_poset`
        for validated construction from generating pairs.
        """
        n = len(points)
        down = [0] * n
        for i, r in enumerate(up_rows):
            for j in bits(r):
                down[j] |= 1 << i
        height = [0] * n
        order = sorted(range(n), key=lambda i: bin(down[i]).count("1"))
        for i in order:
            below = down[i] & ~(1 << i)
            height[i] = max((height[j] + 1 for j in bits(below)), default=0)
        lin = sorted(range(n), key=lambda i: (height[i], canonical_key(points[i])))
        pos = {old: new for new, old in enumerate(lin)}

        def remap(m: int) -> int:
            out = 0
            for j in bits(m):
                out |= 1 << pos[j]
            return out

        self._points = tuple(points[i] for i in lin)
        self._index = {p: i for i, p in enumerate(self._points)}
        self._up = tuple(remap(up_rows[i]) for i in lin)
        self._down = tuple(remap(down[i]) for i in lin)
        self._canon = tuple(sorted(range(n), key=lambda i: canonical_key(self._points[i])))
        self._lower_covers = None
        self._upper_covers = None
        self._hash = None

    # -- accessors ---------------------------------------------------------
    @property
    def points(self) -> tuple:
        return self._points

    def __len__(self) -> int:
        return len(self._points)

    @property
    def down_masks(self) -> tuple[int, ...]:
        return self._down

    @property
    def up_masks(self) -> tuple[int, ...]:
        return self._up

    @property
    def canonical_indices(self) -> tuple[int, ...]:
        return self._canon

    def canonical_points(self) -> list:
        return [self._points[i] for i in self._canon]

    @property
    def full_mask(self) -> int:
        return (1 << len(self._points)) - 1

    def index(self, x) -> int:
        try:
            return self._index[x]
        except KeyError:
            raise UnknownPoint(f"{x!r} is not a point") from None

    def __contains__(self, x) -> bool:
        return x in self._index

    def mask_of(self, pts: Iterable[Any]) -> int:
        m = 0
        for p in pts:
            m |= 1 << self.index(p)
        return m

    def points_of(self, mask: int) -> list:
        """Points of ``mask`` in canonical order."""
        return [self._points[i] for i in self._canon if mask >> i & 1]

    def leq(self, x, y) -> bool:
        return bool(self._up[self.index(x)] >> self.index(y) & 1)

    def lt(self, x, y) -> bool:
        return x != y and self.leq(x, y)

    def comparable(self, x, y) -> bool:
        return self.leq(x, y) or self.leq(y, x)

    @property
    def leq_matrix(self) -> tuple[tuple[bool, ...], ...]:
        n = len(self._points)
        return tuple(tuple(bool(self._up[i] >> j & 1) for j in range(n)) for i in range(n))

    def relations(self) -> list[tuple]:
        """All strict pairs (x, y) with x < y, canonical order."""
        out = []
        for i in self._canon:
            for j in self._canon:
                if i != j and self._up[i] >> j & 1:
                    out.append((self._points[i], self._points[j]))
        return out

    def cover_relations(self) -> list[tuple]:
        """Hasse diagram edges (x, y) with y covering x, canonical order."""
        lc = self.lower_covers
        return [
            (self._points[j], self._points[i])
            for i in self._canon
            for j in self._canon
            if lc[i] >> j & 1
        ]

    @property
    def lower_covers(self) -> tuple[int, ...]:
        if self._lower_covers is None:
            self._lower_covers = tuple(
                _maximal_in(self, self._down[i] & ~(1 << i)) for i in range(len(self._points))
            )
        return self._lower_covers

    @property
    def upper_covers(self) -> tuple[int, ...]:
        if self._upper_covers is None:
            self._upper_covers = tuple(
                _minimal_in(self, self._up[i] & ~(1 << i)) for i in range(len(self._points))
            )
        return self._upper_covers

    def is_open_mask(self, mask: int) -> bool:
        return all(self._down[i] & ~mask == 0 for i in bits(mask))

    def down_closure(self, mask: int) -> int:
        out = 0
        for i in bits(mask):
            out |= self._down[i]
        return out

    def subposet(self, pts: Iterable[Any]) -> "FinitePoset":
        return self.subposet_mask(self.mask_of(pts))

    def subposet_mask(self, mask: int) -> "FinitePoset":
        idx = list(bits(mask))
        pos = {o: n for n, o in enumerate(idx)}
        rows = []
        for i in idx:
            r = 0
            for j in bits(self._up[i] & mask):
                r |= 1 << pos[j]
            rows.append(r)
        return FinitePoset([self._points[i] for i in idx], rows)

    # -- dunder --------------------------------------------------------------
    def _key(self):
        return (frozenset(self._points), frozenset(self.relations()))

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, FinitePoset):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._key())
        return self._hash

    def __repr__(self) -> str:
        return f"FinitePoset({list(self.canonical_points())!r}, {self.cover_relations()!r})"


def _maximal_in(X: FinitePoset, mask: int) -> int:
    out = 0
    up = X.up_masks
    for i in bits(mask):
        if up[i] & mask == 1 << i:
            out |= 1 << i
    return out


def _minimal_in(X: FinitePoset, mask: int) -> int:
    out = 0
    down = X.down_masks
    for i in bits(mask):
        if down[i] & mask == 1 << i:
            out |= 1 << i
    return out


def build_poset(points: Sequence[Any], relations: Iterable[Sequence[Any]]) -> FinitePoset:
    """Partial order generated by ``relations`` (pairs meaning first ≤ second)."""
    points = list(points)
    index = {}
    for k, p in enumerate(points):
        if p in index:
            raise DuplicatePoint(f"point {p!r} declared twice", field=f"points[{k}]")
        index[p] = k
    n = len(points)
    rows = [0] * n
    pairs = []
    for k, pair in enumerate(relations):
        a, b = pair
        for x in (a, b):
            if x not in index:
                raise UnknownPoint(f"{x!r} is not a declared point", field=f"le[{k}]")
        rows[index[a]] |= 1 << index[b]
        pairs.append((k, a, b))
    rows = _closure(n, rows)
    for k, a, b in pairs:
        ia, ib = index[a], index[b]
        if ia != ib and rows[ib] >> ia & 1:
            raise CycleDetected(
                f"{a!r} ≤ {b!r} closes a cycle (order is not antisymmetric)", field=f"le[{k}]"
            )
    return FinitePoset(points, rows)


def t0_quotient(points: Sequence[Any], relations: Iterable[Sequence[Any]]) -> tuple[FinitePoset, dict]:
    """Kolmogorov quotient of a finite preorder.

    Points with x ≤ y ≤ x (equal minimal open sets) are identified; each
    class is named by its canonically smallest member. Returns the quotient
    poset and the class map point → representative.
    """
    points = list(points)
    index = {}
    for k, p in enumerate(points):
        if p in index:
            raise DuplicatePoint(f"point {p!r} declared twice", field=f"points[{k}]")
        index[p] = k
    n = len(points)
    rows = [0] * n
    for k, (a, b) in enumerate(relations):
        for x in (a, b):
            if x not in index:
                raise UnknownPoint(f"{x!r} is not a declared point", field=f"le[{k}]")
        rows[index[a]] |= 1 << index[b]
    rows = _closure(n, rows)
    rep = {}
    for i in range(n):
        cls = [j for j in range(n) if rows[i] >> j & 1 and rows[j] >> i & 1]
        rep[i] = min(cls, key=lambda j: canonical_key(points[j]))
    reps = sorted(set(rep.values()))
    pos = {r: k for k, r in enumerate(reps)}
    qrows = []
    for r in reps:
        m = 0
        for j in bits(rows[r]):
            m |= 1 << pos[rep[j]]
        qrows.append(m)
    Q = FinitePoset([points[r] for r in reps], qrows)
    return Q, {points[i]: points[rep[i]] for i in range(n)}


@dataclass(frozen=True)
class DownSet:
    """An open set of a finite space: a down-closed set of points."""

    poset: FinitePoset
    mask: int

    def __post_init__(self):
        if not self.poset.is_open_mask(self.mask):
            raise NotOpen(f"{self.poset.points_of(self.mask)!r} is not down-closed")

    @classmethod
    def of(cls, X: FinitePoset, members: Iterable[Any]) -> "DownSet":
        return cls(X, X.mask_of(members))

    @property
    def members(self) -> list:
        return self.poset.points_of(self.mask)

    @property
    def maximal_points(self) -> list:
        return self.poset.points_of(_maximal_in(self.poset, self.mask))

    def subposet(self) -> FinitePoset:
        return self.poset.subposet_mask(self.mask)

    def __contains__(self, x) -> bool:
        return x in self.poset and bool(self.mask >> self.poset.index(x) & 1)

    def __len__(self) -> int:
        return bin(self.mask).count("1")

    def __iter__(self) -> Iterator:
        return iter(self.members)

    def __repr__(self) -> str:
        return "DownSet({" + ",".join(map(str, self.members)) + "})"


def minimal_open(X: FinitePoset, x) -> DownSet:
    """U_x, the down-closure of x."""
    return DownSet(X, X.down_masks[X.index(x)])


def opposite(X: FinitePoset) -> FinitePoset:
    return FinitePoset(list(X.points), list(X.down_masks))


def maximal_elements(X: FinitePoset) -> list:
    return X.points_of(_maximal_in(X, X.full_mask))


def minimal_elements(X: FinitePoset) -> list:
    return X.points_of(_minimal_in(X, X.full_mask))


def maximal_mask(X: FinitePoset) -> int:
    return _maximal_in(X, X.full_mask)


def open_from_antichain(X: FinitePoset, antichain: Iterable[Any]) -> DownSet:
    A = list(antichain)
    m = X.mask_of(A)
    for a in A:
        i = X.index(a)
        if (X.up_masks[i] | X.down_masks[i]) & m & ~(1 << i):
            raise NotAntichain(f"{a!r} is comparable to another element of {A!r}")
    return DownSet(X, X.down_closure(m))


def iter_open_masks(X: FinitePoset, limit: Optional[int] = OPEN_SET_LIMIT) -> Iterator[int]:
    """Every down-set mask, one per antichain, starting with the empty set."""
    n = len(X)
    order = X.canonical_indices
    comp = [X.up_masks[i] | X.down_masks[i] for i in range(n)]
    down = X.down_masks
    count = 0
    stack = [(0, 0, 0)]
    while stack:
        start, blocked, opened = stack.pop()
        count += 1
        if limit is not None and count > limit:
            raise LimitExceeded(f"more than {limit} open sets")
        yield opened
        for k in range(n - 1, start - 1, -1):
            i = order[k]
            if not blocked >> i & 1:
                stack.append((k + 1, blocked | comp[i], opened | down[i]))


def enumerate_open_sets(X: FinitePoset, limit: Optional[int] = OPEN_SET_LIMIT) -> list[DownSet]:
    return [DownSet(X, m) for m in iter_open_masks(X, limit)]


def connected_components(X: FinitePoset) -> list[list]:
    """Components of the comparability graph, each in canonical order."""
    seen = 0
    comps = []
    for i in X.canonical_indices:
        if seen >> i & 1:
            continue
        comp = 1 << i
        frontier = comp
        while frontier:
            grow = 0
            for j in bits(frontier):
                grow |= X.up_masks[j] | X.down_masks[j]
            frontier = grow & ~comp
            comp |= grow
        seen |= comp
        comps.append(X.points_of(comp))
    return comps


# -- maps ------------------------------------------------------------------


class MonotoneMap:
    """Order-preserving (continuous) map between finite spaces."""

    __slots__ = ("source", "target", "images", "_hash")

    def __init__(self, source: FinitePoset, target: FinitePoset, assignment: Mapping[Any, Any]):
        images = []
        for p in source.points:
            if p not in assignment:
                raise UnknownPoint(f"no image given for point {p!r}")
            images.append(target.index(assignment[p]))
        extra = set(assignment) - set(source.points)
        if extra:
            raise UnknownPoint(f"assignment names non-points {sorted(extra, key=canonical_key)!r}")
        self.source = source
        self.target = target
        self.images = tuple(images)
        self._hash = None
        bad = _monotonicity_violation(source, target, self.images)
        if bad is not None:
            x, y = bad
            raise NotMonotone(f"{x!r} ≤ {y!r} but their images are not ordered")

    @classmethod
    def _raw(cls, source: FinitePoset, target: FinitePoset, images: Sequence[int]) -> "MonotoneMap":
        obj = cls.__new__(cls)
        obj.source = source
        obj.target = target
        obj.images = tuple(images)
        obj._hash = None
        return obj

    def __call__(self, x):
        return self.target.points[self.images[self.source.index(x)]]

    @property
    def assignment(self) -> dict:
        tp = self.target.points
        return {p: tp[i] for p, i in zip(self.source.points, self.images)}

    def table(self) -> list[list]:
        a = self.assignment
        return [[p, a[p]] for p in self.source.canonical_points()]

    def is_constant(self) -> bool:
        return len(set(self.images)) == 1

    def __eq__(self, other) -> bool:
        if not isinstance(other, MonotoneMap):
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
        return f"MonotoneMap({self.assignment!r})"


def _monotonicity_violation(source: FinitePoset, target: FinitePoset, images: Sequence[int]):
    tup = target.up_masks
    for i in range(len(source)):
        for j in bits(source.upper_covers[i]):
            if not tup[images[i]] >> images[j] & 1:
                return source.points[i], source.points[j]
    return None


def is_monotone(source: FinitePoset, target: FinitePoset, images: Sequence[int]) -> bool:
    return _monotonicity_violation(source, target, images) is None


def identity(X: FinitePoset) -> MonotoneMap:
    return MonotoneMap._raw(X, X, range(len(X)))


def constant(source: FinitePoset, target: FinitePoset, y) -> MonotoneMap:
    return MonotoneMap._raw(source, target, [target.index(y)] * len(source))


def inclusion(U: FinitePoset, X: FinitePoset) -> MonotoneMap:
    """Inclusion of a subposet (order inherited) into ``X``."""
    images = [X.index(p) for p in U.points]
    if not is_monotone(U, X, images):
        raise NotMonotone("not a subposet of the ambient space")
    return MonotoneMap._raw(U, X, images)


def compose_maps(outer: MonotoneMap, inner: MonotoneMap) -> MonotoneMap:
    """``outer ∘ inner``."""
    if not (inner.target is outer.source or inner.target == outer.source):
        raise MismatchedEndpoints("inner target differs from outer source")
    oi = outer.images
    return MonotoneMap._raw(inner.source, outer.target, [oi[i] for i in inner.images])


def pointwise_comparable(f: MonotoneMap, g: MonotoneMap) -> bool:
    """f ≤ g or g ≤ f pointwise."""
    up = f.target.up_masks
    le = all(up[a] >> b & 1 for a, b in zip(f.images, g.images))
    ge = all(up[b] >> a & 1 for a, b in zip(f.images, g.images))
    return le or ge


@dataclass(frozen=True)
class HomotopyCertificate:
    """A fence of maps: consecutive entries are pointwise comparable."""

    chain: tuple[MonotoneMap, ...]

    def check(self, first: Optional[MonotoneMap] = None, last: Optional[MonotoneMap] = None) -> bool:
        return check_fence(self.chain, first, last)


def check_fence(chain: Sequence[MonotoneMap], first=None, last=None) -> bool:
    if not chain:
        return False
    for m in chain:
        if not is_monotone(m.source, m.target, m.images):
            return False
    for a, b in zip(chain, chain[1:]):
        if not (a.source == b.source and a.target == b.target) or not pointwise_comparable(a, b):
            return False
    if first is not None and chain[0] != first:
        return False
    if last is not None and chain[-1] != last:
        return False
    return True


def _homotopy_moves(source: FinitePoset, target: FinitePoset):
    """Neighbour generator for single-point moves on image tuples."""
    n = len(source)
    lower = [list(bits(source.lower_covers[i])) for i in range(n)]
    upper = [list(bits(source.upper_covers[i])) for i in range(n)]
    tup, tdown = target.up_masks, target.down_masks
    src_order = source.canonical_indices
    tgt_order = target.canonical_indices

    def neighbors(state: tuple) -> Iterator[tuple]:
        for x in src_order:
            cur = state[x]
            allowed = (tup[cur] | tdown[cur]) & ~(1 << cur)
            for y in lower[x]:
                allowed &= tup[state[y]]
            for y in upper[x]:
                allowed &= tdown[state[y]]
            if not allowed:
                continue
            for w in tgt_order:
                if allowed >> w & 1:
                    yield state[:x] + (w,) + state[x + 1:]

    return neighbors


def homotopic(f: MonotoneMap, g: MonotoneMap, budget: SearchBudget = DEFAULT_BUDGET) -> Outcome:
    """Decide f ≃ g by BFS over single-point moves (fences).

    Both ends are reduced to Stong cores first, which shrinks the map space
    without changing the answer.
    """
    from .collapse import poset_reduction, reduced_search

    if not (f.source == g.source and f.target == g.target):
        raise MismatchedEndpoints("maps do not share source and target")
    S, T = f.source, f.target
    if f.images == g.images:
        return Outcome(Verdict.YES, HomotopyCertificate((f,)), 1)
    verdict, chain, visited = reduced_search(
        f.images, g.images, poset_reduction(S), poset_reduction(T), _homotopy_moves, budget
    )
    cert = None
    if verdict is Verdict.YES:
        cert = HomotopyCertificate(tuple(MonotoneMap._raw(S, T, p) for p in chain))
    return Outcome(verdict, cert, visited)


def homotopy_search_to_constant(
    f: MonotoneMap, budget: SearchBudget = DEFAULT_BUDGET, deadline: Optional[Deadline] = None
) -> Outcome:
    """BFS from ``f`` until any constant map is reached."""
    S, T = f.source, f.target
    verdict, path, visited = bfs(
        f.images,
        lambda s: len(set(s)) == 1,
        _homotopy_moves(S, T),
        budget.max_visited_states,
        deadline or Deadline(budget),
    )
    cert = None
    if verdict is Verdict.YES:
        cert = HomotopyCertificate(tuple(MonotoneMap._raw(S, T, p) for p in path))
    return Outcome(verdict, cert, visited)


def homotopy_class(f: MonotoneMap, max_states: int = 1_000_000) -> Optional[set[tuple]]:
    """Image tuples of all maps homotopic to ``f``."""
    return component(f.images, _homotopy_moves(f.source, f.target), max_states)


# -- isomorphism -------------------------------------------------------------


def find_poset_isomorphism(X: FinitePoset, Y: FinitePoset) -> Optional[dict]:
    """An order isomorphism X → Y, or None."""
    n = len(X)
    if n != len(Y):
        return None

    def profile(P: FinitePoset):
        return [
            (
                bin(P.down_masks[i]).count("1"),
                bin(P.up_masks[i]).count("1"),
                bin(P.lower_covers[i]).count("1"),
                bin(P.upper_covers[i]).count("1"),
            )
            for i in range(len(P))
        ]

    px, py = profile(X), profile(Y)
    if sorted(px) != sorted(py):
        return None
    cands = [[w for w in range(n) if py[w] == px[u]] for u in range(n)]
    order = sorted(range(n), key=lambda u: (len(cands[u]), u))
    xu, yu = X.up_masks, Y.up_masks
    assign = [-1] * n
    used = [False] * n

    def extend(pos: int) -> bool:
        if pos == n:
            return True
        u = order[pos]
        for w in cands[u]:
            if used[w]:
                continue
            ok = True
            for q in range(pos):
                v = order[q]
                a = assign[v]
                if (xu[u] >> v & 1) != (yu[w] >> a & 1) or (xu[v] >> u & 1) != (yu[a] >> w & 1):
                    ok = False
                    break
            if not ok:
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
    return {X.points[u]: Y.points[assign[u]] for u in range(n)}


def posets_isomorphic(X: FinitePoset, Y: FinitePoset) -> bool:
    return find_poset_isomorphism(X, Y) is not None
