"""Strong collapses and cores: dominated vertices and beat points."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Any, NamedTuple, Optional, Union

from .complex import SimplicialComplex, SimplicialMap, _maximal_masks, complexes_isomorphic
from .errors import NotBeatPoint, NotDominated
from .poset import FinitePoset, MonotoneMap, homotopic, identity, compose_maps, inclusion
from .search import SearchBudget, Verdict, bits, canonical_key


class CollapseStep(NamedTuple):
    removed: Any
    witness: Any
    direction: Optional[str] = None  # "up" / "down" / "both" for beat points


@dataclass(frozen=True)
class CollapseTrace:
    """Elementary removals taking ``start`` to ``end``."""

    start: Union[SimplicialComplex, FinitePoset]
    end: Union[SimplicialComplex, FinitePoset]
    steps: tuple[CollapseStep, ...]

    def __len__(self) -> int:
        return len(self.steps)


# -- complexes ---------------------------------------------------------------


def _dominators_mask(masks, alive: int, i: int) -> int:
    inter = alive
    for f in masks:
        if f >> i & 1:
            inter &= f
    return inter & ~(1 << i)


def dominators(K: SimplicialComplex, v) -> list:
    """Every v′ ≠ v lying in all facets that contain v, canonical order."""
    i = K.index(v)
    full = (1 << K.n_vertices) - 1
    return sorted(K.vertices_of(_dominators_mask(K.facet_masks, full, i)), key=canonical_key)


def dominated_vertices(K: SimplicialComplex) -> list[tuple]:
    """Pairs (v, v′) with v dominated by v′; v′ canonically smallest."""
    out = []
    for v in K.canonical_vertices():
        ds = dominators(K, v)
        if ds:
            out.append((v, ds[0]))
    return out


def strong_collapse_step(K: SimplicialComplex, v, witness) -> tuple[SimplicialComplex, SimplicialMap]:
    """Remove dominated ``v``; return K∖v and the retraction r with r(v) = witness."""
    if witness == v or not K.has_vertex(witness) or witness not in dominators(K, v):
        raise NotDominated(f"{v!r} is not dominated by {witness!r}")
    L = K.delete_vertex(v)
    assignment = {u: u for u in L.vertex_table}
    assignment[v] = witness
    r = SimplicialMap(K, L, assignment)
    return L, r


def _collapse_masks(n: int, masks, rng: Optional[random.Random] = None, order=None):
    """Strong-collapse facet masks to a core; returns (masks, alive, steps)."""
    alive = (1 << n) - 1
    masks = list(masks)
    order = list(order) if order is not None else list(range(n))
    steps = []
    while True:
        found = []
        for i in order:
            if not alive >> i & 1:
                continue
            d = _dominators_mask(masks, alive, i)
            if d:
                found.append((i, d))
                if rng is None:
                    break
        if not found:
            return masks, alive, steps
        if rng is None:
            i, d = found[0]
            w = next(j for j in order if d >> j & 1)
        else:
            i, d = rng.choice(found)
            w = rng.choice(list(bits(d)))
        steps.append((i, w))
        alive &= ~(1 << i)
        masks = _maximal_masks(m & ~(1 << i) for m in masks)
        masks = [m for m in masks if m]


def core_complex(K: SimplicialComplex, rng: Optional[random.Random] = None) -> tuple[SimplicialComplex, CollapseTrace]:
    """Collapse dominated vertices until none remain.

    Deterministic (canonically first vertex, smallest witness) unless an
    ``rng`` is given, in which case vertex and witness are drawn at random.
    """
    masks, alive, steps = _collapse_masks(K.n_vertices, K.facet_masks, rng, K.canonical_indices)
    core = SimplicialComplex._from_masks(K, masks)
    vt = K.vertex_table
    trace = CollapseTrace(K, core, tuple(CollapseStep(vt[i], vt[w]) for i, w in steps))
    return core, trace


def core_size_masks(n: int, masks) -> int:
    _, alive, _ = _collapse_masks(n, masks)
    return bin(alive).count("1")


def is_strongly_collapsible(K: SimplicialComplex) -> bool:
    return core_size_masks(K.n_vertices, K.facet_masks) == 1


def same_strong_homotopy_type(K: SimplicialComplex, L: SimplicialComplex) -> bool:
    return complexes_isomorphic(core_complex(K)[0], core_complex(L)[0])


# -- finite spaces -------------------------------------------------------------


class BeatPoint(NamedTuple):
    point: Any
    witness: Any
    direction: str


def _beat_witnesses_by_definition(X: FinitePoset, i: int) -> list[int]:
    up, down = X.up_masks, X.down_masks
    above = up[i] & ~(1 << i)
    below = down[i] & ~(1 << i)
    out = []
    for j in range(len(X)):
        if j == i or not (up[i] >> j & 1 or down[i] >> j & 1):
            continue
        if above & ~up[j] == 0 and below & ~down[j] == 0:
            out.append(j)
    return out


def beat_points(X: FinitePoset) -> list[BeatPoint]:
    """All beat points in canonical order.

    A point qualifies when some comparable x′ sits below everything above
    it and above everything below it; this is checked against the covering
    description (exactly one lower cover or exactly one upper cover).
    """
    out = []
    lc, uc = X.lower_covers, X.upper_covers
    for i in X.canonical_indices:
        ws = _beat_witnesses_by_definition(X, i)
        by_cover = bin(lc[i]).count("1") == 1 or bin(uc[i]).count("1") == 1
        if bool(ws) != by_cover:
            raise RuntimeError(f"beat point characterizations disagree at {X.points[i]!r}")
        if not ws:
            continue
        ups = [j for j in ws if X.up_masks[i] >> j & 1]
        downs = [j for j in ws if X.down_masks[i] >> j & 1]
        direction = "both" if ups and downs else ("up" if ups else "down")
        w = min(ws, key=lambda j: canonical_key(X.points[j]))
        out.append(BeatPoint(X.points[i], X.points[w], direction))
    return out


def remove_beat_point(X: FinitePoset, x0, witness=None) -> tuple[FinitePoset, MonotoneMap]:
    """X∖x0 and the retraction r (identity off x0, x0 ↦ witness)."""
    i = X.index(x0)
    ws = [X.points[j] for j in _beat_witnesses_by_definition(X, i)]
    if not ws:
        raise NotBeatPoint(f"{x0!r} is not a beat point")
    if witness is None:
        witness = min(ws, key=canonical_key)
    elif witness not in ws:
        raise NotBeatPoint(f"{witness!r} does not witness {x0!r} as a beat point")
    Y = X.subposet_mask(X.full_mask & ~(1 << i))
    assignment = {p: p for p in Y.points}
    assignment[x0] = witness
    r = MonotoneMap(X, Y, assignment)
    ir = compose_maps(inclusion(Y, X), r)
    check = homotopic(ir, identity(X), SearchBudget(max_visited_states=10_000))
    if check.verdict is not Verdict.YES:
        raise RuntimeError("retraction is not homotopic to the identity")
    return Y, r


def _beat_in_mask(down, up, alive: int, i: int) -> int:
    """Witness index if i is a beat point of the subposet ``alive``, else -1.

    Relies on the linear-extension indexing: a maximum of the strict
    down-set must be its highest index, a minimum of the strict up-set its
    lowest.
    """
    bi = 1 << i
    low = down[i] & alive & ~bi
    high = up[i] & alive & ~bi
    wd = wu = -1
    if low:
        y = low.bit_length() - 1
        if low & ~down[y] == 0:
            wd = y
    if high:
        y = (high & -high).bit_length() - 1
        if high & ~up[y] == 0:
            wu = y
    if wd < 0:
        return wu
    if wu < 0:
        return wd
    return wd, wu


def poset_core_mask(X: FinitePoset, mask: int) -> int:
    """Mask of a core of the subposet ``mask`` (greedy, fast)."""
    down, up = X.down_masks, X.up_masks
    alive = mask
    changed = True
    while changed:
        changed = False
        for i in bits(alive):
            if alive >> i & 1 and _beat_in_mask(down, up, alive, i) != -1:
                alive &= ~(1 << i)
                changed = True
    return alive


def is_contractible_mask(X: FinitePoset, mask: int) -> bool:
    return mask != 0 and bin(poset_core_mask(X, mask)).count("1") == 1


def core_poset(X: FinitePoset, rng: Optional[random.Random] = None) -> tuple[FinitePoset, CollapseTrace]:
    """Remove beat points until none remain (Stong core)."""
    down, up, pts = X.down_masks, X.up_masks, X.points
    key = lambda j: canonical_key(pts[j])  # noqa: E731
    alive = X.full_mask
    steps = []
    while True:
        found = []
        for i in X.canonical_indices:
            if not alive >> i & 1:
                continue
            w = _beat_in_mask(down, up, alive, i)
            if w != -1:
                found.append((i, w))
                if rng is None:
                    break
        if not found:
            break
        i, w = found[0] if rng is None else rng.choice(found)
        if isinstance(w, tuple):
            direction = "both"
            w = min(w, key=key) if rng is None else rng.choice(w)
        else:
            direction = "up" if up[i] >> w & 1 else "down"
        steps.append(CollapseStep(pts[i], pts[w], direction))
        alive &= ~(1 << i)
    core = X.subposet_mask(alive)
    return core, CollapseTrace(X, core, tuple(steps))


def is_contractible_poset(X: FinitePoset) -> bool:
    return is_contractible_mask(X, X.full_mask)


# -- searching between cores ------------------------------------------------------


@dataclass(frozen=True)
class Reduction:
    """An object, its core, and the retraction sequence between them.

    ``rhos[k]`` is the self-map after the first k removals (as index lists);
    consecutive entries are contiguous, or pointwise comparable for posets.
    """

    obj: Union[SimplicialComplex, FinitePoset]
    core: Union[SimplicialComplex, FinitePoset]
    rhos: tuple[tuple[int, ...], ...]
    core_to_obj: tuple[int, ...]
    core_pos: dict


def _reduction(obj, core, steps) -> Reduction:
    rho = tuple(range(len(obj.vertex_table) if isinstance(obj, SimplicialComplex) else len(obj)))
    rhos = [rho]
    for i, w in steps:
        rho = tuple(w if r == i else r for r in rho)
        rhos.append(rho)
    pts = core.vertex_table if isinstance(core, SimplicialComplex) else core.points
    core_to_obj = tuple(obj.index(p) for p in pts)
    return Reduction(obj, core, tuple(rhos), core_to_obj, {o: j for j, o in enumerate(core_to_obj)})


def complex_reduction(K: SimplicialComplex) -> Reduction:
    masks, _, steps = _collapse_masks(K.n_vertices, K.facet_masks, None, K.canonical_indices)
    return _reduction(K, SimplicialComplex._from_masks(K, masks), steps)


def poset_reduction(X: FinitePoset) -> Reduction:
    core, trace = core_poset(X)
    return _reduction(X, core, [(X.index(s.removed), X.index(s.witness)) for s in trace.steps])


def _without_loops(chain: list) -> list:
    out: list = []
    seen: dict = {}
    for m in chain:
        m = tuple(m)
        if m in seen:
            del out[seen[m] + 1:]
            seen = {x: k for k, x in enumerate(out)}
            continue
        seen[m] = len(out)
        out.append(m)
    return out


def reduced_search(images, goal, src: Reduction, tgt: Reduction, moves, budget: SearchBudget, deadline=None):
    """Search maps src.obj → tgt.obj through their cores.

    ``goal`` is a target image tuple, or None for "any constant map".
    Returns ``(verdict, chain, visited)`` where ``chain`` is a list of image
    tuples of maps src.obj → tgt.obj from ``images`` to the goal.
    """
    from .search import Deadline, bfs

    def down(imgs) -> list:
        chain = [[imgs[r] for r in rho] for rho in src.rhos]
        last = chain[-1]
        chain += [[tau[x] for x in last] for tau in tgt.rhos[1:]]
        return chain

    def to_core(imgs) -> tuple:
        return tuple(tgt.core_pos[imgs[o]] for o in src.core_to_obj)

    fchain = down(images)
    start = to_core(fchain[-1])
    if goal is None:
        gchain = None
        is_goal = lambda s: len(set(s)) == 1  # noqa: E731
    else:
        gchain = down(goal)
        target = to_core(gchain[-1])
        is_goal = lambda s: s == target  # noqa: E731
    verdict, path, visited = bfs(
        start, is_goal, moves(src.core, tgt.core), budget.max_visited_states, deadline or Deadline(budget)
    )
    if verdict is not Verdict.YES:
        return verdict, None, visited
    rho = src.rhos[-1]
    lifted = [[tgt.core_to_obj[h[src.core_pos[r]]] for r in rho] for h in path]
    chain = fchain + lifted[1:]
    if gchain is not None:
        chain += gchain[::-1][1:]
    return Verdict.YES, _without_loops(chain), visited
