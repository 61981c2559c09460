"""LS-type invariants: scat, gscat (complexes) and cat, gcat (finite spaces).

Each invariant is a minimum cover problem over a certified candidate pool.
Results carry a lower and an upper bound; they are exact when the bounds
meet. Budget exhaustion never produces a wrong exact value: an undecided
candidate is unusable for covers but still blocks lower-bound proofs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Callable, Optional, Sequence, Union

from . import collapse as _collapse
from .collapse import core_complex, core_poset, is_contractible_mask
from .complex import (
    ContiguityCertificate,
    SimplicialComplex,
    SimplicialMap,
    _contiguity_moves,
    _maximal_masks,
)
from .errors import LimitExceeded, NotASubcomplex, NotOpen
from .poset import (
    OPEN_SET_LIMIT,
    DownSet,
    FinitePoset,
    HomotopyCertificate,
    MonotoneMap,
    _homotopy_moves,
    iter_open_masks,
    maximal_mask,
)
from .search import DEFAULT_BUDGET, Deadline, Outcome, SearchBudget, Verdict, bits, popcount

__all__ = [
    "SearchBudget",
    "CategoryResult",
    "is_categorical_subcomplex",
    "is_categorical_open",
    "scat",
    "gscat",
    "cat",
    "gcat",
    "InequalityCheck",
    "InequalityReport",
    "check_inequalities",
]


@dataclass(frozen=True)
class CategoryResult:
    """Value (or bracketing interval) of an invariant plus its witness cover."""

    invariant: str
    obj: Union[SimplicialComplex, FinitePoset] = field(repr=False)
    lower: int
    upper: int
    witness: tuple
    certificates: tuple = field(repr=False)
    mode: str

    @property
    def exact(self) -> bool:
        return self.lower == self.upper

    @property
    def value(self) -> Union[int, tuple[int, int]]:
        return self.lower if self.exact else (self.lower, self.upper)


# -- categorical subobjects --------------------------------------------------


def is_categorical_subcomplex(
    U: SimplicialComplex,
    K: SimplicialComplex,
    budget: SearchBudget = DEFAULT_BUDGET,
    deadline: Optional[Deadline] = None,
) -> Outcome:
    """Is the inclusion U → K in the contiguity class of a constant map?

    Both ends are first strong-collapsed to their cores; the inclusion is
    null in K iff the induced map core(U) → core(K) is, and the certificate
    is assembled back into a chain of maps U → K ending at a constant.
    """
    if not U.is_subcomplex_of(K):
        raise NotASubcomplex("not a subcomplex of the ambient complex")
    incl = [K.index(v) for v in U.vertex_table]
    verdict, chain, visited = _collapse.reduced_search(
        incl, None, _collapse.complex_reduction(U), _collapse.complex_reduction(K),
        _contiguity_moves, budget, deadline,
    )
    if verdict is not Verdict.YES:
        return Outcome(verdict, None, visited)
    maps = tuple(SimplicialMap._raw(U, K, imgs) for imgs in chain)
    return Outcome(Verdict.YES, ContiguityCertificate(maps), visited)


def is_categorical_open(
    U: DownSet,
    X: FinitePoset,
    budget: SearchBudget = DEFAULT_BUDGET,
    deadline: Optional[Deadline] = None,
) -> Outcome:
    """Is the inclusion of the open set U homotopic to a constant in X?

    Source and target are reduced to Stong cores by beat-point retractions
    (each retraction is comparable to the identity), then a fence search
    runs between the cores.
    """
    if U.poset is not X and U.poset != X:
        raise NotOpen("open set belongs to a different space")
    if not X.is_open_mask(U.mask) or U.mask == 0:
        raise NotOpen("not a non-empty open set")
    S = U.subposet()
    incl = [X.index(p) for p in S.points]
    verdict, chain, visited = _collapse.reduced_search(
        incl, None, _collapse.poset_reduction(S), _collapse.poset_reduction(X),
        _homotopy_moves, budget, deadline,
    )
    if verdict is not Verdict.YES:
        return Outcome(verdict, None, visited)
    maps = tuple(MonotoneMap._raw(S, X, imgs) for imgs in chain)
    return Outcome(Verdict.YES, HomotopyCertificate(maps), visited)


# -- cover search --------------------------------------------------------------


class _Steps:
    def __init__(self, budget: SearchBudget, deadline: Deadline):
        self.left = budget.max_cover_candidates
        self.deadline = deadline
        self.aborted = False

    def take(self) -> bool:
        self.left -= 1
        if self.left < 0 or (self.left % 256 == 0 and self.deadline.expired()):
            self.aborted = True
        return not self.aborted


def _adjacency_order(items: Sequence[int], masks: Sequence[int]) -> list[int]:
    """Items reordered so each one overlaps an earlier one where possible."""
    remaining = list(items)
    order: list[int] = []
    covered = 0
    while remaining:
        pick = next((x for x in remaining if masks[x] & covered), remaining[0])
        remaining.remove(pick)
        order.append(pick)
        covered |= masks[pick]
    return order


def _hereditary_cover(
    order: Sequence[int],
    test: Callable[[int], Verdict],
    steps: _Steps,
    lower: int = 0,
) -> tuple[int, list[int], int]:
    """Minimum partition of ``order`` into blocks accepted by a hereditary test.

    Returns ``(lower, blocks, upper)`` with values counted as blocks − 1.
    A cover by a hereditary family can always be thinned to a partition,
    so partitions are searched.
    """
    # greedy seed
    blocks: list[int] = []
    for item in order:
        b = 1 << item
        for k, blk in enumerate(blocks):
            if test(blk | b) is Verdict.YES:
                blocks[k] = blk | b
                break
        else:
            blocks.append(b)
    best = list(blocks)
    upper = len(best) - 1
    certain = True
    nb = lower + 1
    while nb <= upper:
        found, complete = _partition_dfs(order, nb, test, steps)
        if found is not None:
            best, upper = found, nb - 1
            break
        if complete and certain:
            lower = nb
        else:
            certain = False
            if steps.aborted:
                break
        nb += 1
    return lower, best, upper


def _partition_dfs(order, nb, test, steps):
    """Search a partition into at most ``nb`` accepted blocks.

    Returns ``(blocks, complete)``; ``complete`` is False when an undecided
    candidate or the step budget cut off part of the tree.
    """
    n = len(order)
    blocks: list[int] = []
    state = {"complete": True}

    def rec(pos: int) -> Optional[list[int]]:
        if pos == n:
            return list(blocks)
        if not steps.take():
            state["complete"] = False
            return None
        b = 1 << order[pos]
        for k in range(len(blocks)):
            v = test(blocks[k] | b)
            if v is Verdict.EXHAUSTED:
                state["complete"] = False
            if v is not Verdict.YES:
                continue
            old = blocks[k]
            blocks[k] = old | b
            got = rec(pos + 1)
            if got is not None:
                return got
            blocks[k] = old
            if steps.aborted:
                return None
        if len(blocks) < nb:
            blocks.append(b)
            got = rec(pos + 1)
            if got is not None:
                return got
            blocks.pop()
        return None

    got = rec(0)
    return got, state["complete"] and not steps.aborted


def _explicit_cover(universe: int, candidates: Sequence[int], steps: _Steps, lower: int = 0):
    """Minimum set cover of ``universe`` by explicit candidate masks.

    Iterative deepening on the number of sets, branching on the uncovered
    element with the fewest candidates, largest candidates first.
    Returns ``(lower, cover, upper)``.
    """
    cands = sorted(set(m & universe for m in candidates if m & universe), key=lambda m: -popcount(m))
    cands = _maximal_masks(cands)
    cands.sort(key=lambda m: (-popcount(m), m))
    # greedy seed
    left, greedy = universe, []
    while left:
        pick = max(cands, key=lambda m: (popcount(m & left), -cands.index(m)))
        if not pick & left:
            raise ValueError("candidates do not cover the universe")
        greedy.append(pick)
        left &= ~pick
    best, upper = greedy, len(greedy) - 1
    containing = {e: [m for m in cands if m >> e & 1] for e in bits(universe)}
    biggest = popcount(cands[0]) if cands else 1

    def rec(left: int, k: int, chosen: list[int]):
        if not left:
            return list(chosen)
        if k == 0 or popcount(left) > k * biggest:
            return None
        if not steps.take():
            return None
        e = min(bits(left), key=lambda x: len(containing[x]))
        for m in containing[e]:
            chosen.append(m)
            got = rec(left & ~m, k - 1, chosen)
            chosen.pop()
            if got is not None:
                return got
            if steps.aborted:
                return None
        return None

    nb = lower + 1
    while nb <= upper:
        got = rec(universe, nb, [])
        if got is not None:
            best, upper = got, nb - 1
            break
        if steps.aborted:
            return lower, best, upper
        lower = nb
        nb += 1
    return upper, best, upper


# -- simplicial side -----------------------------------------------------------


def scat(K: SimplicialComplex, budget: SearchBudget = DEFAULT_BUDGET) -> CategoryResult:
    """Simplicial LS-category.

    Candidates are the subcomplexes generated by sets of facets; categorical
    subcomplexes are closed under shrinking, so this loses nothing.
    """
    deadline = Deadline(budget)
    steps = _Steps(budget, deadline)
    facets = K.facet_masks
    memo: dict[int, Outcome] = {}

    def certify(block: int) -> Outcome:
        out = memo.get(block)
        if out is None:
            steps.take()
            if steps.aborted:
                return Outcome(Verdict.EXHAUSTED)
            U = SimplicialComplex._from_masks(K, [facets[i] for i in bits(block)])
            out = is_categorical_subcomplex(U, K, budget, deadline)
            memo[block] = out
        return out

    order = _adjacency_order(range(len(facets)), facets)
    lower, blocks, upper = _hereditary_cover(order, lambda b: certify(b).verdict, steps)
    witness = tuple(SimplicialComplex._from_masks(K, [facets[i] for i in bits(b)]) for b in blocks)
    certs = tuple(memo[b].certificate if b in memo else _singleton_cert(K, w) for b, w in zip(blocks, witness))
    return CategoryResult("scat", K, lower, upper, witness, certs, "facet-subsets")


def _singleton_cert(K: SimplicialComplex, U: SimplicialComplex) -> ContiguityCertificate:
    out = is_categorical_subcomplex(U, K)
    assert out.verdict is Verdict.YES
    return out.certificate


def _connected_facet_sets(masks: Sequence[int], steps: _Steps):
    """Connected sets of facets (sharing vertices), each yielded once."""
    n = len(masks)
    nbr = [[j for j in range(n) if j != i and masks[i] & masks[j]] for i in range(n)]
    for v in range(n):
        stack = [(1 << v, [u for u in nbr[v] if u > v], 1 << v | sum(1 << u for u in nbr[v]))]
        while stack:
            sub, ext, seen = stack.pop()
            yield sub
            ext = list(ext)
            while ext:
                if not steps.take():
                    return
                w = ext.pop()
                new_ext = list(ext)
                add = 0
                for u in nbr[w]:
                    if u > v and not seen >> u & 1:
                        new_ext.append(u)
                        add |= 1 << u
                stack.append((sub | 1 << w, new_ext, seen | add))


def gscat(
    K: SimplicialComplex,
    mode: str = "facet-union",
    budget: SearchBudget = DEFAULT_BUDGET,
    limit: Optional[int] = OPEN_SET_LIMIT,
) -> CategoryResult:
    """Simplicial geometric category.

    ``facet-union``: candidates are strongly collapsible subcomplexes
    generated by facets; the value is exact only when it meets the scat
    lower bound. ``exhaustive``: every subcomplex is a candidate (raises
    LimitExceeded when there are more than ``limit``).
    """
    if mode not in ("facet-union", "exhaustive"):
        raise ValueError(f"unknown gscat mode {mode!r}")
    deadline = Deadline(budget)
    steps = _Steps(budget, deadline)
    facets = K.facet_masks
    nf = len(facets)
    universe = (1 << nf) - 1
    n = K.n_vertices

    if _collapse.core_size_masks(n, facets) == 1:
        return _gscat_result(K, 0, 0, [universe], {universe: list(facets)}, mode)

    pool: dict[int, list[int]] = {}
    if mode == "facet-union":
        for sub in _connected_facet_sets(facets, steps):
            fm = [facets[i] for i in bits(sub)]
            if _collapse.core_size_masks(n, fm) == 1:
                pool[sub] = fm
        for i in range(nf):
            pool.setdefault(1 << i, [facets[i]])
        _, cover, upper = _explicit_cover(universe, list(pool), _Steps(budget, deadline), 1)
        lower = 1 if upper == 1 else min(upper, max(1, scat(K, budget).lower))
        return _gscat_result(K, lower, upper, cover, pool, mode)

    from .functors import face_poset

    chi = face_poset(K)
    # maximal points of χ(K) are the facets of K
    facet_index = {chi.index(f.vertices): k for k, f in enumerate(K.facets)}
    chi_masks = [K.mask_of(p) for p in chi.points]
    chi_max = maximal_mask(chi)
    for om in iter_open_masks(chi, limit):
        if not om:
            continue
        sub = 0
        for i in bits(om & chi_max):
            sub |= 1 << facet_index[i]
        if sub in pool:
            continue
        tops = [chi_masks[i] for i in bits(om) if chi.up_masks[i] & om == 1 << i]
        if _collapse.core_size_masks(n, tops) == 1:
            pool[sub] = tops
    cover_steps = _Steps(SearchBudget(max_cover_candidates=10**9), deadline)
    lower, cover, upper = _explicit_cover(universe, list(pool), cover_steps, 1)
    return _gscat_result(K, lower, upper, cover, pool, mode)


def _gscat_result(K, lower, upper, cover, pool, mode) -> CategoryResult:
    witness, certs = [], []
    for sub in cover:
        U = SimplicialComplex._from_masks(K, pool[sub])
        witness.append(U)
        certs.append(core_complex(U)[1])
    return CategoryResult("gscat", K, lower, upper, tuple(witness), tuple(certs), mode)


# -- finite-space side -----------------------------------------------------------


def cat(X: FinitePoset, budget: SearchBudget = DEFAULT_BUDGET) -> CategoryResult:
    """LS-category of a finite T0-space.

    Every categorical open cover can be shrunk to unions of minimal open sets
    of maximal points, so candidates are indexed by sets of maximal points.
    """
    deadline = Deadline(budget)
    steps = _Steps(budget, deadline)
    maxima = list(bits(maximal_mask(X)))
    ups = [X.down_masks[x] for x in maxima]
    memo: dict[int, Outcome] = {}

    def open_of(block: int) -> DownSet:
        m = 0
        for k in bits(block):
            m |= ups[k]
        return DownSet(X, m)

    def certify(block: int) -> Outcome:
        out = memo.get(block)
        if out is None:
            steps.take()
            if steps.aborted:
                return Outcome(Verdict.EXHAUSTED)
            out = is_categorical_open(open_of(block), X, budget, deadline)
            memo[block] = out
        return out

    order = _adjacency_order(range(len(maxima)), ups)
    lower, blocks, upper = _hereditary_cover(order, lambda b: certify(b).verdict, steps)
    witness = tuple(open_of(b) for b in blocks)
    certs = []
    for b, w in zip(blocks, witness):
        out = memo.get(b) or is_categorical_open(w, X)
        certs.append(out.certificate)
    return CategoryResult("cat", X, lower, upper, witness, tuple(certs), "maximal-antichains")


def gcat(X: FinitePoset, limit: Optional[int] = OPEN_SET_LIMIT, bounds_on_limit: bool = False) -> CategoryResult:
    """Geometric category: covers by open sets contractible in themselves.

    Exact. Unions of minimal open sets of maximal points are tried first;
    if they do not settle the value, every open set is enumerated. Past
    ``limit`` open sets this raises LimitExceeded, or, with
    ``bounds_on_limit``, returns the interval [1, upper] found so far.
    """
    maxmask = maximal_mask(X)
    maxima = list(bits(maxmask))
    full = X.full_mask
    if is_contractible_mask(X, full):
        return _gcat_result(X, 0, 0, [maxmask], {maxmask: full})
    unlimited = _Steps(SearchBudget(max_cover_candidates=10**9), Deadline(DEFAULT_BUDGET))
    pool: dict[int, int] = {}
    M = len(maxima)
    if limit is None or (1 << M) <= limit:
        for r in range(1, M + 1):
            for combo in combinations(maxima, r):
                sub = sum(1 << x for x in combo)
                om = X.down_closure(sub)
                if is_contractible_mask(X, om):
                    pool[sub] = om
        _, cover, upper = _explicit_cover(maxmask, list(pool), unlimited, 1)
        if upper == 1:
            return _gcat_result(X, 1, 1, cover, pool)
        phase_a = (cover, upper)
    else:
        phase_a = None
    seen = dict(pool)
    try:
        for om in iter_open_masks(X, limit):
            sub = om & maxmask
            if not sub or sub in seen:
                continue
            if is_contractible_mask(X, om):
                seen[sub] = om
    except LimitExceeded:
        if not bounds_on_limit or phase_a is None:
            raise
        cover, upper = phase_a
        res = _gcat_result(X, 1, upper, cover, pool)
        return CategoryResult("gcat", X, 1, upper, res.witness, res.certificates, "maximal-unions")
    lower, cover, upper = _explicit_cover(maxmask, list(seen), unlimited, 1)
    return _gcat_result(X, lower, upper, cover, seen)


def _gcat_result(X, lower, upper, cover, pool) -> CategoryResult:
    witness = tuple(DownSet(X, pool[sub]) for sub in cover)
    certs = tuple(core_poset(w.subposet())[1] for w in witness)
    return CategoryResult("gcat", X, lower, upper, witness, certs, "open-sets")


# -- inequality audit ------------------------------------------------------------

AUDIT_OPEN_LIMIT = 50_000


@dataclass(frozen=True)
class InequalityCheck:
    name: str
    lhs: tuple[int, int]
    relation: str
    rhs: tuple[int, int]
    status: str  # "holds", "violated" or "inconclusive"


@dataclass(frozen=True)
class InequalityReport:
    values: dict = field(repr=False)
    checks: tuple[InequalityCheck, ...]

    @property
    def violations(self) -> list[InequalityCheck]:
        return [c for c in self.checks if c.status == "violated"]

    @property
    def inconclusive(self) -> list[InequalityCheck]:
        return [c for c in self.checks if c.status == "inconclusive"]


def _compare(a: tuple[int, int], rel: str, b: tuple[int, int]) -> str:
    (alo, ahi), (blo, bhi) = a, b
    if rel == ">=":
        return _compare(b, "<=", a)
    if rel == "<=":
        holds, broken = ahi <= blo, alo > bhi
    elif rel == "<":
        holds, broken = ahi < blo, alo >= bhi
    elif rel == "=":
        holds, broken = alo == ahi == blo == bhi, ahi < blo or bhi < alo
    else:
        raise ValueError(rel)
    return "holds" if holds else ("violated" if broken else "inconclusive")


def _bounds(r: Union[CategoryResult, int, bool]) -> tuple[int, int]:
    if isinstance(r, CategoryResult):
        return (r.lower, r.upper)
    return (int(r), int(r))


def _is_zero(r: CategoryResult) -> tuple[int, int]:
    if r.upper == 0:
        return (1, 1)
    return (0, 0) if r.lower >= 1 else (0, 1)


def _gscat_audit(K: SimplicialComplex, budget: SearchBudget, limit: int) -> CategoryResult:
    try:
        return gscat(K, "exhaustive", budget, limit)
    except LimitExceeded:
        return gscat(K, "facet-union", budget)


def check_inequalities(
    K: Optional[SimplicialComplex] = None,
    X: Optional[FinitePoset] = None,
    budget: SearchBudget = DEFAULT_BUDGET,
    limit: int = AUDIT_OPEN_LIMIT,
) -> InequalityReport:
    """Compute every applicable invariant and test the known relations among them."""
    from .complex import barycentric_subdivision
    from .functors import face_poset, order_complex
    from .poset import maximal_elements

    if K is None and X is None:
        raise ValueError("nothing to check")
    values: dict[str, Any] = {}
    checks: list[InequalityCheck] = []

    def check(name, a, rel, b):
        checks.append(InequalityCheck(name, _bounds(a), rel, _bounds(b), _compare(_bounds(a), rel, _bounds(b))))

    def check_iff(name, a, b):
        a = a if isinstance(a, tuple) else _bounds(a)
        b = b if isinstance(b, tuple) else _bounds(b)
        checks.append(InequalityCheck(name, a, "=", b, _compare(a, "=", b)))

    if X is not None:
        c, g = cat(X, budget), gcat(X, limit, bounds_on_limit=True)
        KX = order_complex(X)
        s, gs = scat(KX, budget), _gscat_audit(KX, budget, limit)
        M = len(maximal_elements(X))
        X0, _ = core_poset(X)
        c0, g0 = cat(X0, budget), gcat(X0, limit, bounds_on_limit=True)
        values.update({"cat X": c, "gcat X": g, "M(X)": M, "scat K(X)": s, "gscat K(X)": gs,
                       "cat X0": c0, "gcat X0": g0})
        check("cat X <= gcat X", c, "<=", g)
        check("gcat X < M(X)", g, "<", M)
        check("scat K(X) <= cat X", s, "<=", c)
        check("gscat K(X) <= gcat X", gs, "<=", g)
        check("scat K(X) <= gscat K(X)", s, "<=", gs)
        contractible = _collapse.is_contractible_poset(X)
        check_iff("[X contractible] = [K(X) strongly collapsible]", contractible,
                  _collapse.is_strongly_collapsible(KX))
        check_iff("[cat X = 0] = [X contractible]", _is_zero(c), contractible)
        check("cat X0 = cat X", c0, "=", c)
        check("gcat X0 >= gcat X", g0, ">=", g)
        for bp in _collapse.beat_points(X):
            Y, _ = _collapse.remove_beat_point(X, bp.point, bp.witness)
            cy, gy = cat(Y, budget), gcat(Y, limit, bounds_on_limit=True)
            values[f"cat X-{bp.point}"] = cy
            values[f"gcat X-{bp.point}"] = gy
            check(f"cat X-{bp.point} = cat X", cy, "=", c)
            check(f"gcat X-{bp.point} >= gcat X", gy, ">=", g)

    if K is not None:
        s, gs = scat(K, budget), _gscat_audit(K, budget, limit)
        K0, _ = core_complex(K)
        s0 = scat(K0, budget)
        chi = face_poset(K)
        cc, gc = cat(chi, budget), gcat(chi, limit, bounds_on_limit=True)
        sd = barycentric_subdivision(K)
        ssd = scat(sd, budget)
        values.update({"scat K": s, "gscat K": gs, "scat K0": s0, "cat chi(K)": cc, "gcat chi(K)": gc,
                       "scat sd(K)": ssd})
        check("scat K <= gscat K", s, "<=", gs)
        check("scat K0 = scat K", s0, "=", s)
        check("cat chi(K) <= scat K", cc, "<=", s)
        check("gcat chi(K) <= gscat K", gc, "<=", gs)
        check("scat sd(K) <= scat K", ssd, "<=", s)
        collapsible = _collapse.is_strongly_collapsible(K)
        check_iff("[K strongly collapsible] = [chi(K) contractible]", collapsible,
                  _collapse.is_contractible_poset(chi))
        check_iff("[K strongly collapsible] = [sd(K) strongly collapsible]", collapsible,
                  _collapse.is_strongly_collapsible(sd))
        check_iff("[scat K = 0] = [K strongly collapsible]", _is_zero(s), collapsible)
        for v, w in _collapse.dominated_vertices(K):
            L, _ = _collapse.strong_collapse_step(K, v, w)
            sl, gl = scat(L, budget), _gscat_audit(L, budget, limit)
            values[f"scat K-{v}"] = sl
            values[f"gscat K-{v}"] = gl
            check(f"scat K-{v} = scat K", sl, "=", s)
            check(f"gscat K-{v} >= gscat K", gl, ">=", gs)

    return InequalityReport(values, tuple(checks))
