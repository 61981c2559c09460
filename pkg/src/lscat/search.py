"""Budgets, tri-state verdicts, canonical ordering and the shared BFS driver."""

from __future__ import annotations

import enum
import time
from collections import deque
from dataclasses import dataclass
from typing import Any, Callable, Hashable, Iterable, Optional


def canonical_key(v: Any) -> tuple:
    """Total order over vertex/point identifiers of mixed type.

    Integers sort before strings, strings before tuples; tuples compare
    element-wise with the same rule. This is the order every enumeration
    in the package uses, so results are reproducible.
    """
    if isinstance(v, bool):
        return (0, int(v))
    if isinstance(v, int):
        return (0, v)
    if isinstance(v, str):
        return (1, v)
    if isinstance(v, (tuple, list, frozenset)):
        items = sorted(v, key=canonical_key) if isinstance(v, frozenset) else v
        return (2, tuple(canonical_key(x) for x in items))
    return (3, repr(v))


def sort_canonical(items: Iterable[Any]) -> list:
    return sorted(items, key=canonical_key)


@dataclass(frozen=True)
class SearchBudget:
    """Resource bounds for the exact searches.

    ``max_visited_states`` caps each map-space BFS, ``max_cover_candidates``
    caps the number of candidate certifications (or pool size) in a cover
    search, and ``time_limit`` (seconds) caps a whole invariant computation.
    """

    max_visited_states: int = 1_000_000
    max_cover_candidates: int = 100_000
    time_limit: Optional[float] = None

    def __post_init__(self):
        if self.max_visited_states <= 0 or self.max_cover_candidates <= 0:
            raise ValueError("budget counts must be positive")
        if self.time_limit is not None and self.time_limit <= 0:
            raise ValueError("time_limit must be positive")


DEFAULT_BUDGET = SearchBudget()


class Verdict(enum.Enum):
    YES = "yes"
    NO = "no"
    EXHAUSTED = "exhausted"


@dataclass(frozen=True)
class Outcome:
    """Answer of a budgeted decision: verdict, certificate when YES, work done."""

    verdict: Verdict
    certificate: Any = None
    visited: int = 0

    def __bool__(self) -> bool:
        return self.verdict is Verdict.YES

    @property
    def decided(self) -> bool:
        return self.verdict is not Verdict.EXHAUSTED


class Deadline:
    """Wall-clock guard derived from a budget's ``time_limit``."""

    def __init__(self, budget: SearchBudget):
        self._end = None if budget.time_limit is None else time.monotonic() + budget.time_limit

    def expired(self) -> bool:
        return self._end is not None and time.monotonic() > self._end


def bfs(
    start: Hashable,
    is_goal: Callable[[Hashable], bool],
    neighbors: Callable[[Hashable], Iterable[Hashable]],
    max_states: int,
    deadline: Optional[Deadline] = None,
) -> tuple[Verdict, Optional[list], int]:
    """Breadth-first search with parent pointers.

    Returns ``(verdict, path, visited)``; ``path`` runs from ``start`` to the
    first goal state in discovery order. NO means the whole component of
    ``start`` was explored without meeting a goal.
    """
    if is_goal(start):
        return Verdict.YES, [start], 1
    parent = {start: None}
    queue = deque([start])
    while queue:
        state = queue.popleft()
        for nxt in neighbors(state):
            if nxt in parent:
                continue
            parent[nxt] = state
            if is_goal(nxt):
                path = [nxt]
                while parent[path[-1]] is not None:
                    path.append(parent[path[-1]])
                path.reverse()
                return Verdict.YES, path, len(parent)
            if len(parent) >= max_states:
                return Verdict.EXHAUSTED, None, len(parent)
            if deadline is not None and len(parent) % 1024 == 0 and deadline.expired():
                return Verdict.EXHAUSTED, None, len(parent)
            queue.append(nxt)
    return Verdict.NO, None, len(parent)


def component(
    start: Hashable,
    neighbors: Callable[[Hashable], Iterable[Hashable]],
    max_states: int,
) -> Optional[set]:
    """All states reachable from ``start``; None if the cap is hit first."""
    seen = {start}
    queue = deque([start])
    while queue:
        state = queue.popleft()
        for nxt in neighbors(state):
            if nxt not in seen:
                seen.add(nxt)
                if len(seen) > max_states:
                    return None
                queue.append(nxt)
    return seen


def popcount(x: int) -> int:
    return bin(x).count("1")


def bits(x: int) -> Iterable[int]:
    """Indices of the set bits of ``x`` in increasing order."""
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low
