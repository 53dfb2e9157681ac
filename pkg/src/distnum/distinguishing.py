"""Distinguishing colourings, distinguishing numbers and the wreath formula.

A colouring is a tuple of colour ids ``0..r-1``, one per point.  It is
distinguishing for a group when only the identity maps every colour class
onto itself.

The search colours points ``0, 1, ...`` in order, trying colours in
increasing order and never opening more than one new colour at a time, so
the first hit is the lexicographically least distinguishing colouring.  A
prefix is abandoned as soon as the pointwise stabilizer of the uncoloured
points contains a non-identity element preserving the prefix: every
completion would be preserved by it too.  That stabilizer is a level of a
chain with base ``n-1, n-2, ..., 0``, so each new point only needs a search
over the elements moving it.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from math import perm as falling_factorial
from typing import Callable, Sequence

from .budget import Budget, as_budget
from .errors import Inconclusive, PreconditionError
from .graph import Graph
from .perm import PermGroup, PreserverSearch

__all__ = [
    "Cardinal",
    "Fin",
    "INF",
    "is_distinguishing",
    "find_distinguishing_coloring",
    "distinguishing_number",
    "distinguishing_witness",
    "anchored_distinguishing_coloring",
    "count_distinguishing_colorings",
    "min_star",
    "wreath_distnum_by_counting",
    "graph_distinguishing_number",
]

EXHAUSTIVE_LIMIT = 10**7


@functools.total_ordering
@dataclass(frozen=True)
class Cardinal:
    """A natural number, or the symbolic infinite value when ``value`` is None."""

    value: int | None

    @property
    def is_finite(self) -> bool:
        return self.value is not None

    def __lt__(self, other):
        if isinstance(other, int):
            other = Fin(other)
        if not isinstance(other, Cardinal):
            return NotImplemented
        if self.value is None:
            return False
        return other.value is None or self.value < other.value

    def __eq__(self, other):
        if isinstance(other, int):
            return self.value == other
        if not isinstance(other, Cardinal):
            return NotImplemented
        return self.value == other.value

    def __hash__(self):
        return hash(self.value)

    def __str__(self):
        return "INF" if self.value is None else str(self.value)

    def __repr__(self):
        return "INF" if self.value is None else f"Fin({self.value})"

    def to_json(self):
        return "inf" if self.value is None else self.value


def Fin(n: int) -> Cardinal:
    if n < 0:
        raise ValueError("cardinals are non-negative")
    return Cardinal(int(n))


INF = Cardinal(None)


def _rgs(values: Sequence[int]) -> list[int]:
    relabel: dict[int, int] = {}
    return [relabel.setdefault(v, len(relabel)) for v in values]


class _ColoringSearch:
    def __init__(self, group: PermGroup, budget: Budget):
        n = group.degree
        self.n = n
        self.budget = budget
        self.group = group.with_base(range(n - 1, -1, -1))
        self.colors: list = [None] * n
        self.search = PreserverSearch(self.group, self.colors, budget)
        # chain level whose group is the pointwise stabilizer of the points above j
        self.level_of = [n - 1 - j for j in range(n)]
        chain = self.group._chain
        self.level_gens = [chain.gens[self.level_of[j]] for j in range(n)]

    def _prefix_ok(self, j: int) -> bool:
        return self.search.nontrivial_at(self.level_of[j]) is None

    def _lex_pruned(self, j: int) -> bool:
        # an image of the prefix under the same stabilizer that relabels to something smaller
        # means a smaller equivalent colouring exists
        col = self.colors
        prefix = col[:j + 1]
        for s in self.level_gens[j]:
            if _rgs([col[s[x]] for x in range(j + 1)]) < prefix:
                return True
        return False

    def find(self, r: int) -> tuple[int, ...] | None:
        n, col = self.n, self.colors

        def dfs(j: int, used: int) -> bool:
            if j == n:
                return True
            for c in range(min(used + 1, r)):
                self.budget.tick()
                col[j] = c
                if self._prefix_ok(j) and not self._lex_pruned(j):
                    if dfs(j + 1, max(used, c + 1)):
                        return True
            col[j] = None
            return False

        try:
            if dfs(0, 0):
                return tuple(col)
            return None
        finally:
            col[:] = [None] * n

    def count_patterns(self, r: int) -> int:
        """Number of labelled distinguishing colourings with palette size ``r``.

        Colour-relabelling preserves distinguishability, so it suffices to walk
        restricted growth strings and weight each by the number of ways to
        assign actual colours to the classes it opens.
        """
        n, col = self.n, self.colors
        total = 0

        def dfs(j: int, used: int) -> None:
            nonlocal total
            if j == n:
                total += falling_factorial(r, used)
                return
            for c in range(min(used + 1, r)):
                self.budget.tick()
                col[j] = c
                if self._prefix_ok(j):
                    dfs(j + 1, max(used, c + 1))
            col[j] = None

        try:
            dfs(0, 0)
        finally:
            col[:] = [None] * n
        return total


def _check_coloring(group: PermGroup, colors: Sequence[int]) -> list[int]:
    if len(colors) != group.degree:
        raise PreconditionError(
            f"colouring has {len(colors)} entries but the group has degree {group.degree}")
    return list(colors)


def is_distinguishing(group: PermGroup, colors: Sequence[int], budget: Budget | int | None = None) -> bool:
    """True iff the identity is the only element preserving every colour class."""
    search = PreserverSearch(group, _check_coloring(group, colors), budget)
    return search.nontrivial_element() is None


def find_distinguishing_coloring(group: PermGroup, r: int,
                                 budget: Budget | int | None = None) -> tuple[int, ...] | None:
    """The lexicographically least distinguishing colouring with colours ``0..r-1``, if any."""
    if r < 1:
        raise PreconditionError("need at least one colour")
    return _ColoringSearch(group, as_budget(budget)).find(r)


def distinguishing_witness(group: PermGroup, budget: Budget | int | None = None,
                           max_colors: int | None = None) -> tuple[Cardinal, tuple[int, ...]] | None:
    """``(D, lex-least witness)``; None if ``D`` exceeds ``max_colors``."""
    search = _ColoringSearch(group, as_budget(budget))
    limit = max(group.degree, 1) if max_colors is None else max_colors
    for r in range(1, limit + 1):
        witness = search.find(r)
        if witness is not None:
            return Fin(r), witness
    return None


def distinguishing_number(group: PermGroup, budget: Budget | int | None = None,
                          max_colors: int | None = None) -> Cardinal | None:
    """Least ``r`` admitting a distinguishing ``r``-colouring (None past ``max_colors``)."""
    found = distinguishing_witness(group, budget, max_colors)
    return None if found is None else found[0]


def anchored_distinguishing_coloring(group: PermGroup, x: int, k: int,
                                     budget: Budget | int | None = None) -> tuple[int, ...] | None:
    """A distinguishing ``k``-colouring using colour 0 at ``x`` and nowhere else.

    Any element preserving such a colouring fixes ``x``, so this exists exactly
    when the stabilizer of ``x`` has a distinguishing colouring of the other
    points with ``k-1`` colours; that colouring is shifted to ``1..k-1``.
    """
    if not 0 <= x < group.degree:
        raise PreconditionError(f"point {x} out of range")
    if k < 1:
        raise PreconditionError("need at least one colour")
    if k == 1:
        return (0,) if group.degree == 1 else None
    inner = find_distinguishing_coloring(group.stabilizer(x), k - 1, budget)
    if inner is None:
        return None
    return tuple(0 if v == x else c + 1 for v, c in enumerate(inner))


def count_distinguishing_colorings(group: PermGroup, r: int, budget: Budget | int | None = None,
                                   limit: int = EXHAUSTIVE_LIMIT) -> int:
    """Number of maps ``points -> {1..r}`` that are distinguishing (labelled, not up to symmetry)."""
    if r < 0:
        raise PreconditionError("r must be non-negative")
    if r ** group.degree > limit:
        raise PreconditionError(
            f"{r}^{group.degree} colourings exceed the exhaustive limit of {limit}")
    if r == 0:
        return 1 if group.degree == 0 else 0
    return _ColoringSearch(group, as_budget(budget)).count_patterns(r)


def min_star(pred: Callable[[int], bool], bound: int,
             certificate: Callable[[int], bool] | bool = False) -> Cardinal:
    """``min{r >= 1 : pred(r)}``, or INF when that set is empty.

    Only ``1..bound`` is searched.  INF is returned only if ``certificate``
    (a bool, or a callable given ``bound``) vouches that no ``r > bound``
    satisfies ``pred``; otherwise :class:`Inconclusive` is raised.
    """
    for r in range(1, bound + 1):
        if pred(r):
            return Fin(r)
    proven = certificate(bound) if callable(certificate) else certificate
    if proven:
        return INF
    raise Inconclusive(f"no r <= {bound} satisfies the predicate and none is ruled out beyond")


def wreath_distnum_by_counting(h: PermGroup, k: PermGroup, budget: Budget | int | None = None) -> Cardinal:
    """``D(h wr k)`` from the counts of distinguishing colourings of ``h``.

    Evaluates ``min*{r : n_r(h) >= |h| * D(k)}``.
    """
    budget = as_budget(budget)
    dk = distinguishing_number(k, budget)
    target = h.order() * dk.value
    na = h.degree

    def pred(r: int) -> bool:
        return count_distinguishing_colorings(h, r, budget) >= target

    if na == 0:
        # n_r = 1 for every r: the predicate does not depend on r
        return min_star(pred, 1, certificate=True)
    # colourings with pairwise distinct colours always distinguish a faithful action
    bound = na
    while falling_factorial(bound, na) < target:
        bound += 1
    return min_star(pred, bound)


def graph_distinguishing_number(g: Graph, budget: Budget | int | None = None) -> Cardinal:
    from .automorphism import automorphism_group

    budget = as_budget(budget)
    return distinguishing_number(automorphism_group(g, budget), budget)
