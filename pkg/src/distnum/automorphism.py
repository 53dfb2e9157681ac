"""Automorphism groups of graphs by partition refinement and backtracking.

The search individualizes vertices along a first path down to a discrete
partition, then, level by level from the bottom, looks for automorphisms
that send the path's base vertex to every other vertex of the target cell.
Vertices already in a known orbit are skipped.  The generators found this
way form a strong generating set relative to the first path, so the chain
of the resulting group comes for free.
"""

from __future__ import annotations

from collections import deque
from typing import Sequence

from .budget import Budget, as_budget
from .errors import PreconditionError
from .graph import Graph
from .perm import PermGroup, Perm, _UnionFind

OrderedPartition = tuple[tuple[int, ...], ...]

__all__ = ["OrderedPartition", "refine", "automorphism_group", "color_automorphism_group"]


def _refine(adj: Sequence[int], cells: list[list[int]], queue: list[int], trace: list) -> None:
    """Refine ``cells`` in place to the coarsest equitable partition below it.

    Fragments of a split cell are ordered by neighbour count; the first stays
    at the cell's index and the rest are appended.  ``trace`` records every
    split, which makes two refinements comparable up to isomorphism.
    """
    pending = deque(queue)
    queued = set(queue)
    while pending:
        w = pending.popleft()
        queued.discard(w)
        wmask = 0
        for v in cells[w]:
            wmask |= 1 << v
        for ci in range(len(cells)):
            cell = cells[ci]
            if len(cell) == 1:
                continue
            counts = [(adj[v] & wmask).bit_count() for v in cell]
            first = counts[0]
            if all(c == first for c in counts):
                continue
            groups: dict[int, list[int]] = {}
            for v, c in zip(cell, counts):
                groups.setdefault(c, []).append(v)
            keys = sorted(groups)
            trace.append((w, ci, tuple((k, len(groups[k])) for k in keys)))
            cells[ci] = groups[keys[0]]
            if ci not in queued:
                pending.append(ci)
                queued.add(ci)
            for k in keys[1:]:
                cells.append(groups[k])
                pending.append(len(cells) - 1)
                queued.add(len(cells) - 1)


def _target(cells: list[list[int]]) -> int:
    best = -1
    for i, c in enumerate(cells):
        if len(c) > 1 and (best < 0 or len(c) < len(cells[best])):
            best = i
    return best


def _individualize(adj, cells: list[list[int]], t: int, v: int, trace: list) -> list[list[int]]:
    child = [c[:] for c in cells]
    rest = [w for w in child[t] if w != v]
    child[t] = [v]
    child.append(rest)
    _refine(adj, child, [t], trace)
    return child


def _as_partition(cells) -> OrderedPartition:
    return tuple(tuple(sorted(c)) for c in cells)


def refine(g: Graph, p: Sequence[Sequence[int]]) -> OrderedPartition:
    """Coarsest equitable refinement of the ordered partition ``p``."""
    cells = [list(c) for c in p]
    seen = sorted(v for c in cells for v in c)
    if seen != list(range(g.n)) or any(not c for c in cells):
        raise PreconditionError("not an ordered partition of the vertex set")
    _refine(g.adj, cells, list(range(len(cells))), [])
    return _as_partition(cells)


class _Search:
    def __init__(self, g: Graph, cells: list[list[int]], colors: Sequence[int], budget: Budget):
        self.g = g
        self.adj = g.adj
        self.colors = colors
        self.budget = budget
        root = [c[:] for c in cells]
        self.root_trace: list = []
        _refine(self.adj, root, list(range(len(root))), self.root_trace)
        self.root = root

    def _leaf_perm(self, leaf: list[list[int]]) -> Perm | None:
        perm = [0] * self.g.n
        for a, b in zip(self.first_leaf, leaf):
            perm[a[0]] = b[0]
        perm = tuple(perm)
        col = self.colors
        if any(col[x] != col[y] for x, y in enumerate(perm)):
            return None
        return perm if self.g.is_automorphism(perm) else None

    def _descend(self, cells: list[list[int]], level: int) -> Perm | None:
        """Search the subtree at ``cells`` (depth ``level``) for a leaf equivalent to the first leaf."""
        self.budget.tick()
        if level == len(self.path):
            return self._leaf_perm(cells)
        t = _target(cells)
        if t != self.path[level][1]:
            return None
        for v in sorted(cells[t]):
            trace: list = []
            child = _individualize(self.adj, cells, t, v, trace)
            if trace != self.traces[level]:
                continue
            found = self._descend(child, level + 1)
            if found is not None:
                return found
        return None

    def run(self) -> tuple[list[int], list[Perm], int]:
        self.path: list[tuple[list[list[int]], int, int]] = []
        self.traces: list[list] = []
        cells = self.root
        while True:
            t = _target(cells)
            if t < 0:
                break
            v = min(cells[t])
            trace: list = []
            child = _individualize(self.adj, cells, t, v, trace)
            self.path.append((cells, t, v))
            self.traces.append(trace)
            cells = child
        self.first_leaf = cells
        base = [v for _, _, v in self.path]
        gens: list[Perm] = []
        uf = _UnionFind(self.g.n)
        order = 1
        for level in range(len(self.path) - 1, -1, -1):
            node, t, b = self.path[level]
            failed: list[int] = []
            for v in sorted(node[t]):
                if v == b:
                    continue
                root = uf.find(v)
                if root == uf.find(b) or any(uf.find(f) == root for f in failed):
                    continue
                trace: list = []
                child = _individualize(self.adj, node, t, v, trace)
                found = None
                if trace == self.traces[level]:
                    found = self._descend(child, level + 1)
                if found is None:
                    failed.append(v)
                else:
                    gens.append(found)
                    uf.merge_perm(found)
            rb = uf.find(b)
            order *= sum(1 for v in node[t] if uf.find(v) == rb)
        return base, gens, order


def _group_from_cells(g: Graph, cells: list[list[int]], colors: Sequence[int],
                      budget: Budget | int | None) -> PermGroup:
    search = _Search(g, cells, colors, as_budget(budget))
    base, gens, order = search.run()
    return PermGroup(g.n, gens, base=base, order=order)


def automorphism_group(g: Graph, budget: Budget | int | None = None) -> PermGroup:
    """Aut(g) as a permutation group on the vertices."""
    cells = [list(range(g.n))] if g.n else []
    return _group_from_cells(g, cells, [0] * g.n, budget)


def color_automorphism_group(g: Graph, colors: Sequence[int], budget: Budget | int | None = None) -> PermGroup:
    """Automorphisms of ``g`` mapping every colour class onto itself."""
    if len(colors) != g.n:
        raise PreconditionError("colouring must assign a colour to every vertex")
    classes: dict = {}
    for v, c in enumerate(colors):
        classes.setdefault(c, []).append(v)
    cells = [classes[c] for c in sorted(classes)]
    return _group_from_cells(g, cells, list(colors), budget)
