"""Finite simple graphs on vertices ``0..n-1`` with bit-set adjacency.

Besides the basic container this module provides the constructions used
throughout the package: induced subgraphs, balls around a vertex,
complements, disjoint unions of copies and quotients by a partition.
Graphs are immutable; every construction returns a fresh value.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

__all__ = [
    "Graph",
    "VertexMap",
    "induced_subgraph",
    "ball",
    "bfs_distances",
    "complement",
    "disjoint_copies",
    "quotient_graph",
    "complete_graph",
    "null_graph",
    "cycle_graph",
    "path_graph",
]


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph; ``adj[v]`` is the neighbour set of ``v`` as a bit mask."""

    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if self.n < 0 or len(self.adj) != self.n:
            raise ValueError("adjacency length does not match vertex count")
        full = (1 << self.n) - 1
        for v, mask in enumerate(self.adj):
            if mask & ~full:
                raise ValueError(f"vertex {v} has a neighbour out of range")
            if mask >> v & 1:
                raise ValueError(f"loop at vertex {v}")
            for u in _bits(mask):
                if not self.adj[u] >> v & 1:
                    raise ValueError(f"asymmetric edge {v}-{u}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj))

    @property
    def vertices(self) -> range:
        return range(self.n)

    def neighbors(self, v: int) -> list[int]:
        return list(_bits(self.adj[v]))

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [m.bit_count() for m in self.adj]

    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in _bits(self.adj[u] >> (u + 1) << (u + 1))]

    def num_edges(self) -> int:
        return sum(m.bit_count() for m in self.adj) // 2

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        return len(bfs_distances(self, 0)) == self.n

    def is_automorphism(self, perm: Sequence[int]) -> bool:
        """True iff ``v -> perm[v]`` preserves adjacency."""
        if len(perm) != self.n:
            return False
        for u in range(self.n):
            image = 0
            for v in _bits(self.adj[u]):
                image |= 1 << perm[v]
            if image != self.adj[perm[u]]:
                return False
        return True


@dataclass(frozen=True)
class VertexMap:
    """Provenance of a derived graph: ``to_host[i]`` is the host vertex behind new vertex ``i``.

    ``center`` and ``radius`` are filled in for balls.
    """

    to_host: tuple[int, ...]
    center: int | None = None
    radius: int | None = None
    from_host: dict[int, int] = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        inverse = {h: i for i, h in enumerate(self.to_host)}
        if len(inverse) != len(self.to_host):
            raise ValueError("vertex map is not injective")
        object.__setattr__(self, "from_host", inverse)

    def __len__(self):
        return len(self.to_host)

    def host_set(self) -> frozenset[int]:
        return frozenset(self.to_host)


def induced_subgraph(g: Graph, u: Iterable[int]) -> tuple[Graph, VertexMap]:
    """Subgraph induced by ``u``; new ids follow the ascending order of ``u``."""
    verts = sorted(set(u))
    for v in verts:
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} out of range for n={g.n}")
    local = {h: i for i, h in enumerate(verts)}
    adj = []
    for h in verts:
        mask = 0
        for w in _bits(g.adj[h]):
            i = local.get(w)
            if i is not None:
                mask |= 1 << i
        adj.append(mask)
    return Graph(len(verts), tuple(adj)), VertexMap(tuple(verts))


def bfs_distances(g: Graph, x: int) -> dict[int, int]:
    """Distances from ``x`` to every vertex reachable from it."""
    if not 0 <= x < g.n:
        raise ValueError(f"vertex {x} out of range for n={g.n}")
    dist = {x: 0}
    queue = deque([x])
    while queue:
        v = queue.popleft()
        for w in _bits(g.adj[v]):
            if w not in dist:
                dist[w] = dist[v] + 1
                queue.append(w)
    return dist


def ball(g: Graph, x: int, r: int) -> tuple[Graph, VertexMap]:
    """The ball-graph of radius ``r`` centred at ``x``.

    Vertices not reachable from ``x`` are never included, so the result is
    defined for disconnected hosts too.
    """
    if r < 0:
        raise ValueError("radius must be non-negative")
    dist = bfs_distances(g, x)
    sub, vmap = induced_subgraph(g, (v for v, d in dist.items() if d <= r))
    return sub, VertexMap(vmap.to_host, center=vmap.from_host[x], radius=r)


def complement(g: Graph) -> Graph:
    full = (1 << g.n) - 1
    return Graph(g.n, tuple(full & ~m & ~(1 << v) for v, m in enumerate(g.adj)))


def disjoint_copies(g: Graph, m: int) -> Graph:
    """``m`` disjoint copies of ``g``; copy ``i`` occupies ids ``[i*n, (i+1)*n)``."""
    if m < 1:
        raise ValueError("number of copies must be at least 1")
    adj = []
    for i in range(m):
        shift = i * g.n
        adj.extend(mask << shift for mask in g.adj)
    return Graph(g.n * m, tuple(adj))


def quotient_graph(g: Graph, partition: Sequence[Iterable[int]]) -> Graph:
    """One vertex per cell; distinct cells are adjacent iff some edge of ``g`` joins them."""
    cells = [list(c) for c in partition]
    cell_of = [-1] * g.n
    for i, cell in enumerate(cells):
        if not cell:
            raise ValueError("empty cell in partition")
        for v in cell:
            if not 0 <= v < g.n:
                raise ValueError(f"vertex {v} out of range for n={g.n}")
            if cell_of[v] != -1:
                raise ValueError(f"vertex {v} lies in two cells")
            cell_of[v] = i
    if -1 in cell_of:
        raise ValueError("partition does not cover the vertex set")
    edges = {
        (min(cell_of[u], cell_of[v]), max(cell_of[u], cell_of[v]))
        for u, v in g.edges()
        if cell_of[u] != cell_of[v]
    }
    return Graph.from_edges(len(cells), sorted(edges))


def complete_graph(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, tuple(full & ~(1 << v) for v in range(n)))


def null_graph(n: int) -> Graph:
    return Graph(n, (0,) * n)


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))
