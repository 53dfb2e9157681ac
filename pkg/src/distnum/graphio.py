"""Reading and writing graphs: graph6 and a plain edge-list format.

Edge-list files look like::

    n m
    u v
    ...

with exactly ``m`` edge lines.  graph6 follows the standard encoding; an
optional ``>>graph6<<`` header is accepted on input and never written.
"""

from __future__ import annotations

from pathlib import Path

from .graph import Graph

__all__ = [
    "GraphFormatError",
    "to_graph6",
    "from_graph6",
    "to_edge_list",
    "from_edge_list",
    "parse_graph",
    "write_graph",
    "read_graph_file",
]

_HEADER = ">>graph6<<"


class GraphFormatError(ValueError):
    pass


def _encode_n(n: int) -> str:
    if n < 63:
        return chr(n + 63)
    if n < 258048:
        return chr(126) + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    if n < 1 << 36:
        return chr(126) * 2 + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))
    raise GraphFormatError("graph too large for graph6")


def to_graph6(g: Graph) -> str:
    bits = [int(g.has_edge(i, j)) for j in range(1, g.n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    body = []
    for k in range(0, len(bits), 6):
        value = 0
        for b in bits[k:k + 6]:
            value = value << 1 | b
        body.append(chr(value + 63))
    return _encode_n(g.n) + "".join(body)


def from_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(_HEADER):
        s = s[len(_HEADER):]
    if not s:
        raise GraphFormatError("empty graph6 string")
    data = [ord(c) - 63 for c in s]
    if any(not 0 <= d < 64 for d in data):
        raise GraphFormatError("graph6 character out of range")
    if data[0] < 63:
        n, pos = data[0], 1
    elif len(data) >= 4 and data[1] < 63:
        n, pos = (data[1] << 12) | (data[2] << 6) | data[3], 4
    elif len(data) >= 8:
        n = 0
        for d in data[2:8]:
            n = n << 6 | d
        pos = 8
    else:
        raise GraphFormatError("truncated graph6 size header")
    nbits = n * (n - 1) // 2
    body = data[pos:]
    if len(body) != (nbits + 5) // 6:
        raise GraphFormatError(f"graph6 body has {len(body)} bytes, expected {(nbits + 5) // 6}")
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if body[k // 6] >> (5 - k % 6) & 1:
                edges.append((i, j))
            k += 1
    if nbits % 6 and body[-1] & ((1 << (6 - nbits % 6)) - 1):
        raise GraphFormatError("nonzero padding bits in graph6 body")
    return Graph.from_edges(n, edges)


def to_edge_list(g: Graph) -> str:
    edges = g.edges()
    lines = [f"{g.n} {len(edges)}"] + [f"{u} {v}" for u, v in edges]
    return "\n".join(lines) + "\n"


def from_edge_list(text: str) -> Graph:
    lines = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines or len(lines[0]) != 2:
        raise GraphFormatError("edge list must start with a line 'n m'")
    try:
        n, m = int(lines[0][0]), int(lines[0][1])
        edges = [(int(a), int(b)) for a, b in lines[1:]]
    except ValueError as exc:
        raise GraphFormatError(f"malformed edge list: {exc}") from None
    if n < 0 or m != len(edges):
        raise GraphFormatError(f"header announces {m} edges, found {len(edges)}")
    try:
        return Graph.from_edges(n, edges)
    except ValueError as exc:
        raise GraphFormatError(str(exc)) from None


def parse_graph(text: str, fmt: str | None = None) -> Graph:
    """Parse ``text`` as ``"graph6"`` or ``"edgelist"``; guess when ``fmt`` is None."""
    if fmt is None:
        first = text.strip().splitlines()[0] if text.strip() else ""
        fmt = "edgelist" if len(first.split()) == 2 else "graph6"
    if fmt == "graph6":
        return from_graph6(text)
    if fmt == "edgelist":
        return from_edge_list(text)
    raise ValueError(f"unknown graph format {fmt!r}")


def write_graph(g: Graph, fmt: str = "graph6") -> str:
    if fmt == "graph6":
        return to_graph6(g)
    if fmt == "edgelist":
        return to_edge_list(g)
    raise ValueError(f"unknown graph format {fmt!r}")


def read_graph_file(path: str | Path, fmt: str | None = None) -> Graph:
    path = Path(path)
    if fmt is None and path.suffix in (".g6", ".graph6"):
        fmt = "graph6"
    elif fmt is None and path.suffix in (".edges", ".el", ".txt"):
        fmt = "edgelist"
    return parse_graph(path.read_text(), fmt)
