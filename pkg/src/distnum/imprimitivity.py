"""Block systems of transitive groups and the colouring bounds built on them.

Given a transitive group ``G`` on ``V`` with a block system, fix a block
``A``.  ``H`` is the group induced on ``A`` by the setwise stabilizer of
``A``, and ``X`` is a palette with ``D(G on blocks)`` colours.  A
distinguishing colouring of ``G`` on ``V`` is assembled from a
distinguishing colouring of the blocks and one of ``H wr Sym(X)`` on
``A x X``, by moving each block onto ``A`` with a fixed transversal element.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import comb
from typing import Sequence

from .automorphism import automorphism_group
from .budget import Budget, as_budget
from .distinguishing import (
    wreath_distnum_by_counting,
    distinguishing_witness,
    is_distinguishing,
)
from .errors import PreconditionError, VerificationFailure
from .graph import Graph, complement, disjoint_copies, induced_subgraph, quotient_graph
from .perm import (
    Perm,
    PermGroup,
    _UnionFind,
    cell_permutation,
    identity,
    induced_action,
    inverse,
    mul,
    setwise_stabilizer,
    wreath_imprimitive,
    wreath_point,
)

__all__ = [
    "BlockSystem",
    "BlockTransversal",
    "minimal_block",
    "all_block_systems",
    "block_group",
    "build_transversal",
    "block_wreath_coloring",
    "embedding_into_wreath",
    "verify_block_wreath_bound",
    "verify_block_copies_bound",
    "copies_palette_bound",
]


@dataclass(frozen=True)
class BlockSystem:
    """A partition of ``0..n-1`` into cells, sorted by least element."""

    cells: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        cells = tuple(sorted(tuple(sorted(c)) for c in self.cells))
        object.__setattr__(self, "cells", cells)
        points = sorted(x for c in cells for x in c)
        if points != list(range(len(points))) or any(not c for c in cells):
            raise PreconditionError("cells must partition 0..n-1")

    @property
    def degree(self) -> int:
        return sum(len(c) for c in self.cells)

    @property
    def index(self) -> tuple[int, ...]:
        idx = [0] * self.degree
        for i, c in enumerate(self.cells):
            for x in c:
                idx[x] = i
        return tuple(idx)

    @property
    def block_size(self) -> int:
        return len(self.cells[0])

    def is_trivial(self) -> bool:
        return len(self.cells) in (1, self.degree)

    def is_invariant(self, group: PermGroup) -> bool:
        idx = self.index
        return all(cell_permutation(g, self.cells, idx) is not None for g in group.generators)

    def to_json(self) -> list[list[int]]:
        return [list(c) for c in self.cells]

    @classmethod
    def from_json(cls, data) -> "BlockSystem":
        return cls(tuple(tuple(int(x) for x in c) for c in data))


def _require_transitive(group: PermGroup) -> None:
    if not group.is_transitive():
        raise PreconditionError("group is not transitive")


def _block_closure(group: PermGroup, seeds: Sequence[int]) -> _UnionFind:
    """Finest invariant equivalence with all of ``seeds`` in one class."""
    uf = _UnionFind(group.degree)
    queue = []
    for s in seeds[1:]:
        a, b = uf.find(seeds[0]), uf.find(s)
        if a != b:
            uf.parent[max(a, b)] = min(a, b)
            queue.append((seeds[0], s))
    while queue:
        x, y = queue.pop()
        for g in group.generators:
            a, b = uf.find(g[x]), uf.find(g[y])
            if a != b:
                uf.parent[max(a, b)] = min(a, b)
                queue.append((a, b))
    return uf


def _system_of(uf: _UnionFind, n: int) -> BlockSystem:
    classes: dict[int, list[int]] = {}
    for x in range(n):
        classes.setdefault(uf.find(x), []).append(x)
    return BlockSystem(tuple(tuple(c) for c in classes.values()))


def minimal_block(group: PermGroup, a: int, b: int) -> frozenset[int]:
    """Smallest block containing both ``a`` and ``b``."""
    _require_transitive(group)
    if a == b:
        raise PreconditionError("need two distinct points")
    uf = _block_closure(group, [a, b])
    ra = uf.find(a)
    return frozenset(x for x in range(group.degree) if uf.find(x) == ra)


def all_block_systems(group: PermGroup) -> list[BlockSystem]:
    """Every block system, from the singletons up to the single cell.

    Each block through point 0 is the join of minimal blocks ``{0, b}``, so
    closing the minimal blocks under joins enumerates all of them.
    """
    _require_transitive(group)
    n = group.degree
    if n == 0:
        return []
    found: dict[frozenset[int], None] = {frozenset([0]): None}
    frontier = [minimal_block(group, 0, b) for b in range(1, n)]
    while frontier:
        blk = frontier.pop()
        if blk in found:
            continue
        found[blk] = None
        for other in list(found):
            if other <= blk or blk <= other:
                continue
            uf = _block_closure(group, sorted(blk | other))
            r0 = uf.find(0)
            joined = frozenset(x for x in range(n) if uf.find(x) == r0)
            if joined not in found:
                frontier.append(joined)
    systems = []
    for blk in found:
        uf = _block_closure(group, sorted(blk))
        systems.append(_system_of(uf, n))
    systems = list(dict.fromkeys(systems))
    systems.sort(key=lambda s: (s.block_size, s.cells))
    return systems


@dataclass(frozen=True)
class BlockTransversal:
    """``reps[i]`` maps cell ``i`` onto the base cell."""

    base_cell: int
    reps: tuple[Perm, ...]


def build_transversal(group: PermGroup, bs: BlockSystem, base_cell: int = 0,
                      rng: random.Random | None = None) -> BlockTransversal:
    """One element per cell carrying it onto the base cell.

    Deterministic by default: a breadth-first walk over cells by generators.
    With ``rng`` each representative is multiplied by a random element of the
    base cell's setwise stabilizer, giving a different but equally valid choice.
    """
    cells, idx = bs.cells, bs.index
    reach: dict[int, Perm] = {base_cell: identity(group.degree)}
    queue = [base_cell]
    for c in queue:
        for s in group.generators:
            d = idx[s[cells[c][0]]]
            if d not in reach:
                reach[d] = mul(reach[c], s)
                queue.append(d)
    if len(reach) != len(cells):
        raise PreconditionError("group is not transitive on the cells")
    stab = setwise_stabilizer(group, cells[base_cell]) if rng is not None else None
    reps = []
    for c in range(len(cells)):
        g = inverse(reach[c])
        if stab is not None and c != base_cell:
            g = mul(g, stab.random_element(rng))
        reps.append(g)
    for c, g in enumerate(reps):
        if sorted(g[x] for x in cells[c]) != list(cells[base_cell]):
            raise VerificationFailure(f"transversal element for cell {c} misses the base cell")
    return BlockTransversal(base_cell, tuple(reps))


def block_group(group: PermGroup, bs: BlockSystem, base_cell: int = 0,
                budget: Budget | int | None = None) -> PermGroup:
    """The group induced on the base cell by its setwise stabilizer."""
    cell = bs.cells[base_cell]
    return setwise_stabilizer(group, cell, budget).restrict(cell)


def block_wreath_coloring(group: PermGroup, bs: BlockSystem, transversal: BlockTransversal,
                   chi: Sequence[int], psi: Sequence[int], palette: int | None = None) -> tuple[int, ...]:
    """Colour ``v`` in cell ``B`` by ``psi`` at ``(v^f(B), chi(B))``.

    ``chi`` colours the cells with ``0..palette-1``; ``psi`` colours ``A x X``
    indexed ``x*|A| + a`` where ``a`` is the position of a point within the
    base cell ``A``.
    """
    cells = bs.cells
    base = cells[transversal.base_cell]
    if len(chi) != len(cells):
        raise PreconditionError("chi must colour every cell")
    if palette is None:
        palette = max(chi) + 1
    if any(not 0 <= c < palette for c in chi):
        raise PreconditionError("chi uses a colour outside its palette")
    if len(psi) != len(base) * palette:
        raise PreconditionError(f"psi must colour |A|*|X| = {len(base) * palette} points")
    local = {x: i for i, x in enumerate(base)}
    phi = [0] * group.degree
    for b, cell in enumerate(cells):
        f = transversal.reps[b]
        for v in cell:
            phi[v] = psi[wreath_point(local[f[v]], chi[b], len(base))]
    return tuple(phi)


def embedding_into_wreath(group: PermGroup, bs: BlockSystem, transversal: BlockTransversal,
                          h: PermGroup | None = None) -> tuple[Perm, PermGroup, list[Perm]]:
    """Relabel ``V`` as ``A x cells`` and conjugate the generators across.

    Returns the relabelling, the wreath product of the block group with the
    induced action on cells, and the conjugated generators; each of the latter
    should lie in the former.
    """
    cells, size = bs.cells, bs.block_size
    base = cells[transversal.base_cell]
    local = {x: i for i, x in enumerate(base)}
    relabel = [0] * group.degree
    for b, cell in enumerate(cells):
        f = transversal.reps[b]
        for v in cell:
            relabel[v] = wreath_point(local[f[v]], b, size)
    relabel = tuple(relabel)
    h = h if h is not None else block_group(group, bs, transversal.base_cell)
    image, _ = induced_action(group, cells)
    wreath = wreath_imprimitive(h, image)
    back = inverse(relabel)
    conjugated = [mul(mul(back, g), relabel) for g in group.generators]
    return relabel, wreath, conjugated


def verify_block_wreath_bound(group: PermGroup, bs: BlockSystem, budget: Budget | int | None = None,
                       rng: random.Random | None = None) -> dict:
    """Compute both sides of ``D(G, V) <= D(H wr Sym(X), A x X)`` and check the assembled colouring."""
    budget = as_budget(budget)
    _require_transitive(group)
    if not bs.is_invariant(group):
        raise PreconditionError("block system is not invariant under the group")
    image, kernel = induced_action(group, bs.cells)
    d_cells, chi = distinguishing_witness(image, budget)
    h = block_group(group, bs, 0, budget)
    sym_x = PermGroup.symmetric(d_cells.value)
    wreath = wreath_imprimitive(h, sym_x)
    d_wreath, psi = distinguishing_witness(wreath, budget)
    d_group, _ = distinguishing_witness(group, budget)
    transversal = build_transversal(group, bs, 0, rng)
    phi = block_wreath_coloring(group, bs, transversal, chi, psi, d_cells.value)
    phi_ok = is_distinguishing(group, phi, budget)
    _, wreath_big, conjugated = embedding_into_wreath(group, bs, transversal, h)
    embedded = all(wreath_big.contains(g) for g in conjugated)
    report = {
        "degree": group.degree,
        "order": group.order(),
        "cells": len(bs.cells),
        "block_size": bs.block_size,
        "kernel_order": kernel.order(),
        "image_order": image.order(),
        "D_cells": d_cells.value,
        "H_order": h.order(),
        "D_group": d_group.value,
        "D_wreath": d_wreath.value,
        "phi": list(phi),
        "phi_distinguishing": phi_ok,
        "phi_colors": len(set(phi)),
        "embedding_ok": embedded,
        "bound_holds": d_group <= d_wreath,
    }
    try:
        report["D_wreath_by_counting"] = wreath_distnum_by_counting(h, sym_x, budget).to_json()
    except PreconditionError:
        report["D_wreath_by_counting"] = None
    report["pass"] = bool(phi_ok and embedded and report["bound_holds"]
                          and report["D_wreath_by_counting"] in (None, d_wreath.value))
    if not report["pass"]:
        raise VerificationFailure(f"block colouring bound failed: {report}")
    return report


def verify_block_copies_bound(g: Graph, bs: BlockSystem, budget: Budget | int | None = None) -> dict:
    """Compare ``D(g)`` with ``D(n<B>)`` where ``n`` is the distinguishing number of the action on blocks."""
    budget = as_budget(budget)
    aut = automorphism_group(g, budget)
    _require_transitive(aut)
    if not bs.is_invariant(aut):
        raise PreconditionError("block system is not invariant under Aut(g)")
    image, _ = induced_action(aut, bs.cells)
    n, _ = distinguishing_witness(image, budget)
    d_graph, witness = distinguishing_witness(aut, budget)
    per_block = []
    for cell in bs.cells:
        block, _ = induced_subgraph(g, cell)
        copies = disjoint_copies(block, n.value)
        d_copies, _ = distinguishing_witness(automorphism_group(copies, budget), budget)
        per_block.append(d_copies.value)
    block, _ = induced_subgraph(g, bs.cells[0])
    copies = disjoint_copies(block, n.value)
    d_compl, _ = distinguishing_witness(automorphism_group(complement(copies), budget), budget)
    quotient = quotient_graph(g, bs.cells)
    d_quotient_aut, _ = distinguishing_witness(automorphism_group(quotient, budget), budget)
    report = {
        "n_vertices": g.n,
        "cells": len(bs.cells),
        "block_size": bs.block_size,
        "n": n.value,
        "n_quotient_aut": d_quotient_aut.value,
        "D_graph": d_graph.value,
        "witness": list(witness),
        "D_copies": per_block[0],
        "D_copies_per_block": per_block,
        "D_copies_complement": d_compl.value,
        "bound_holds": all(d_graph.value <= d for d in per_block),
        "sharp": d_graph.value == per_block[0],
    }
    report["pass"] = report["bound_holds"] and d_compl.value == per_block[0]
    if not report["pass"]:
        raise VerificationFailure(f"block bound failed: {report}")
    return report


def copies_palette_bound(k: int, n: int) -> int:
    """Least ``m`` with ``C(m, k) >= n``; checks ``m < k n^(1/k) + 1`` exactly."""
    if k < 1 or n < 1:
        raise PreconditionError("k and n must be positive")
    m = k
    while comb(m, k) < n:
        m += 1
    # m - 1 < k * n^(1/k)  <=>  (m - 1)^k < k^k * n
    if not (m - 1) ** k < k ** k * n:
        raise VerificationFailure(f"m={m} violates the bound for k={k}, n={n}")
    return m
