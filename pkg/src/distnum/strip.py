"""Finite windows of the layered strip graph.

Layer ``n`` is a copy of ``A_{n mod 3}`` where ``A_0 = K_k``, ``A_1`` is
``K_{k(k-1)}`` with the perfect matching ``{2i, 2i+1}`` removed and ``A_2``
is the null graph on ``k`` vertices.  Consecutive layers are completely
joined.  Vertex ids run layer by layer in increasing layer index.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .budget import Budget, as_budget
from .errors import PreconditionError
from .graph import Graph, ball, complete_graph, null_graph

__all__ = [
    "StripWindow",
    "layer_graph",
    "layer_size",
    "strip_window",
    "strip_ball",
    "strip_cycle",
    "interior_valences",
    "boundary_valences",
    "palette_split_coloring",
    "verify_strip_family",
]


def _check_k(k: int) -> None:
    if k < 3:
        raise PreconditionError("strip graphs need k >= 3")


def layer_graph(k: int, residue: int) -> Graph:
    _check_k(k)
    residue %= 3
    if residue == 0:
        return complete_graph(k)
    if residue == 2:
        return null_graph(k)
    n = k * (k - 1)
    full = (1 << n) - 1
    return Graph(n, tuple(full & ~(1 << v) & ~(1 << (v ^ 1)) for v in range(n)))


def layer_size(k: int, n: int) -> int:
    return k * (k - 1) if n % 3 == 1 else k


@dataclass(frozen=True)
class StripWindow:
    k: int
    lo: int
    hi: int
    graph: Graph
    layer_of: tuple[int, ...]
    cyclic: bool = False

    def layer(self, n: int) -> list[int]:
        return [v for v, m in enumerate(self.layer_of) if m == n]

    def layers(self) -> list[list[int]]:
        return [self.layer(n) for n in range(self.lo, self.hi + 1)]

    def sidecar(self) -> dict:
        return {"k": self.k, "lo": self.lo, "hi": self.hi, "layer_of": list(self.layer_of)}


def _assemble(k: int, lo: int, hi: int, cyclic: bool) -> StripWindow:
    offsets = {}
    layer_of: list[int] = []
    for n in range(lo, hi + 1):
        offsets[n] = len(layer_of)
        layer_of.extend([n] * layer_size(k, n))
    total = len(layer_of)
    adj = [0] * total
    masks = {}
    for n in range(lo, hi + 1):
        size = layer_size(k, n)
        masks[n] = ((1 << size) - 1) << offsets[n]
        inner = layer_graph(k, n % 3)
        for i, m in enumerate(inner.adj):
            adj[offsets[n] + i] |= m << offsets[n]
    pairs = [(n, n + 1) for n in range(lo, hi)]
    if cyclic:
        pairs.append((hi, lo))
    for a, b in pairs:
        for v in range(offsets[a], offsets[a] + layer_size(k, a)):
            adj[v] |= masks[b]
        for v in range(offsets[b], offsets[b] + layer_size(k, b)):
            adj[v] |= masks[a]
    return StripWindow(k, lo, hi, Graph(total, tuple(adj)), tuple(layer_of), cyclic)


def strip_window(k: int, lo: int, hi: int) -> StripWindow:
    """Layers ``lo..hi`` of the strip with free ends."""
    _check_k(k)
    if lo > hi:
        raise PreconditionError("need lo <= hi")
    return _assemble(k, lo, hi, cyclic=False)


def strip_ball(k: int, center_layer: int, m: int) -> tuple[StripWindow, dict]:
    """Ball of radius ``m`` around the first vertex of ``center_layer``.

    Consecutive layers are completely joined, so for ``m >= 2`` this is the
    whole window of layers ``center_layer-m .. center_layer+m``; smaller
    radii may cut the centre layer.  Radii below 3 are outside the regime
    the construction is about and are flagged in the metadata.
    """
    if m < 0:
        raise PreconditionError("radius must be non-negative")
    w = strip_window(k, center_layer - m, center_layer + m)
    center = w.layer(center_layer)[0]
    if m < 2:
        g, vmap = ball(w.graph, center, m)
        w = StripWindow(k, w.lo, w.hi, g, tuple(w.layer_of[v] for v in vmap.to_host))
        center = vmap.center
    meta = {"k": k, "center_layer": center_layer, "radius": m, "center_vertex": center,
            "in_regime": m >= 3}
    return w, meta


def strip_cycle(k: int, periods: int) -> StripWindow:
    """Layers ``0..3*periods-1`` closed into a cycle of layers.

    Not one of the ball-graphs; this periodic variant only serves the
    translation argument against k-colourings.
    """
    _check_k(k)
    if periods < 2:
        raise PreconditionError("a cycle of layers needs at least 2 periods")
    return _assemble(k, 0, 3 * periods - 1, cyclic=True)


def interior_valences(k: int) -> tuple[int, int, int]:
    """Valences of interior vertices in layers of residue 0, 1, 2."""
    return (k * k + k - 1, k * k + k - 2, k * k)


def boundary_valences(k: int) -> set[int]:
    return {k * k - 1, k * k - 2, k * k - k, 2 * k - 1, k}


def _layer_groups(k: int, budget: Budget):
    from .automorphism import automorphism_group

    return {res: automorphism_group(layer_graph(k, res), budget) for res in range(3)}


def palette_split_coloring(w: StripWindow, base: dict[int, tuple[int, ...]], center_layer: int = 0) -> tuple[int, ...]:
    """Layer colourings from ``base`` (per residue, colours ``0..k-1``), shifted to ``1..k`` off the centre layer."""
    colors = [0] * w.graph.n
    for n in range(w.lo, w.hi + 1):
        shift = 0 if n == center_layer else 1
        for i, v in enumerate(w.layer(n)):
            colors[v] = base[n % 3][i] + shift
    return tuple(colors)


def verify_strip_family(k: int, m: int, budget: Budget | int | None = None, seed: int = 0,
                     samples: int = 8) -> dict:
    """Check the defining numbers of the layered strip on finite windows.

    Checks layer sizes and valences, ``D`` of each layer graph and that its
    distinguishing ``k``-colourings form one orbit, ``D`` of the radius-``m``
    ball and that its automorphisms keep layers, a ``(k+1)``-colouring with
    colour 0 used once in layer 0, and on a cycle of layers the
    translation that preserves any layer-wise distinguishing ``k``-colouring.
    """
    from .automorphism import automorphism_group
    from .distinguishing import (
        count_distinguishing_colorings,
        distinguishing_witness,
        find_distinguishing_coloring,
        is_distinguishing,
    )
    from .perm import transporter

    budget = as_budget(budget)
    rng = random.Random(seed)
    checks: dict[str, dict] = {}

    wide = strip_window(k, -(m + 3), m + 3)
    sizes_ok = all(len(wide.layer(n)) == (k * (k - 1) if n % 3 == 1 else k)
                   for n in range(wide.lo, wide.hi + 1))
    inner = {res: sorted({wide.graph.degree(v) for n in range(wide.lo + 1, wide.hi)
                          if n % 3 == res for v in wide.layer(n)}) for res in range(3)}
    expected = interior_valences(k)
    boundary = sorted({wide.graph.degree(v) for n in (wide.lo, wide.hi) for v in wide.layer(n)})
    checks["valences"] = {
        "interior": [inner[r] for r in range(3)],
        "expected": list(expected),
        "boundary": boundary,
        "pass": sizes_ok and all(inner[r] == [expected[r]] for r in range(3))
        and set(boundary) <= boundary_valences(k),
    }

    groups = _layer_groups(k, budget)
    layers = {}
    base = {}
    for res in range(3):
        group = groups[res]
        d, _ = distinguishing_witness(group, budget)
        base[res] = find_distinguishing_coloring(group, k, budget)
        n_k = count_distinguishing_colorings(group, k, budget, limit=k ** group.degree)
        layers[res] = {
            "vertices": group.degree,
            "aut_order": group.order(),
            "D": d.value,
            "n_k": n_k,
            "orbits_under_aut": n_k // group.order(),
            "patterns_up_to_color_perm": n_k // math.factorial(k),
            "pass": d.value == k and n_k == group.order(),
        }
    checks["layers"] = {"by_residue": layers, "pass": all(v["pass"] for v in layers.values())}

    w, meta = strip_ball(k, 0, m)
    aut = automorphism_group(w.graph, budget)
    d_ball, witness = distinguishing_witness(aut, budget)
    keeps_layers = all(w.layer_of[g[v]] == w.layer_of[v] for g in aut.generators for v in w.graph.vertices)
    checks["ball"] = {
        "radius": m,
        "vertices": w.graph.n,
        "aut_order": aut.order(),
        "D": d_ball.value,
        "witness": list(witness),
        "fixes_layers": keeps_layers,
        "pass": d_ball.value == k and keeps_layers,
    }

    split = palette_split_coloring(w, base)
    split_ok = is_distinguishing(aut, split, budget) and split.count(0) == 1
    checks["upper_bound_window"] = {"coloring": list(split), "colors": k + 1, "pass": split_ok}

    cyc = strip_cycle(k, 2)
    aut_cyc = automorphism_group(cyc.graph, budget)
    d_cyc, _ = distinguishing_witness(aut_cyc, budget)
    cyc_split = palette_split_coloring(cyc, base)
    translations = []
    for _ in range(samples):
        local = {}
        for n in range(cyc.lo, cyc.hi + 1):
            res = n % 3
            h = groups[res].random_element(rng)
            sigma = list(range(k))
            rng.shuffle(sigma)
            local[n] = [sigma[base[res][h[x]]] for x in range(groups[res].degree)]
        colors = [0] * cyc.graph.n
        for n, cols in local.items():
            for i, v in enumerate(cyc.layer(n)):
                colors[v] = cols[i]
        tau = [0] * cyc.graph.n
        found = True
        for n in range(cyc.lo, cyc.hi + 1):
            nxt = cyc.lo + (n + 3 - cyc.lo) % (cyc.hi - cyc.lo + 1)
            h = transporter(groups[n % 3], local[n], local[nxt], budget)
            if h is None:
                found = False
                break
            src, dst = cyc.layer(n), cyc.layer(nxt)
            for i, v in enumerate(src):
                tau[v] = dst[h[i]]
        ok = (found and cyc.graph.is_automorphism(tau)
              and all(colors[tau[v]] == colors[v] for v in cyc.graph.vertices)
              and any(tau[v] != v for v in cyc.graph.vertices))
        translations.append(ok)
    checks["cycle_of_layers"] = {
        "note": "periodic variant, closes the layers into a cycle",
        "vertices": cyc.graph.n,
        "D": d_cyc.value,
        "split_coloring_distinguishing": is_distinguishing(aut_cyc, cyc_split, budget),
        "translations_found": sum(translations),
        "samples": samples,
        "pass": d_cyc.value == k + 1 and all(translations),
    }
    checks["cycle_of_layers"]["pass"] &= checks["cycle_of_layers"]["split_coloring_distinguishing"]

    return {"k": k, "m": m, "seed": seed, "checks": checks,
            "pass": all(c["pass"] for c in checks.values())}
