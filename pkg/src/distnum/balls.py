"""Extending anchored colourings across nested balls.

Given balls ``B(1) < B(2) < ...`` around a centre ``x`` and, for each ball, a
distinguishing colouring that uses colour 0 exactly at ``x``, the colouring
of ``B(j)`` keeps the colours already fixed on ``B(j-1)`` and takes the new
shell from the ``j``-th colouring.  Every intermediate result is checked
against a freshly computed ``Aut(B(j))``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .automorphism import automorphism_group
from .budget import Budget, as_budget
from .distinguishing import anchored_distinguishing_coloring, distinguishing_witness, is_distinguishing
from .errors import PreconditionError, VerificationFailure
from .graph import Graph, VertexMap, ball, bfs_distances
from .perm import PermGroup

__all__ = ["BallChain", "build_chain", "extension_steps", "extend_coloring", "verify_ball_extension"]

ANCHOR = 0


@dataclass(frozen=True)
class BallChain:
    host: Graph
    center: int
    radii: tuple[int, ...]
    balls: tuple[tuple[Graph, VertexMap], ...]

    def __len__(self):
        return len(self.radii)

    def groups(self, budget: Budget | int | None = None) -> list[PermGroup]:
        budget = as_budget(budget)
        return [automorphism_group(g, budget) for g, _ in self.balls]


def build_chain(g: Graph, x: int, radii: Sequence[int] | None = None, r_max: int | None = None) -> BallChain:
    """Balls around ``x`` at the given radii (default ``1..r_max``), each strictly larger than the last."""
    if radii is None:
        if r_max is None:
            r_max = max(bfs_distances(g, x).values())
        radii = list(range(1, r_max + 1))
    radii = tuple(radii)
    if not radii:
        raise PreconditionError("need at least one radius")
    if any(b <= a for a, b in zip(radii, radii[1:])) or radii[0] < 0:
        raise PreconditionError(f"radii must be non-negative and strictly increasing: {radii}")
    balls = tuple(ball(g, x, r) for r in radii)
    for (r0, (b0, _)), (r1, (b1, _)) in zip(zip(radii, balls), zip(radii[1:], balls[1:])):
        if b1.n <= b0.n:
            raise PreconditionError(f"ball of radius {r1} does not grow past radius {r0}; graph too small")
    return BallChain(g, x, radii, balls)


def _check_anchored(group: PermGroup, colors: Sequence[int], center: int, palette: int,
                    budget: Budget) -> None:
    if len(colors) != group.degree:
        raise PreconditionError("anchored colouring has the wrong length")
    if any(not 0 <= c < palette for c in colors):
        raise PreconditionError("anchored colouring leaves the shared palette")
    if [v for v, c in enumerate(colors) if c == ANCHOR] != [center]:
        raise PreconditionError("anchor colour must be used exactly at the centre")
    if not is_distinguishing(group, colors, budget):
        raise PreconditionError("anchored colouring is not distinguishing")


def extension_steps(chain: BallChain, anchored: Sequence[Sequence[int]], palette: int | None = None,
                    budget: Budget | int | None = None) -> list[tuple[int, ...]]:
    """The extended colourings of every ball, each in that ball's local vertex ids."""
    budget = as_budget(budget)
    if len(anchored) != len(chain):
        raise PreconditionError("need one anchored colouring per ball")
    if palette is None:
        palette = max(max(c) for c in anchored) + 1
    groups = chain.groups(budget)
    on_host: dict[int, int] = {}
    steps = []
    for (g, vmap), group, phi in zip(chain.balls, groups, anchored):
        _check_anchored(group, phi, vmap.center, palette, budget)
        for local, host in enumerate(vmap.to_host):
            if host not in on_host:
                on_host[host] = phi[local]
        psi = tuple(on_host[h] for h in vmap.to_host)
        if not is_distinguishing(group, psi, budget):
            raise VerificationFailure(f"extended colouring is not distinguishing on the ball of {g.n} vertices")
        steps.append(psi)
    return steps


def extend_coloring(chain: BallChain, anchored: Sequence[Sequence[int]], palette: int | None = None,
                    budget: Budget | int | None = None) -> tuple[int, ...]:
    return extension_steps(chain, anchored, palette, budget)[-1]


def verify_ball_extension(g: Graph, x: int, k: int, radii: Sequence[int] | None = None,
                                budget: Budget | int | None = None) -> dict:
    """If every ball of the chain has fewer than ``k`` colours' worth of symmetry, build a ``k``-colouring.

    Returns per-level records ``{radius, ball_size, D, extended}`` and either
    the extended colouring of the largest ball or the radii whose balls need
    at least ``k`` colours.
    """
    budget = as_budget(budget)
    if not g.is_connected():
        raise PreconditionError("graph must be connected")
    chain = build_chain(g, x, radii)
    groups = chain.groups(budget)
    ds = [distinguishing_witness(group, budget)[0].value for group in groups]
    obstructions = [r for r, d in zip(chain.radii, ds) if d >= k]
    levels = [{"radius": r, "ball_size": b.n, "D": d, "extended": False}
              for r, (b, _), d in zip(chain.radii, chain.balls, ds)]
    report = {"center": x, "k": k, "levels": levels, "obstructions": obstructions}
    if obstructions:
        report["status"] = "obstructed"
        return report
    anchored = []
    for (b, vmap), group in zip(chain.balls, groups):
        phi = anchored_distinguishing_coloring(group, vmap.center, k, budget)
        if phi is None:
            raise VerificationFailure(f"no anchored {k}-colouring although D < {k}")
        anchored.append(phi)
    steps = extension_steps(chain, anchored, k, budget)
    for level, psi in zip(levels, steps):
        level["extended"] = True
    report["status"] = "extended"
    report["coloring"] = list(steps[-1])
    report["coloring_hosts"] = list(chain.balls[-1][1].to_host)
    return report
