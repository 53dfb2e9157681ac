"""Permutations and permutation groups held as a base and strong generating set.

Permutations are plain tuples of images.  Points are acted on from the
right: ``x^g`` is ``g[x]`` and the product ``mul(g, h)`` applies ``g``
first, so ``x^(gh) = (x^g)^h``.

A :class:`PermGroup` builds its stabilizer chain eagerly with a
deterministic Schreier-Sims procedure, which gives exact orders, membership
tests and point stabilizers.  Subgroups defined by a colouring (setwise
stabilizers, colour stabilizers) are found by backtracking through the
chain, see :class:`PreserverSearch`.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import prod
from typing import Iterable, Iterator, Sequence

from .budget import Budget, as_budget
from .errors import PreconditionError

Perm = tuple[int, ...]

__all__ = [
    "Perm",
    "identity",
    "mul",
    "inverse",
    "is_identity",
    "from_cycles",
    "cycle_string",
    "PermGroup",
    "PreserverSearch",
    "WreathElement",
    "apply_wreath",
    "wreath_imprimitive",
    "wreath_point",
    "induced_action",
    "setwise_stabilizer",
    "coloring_stabilizer",
    "transporter",
    "cell_permutation",
]


def identity(n: int) -> Perm:
    return tuple(range(n))


def mul(p: Perm, q: Perm) -> Perm:
    """Product ``pq``: apply ``p``, then ``q``."""
    return tuple([q[i] for i in p])


def inverse(p: Perm) -> Perm:
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


def is_identity(p: Sequence[int]) -> bool:
    return all(i == j for i, j in enumerate(p))


def from_cycles(n: int, cycles: Iterable[Sequence[int]]) -> Perm:
    images = list(range(n))
    for cyc in cycles:
        for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
            images[a] = b
    if sorted(images) != list(range(n)):
        raise ValueError("cycles do not describe a permutation")
    return tuple(images)


def cycle_string(p: Perm) -> str:
    seen = set()
    out = []
    for i in range(len(p)):
        if i in seen or p[i] == i:
            continue
        cyc = [i]
        seen.add(i)
        j = p[i]
        while j != i:
            cyc.append(j)
            seen.add(j)
            j = p[j]
        out.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(out) or "()"


def _check_perm(p: Sequence[int], degree: int) -> Perm:
    p = tuple(int(x) for x in p)
    if len(p) != degree or sorted(p) != list(range(degree)):
        raise PreconditionError(f"not a permutation of degree {degree}: {list(p)}")
    return p


def _first_moved(p: Perm) -> int:
    for i, j in enumerate(p):
        if i != j:
            return i
    raise ValueError("identity moves no point")


class _Chain:
    """Stabilizer chain: per level a base point, strong generators and a transversal.

    ``trans[l][x]`` is an element ``u`` of the level group with ``base[l]^u == x``.
    """

    __slots__ = ("degree", "base", "gens", "trans", "inv")

    def __init__(self, degree: int):
        self.degree = degree
        self.base: list[int] = []
        self.gens: list[list[Perm]] = []
        self.trans: list[dict[int, Perm]] = []
        self.inv: list[dict[int, Perm]] = []

    def add_level(self, point: int, gens: list[Perm]) -> None:
        ident = identity(self.degree)
        self.base.append(point)
        self.gens.append([])
        self.trans.append({point: ident})
        self.inv.append({point: ident})
        for g in gens:
            self.add_gen(len(self.base) - 1, g)

    def add_gen(self, level: int, g: Perm) -> None:
        gens = self.gens[level]
        gens.append(g)
        trans, inv = self.trans[level], self.inv[level]
        queue = []
        for x in list(trans):
            y = g[x]
            if y not in trans:
                u = mul(trans[x], g)
                trans[y] = u
                inv[y] = inverse(u)
                queue.append(y)
        for x in queue:
            for s in gens:
                y = s[x]
                if y not in trans:
                    u = mul(trans[x], s)
                    trans[y] = u
                    inv[y] = inverse(u)
                    queue.append(y)

    def sift(self, g: Perm, start: int = 0) -> tuple[Perm, int]:
        for level in range(start, len(self.base)):
            beta = g[self.base[level]]
            inv = self.inv[level].get(beta)
            if inv is None:
                return g, level
            g = mul(g, inv)
        return g, len(self.base)

    def order(self) -> int:
        return prod(len(t) for t in self.trans)


def _build_chain(degree: int, gens: Sequence[Perm], base: Sequence[int] = (),
                 known_order: int | None = None) -> _Chain:
    """Deterministic Schreier-Sims.

    ``base`` is a prefix the final base must start with; redundant points are
    kept as levels with trivial orbits.  With ``known_order`` the procedure stops
    as soon as the chain reaches that order.
    """
    ident = identity(degree)
    uniq: list[Perm] = []
    seen = set()
    for g in gens:
        if g != ident and g not in seen:
            seen.add(g)
            uniq.append(g)
    base = list(base)
    if len(set(base)) != len(base):
        raise ValueError("base points must be distinct")
    for g in uniq:
        if all(g[b] == b for b in base):
            base.append(_first_moved(g))
    chain = _Chain(degree)
    for level, b in enumerate(base):
        prefix = base[:level]
        chain.add_level(b, [g for g in uniq if all(g[p] == p for p in prefix)])

    checked: list[set[tuple[int, int]]] = [set() for _ in base]
    level = len(chain.base) - 1
    while level >= 0:
        if known_order is not None and chain.order() == known_order:
            break
        jumped = None
        trans, inv, gl = chain.trans[level], chain.inv[level], chain.gens[level]
        done = checked[level]
        for beta in list(trans):
            u = trans[beta]
            for si in range(len(gl)):
                if (beta, si) in done:
                    continue
                done.add((beta, si))
                s = gl[si]
                g = mul(mul(u, s), inv[s[beta]])
                if g == ident:
                    continue
                h, j = chain.sift(g, level + 1)
                if j == len(chain.base):
                    if h == ident:
                        continue
                    chain.add_level(_first_moved(h), [])
                    checked.append(set())
                for l in range(level + 1, j + 1):
                    chain.add_gen(l, h)
                jumped = j
                break
            if jumped is not None:
                break
        level = level - 1 if jumped is None else jumped
    if known_order is not None and chain.order() != known_order:
        raise ValueError(f"group order {chain.order()} differs from the asserted {known_order}")
    return chain


class PermGroup:
    """A finitely generated permutation group on ``0..degree-1``.

    The stabilizer chain is built on construction, optionally starting with a
    prescribed ``base`` prefix.  Passing ``order`` asserts the group order and
    lets the construction stop early.
    """

    def __init__(self, degree: int, generators: Iterable[Sequence[int]] = (), *,
                 base: Sequence[int] = (), order: int | None = None):
        self.degree = degree
        gens = [_check_perm(g, degree) for g in generators]
        self.generators: tuple[Perm, ...] = tuple(gens)
        self._chain = _build_chain(degree, gens, base, order)

    @classmethod
    def trivial(cls, degree: int) -> "PermGroup":
        return cls(degree)

    @classmethod
    def symmetric(cls, degree: int) -> "PermGroup":
        if degree < 2:
            return cls(degree)
        gens = [from_cycles(degree, [[0, 1]])]
        if degree > 2:
            gens.append(from_cycles(degree, [list(range(degree))]))
        return cls(degree, gens)

    @classmethod
    def cyclic(cls, degree: int) -> "PermGroup":
        if degree < 2:
            return cls(degree)
        return cls(degree, [from_cycles(degree, [list(range(degree))])])

    @classmethod
    def dihedral(cls, degree: int) -> "PermGroup":
        """Symmetries of a regular ``degree``-gon (for degree >= 3)."""
        if degree < 3:
            return cls.symmetric(degree)
        rot = from_cycles(degree, [list(range(degree))])
        ref = tuple((-i) % degree for i in range(degree))
        return cls(degree, [rot, ref])

    @classmethod
    def alternating(cls, degree: int) -> "PermGroup":
        gens = [from_cycles(degree, [[0, 1, i]]) for i in range(2, degree)]
        return cls(degree, gens)

    # -- chain access ------------------------------------------------------
    @property
    def base(self) -> tuple[int, ...]:
        return tuple(self._chain.base)

    @property
    def strong_generators(self) -> tuple[Perm, ...]:
        return tuple(self._chain.gens[0]) if self._chain.gens else ()

    def basic_orbits(self) -> list[list[int]]:
        return [list(t) for t in self._chain.trans]

    def order(self) -> int:
        return self._chain.order()

    def contains(self, p: Sequence[int]) -> bool:
        if len(p) != self.degree:
            return False
        h, j = self._chain.sift(tuple(p))
        return j == len(self._chain.base) and is_identity(h)

    __contains__ = contains

    def is_trivial(self) -> bool:
        return self.order() == 1

    def with_base(self, base: Sequence[int]) -> "PermGroup":
        """The same group with a chain whose base starts with ``base``."""
        clone = object.__new__(PermGroup)
        clone.degree = self.degree
        clone.generators = self.generators
        clone._chain = _build_chain(self.degree, self.strong_generators or self.generators,
                                    base, self.order())
        return clone

    def pointwise_stabilizer(self, points: Sequence[int]) -> "PermGroup":
        points = list(dict.fromkeys(points))
        if not points:
            return self
        g = self.with_base(points)
        chain = g._chain
        k = len(points)
        order = prod(len(t) for t in chain.trans[k:])
        gens = chain.gens[k] if k < len(chain.base) else []
        return PermGroup(self.degree, gens, base=chain.base[k:], order=order)

    def stabilizer(self, point: int) -> "PermGroup":
        return self.pointwise_stabilizer([point])

    def elements(self) -> Iterator[Perm]:
        """Every element once, as products of transversal elements."""
        chain = self._chain
        if not chain.base:
            yield identity(self.degree)
            return
        levels = [list(t.values()) for t in chain.trans]
        for choice in product(*reversed(levels)):
            g = identity(self.degree)
            for u in choice:
                g = mul(g, u)
            yield g

    def random_element(self, rng) -> Perm:
        """Uniformly random element; ``rng`` is a :class:`random.Random`."""
        g = identity(self.degree)
        for trans in reversed(self._chain.trans):
            g = mul(g, trans[rng.choice(list(trans))])
        return g

    # -- orbits --------------------------------------------------------------
    def orbit(self, x: int) -> list[int]:
        seen = {x}
        queue = [x]
        for y in queue:
            for g in self.generators:
                z = g[y]
                if z not in seen:
                    seen.add(z)
                    queue.append(z)
        return sorted(seen)

    def orbits(self) -> list[list[int]]:
        return _orbits(self.degree, self.generators)

    def is_transitive(self) -> bool:
        return self.degree <= 1 or len(self.orbit(0)) == self.degree

    def restrict(self, points: Sequence[int]) -> "PermGroup":
        """Action on an invariant set, relabelled by the ascending order of ``points``."""
        pts = sorted(set(points))
        local = {p: i for i, p in enumerate(pts)}
        gens = []
        for g in self.generators:
            try:
                gens.append(tuple(local[g[p]] for p in pts))
            except KeyError:
                raise PreconditionError("point set is not invariant under the group") from None
        return PermGroup(len(pts), gens)

    # -- comparison & serialization -------------------------------------------
    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return self.degree == other.degree and all(other.contains(g) for g in self.generators)

    def __eq__(self, other):
        if not isinstance(other, PermGroup):
            return NotImplemented
        return (self.degree == other.degree and self.order() == other.order()
                and self.is_subgroup_of(other))

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self):
        return f"PermGroup(degree={self.degree}, order={self.order()}, ngens={len(self.generators)})"

    def to_json(self) -> dict:
        return {"degree": self.degree, "generators": [list(g) for g in self.generators]}

    @classmethod
    def from_json(cls, data: dict) -> "PermGroup":
        try:
            degree = int(data["degree"])
            gens = data.get("generators", [])
        except (KeyError, TypeError, ValueError):
            raise PreconditionError("group JSON needs 'degree' and 'generators'") from None
        return cls(degree, gens)


def _orbits(degree: int, gens: Iterable[Perm]) -> list[list[int]]:
    parent = list(range(degree))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in gens:
        for x in range(degree):
            a, b = find(x), find(g[x])
            if a != b:
                parent[max(a, b)] = min(a, b)
    cells: dict[int, list[int]] = {}
    for x in range(degree):
        cells.setdefault(find(x), []).append(x)
    return list(cells.values())


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def merge_perm(self, g: Perm) -> None:
        for x, y in enumerate(g):
            a, b = self.find(x), self.find(y)
            if a != b:
                self.parent[max(a, b)] = min(a, b)


class PreserverSearch:
    """Backtrack search for group elements preserving a colouring.

    A colouring is a sequence of hashable, mutually comparable labels, one per
    point; an element preserves it when ``colors[x^g] == colors[x]`` for all
    ``x``.  ``colors`` may be mutated between queries (the distinguishing-number
    search does this) as long as the points a query touches are coloured.

    Elements are built level by level as ``u_m ... u_i`` from the transversals;
    a partial product is rejected as soon as one orbit of the remaining level
    group is mapped onto points with a different colour multiset.
    """

    def __init__(self, group: PermGroup, colors: list, budget: Budget | int | None = None,
                 target: list | None = None):
        self.group = group
        self.chain = group._chain
        self.colors = colors
        # elements sought satisfy target[x^g] == colors[x]
        self.target = colors if target is None else target
        self.budget = as_budget(budget)
        chain = self.chain
        m = len(chain.base)
        self.depth = m
        self.level_orbits = [
            [o for o in _orbits(group.degree, chain.gens[l]) if len(o) > 1] for l in range(m)
        ] + [[]]
        # once every remaining level is trivial the partial product is the element
        skip = [True] * (m + 1)
        for l in range(m - 1, -1, -1):
            skip[l] = skip[l + 1] and len(chain.trans[l]) == 1
        self._skip = skip

    def _complete(self, level: int, p: Perm) -> Perm | None:
        """Some ``h*p`` with ``h`` in the level-``level`` group that preserves the colours."""
        self.budget.tick()
        col, tgt = self.colors, self.target
        if self._skip[level]:
            for x, y in enumerate(p):
                if tgt[y] != col[x]:
                    return None
            return p
        for orb in self.level_orbits[level]:
            if sorted(tgt[p[x]] for x in orb) != sorted(col[x] for x in orb):
                return None
        b = self.chain.base[level]
        cb = col[b]
        for delta, u in self.chain.trans[level].items():
            if tgt[p[delta]] != cb:
                continue
            found = self._complete(level + 1, mul(u, p))
            if found is not None:
                return found
        return None

    def find_moving(self, level: int, gamma: int) -> Perm | None:
        """A colour-preserving element of the level group sending its base point to ``gamma``."""
        chain = self.chain
        b = chain.base[level]
        if gamma not in chain.trans[level] or self.target[gamma] != self.colors[b]:
            return None
        return self._complete(level + 1, chain.trans[level][gamma])

    def nontrivial_at(self, level: int) -> Perm | None:
        """A colour-preserving element of the level group that moves the level's base point."""
        b = self.chain.base[level]
        for gamma in self.chain.trans[level]:
            if gamma != b:
                g = self.find_moving(level, gamma)
                if g is not None:
                    return g
        return None

    def nontrivial_element(self, from_level: int = 0) -> Perm | None:
        for level in range(self.depth - 1, from_level - 1, -1):
            g = self.nontrivial_at(level)
            if g is not None:
                return g
        return None

    def stabilizer_generators(self) -> tuple[list[Perm], int]:
        """Generators of the colour stabilizer and its order."""
        chain = self.chain
        found: list[Perm] = []
        uf = _UnionFind(self.group.degree)
        order = 1
        for level in range(self.depth - 1, -1, -1):
            b = chain.base[level]
            failed: list[int] = []
            for gamma in chain.trans[level]:
                if gamma == b or self.colors[gamma] != self.colors[b]:
                    continue
                root = uf.find(gamma)
                if root == uf.find(b) or any(uf.find(f) == root for f in failed):
                    continue
                g = self.find_moving(level, gamma)
                if g is None:
                    failed.append(gamma)
                else:
                    found.append(g)
                    uf.merge_perm(g)
            rb = uf.find(b)
            order *= sum(1 for x in chain.trans[level] if uf.find(x) == rb)
        return found, order


def coloring_stabilizer(group: PermGroup, colors: Sequence, budget: Budget | int | None = None) -> PermGroup:
    """Subgroup of elements mapping every colour class onto itself."""
    if len(colors) != group.degree:
        raise PreconditionError("colouring length differs from the group degree")
    search = PreserverSearch(group, list(colors), budget)
    gens, order = search.stabilizer_generators()
    return PermGroup(group.degree, gens, base=group.base, order=order)


def transporter(group: PermGroup, source: Sequence, target: Sequence,
                budget: Budget | int | None = None) -> Perm | None:
    """Some element ``g`` with ``target[x^g] == source[x]`` for every point, if one exists."""
    if len(source) != group.degree or len(target) != group.degree:
        raise PreconditionError("colourings must have one entry per point")
    search = PreserverSearch(group, list(source), budget, target=list(target))
    if search.depth == 0:
        return identity(group.degree) if list(source) == list(target) else None
    for gamma in search.chain.trans[0]:
        g = search.find_moving(0, gamma)
        if g is not None:
            return g
    return None


def setwise_stabilizer(group: PermGroup, s: Iterable[int], budget: Budget | int | None = None) -> PermGroup:
    members = set(s)
    if not members:
        raise PreconditionError("set must be nonempty")
    if any(not 0 <= x < group.degree for x in members):
        raise PreconditionError("point out of range")
    return coloring_stabilizer(group, [int(x in members) for x in range(group.degree)], budget)


# -- induced actions -------------------------------------------------------------

def _cell_index(degree: int, cells: Sequence[Sequence[int]]) -> list[int]:
    index = [-1] * degree
    for i, cell in enumerate(cells):
        if not cell:
            raise PreconditionError("empty cell")
        for x in cell:
            if not 0 <= x < degree or index[x] != -1:
                raise PreconditionError("cells must be disjoint subsets of the domain")
            index[x] = i
    if -1 in index:
        raise PreconditionError("cells do not cover the domain")
    return index


def cell_permutation(g: Perm, cells: Sequence[Sequence[int]], index: Sequence[int]) -> Perm | None:
    """The permutation ``g`` induces on ``cells``, or None if it does not permute them."""
    images = []
    for cell in cells:
        target = index[g[cell[0]]]
        for x in cell:
            if index[g[x]] != target:
                return None
        images.append(target)
    if len(set(images)) != len(images):
        return None
    return tuple(images)


def induced_action(group: PermGroup, cells: Sequence[Sequence[int]]) -> tuple[PermGroup, PermGroup]:
    """Action on an invariant partition: the image group on cell indices and the kernel.

    The kernel (elements fixing every cell setwise) comes out of a chain of
    the group acting on points and cells together, based on the cells first.
    """
    cells = [sorted(c) for c in cells]
    index = _cell_index(group.degree, cells)
    n, m = group.degree, len(cells)
    cell_gens = []
    joint = []
    for g in group.generators:
        cp = cell_permutation(g, cells, index)
        if cp is None:
            raise PreconditionError("partition is not invariant under the group")
        cell_gens.append(cp)
        joint.append(g + tuple(n + c for c in cp))
    image = PermGroup(m, cell_gens)
    chain = _build_chain(n + m, joint, list(range(n, n + m)), group.order())
    kernel_order = prod(len(t) for t in chain.trans[m:])
    kernel_gens = [g[:n] for g in chain.gens[m]] if m < len(chain.base) else []
    kernel = PermGroup(n, kernel_gens, order=kernel_order)
    return image, kernel


# -- wreath products ---------------------------------------------------------------

def wreath_point(a: int, b: int, size_a: int) -> int:
    """Index of ``(a, b)`` in ``A x B``: ``b*|A| + a``."""
    return b * size_a + a


@dataclass(frozen=True)
class WreathElement:
    """``(f, k)`` with ``f[b]`` a permutation of A for each point b of B, and ``k`` a permutation of B."""

    f: tuple[Perm, ...]
    k: Perm

    def __post_init__(self):
        if len(self.f) != len(self.k):
            raise ValueError("f must have one entry per point of B")
        sizes = {len(p) for p in self.f}
        if len(sizes) > 1:
            raise ValueError("all f[b] must act on the same set A")

    @property
    def size_a(self) -> int:
        return len(self.f[0]) if self.f else 0

    def __mul__(self, other: "WreathElement") -> "WreathElement":
        return WreathElement(tuple(mul(self.f[b], other.f[self.k[b]]) for b in range(len(self.k))),
                             mul(self.k, other.k))

    def to_perm(self) -> Perm:
        na = self.size_a
        images = [0] * (na * len(self.k))
        for b in range(len(self.k)):
            for a in range(na):
                a2, b2 = apply_wreath(self, (a, b))
                images[wreath_point(a, b, na)] = wreath_point(a2, b2, na)
        return tuple(images)


def apply_wreath(w: WreathElement, point: tuple[int, int]) -> tuple[int, int]:
    """``(a, b)^(f, k) = (a^f(b), b^k)``."""
    a, b = point
    return w.f[b][a], w.k[b]


def wreath_imprimitive(h: PermGroup, k: PermGroup) -> PermGroup:
    """``h wr k`` in its imprimitive action on ``A x B`` (points indexed ``b*|A| + a``)."""
    na, nb = h.degree, k.degree
    id_a, id_b = identity(na), identity(nb)
    gens = []
    for b in range(nb):
        for eta in h.generators:
            f = tuple(eta if c == b else id_a for c in range(nb))
            gens.append(WreathElement(f, id_b).to_perm())
    for kappa in k.generators:
        gens.append(WreathElement((id_a,) * nb, kappa).to_perm())
    return PermGroup(na * nb, gens, order=h.order() ** nb * k.order())
