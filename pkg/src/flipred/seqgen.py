"""Reproducible random triangulations and flip sequences.

All randomness comes from :class:`random.Random` (Mersenne Twister) seeded
with the integer seed of a :class:`GenSpec`, and only its integer methods are
used, so a spec produces the same output on every platform.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

import numpy as np
from scipy.spatial import Delaunay

from .algebra import apply, invert
from .predicates import incircle_sos, orient
from .triangulation import (
    LabeledTriangulation,
    Setting,
    make_fan,
    parabola_coords,
)


class GenerationError(RuntimeError):
    """The requested instance or sequence cannot be produced."""


@dataclass(frozen=True)
class GenSpec:
    """Generator parameters: setting, edge count, sequence length, redundancy, seed."""

    setting: Setting
    edges: int
    length: int = 1
    redundancy: float = 1.0
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "setting", Setting(self.setting))
        if self.length < 1:
            raise ValueError("sequence length must be at least 1")
        if self.redundancy < 1:
            raise ValueError("redundancy is at least 1")

    @property
    def distinct(self) -> int:
        return max(1, round(self.length / self.redundancy))


# seeds for instance and sequence streams must not collide
_SEQUENCE_SALT = 0x9E3779B97F4A7C15


def _rng(seed: int, salt: int = 0) -> random.Random:
    return random.Random((seed ^ salt) & ((1 << 64) - 1))


class _IndexedSet:
    """Set with O(1) insert, remove and uniform random choice."""

    def __init__(self, items=()):
        self.items: list[int] = []
        self.index: dict[int, int] = {}
        for x in items:
            self.add(x)

    def __len__(self):
        return len(self.items)

    def __contains__(self, x):
        return x in self.index

    def add(self, x: int) -> None:
        if x not in self.index:
            self.index[x] = len(self.items)
            self.items.append(x)

    def discard(self, x: int) -> None:
        k = self.index.pop(x, None)
        if k is None:
            return
        last = self.items.pop()
        if k < len(self.items):
            self.items[k] = last
            self.index[last] = k

    def choice(self, rng: random.Random) -> int:
        return self.items[rng.randrange(len(self.items))]


def random_walk(T: LabeledTriangulation, steps: int, rng: random.Random) -> None:
    """Flip ``steps`` random flippable interior edges of ``T`` in place."""
    interior = T.interior_labels()
    if not interior:
        return
    done = 0
    tries = 0
    while done < steps:
        lab = interior[rng.randrange(len(interior))]
        tries += 1
        if T.flippable(lab):
            T._flip(T._slot[lab])
            done += 1
        elif tries > 50 * (steps + 10):
            raise GenerationError("random walk cannot find flippable edges")


def random_ngon(n: int, seed: int, walk: int | None = None) -> LabeledTriangulation:
    """Random labelled triangulation of the convex ``n``-gon, reached by flips from the fan."""
    T = make_fan(n, 0)
    random_walk(T, 10 * n if walk is None else walk, _rng(seed))
    return T


def _general_position_points(count: int, grid: int, rng: random.Random) -> list[tuple[int, int]]:
    # reject points creating a duplicate or a collinear triple
    pts: list[tuple[int, int]] = []
    directions: list[set[tuple[int, int]]] = []
    tries = 0
    while len(pts) < count:
        tries += 1
        if tries > 20 * count + 100:
            raise GenerationError("could not place points in general position")
        p = (rng.randrange(grid), rng.randrange(grid))
        dirs = []
        ok = True
        for k, q in enumerate(pts):
            dx, dy = q[0] - p[0], q[1] - p[1]
            if dx == 0 and dy == 0:
                ok = False
                break
            g = math.gcd(dx, dy)
            dx, dy = dx // g, dy // g
            if dx < 0 or (dx == 0 and dy < 0):
                dx, dy = -dx, -dy
            if (dx, dy) in directions[k]:
                ok = False
                break
            dirs.append((dx, dy))
        if not ok or len(set(dirs)) != len(dirs):
            continue
        for k, d in enumerate(dirs):
            directions[k].add(d)
        directions.append(set(dirs))
        pts.append(p)
    return pts


def delaunay_triangulation(points: list[tuple[int, int]]) -> LabeledTriangulation:
    """Delaunay triangulation with the symbolic tie-break of :func:`lawson_sequence`."""
    tri = Delaunay(np.asarray(points, dtype=float))
    faces = []
    for a, b, c in tri.simplices.tolist():
        if orient(points[a], points[b], points[c]) < 0:
            b, c = c, b
        faces.append((a, b, c))
    T = LabeledTriangulation.from_triangles(Setting.GEOMETRIC, len(points), faces, coords=points)
    # qhull may resolve co-circular points differently
    for lab in lawson_sequence(T):
        T.flip_inplace(lab)
    return T


def sphere_triangulation(vertex_count: int) -> LabeledTriangulation:
    """Closed combinatorial sphere: two triangulated discs glued along a polygon.

    The top disc is the fan at vertex 0, the bottom disc the fan at vertex 1.
    """
    n = vertex_count
    if n < 4:
        raise ValueError("a triangulated sphere needs at least 4 vertices")
    top = [(0, k, k + 1) for k in range(1, n - 1)]
    bottom = [(1, (k + 1) % n, k) for k in range(2, n)]
    return LabeledTriangulation.from_triangles(Setting.COMBINATORIAL, n, top + bottom)


def random_instance(spec: GenSpec) -> LabeledTriangulation:
    """Random triangulation with about ``spec.edges`` edges in ``spec.setting``."""
    rng = _rng(spec.seed)
    n = spec.edges
    if spec.setting is Setting.CONVEX:
        # 2V - 3 edges
        V = max(3, (n + 3) // 2)
        T = make_fan(V, 0)
        random_walk(T, 10 * T.edge_count, rng)
        return T
    if spec.setting is Setting.GEOMETRIC:
        # 3V - 3 - h edges with a handful of hull vertices
        V = max(4, (n + 13) // 3)
        grid = max(64, 16 * V)
        for _ in range(10):
            pts = _general_position_points(V, grid, rng)
            T = delaunay_triangulation(pts)
            if T.vertex_count == V:
                return T
        raise GenerationError("degenerate point sets on every retry")
    V = max(4, round((n + 6) / 3))
    T = sphere_triangulation(V)
    random_walk(T, 10 * T.edge_count, rng)
    return T


def _neighbours(T: LabeledTriangulation, s: int) -> list[int]:
    nxt = T.nxt
    out = []
    for h in (2 * s, 2 * s + 1):
        if nxt[h] >= 0:
            out.append(nxt[h] >> 1)
            out.append(nxt[nxt[h]] >> 1)
    return out


def random_sequence(T: LabeledTriangulation, spec: GenSpec) -> list[int]:
    """Random valid sequence of ``spec.length`` flips with redundancy ``spec.redundancy``.

    About ``length / redundancy`` distinct edges are flipped. An edge is only
    flipped again after an edge sharing a face with it has been flipped in
    between. New edges are picked next to already used ones most of the time
    so that repeats keep finding flipped neighbours.
    """
    rng = _rng(spec.seed, _SEQUENCE_SALT)
    f = spec.length
    d = spec.distinct
    W = T.copy()
    interior = [W._slot[lab] for lab in W.interior_labels()]
    if d > len(interior):
        raise GenerationError(f"{d} distinct edges requested but only {len(interior)} interior edges exist")
    unused = _IndexedSet(interior)
    pool: list[int] = []
    in_pool: set[int] = set()
    ready = _IndexedSet()
    out: list[int] = []

    def do_flip(s: int) -> None:
        W._flip(s)
        out.append(s)
        if s not in in_pool:
            in_pool.add(s)
            pool.append(s)
            unused.discard(s)
        ready.discard(s)
        for nb in _neighbours(W, s):
            if nb in in_pool and nb != s:
                ready.add(nb)

    def flippable(s: int) -> bool:
        return W._obstruction(s) is None

    def pick_new() -> int | None:
        if pool and rng.randrange(10) < 8:
            for _ in range(8):
                s = pool[rng.randrange(len(pool))]
                cands = [nb for nb in _neighbours(W, s) if nb in unused and flippable(nb)]
                if cands:
                    return cands[rng.randrange(len(cands))]
        for _ in range(64):
            if not unused:
                return None
            s = unused.choice(rng)
            if flippable(s):
                return s
        flips = [s for s in unused.items if flippable(s)]
        return flips[rng.randrange(len(flips))] if flips else None

    def pick_ready() -> int | None:
        for _ in range(16):
            if not ready:
                return None
            s = ready.choice(rng)
            if flippable(s):
                return s
        cands = [s for s in ready.items if flippable(s)]
        return cands[rng.randrange(len(cands))] if cands else None

    while len(out) < f:
        t = len(out)
        missing = d - len(pool)
        left = f - t
        want_new = missing > 0 and (missing >= left or len(pool) * f < d * (t + 1))
        if want_new:
            s = pick_new()
            if s is not None:
                do_flip(s)
                continue
            if missing >= left:
                raise GenerationError("ran out of flippable new edges")
        s = pick_ready()
        if s is None:
            # nothing may repeat yet: introduce an edge even beyond the target
            s = pick_new()
            if s is None:
                raise GenerationError("no flippable edge satisfies the neighbour constraint")
        do_flip(s)
    labels = W.labels
    return [labels[s] for s in out]


def redundancy(seq: list[int]) -> float:
    return len(seq) / len(set(seq)) if seq else 1.0


def lawson_sequence(T: LabeledTriangulation) -> list[int]:
    """Flips turning a geometric triangulation into its Delaunay triangulation.

    Locally non-Delaunay edges are flipped until none remain, with exact
    in-circle tests and the index-based tie-break of
    :func:`~flipred.predicates.incircle_sos` for co-circular points.
    """
    if T.setting is not Setting.GEOMETRIC:
        raise ValueError("Lawson flips need the geometric setting")
    W = T.copy()
    pts = W.coords
    org, nxt = W.org, W.nxt
    stack = [W._slot[lab] for lab in sorted(W.interior_labels(), reverse=True)]
    queued = set(stack)
    out = []
    while stack:
        s = stack.pop()
        queued.discard(s)
        h, t = 2 * s, 2 * s + 1
        if nxt[h] < 0 or nxt[t] < 0:
            continue
        a, b = org[h], org[t]
        c, d = org[nxt[nxt[h]]], org[nxt[nxt[t]]]
        if incircle_sos(pts, a, b, c, d) <= 0:
            continue
        if W._obstruction(s) is not None:
            continue
        W._flip(s)
        out.append(W.labels[s])
        for nb in _neighbours(W, s):
            if nb not in queued:
                queued.add(nb)
                stack.append(nb)
    return out


def sequence_between_ngon(T1: LabeledTriangulation, T2: LabeledTriangulation, apex: int = 0) -> list[int]:
    """Flips taking ``T1`` to the connectivity of ``T2`` through the fan at ``apex``."""
    from .ngon import fan_pivot_sequence

    if T1.vertex_count != T2.vertex_count:
        raise ValueError("triangulations of polygons with different sizes")
    mu1 = fan_pivot_sequence(T1, apex)
    mu2 = fan_pivot_sequence(T2, apex)
    F1 = apply(mu1, T1)
    F2 = apply(mu2, T2)
    # both reach the same fan; translate T2's labels through the edge they sit on
    by_edge = {F1.endpoints(lab): lab for lab in F1.edge_labels()}
    rename = {lab: by_edge[F2.endpoints(lab)] for lab in F2.edge_labels()}
    return mu1 + [rename[lab] for lab in invert(mu2)]


__all__ = [
    "GenSpec",
    "GenerationError",
    "delaunay_triangulation",
    "lawson_sequence",
    "parabola_coords",
    "random_instance",
    "random_ngon",
    "random_sequence",
    "random_walk",
    "redundancy",
    "sequence_between_ngon",
    "sphere_triangulation",
]
