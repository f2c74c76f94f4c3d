"""Convex polygon tools: fan pivots, canonical certificates and flip-graph oracles.

On a convex polygon every diagonal is flippable, and a triangulation is fixed
by its set of diagonals. That makes two exact oracles cheap at small sizes:
the whole flip graph can be enumerated, and shortest flip sequences found by
breadth-first search.
"""

from __future__ import annotations

import os
import random
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Sequence

from .algebra import apply, invert, strongly_equiv_by_commutativity
from .reducer import reduce
from .triangulation import LabeledTriangulation, Setting, make_fan, weak_equal

DEFAULT_ORACLE_CAP = 12


class OracleCapError(RuntimeError):
    """The polygon is too large for exhaustive enumeration."""


class CertificateMismatch(RuntimeError):
    """The direct and the certificate-based equivalence decisions disagree."""


def oracle_cap() -> int:
    return int(os.environ.get("FLIPRED_ORACLE_CAP", DEFAULT_ORACLE_CAP))


def _check_cap(n: int) -> None:
    cap = oracle_cap()
    if n > cap:
        raise OracleCapError(f"{n}-gon exceeds the oracle cap {cap} (set FLIPRED_ORACLE_CAP)")


def catalan(k: int) -> int:
    return comb(2 * k, k) // (k + 1)


def chords_cross(c1: tuple[int, int], c2: tuple[int, int]) -> bool:
    """Two diagonals of a convex polygon cross iff their endpoints interleave."""
    a, b = c1
    c, d = c2
    if len({a, b, c, d}) < 4:
        return False
    return (a < c < b) != (a < d < b)


@dataclass(frozen=True)
class UnlabeledNgonTriangulation:
    """A convex ``n``-gon triangulation as its sorted tuple of diagonals."""

    n: int
    chords: tuple[tuple[int, int], ...]

    def __post_init__(self):
        chords = tuple(sorted(tuple(sorted(c)) for c in self.chords))
        object.__setattr__(self, "chords", chords)
        if len(chords) != self.n - 3:
            raise ValueError(f"a triangulated {self.n}-gon has {self.n - 3} diagonals, got {len(chords)}")
        for a, b in chords:
            if not (0 <= a < b < self.n) or b - a in (1, self.n - 1):
                raise ValueError(f"({a}, {b}) is not a diagonal of the {self.n}-gon")
        for k, c in enumerate(chords):
            for d in chords[k + 1 :]:
                if c == d or chords_cross(c, d):
                    raise ValueError(f"diagonals {c} and {d} cross or repeat")

    @classmethod
    def of(cls, T: LabeledTriangulation) -> "UnlabeledNgonTriangulation":
        if T.setting is not Setting.CONVEX:
            raise ValueError("only convex polygon triangulations have a chord encoding")
        return cls(T.vertex_count, tuple(T.endpoints(lab) for lab in T.interior_labels()))

    @classmethod
    def fan(cls, n: int, apex: int = 0) -> "UnlabeledNgonTriangulation":
        return cls(n, tuple((apex, v) for v in range(n) if v not in (apex, (apex + 1) % n, (apex - 1) % n)))


def _all_chord_sets(n: int) -> list[tuple[tuple[int, int], ...]]:
    @lru_cache(maxsize=None)
    def tri(i: int, j: int) -> tuple[tuple[tuple[int, int], ...], ...]:
        # triangulations of the sub-polygon i..j that lies on one side of (i, j)
        if j - i < 2:
            return ((),)
        out = []
        for k in range(i + 1, j):
            left = ((i, k),) if k - i > 1 else ()
            right = ((k, j),) if j - k > 1 else ()
            for a in tri(i, k):
                for b in tri(k, j):
                    out.append(left + right + a + b)
        return tuple(out)

    return sorted(tuple(sorted(c)) for c in tri(0, n - 1))


def flip_chord(n: int, chords: tuple[tuple[int, int], ...], chord: tuple[int, int]) -> tuple[tuple[int, int], ...]:
    """Replace ``chord`` by the other diagonal of its quadrilateral."""
    a, b = chord
    edges = set(chords)
    edges.update(tuple(sorted((k, (k + 1) % n))) for k in range(n))

    def has(u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in edges

    inside = [c for c in range(a + 1, b) if has(a, c) and has(c, b)]
    outside = [d for d in list(range(b + 1, n)) + list(range(a)) if has(a, d) and has(d, b)]
    if len(inside) != 1 or len(outside) != 1:
        raise ValueError(f"{chord} is not a diagonal of this triangulation")
    new = tuple(sorted((inside[0], outside[0])))
    return tuple(sorted([c for c in chords if c != chord] + [new]))


@dataclass
class FlipGraph:
    """All triangulations of the convex ``n``-gon and their single-flip adjacency."""

    n: int
    nodes: list[tuple[tuple[int, int], ...]]
    index: dict[tuple[tuple[int, int], ...], int]
    adjacency: list[list[int]]
    _dist: dict[int, list[int]] = field(default_factory=dict, repr=False)

    @property
    def edge_count(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def distances_from(self, node: int) -> list[int]:
        d = self._dist.get(node)
        if d is None:
            d = [-1] * len(self.nodes)
            d[node] = 0
            queue = deque([node])
            while queue:
                u = queue.popleft()
                for v in self.adjacency[u]:
                    if d[v] < 0:
                        d[v] = d[u] + 1
                        queue.append(v)
            self._dist[node] = d
        return d

    def distance(self, T1: UnlabeledNgonTriangulation, T2: UnlabeledNgonTriangulation) -> int:
        return self.distances_from(self.index[T1.chords])[self.index[T2.chords]]

    def is_connected(self) -> bool:
        return min(self.distances_from(0)) >= 0


def build_flip_graph(n: int) -> FlipGraph:
    """Enumerate the flip graph of the convex ``n``-gon; refuses above the oracle cap."""
    if n < 3:
        raise ValueError("a polygon needs at least 3 vertices")
    _check_cap(n)
    return _build_flip_graph(n)


@lru_cache(maxsize=8)
def _build_flip_graph(n: int) -> FlipGraph:
    nodes = _all_chord_sets(n)
    index = {c: k for k, c in enumerate(nodes)}
    adjacency = [sorted(index[flip_chord(n, c, ch)] for ch in c) for c in nodes]
    return FlipGraph(n, nodes, index, adjacency)


def flip_distance_bfs(T1: UnlabeledNgonTriangulation, T2: UnlabeledNgonTriangulation) -> int:
    """Exact flip distance by breadth-first search in the flip graph."""
    if T1.n != T2.n:
        raise ValueError(f"cannot compare a {T1.n}-gon with a {T2.n}-gon")
    return build_flip_graph(T1.n).distance(T1, T2)


def flip_distance(T1: LabeledTriangulation, T2: LabeledTriangulation) -> int:
    return flip_distance_bfs(UnlabeledNgonTriangulation.of(T1), UnlabeledNgonTriangulation.of(T2))


# -- fan pivots and certificates ---------------------------------------------


def _require_convex(T: LabeledTriangulation) -> None:
    if T.setting is not Setting.CONVEX:
        raise ValueError(f"expected a convex polygon triangulation, got {T.setting.value}")


def is_fan(T: LabeledTriangulation, apex: int) -> bool:
    return all(apex in T.endpoints(lab) for lab in T.interior_labels())


def fan_pivot_sequence(T: LabeledTriangulation, apex: int = 0) -> list[int]:
    """Flips turning ``T`` into the fan at ``apex``.

    Each step flips the smallest-labelled diagonal that avoids ``apex`` and
    has ``apex`` opposite to it; the new diagonal ends at ``apex``, so there
    are exactly as many steps as diagonals avoiding ``apex``.
    """
    _require_convex(T)
    if not 0 <= apex < T.vertex_count:
        raise ValueError(f"apex {apex} is not a vertex")
    S = T.copy()
    out = []
    while True:
        for lab in S.interior_labels():
            if apex in S.endpoints(lab):
                continue
            if apex in S.support(lab).opposite:
                S.flip_inplace(lab)
                out.append(lab)
                break
        else:
            return out


def _fan_side(seq: Sequence[int], T: LabeledTriangulation, apex: int) -> tuple[LabeledTriangulation, list[int]]:
    mu = fan_pivot_sequence(T, apex)
    TF = apply(mu, T)
    gamma, _ = reduce(invert(mu) + list(seq), TF)
    return TF, gamma


def canonical_certificate(seq: Sequence[int], T: LabeledTriangulation, apex: int = 0) -> list[int]:
    """Sorted labels of the reduced form of ``seq`` rewritten to start from the fan at ``apex``.

    Weakly equivalent sequences on ``T`` share their certificate. It depends
    on the chosen apex.
    """
    _require_convex(T)
    apply(seq, T)
    return sorted(_fan_side(seq, T, apex)[1])


def weak_equiv_ngon(seq1: Sequence[int], seq2: Sequence[int], T: LabeledTriangulation, apex: int = 0) -> bool:
    """Whether two sequences give the same unlabelled triangulation of ``T``.

    The direct comparison is the answer. It is cross-checked against the fan
    side: equal certificates and reduced forms that reorder into each other by
    commutations. A disagreement raises :class:`CertificateMismatch`.
    """
    _require_convex(T)
    direct = weak_equal(apply(seq1, T), apply(seq2, T))
    TF, g1 = _fan_side(seq1, T, apex)
    _, g2 = _fan_side(seq2, T, apex)
    cross = sorted(g1) == sorted(g2) and strongly_equiv_by_commutativity(g1, g2, TF)
    if cross != direct:
        raise CertificateMismatch(
            f"direct comparison says {direct} but the fan certificates say {cross} "
            f"(reduced forms {g1} and {g2})"
        )
    return direct


# -- lemma checks -------------------------------------------------------------


@dataclass
class OracleReport:
    """Outcome of a randomized oracle run."""

    name: str
    n: int
    samples: int
    seed: int
    violations: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def summary(self) -> str:
        return f"{self.name} n={self.n} samples={self.samples} seed={self.seed} violations={len(self.violations)}"


def random_labeled_ngon(n: int, rng: random.Random) -> LabeledTriangulation:
    T = make_fan(n, 0)
    interior = T.interior_labels()
    for _ in range(4 * n):
        if interior:
            T.flip_inplace(interior[rng.randrange(len(interior))])
    return T


def random_duplicate_free(T: LabeledTriangulation, length: int, rng: random.Random) -> list[int]:
    """A random valid sequence flipping each chosen diagonal once."""
    labels = T.interior_labels()
    rng.shuffle(labels)
    return labels[:length]


def random_flips(T: LabeledTriangulation, length: int, rng: random.Random) -> list[int]:
    labels = T.interior_labels()
    return [labels[rng.randrange(len(labels))] for _ in range(length)] if labels else []


def check_lemma1(samples: int, n: int, seed: int = 0) -> OracleReport:
    """Duplicate-free sequences on random convex ``n``-gon triangulations are shortest."""
    _check_cap(n)
    rng = random.Random(seed)
    graph = build_flip_graph(n)
    report = OracleReport("lemma1", n, samples, seed)
    for _ in range(samples):
        T = random_labeled_ngon(n, rng)
        seq = random_duplicate_free(T, rng.randrange(n - 2), rng)
        end = apply(seq, T)
        dist = graph.distance(UnlabeledNgonTriangulation.of(T), UnlabeledNgonTriangulation.of(end))
        if dist != len(seq):
            report.violations.append(dict(start=UnlabeledNgonTriangulation.of(T).chords, seq=seq, distance=dist))
    return report


def check_lemma3(samples: int, n: int, seed: int = 0, max_length: int | None = None) -> OracleReport:
    """Reduced random sequences on the fan have the length of a shortest path."""
    _check_cap(n)
    rng = random.Random(seed)
    graph = build_flip_graph(n)
    TF = make_fan(n, 0)
    start = UnlabeledNgonTriangulation.of(TF)
    top = max_length if max_length is not None else 3 * (n - 3) + 2
    report = OracleReport("lemma3", n, samples, seed)
    for _ in range(samples):
        seq = random_flips(TF, rng.randrange(top + 1), rng)
        out, _ = reduce(seq, TF)
        dist = graph.distance(start, UnlabeledNgonTriangulation.of(apply(seq, TF)))
        if len(out) != dist or len(set(out)) != len(out):
            report.violations.append(dict(seq=seq, reduced=out, distance=dist))
    return report


@dataclass
class PourninReport:
    n: int
    samples: int
    below: int
    lengths: list[int]

    @property
    def fraction(self) -> float:
        return self.below / self.samples if self.samples else 1.0


def pournin_monitor(n: int, samples: int, seed: int = 0, length_factor: int = 4) -> PourninReport:
    """How often reduced random sequences on an ``n``-gon stay below ``2n - 10`` flips."""
    rng = random.Random(seed)
    lengths = []
    below = 0
    for _ in range(samples):
        T = random_labeled_ngon(n, rng)
        seq = random_flips(T, length_factor * n, rng)
        out, _ = reduce(seq, T)
        lengths.append(len(out))
        below += len(out) < 2 * n - 10
    return PourninReport(n, samples, below, lengths)


__all__ = [
    "CertificateMismatch",
    "FlipGraph",
    "OracleCapError",
    "OracleReport",
    "PourninReport",
    "UnlabeledNgonTriangulation",
    "build_flip_graph",
    "canonical_certificate",
    "catalan",
    "check_lemma1",
    "check_lemma3",
    "chords_cross",
    "fan_pivot_sequence",
    "flip_chord",
    "flip_distance",
    "flip_distance_bfs",
    "is_fan",
    "pournin_monitor",
    "weak_equiv_ngon",
]
