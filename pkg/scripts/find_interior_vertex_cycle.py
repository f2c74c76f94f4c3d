"""Search small triangulations with one interior vertex for duplicate-free cycles.

A cycle here is a sequence of flips, each of a different edge, that brings a
triangulation back to its own connectivity (vertex ids fixed, edge labels
free to move).

Two searches run:

* the square with a centre vertex, from every triangulation reachable by
  flips, sequences of up to four flips. None exist. With straight edges this
  follows from geometry as well: the first flip must recreate a segment that
  is already present, and a straight-edge triangulation has no parallel edges.
* the tetrahedron drawn as a triangle around its centre vertex, where each of
  four edges flipped once gives the same triangulation back with labels
  permuted.

Usage: python scripts/find_interior_vertex_cycle.py
"""

from __future__ import annotations

import itertools
from collections import deque

from flipred.algebra import apply, is_valid
from flipred.instances import CYCLE_TRIANGLES
from flipred.triangulation import LabeledTriangulation, Setting, canonical_code, weak_equal

SQUARE_TRIANGLES = [(0, 1, 4), (1, 2, 4), (2, 3, 4), (3, 0, 4)]


def reachable(T: LabeledTriangulation) -> list[LabeledTriangulation]:
    """One representative per unlabelled triangulation reachable from ``T``."""
    seen = {canonical_code(T): T}
    queue = deque([T])
    while queue:
        S = queue.popleft()
        for lab in S.interior_labels():
            if S.flippable(lab):
                U = S.copy()
                U.flip_inplace(lab)
                key = canonical_code(U)
                if key not in seen:
                    seen[key] = U
                    queue.append(U)
    return list(seen.values())


def cycles(T: LabeledTriangulation, max_length: int = 4):
    labels = T.interior_labels()
    for k in range(1, max_length + 1):
        for seq in itertools.permutations(labels, k):
            if is_valid(seq, T) and weak_equal(apply(seq, T), T):
                yield list(seq)


def square_with_centre() -> LabeledTriangulation:
    return LabeledTriangulation.from_triangles(Setting.COMBINATORIAL, 5, SQUARE_TRIANGLES)


def tetrahedron() -> LabeledTriangulation:
    return LabeledTriangulation.from_triangles(Setting.COMBINATORIAL, 4, CYCLE_TRIANGLES)


if __name__ == "__main__":
    starts = reachable(square_with_centre())
    found = [(S, seq) for S in starts for seq in cycles(S)]
    print(f"square with centre: {len(starts)} triangulations, {len(found)} cycles")
    T = tetrahedron()
    tet = list(cycles(T))
    print(f"tetrahedron: {len(tet)} cycles, for example {tet[0] if tet else None}")
