"""Small frozen instances found by exhaustive search (see ``scripts/``)."""

from __future__ import annotations

from .triangulation import LabeledTriangulation, Setting, from_chords, make_fan

# heptagon where [4, 3, 2, 1, 3, 4] is reduced but [1, 2, 3, 4, 1] reaches the same triangulation
NONMINIMAL_N = 7
NONMINIMAL_DIAGONALS = {(0, 2): 4, (0, 3): 3, (0, 4): 2, (4, 6): 1}
NONMINIMAL_LONG = [4, 3, 2, 1, 3, 4]
NONMINIMAL_SHORT = [1, 2, 3, 4, 1]

# tetrahedron: each of four edges flipped once gives back the same triangulation, relabelled
CYCLE_TRIANGLES = [(0, 1, 3), (1, 2, 3), (2, 0, 3), (0, 2, 1)]
CYCLE_SEQUENCE = [0, 5, 1, 4]


def pentagon() -> LabeledTriangulation:
    """Fan of the pentagon at vertex 0; its diagonals are 5 = (0, 2) and 6 = (0, 3)."""
    return make_fan(5, 0)


def reduced_nonminimal() -> LabeledTriangulation:
    """Heptagon with diagonals labelled 1..4 and boundary edge ``(k, k+1)`` labelled ``5 + k``."""
    n = NONMINIMAL_N
    labels = {tuple(sorted((k, (k + 1) % n))): 5 + k for k in range(n)}
    labels.update(NONMINIMAL_DIAGONALS)
    return from_chords(n, NONMINIMAL_DIAGONALS, labels)


def interior_vertex_cycle() -> LabeledTriangulation:
    """Triangle 0, 1, 2 around the interior vertex 3, closed by the outer face.

    Edges are labelled in sorted vertex-pair order: 0 = (0, 1), 1 = (0, 2),
    2 = (0, 3), 3 = (1, 2), 4 = (1, 3), 5 = (2, 3).
    """
    return LabeledTriangulation.from_triangles(Setting.COMBINATORIAL, 4, CYCLE_TRIANGLES)
