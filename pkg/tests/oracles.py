"""Independent brute-force oracles used to derive expected values in the tests.

They share no code with the package: triangulations of a convex polygon are
enumerated as non-crossing diagonal subsets and distances come from networkx.
"""

from __future__ import annotations

import itertools

import networkx as nx


def diagonals(n: int) -> list[tuple[int, int]]:
    return [(a, b) for a in range(n) for b in range(a + 2, n) if not (a == 0 and b == n - 1)]


def crossing(c: tuple[int, int], d: tuple[int, int]) -> bool:
    (a, b), (x, y) = c, d
    if len({a, b, x, y}) < 4:
        return False
    return (a < x < b) != (a < y < b)


def triangulations(n: int) -> list[frozenset]:
    diags = diagonals(n)
    out = []
    for combo in itertools.combinations(diags, n - 3):
        if all(not crossing(p, q) for p, q in itertools.combinations(combo, 2)):
            out.append(frozenset(combo))
    return out


def flip_graph(n: int) -> nx.Graph:
    nodes = triangulations(n)
    G = nx.Graph()
    G.add_nodes_from(nodes)
    by_rest: dict[frozenset, list[frozenset]] = {}
    for t in nodes:
        for c in t:
            by_rest.setdefault(t - {c}, []).append(t)
    for group in by_rest.values():
        for u, v in itertools.combinations(group, 2):
            G.add_edge(u, v)
    return G


def distance(n: int, chords1, chords2) -> int:
    G = flip_graph(n)
    return nx.shortest_path_length(G, frozenset(map(tuple, chords1)), frozenset(map(tuple, chords2)))


def polygon_edges(n: int, chords) -> set[tuple[int, int]]:
    sides = {tuple(sorted((k, (k + 1) % n))) for k in range(n)}
    return sides | {tuple(sorted(c)) for c in chords}


def flipped_chords(n: int, chords, chord) -> frozenset:
    """Replace ``chord`` by the other diagonal of its quadrilateral."""
    edges = polygon_edges(n, chords)
    a, b = sorted(chord)
    apexes = [v for v in range(n) if v not in (a, b)
              and tuple(sorted((a, v))) in edges and tuple(sorted((b, v))) in edges]
    # in a triangulated convex polygon an edge sees exactly the two empty triangles
    assert len(apexes) == 2, apexes
    c, d = sorted(apexes)
    return frozenset({tuple(sorted(x)) for x in chords if tuple(sorted(x)) != (a, b)} | {(c, d)})
