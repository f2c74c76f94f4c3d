"""Search convex polygons for a reduced six-flip sequence with a five-flip equivalent.

The six-flip sequence [4, 3, 2, 1, 3, 4] must turn into [1, 2, 3, 4, 1] through
an expansion, commutations and two transposition reductions, while reduce()
leaves it unchanged. Every triangulation of the polygon and every assignment
of the labels 1..4 to its diagonals is tried; boundary edges get 5, 6, ...

Usage: python scripts/find_reduced_nonminimal.py [n]
"""

from __future__ import annotations

import itertools
import sys

from flipred.algebra import (
    MoveError,
    is_valid,
    strongly_equiv_by_commutativity,
    transposition_expand,
    transposition_reduce,
)
from flipred.ngon import build_flip_graph, weak_equiv_ngon
from flipred.reducer import is_reduced_oracle, reduce
from flipred.triangulation import from_chords

LONG = [4, 3, 2, 1, 3, 4]
SHORT = [1, 2, 3, 4, 1]


def chain_holds(T) -> bool:
    if not is_valid(LONG, T):
        return False
    try:
        s1 = transposition_expand(LONG, T, 2, 1, 2)
        if s1 != [4, 3, 1, 2, 1, 3, 4]:
            return False
        s2 = [4, 1, 3, 2, 3, 1, 4]
        if not (is_valid(s2, T) and strongly_equiv_by_commutativity(s1, s2, T)):
            return False
        s3 = transposition_reduce(s2, T, 2)
        s4 = [1, 2, 4, 3, 4, 1]
        if not (is_valid(s4, T) and strongly_equiv_by_commutativity(s3, s4, T)):
            return False
        return transposition_reduce(s4, T, 2) == SHORT
    except MoveError:
        return False


def search(n: int):
    for chords in build_flip_graph(n).nodes:
        for perm in itertools.permutations(range(1, 5)):
            labels = {tuple(sorted((k, (k + 1) % n))): 5 + k for k in range(n)}
            for c, lab in zip(chords, perm):
                labels[c] = lab
            T = from_chords(n, chords, labels)
            if not chain_holds(T):
                continue
            if reduce(LONG, T)[0] != LONG or not is_reduced_oracle(LONG, T):
                continue
            if weak_equiv_ngon(LONG, SHORT, T):
                yield chords, {c: lab for c, lab in zip(chords, perm)}


if __name__ == "__main__":
    n = int(sys.argv[1]) if len(sys.argv) > 1 else 7
    found = list(search(n))
    for chords, labels in found:
        print(chords, labels)
    print(f"{len(found)} instances on the {n}-gon")
