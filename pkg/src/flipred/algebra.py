"""Flip sequences and the rewrites that preserve their outcome.

A flip sequence is a plain ``list[int]`` of edge labels in application order:
``seq[0]`` is flipped first. Positions are 0-based throughout.

Three moves rewrite a sequence ``seq`` acting on a triangulation ``T``:

1. swapping two adjacent flips whose supports share no face
   (:func:`swap_adjacent`; the final triangulation is unchanged);
2. removing or inserting a pair ``[i, i]`` (:func:`cancel_pair`,
   :func:`insert_pair`; final triangulation unchanged);
3. replacing ``[x, y, x]`` by ``[y, x]`` when the supports of ``x`` and ``y``
   share exactly one face, exchanging ``x`` and ``y`` in everything that follows
   (:func:`transposition_reduce`, and its inverse :func:`transposition_expand`;
   the final triangulation agrees up to the labels ``x`` and ``y``).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .triangulation import FlipError, LabeledTriangulation

FlipSequence = list[int]


class InvalidSequenceError(ValueError):
    """A flip of the sequence is not allowed when it is reached."""

    def __init__(self, index: int, label: int, reason: str):
        super().__init__(f"flip {index} (edge {label}) is invalid: {reason}")
        self.index = index
        self.label = label
        self.reason = reason


class MoveError(ValueError):
    """A rewrite was requested where its precondition does not hold."""


def apply(seq: Sequence[int], T: LabeledTriangulation) -> LabeledTriangulation:
    """Return the triangulation obtained by flipping ``seq`` in order on a copy of ``T``."""
    out = T.copy()
    apply_inplace(seq, out)
    return out


def apply_inplace(seq: Sequence[int], T: LabeledTriangulation) -> None:
    for k, lab in enumerate(seq):
        try:
            T.flip_inplace(lab)
        except FlipError as exc:
            raise InvalidSequenceError(k, lab, exc.reason) from None
        except KeyError:
            raise InvalidSequenceError(k, lab, "unknown edge") from None


def is_valid(seq: Sequence[int], T: LabeledTriangulation) -> bool:
    try:
        apply(seq, T)
    except InvalidSequenceError:
        return False
    return True


def invert(seq: Sequence[int]) -> FlipSequence:
    """The inverse sequence: every flip is an involution, so just reverse."""
    return list(reversed(seq))


def relabel_sequence(seq: Sequence[int], i: int, j: int) -> FlipSequence:
    """Exchange every occurrence of ``i`` and ``j``."""
    return [j if k == i else i if k == j else k for k in seq]


def _commutes(S: LabeledTriangulation, i: int, j: int) -> bool:
    # [i, j] -> [j, i] on S: disjoint supports and the reordered pair stays valid
    if i == j or S.overlap(i, j) != 0 or not S.flippable(j):
        return False
    S.flip_inplace(j)
    ok = S.flippable(i)
    S.flip_inplace(j)
    return ok


def commutes_at(seq: Sequence[int], T: LabeledTriangulation, p: int) -> bool:
    """Whether ``seq[p]`` and ``seq[p + 1]`` can be exchanged."""
    if not 0 <= p < len(seq) - 1:
        raise IndexError(f"position {p} has no successor in a sequence of length {len(seq)}")
    S = apply(seq[:p], T)
    return _commutes(S, seq[p], seq[p + 1])


def swap_adjacent(seq: Sequence[int], T: LabeledTriangulation, p: int) -> FlipSequence:
    if not commutes_at(seq, T, p):
        raise MoveError(f"flips at {p} and {p + 1} do not commute")
    out = list(seq)
    out[p], out[p + 1] = out[p + 1], out[p]
    return out


def cancel_pair(seq: Sequence[int], T: LabeledTriangulation, p: int) -> FlipSequence:
    if not (0 <= p < len(seq) - 1 and seq[p] == seq[p + 1]):
        raise MoveError(f"no repeated pair at position {p}")
    return list(seq[:p]) + list(seq[p + 2 :])


def insert_pair(seq: Sequence[int], T: LabeledTriangulation, p: int, i: int) -> FlipSequence:
    """Insert ``[i, i]`` before position ``p``; ``i`` must be flippable there."""
    if not 0 <= p <= len(seq):
        raise MoveError(f"position {p} is outside the sequence")
    S = apply(seq[:p], T)
    if i not in S or not S.flippable(i):
        raise MoveError(f"edge {i} is not flippable before position {p}")
    return list(seq[:p]) + [i, i] + list(seq[p:])


def _pentagon_ok(S: LabeledTriangulation, x: int, y: int) -> bool:
    # [x, y, x] and [y, x] are both valid from S around a shared face
    if x == y or S.overlap(x, y) != 1:
        return False
    if not S.flippable(x):
        return False
    S.flip_inplace(x)
    ok = S.flippable(y)
    if ok:
        S.flip_inplace(y)
        ok = S.flippable(x)
        S.flip_inplace(y)
    S.flip_inplace(x)
    if not ok or not S.flippable(y):
        return False
    S.flip_inplace(y)
    ok = S.flippable(x)
    S.flip_inplace(y)
    return ok


def transposition_reduce(seq: Sequence[int], T: LabeledTriangulation, p: int) -> FlipSequence:
    """Replace ``[x, y, x]`` at ``p`` by ``[y, x]`` and swap ``x``/``y`` in the suffix."""
    if not 0 <= p < len(seq) - 2:
        raise MoveError(f"no flip triple at position {p}")
    x, y = seq[p], seq[p + 1]
    if seq[p + 2] != x or x == y:
        raise MoveError(f"no [x, y, x] pattern at position {p}")
    S = apply(seq[:p], T)
    if not _pentagon_ok(S, x, y):
        raise MoveError(f"edges {x} and {y} do not form a flippable pentagon at position {p}")
    return list(seq[:p]) + [y, x] + relabel_sequence(seq[p + 3 :], x, y)


def transposition_expand(seq: Sequence[int], T: LabeledTriangulation, p: int, x: int, y: int) -> FlipSequence:
    """Replace ``[y, x]`` at ``p`` by ``[x, y, x]`` and swap ``x``/``y`` in the suffix."""
    if not (0 <= p < len(seq) - 1 and seq[p] == y and seq[p + 1] == x):
        raise MoveError(f"no [{y}, {x}] pair at position {p}")
    S = apply(seq[:p], T)
    if not _pentagon_ok(S, x, y):
        raise MoveError(f"edges {x} and {y} do not form a flippable pentagon at position {p}")
    return list(seq[:p]) + [x, y, x] + relabel_sequence(seq[p + 2 :], x, y)


@dataclass(frozen=True)
class RewriteStep:
    """One recorded move; ``kind`` is ``commute``, ``cancel``, ``insert``,
    ``reduce`` or ``expand``."""

    kind: str
    position: int
    labels: tuple[int, ...] = ()

    def inverse(self) -> "RewriteStep":
        p = self.position
        if self.kind == "commute":
            return self
        if self.kind == "cancel":
            return RewriteStep("insert", p, self.labels[:1])
        if self.kind == "insert":
            return RewriteStep("cancel", p, self.labels)
        if self.kind == "reduce":
            x, y = self.labels
            return RewriteStep("expand", p, (x, y))
        if self.kind == "expand":
            x, y = self.labels
            return RewriteStep("reduce", p, (x, y))
        raise ValueError(f"unknown rewrite kind {self.kind!r}")


def apply_step(seq: Sequence[int], T: LabeledTriangulation, step: RewriteStep) -> FlipSequence:
    p = step.position
    if step.kind == "commute":
        return swap_adjacent(seq, T, p)
    if step.kind == "cancel":
        return cancel_pair(seq, T, p)
    if step.kind == "insert":
        return insert_pair(seq, T, p, step.labels[0])
    if step.kind == "reduce":
        return transposition_reduce(seq, T, p)
    if step.kind == "expand":
        x, y = step.labels
        return transposition_expand(seq, T, p, x, y)
    raise ValueError(f"unknown rewrite kind {step.kind!r}")


def record_step(seq: Sequence[int], kind: str, p: int, *labels: int) -> RewriteStep:
    """Build the step for ``kind`` at ``p`` filling in the labels read from ``seq``."""
    if kind == "cancel":
        return RewriteStep(kind, p, (seq[p],))
    if kind == "reduce":
        return RewriteStep(kind, p, (seq[p], seq[p + 1]))
    if kind == "commute":
        return RewriteStep(kind, p, (seq[p], seq[p + 1]))
    return RewriteStep(kind, p, tuple(labels))


def rewrite(seq: Sequence[int], T: LabeledTriangulation, steps: Sequence[RewriteStep]) -> FlipSequence:
    out = list(seq)
    for step in steps:
        out = apply_step(out, T, step)
    return out


def strongly_equiv_by_commutativity(seq1: Sequence[int], seq2: Sequence[int], T: LabeledTriangulation) -> bool:
    """Greedy reordering of ``seq2`` into ``seq1`` using only commutations.

    For each position ``p`` the earliest remaining occurrence of ``seq1[p]``
    in ``seq2`` is bubbled down to ``p``. Sound always; complete for minimal
    duplicate-free sequences on a convex polygon.
    """
    if len(seq1) != len(seq2) or sorted(seq1) != sorted(seq2):
        return False
    apply(seq1, T)
    apply(seq2, T)
    work = list(seq2)
    S = T.copy()  # state before position p
    for p, target in enumerate(seq1):
        q = work.index(target, p)
        if q > p:
            # walk to the state before q - 1 and bubble down
            for k in range(p, q - 1):
                S.flip_inplace(work[k])
            while q > p:
                if not _commutes(S, work[q - 1], work[q]):
                    return False
                work[q - 1], work[q] = work[q], work[q - 1]
                q -= 1
                if q > p:
                    S.flip_inplace(work[q - 1])
        S.flip_inplace(work[p])
    return True
