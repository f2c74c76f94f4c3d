"""Reduction of flip sequences by moving repeated flips together.

For each flip ``i`` of the sequence, the next occurrence ``i'`` of the same
edge is located. ``i`` is pushed towards ``i'`` over every flip it commutes
with, then ``i'`` is pulled back towards ``i`` the same way. If the two end up
adjacent both are deleted; if exactly one flip ``j`` remains between them and
``i``, ``j`` span a flippable pentagon, ``[i, j, i]`` becomes ``[j, i]`` and the
labels ``i`` and ``j`` are exchanged in the rest of the sequence. Otherwise
``i`` goes back to where it started. After any reduction the scan restarts
from the first flip.

Only one triangulation is kept while scanning: it is stepped forwards and
backwards along the sequence with single flips, since each flip is its own
inverse.
"""

from __future__ import annotations

import enum
import time
from collections import Counter, deque
from dataclasses import asdict, dataclass
from typing import Sequence

from . import kernel
from .algebra import apply
from .triangulation import LabeledTriangulation, strong_equal


class Outcome(enum.Enum):
    CANCELLED = "cancelled"  # two flips removed
    TRANSPOSED = "transposed"  # one flip removed
    NOT_REDUCIBLE = "not-reducible"


class ReducerInvariantError(RuntimeError):
    """The evolving triangulation no longer matches the evolving sequence."""


class OracleRefusal(RuntimeError):
    """The exhaustive oracle was asked for more work than its budget allows."""


@dataclass
class ReductionReport:
    initial_length: int
    final_length: int
    cancellations: int = 0
    transpositions: int = 0
    attempts: int = 0
    restarts: int = 0
    operations: int = 0
    elapsed: float = 0.0
    setting: str = ""
    seed: int | None = None
    backend: str = ""

    @property
    def gain(self) -> int:
        return self.initial_length - self.final_length

    @property
    def gain_percent(self) -> float:
        return 100.0 * self.gain / self.initial_length if self.initial_length else 0.0

    def as_dict(self) -> dict:
        d = asdict(self)
        d["gain"] = self.gain
        d["gain_percent"] = round(self.gain_percent, 3)
        return d


class EvolvingState:
    """The evolving sequence plus one triangulation that tracks a prefix of it.

    ``cursor`` always equals ``apply(seq[:k], base)``.
    """

    def __init__(self, seq: Sequence[int], base: LabeledTriangulation):
        self.base = base
        self.seq = list(seq)
        self.cursor = base.copy()
        self.k = 0
        self.operations = 0

    def seek(self, k: int) -> None:
        seq, S = self.seq, self.cursor
        self.operations += abs(k - self.k)
        while self.k < k:
            S._flip(S._slot[seq[self.k]])
            self.k += 1
        while self.k > k:
            self.k -= 1
            S._flip(S._slot[seq[self.k]])

    def check(self) -> None:
        expected = apply(self.seq[: self.k], self.base)
        if not strong_equal(expected, self.cursor):
            raise ReducerInvariantError(f"cursor at {self.k} does not match the sequence prefix")


def _flippable(S: LabeledTriangulation, s: int) -> bool:
    return S._obstruction(s) is None


def _attempt(state: EvolvingState, p: int, q: int) -> Outcome:
    """Move ``seq[p]`` and its next occurrence ``seq[q]`` together and reduce."""
    seq = state.seq
    S = state.cursor
    slot = S._slot
    i = seq[p]
    si = slot[i]
    state.seek(p)
    a = p
    ops = 0
    # push the first occurrence forward
    while a + 1 < q:
        j = seq[a + 1]
        sj = slot[j]
        ops += 1
        if S._overlap(si, sj) != 0 or not _flippable(S, sj):
            break
        S._flip(sj)
        if not _flippable(S, si):
            S._flip(sj)
            break
        seq[a], seq[a + 1] = j, i
        a += 1
        state.k = a
    # pull the second occurrence back
    if q > a + 1:
        state.seek(q - 1)
        while q > a + 1:
            j = seq[q - 1]
            sj = slot[j]
            ops += 1
            if S._overlap(sj, si) != 0 or not _flippable(S, si):
                break
            S._flip(si)
            ok = _flippable(S, sj)
            S._flip(si)
            if not ok:
                break
            seq[q - 1], seq[q] = i, j
            q -= 1
            if q > a + 1:
                state.seek(q - 1)
        state.seek(a)
    state.operations += ops
    if q == a + 1:
        del seq[a : a + 2]
        return Outcome.CANCELLED
    if q == a + 2:
        j = seq[a + 1]
        sj = slot[j]
        if j != i and S._overlap(si, sj) == 1 and _flippable(S, sj):
            S._flip(sj)
            ok = _flippable(S, si)
            S._flip(sj)
            if ok:
                suffix = seq[a + 3 :]
                seq[a:] = [j, i] + [j if x == i else i if x == j else x for x in suffix]
                return Outcome.TRANSPOSED
    if a > p:
        state.seek(p)
        seq[p : a + 1] = [i] + seq[p:a]
    return Outcome.NOT_REDUCIBLE


def try_eliminate(state: EvolvingState, p: int) -> Outcome:
    """Try to remove the flip at position ``p`` (0-based) together with its next occurrence."""
    seq = state.seq
    if not 0 <= p < len(seq):
        raise IndexError(f"position {p} outside a sequence of length {len(seq)}")
    i = seq[p]
    try:
        q = seq.index(i, p + 1)
    except ValueError:
        return Outcome.NOT_REDUCIBLE
    return _attempt(state, p, q)


def reduce_python(
    seq: Sequence[int], T: LabeledTriangulation, *, debug: bool = False
) -> tuple[list[int], dict[str, int]]:
    """Reference implementation of the reduction loop."""
    state = EvolvingState(seq, T)
    counts = dict(cancellations=0, transpositions=0, attempts=0, restarts=0)
    remaining = Counter(state.seq)
    p = 0
    while p < len(state.seq):
        i = state.seq[p]
        remaining[i] -= 1
        if remaining[i] <= 0:
            p += 1
            continue
        q = state.seq.index(i, p + 1)
        counts["attempts"] += 1
        outcome = _attempt(state, p, q)
        if debug:
            state.check()
        if outcome is Outcome.NOT_REDUCIBLE:
            p += 1
            continue
        counts["cancellations" if outcome is Outcome.CANCELLED else "transpositions"] += 1
        counts["restarts"] += 1
        remaining = Counter(state.seq)
        p = 0
    state.seek(0)
    counts["operations"] = state.operations
    return state.seq, counts


def _operation_bound(f: int) -> int:
    return 16 * (f + 1) ** 3 + 64


def reduce(
    seq: Sequence[int],
    T: LabeledTriangulation,
    *,
    backend: str | None = None,
    debug: bool = False,
    seed: int | None = None,
    validate: bool = True,
) -> tuple[list[int], ReductionReport]:
    """Reduce ``seq`` on ``T``; the result is weakly equivalent and never longer.

    ``backend`` picks ``"compiled"`` or ``"python"``; by default the compiled
    kernel is used when it was built. ``debug`` forces the Python path and
    checks the evolving triangulation after every attempt.
    """
    seq = [int(x) for x in seq]
    if validate:
        apply(seq, T)
    start = time.perf_counter()
    report = ReductionReport(len(seq), len(seq), setting=T.setting.value, seed=seed)
    if len(set(seq)) == len(seq):
        report.backend = "none"
        report.elapsed = time.perf_counter() - start
        return list(seq), report
    name = "python" if debug else (backend or kernel.BACKEND)
    if name == "compiled":
        out, counts = kernel.reduce_compiled(seq, T)
    elif name == "python":
        out, counts = reduce_python(seq, T, debug=debug)
    else:
        raise ValueError(f"unknown backend {name!r}")
    report.backend = name
    report.elapsed = time.perf_counter() - start
    report.final_length = len(out)
    for key in ("cancellations", "transpositions", "attempts", "restarts", "operations"):
        setattr(report, key, counts[key])
    if report.final_length != report.initial_length - 2 * report.cancellations - report.transpositions:
        raise ReducerInvariantError("length bookkeeping mismatch")
    if report.operations > _operation_bound(len(seq)):
        raise ReducerInvariantError(f"{report.operations} operations exceed the cubic bound")
    return out, report


# -- exhaustive oracle -------------------------------------------------------


def _direct_reduction_in(seq: tuple[int, ...], T: LabeledTriangulation) -> tuple[bool, list[tuple[int, ...]]]:
    """Scan one sequence: is a pair or pentagon pattern present, and its commuted neighbours."""
    S = T.copy()
    neighbours = []
    found = False
    for p, i in enumerate(seq):
        if p + 1 < len(seq):
            j = seq[p + 1]
            si, sj = S.slot(i), S.slot(j)
            if i == j:
                found = True
            elif S._overlap(si, sj) == 0 and _flippable(S, sj):
                S._flip(sj)
                ok = _flippable(S, si)
                S._flip(sj)
                if ok:
                    neighbours.append(seq[:p] + (j, i) + seq[p + 2 :])
            if p + 2 < len(seq) and seq[p + 2] == i and i != j and S._overlap(si, sj) == 1 and _flippable(S, sj):
                S._flip(sj)
                ok = _flippable(S, si)
                S._flip(sj)
                if ok:
                    found = True
        S._flip(S.slot(i))
    return found, neighbours


def is_reduced_oracle(
    seq: Sequence[int], T: LabeledTriangulation, budget: int = 20, max_states: int = 200_000
) -> bool:
    """Exhaustive check that no reordering by commutations exposes a reduction.

    Explores every sequence reachable from ``seq`` by swapping commuting
    neighbours. Raises :class:`OracleRefusal` rather than guessing when the
    sequence is longer than ``budget`` or the closure exceeds ``max_states``.
    """
    if len(seq) > budget:
        raise OracleRefusal(f"sequence of length {len(seq)} exceeds the oracle budget {budget}")
    apply(seq, T)
    start = tuple(seq)
    seen = {start}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        found, neighbours = _direct_reduction_in(cur, T)
        if found:
            return False
        for nb in neighbours:
            if nb not in seen:
                seen.add(nb)
                if len(seen) > max_states:
                    raise OracleRefusal(f"commutation closure exceeds {max_states} sequences")
                queue.append(nb)
    return True


def commutation_closure_size(seq: Sequence[int], T: LabeledTriangulation, max_states: int = 200_000) -> int:
    start = tuple(seq)
    seen = {start}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        for nb in _direct_reduction_in(cur, T)[1]:
            if nb not in seen:
                seen.add(nb)
                if len(seen) > max_states:
                    raise OracleRefusal(f"commutation closure exceeds {max_states} sequences")
                queue.append(nb)
    return len(seen)
