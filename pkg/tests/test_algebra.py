import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import SETTINGS, random_valid_sequence, small_instance
from flipred.algebra import (
    InvalidSequenceError,
    MoveError,
    RewriteStep,
    apply,
    cancel_pair,
    commutes_at,
    insert_pair,
    invert,
    is_valid,
    relabel_sequence,
    rewrite,
    strongly_equiv_by_commutativity,
    swap_adjacent,
    transposition_expand,
    transposition_reduce,
)
from flipred.triangulation import make_fan, strong_equal, transpose_labels, weak_equal


def test_apply_reports_failing_index(T5):
    with pytest.raises(InvalidSequenceError) as exc:
        apply([5, 6, 0], T5)
    assert exc.value.index == 2
    assert exc.value.label == 0
    assert exc.value.reason == "boundary"


def test_apply_unknown_label(T5):
    with pytest.raises(InvalidSequenceError) as exc:
        apply([5, 42], T5)
    assert exc.value.index == 1
    assert not is_valid([5, 42], T5)


def test_invert_undoes(T5):
    seq = [5, 6, 5]
    assert strong_equal(apply(seq + invert(seq), T5), T5)


def test_relabel_sequence():
    assert relabel_sequence([1, 2, 3, 1], 1, 3) == [3, 2, 1, 3]


def test_cancel_and_insert(T5):
    seq = [5, 6, 6, 5]
    assert cancel_pair(seq, T5, 1) == [5, 5]
    assert insert_pair([5, 5], T5, 1, 6) == seq
    with pytest.raises(MoveError):
        cancel_pair(seq, T5, 0)
    with pytest.raises(MoveError):
        insert_pair([5], T5, 0, 0)


def test_pentagon_diagonals_do_not_commute(T5):
    assert not commutes_at([5, 6], T5, 0)
    with pytest.raises(MoveError):
        swap_adjacent([5, 6], T5, 0)


def test_disjoint_flips_commute():
    F = make_fan(7, 0)
    assert commutes_at([7, 10], F, 0)
    assert swap_adjacent([7, 10], F, 0) == [10, 7]


def test_transposition_on_pentagon(T5):
    seq = [5, 6, 5, 6]
    short = transposition_reduce(seq, T5, 0)
    # suffix label 6 becomes 5
    assert short == [6, 5, 5]
    assert strong_equal(apply(short, T5), transpose_labels(apply(seq, T5), 5, 6))
    assert transposition_expand(short, T5, 0, 5, 6) == seq


def test_transposition_requires_pattern(T5):
    with pytest.raises(MoveError):
        transposition_reduce([5, 6, 6], T5, 0)
    F = make_fan(7, 0)
    # (0, 2) and (0, 5) share no triangle
    with pytest.raises(MoveError):
        transposition_reduce([7, 10, 7], F, 0)


def test_rewrite_steps_and_inverse(T5):
    seq = [5, 6, 5, 6]
    steps = [RewriteStep("reduce", 0, (5, 6)), RewriteStep("insert", 3, (6,))]
    out = rewrite(seq, T5, steps)
    back = rewrite(out, T5, [s.inverse() for s in reversed(steps)])
    assert back == seq


def test_strongly_equiv_by_commutativity():
    F = make_fan(7, 0)
    assert strongly_equiv_by_commutativity([7, 10], [10, 7], F)
    # pentagon diagonals share a triangle, so no reordering is allowed
    assert not strongly_equiv_by_commutativity([5, 6], [6, 5], make_fan(5, 0))
    assert not strongly_equiv_by_commutativity([7, 10], [7, 9], F)


def _random_triple_site(seq, T, rng):
    """A position where [y, x] can be expanded into [x, y, x]."""
    S = T.copy()
    sites = []
    for p in range(len(seq) - 1):
        y, x = seq[p], seq[p + 1]
        if x != y and S.overlap(x, y) == 1:
            sites.append((p, x, y))
        S.flip_inplace(seq[p])
    rng.shuffle(sites)
    return sites


@pytest.mark.parametrize("setting", SETTINGS)
@given(seed=st.integers(0, 10_000))
def test_expand_then_reduce_round_trip(setting, seed):
    T = small_instance(setting, seed % 40)
    rng = random.Random(seed)
    seq = random_valid_sequence(T, 12, rng)
    for p, x, y in _random_triple_site(seq, T, rng)[:3]:
        try:
            longer = transposition_expand(seq, T, p, x, y)
        except MoveError:
            continue
        assert is_valid(longer, T)
        assert weak_equal(apply(longer, T), apply(seq, T))
        assert transposition_reduce(longer, T, p) == seq


@pytest.mark.parametrize("setting", SETTINGS)
@given(seed=st.integers(0, 10_000))
def test_insert_then_cancel_round_trip(setting, seed):
    T = small_instance(setting, seed % 40)
    rng = random.Random(seed)
    seq = random_valid_sequence(T, 10, rng)
    p = rng.randrange(len(seq) + 1)
    S = apply(seq[:p], T)
    candidates = [x for x in S.interior_labels() if S.flippable(x)]
    i = rng.choice(candidates)
    longer = insert_pair(seq, T, p, i)
    assert strong_equal(apply(longer, T), apply(seq, T))
    assert cancel_pair(longer, T, p) == seq


@pytest.mark.parametrize("setting", SETTINGS)
@given(seed=st.integers(0, 10_000))
def test_commutation_preserves_outcome(setting, seed):
    T = small_instance(setting, seed % 40)
    rng = random.Random(seed)
    seq = random_valid_sequence(T, 12, rng)
    for p in range(len(seq) - 1):
        if commutes_at(seq, T, p):
            swapped = swap_adjacent(seq, T, p)
            assert strong_equal(apply(swapped, T), apply(seq, T))
            assert swap_adjacent(swapped, T, p) == seq
