import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import SETTINGS, random_valid_sequence, small_instance
from flipred import kernel
from flipred.algebra import apply
from flipred.instances import NONMINIMAL_LONG, reduced_nonminimal
from flipred.ngon import flip_distance
from flipred.reducer import (
    EvolvingState,
    OracleRefusal,
    Outcome,
    ReducerInvariantError,
    commutation_closure_size,
    is_reduced_oracle,
    reduce,
    reduce_python,
    try_eliminate,
)
from flipred.bench import default_edges
from flipred.seqgen import GenSpec, random_instance, random_sequence
from flipred.triangulation import Setting, make_fan, strong_equal, weak_equal

needs_compiled = pytest.mark.skipif(not kernel.compiled_available(), reason="compiled kernel not built")


def test_pair_cancels(T5):
    out, rep = reduce([5, 5], T5)
    assert out == []
    assert rep.cancellations == 1
    assert rep.gain == 2


def test_pentagon_triple_transposes(T5):
    out, rep = reduce([5, 6, 5], T5, backend="python")
    assert out == [6, 5]
    assert rep.transpositions == 1
    assert weak_equal(apply(out, T5), apply([5, 6, 5], T5))


def test_pentagon_five_cycle_reduces_to_nothing_weakly(T5):
    seq = [5, 6, 5, 6, 5]
    out, _ = reduce(seq, T5)
    assert len(out) < len(seq)
    assert weak_equal(apply(out, T5), apply(seq, T5))


def test_duplicate_free_untouched(T5):
    out, rep = reduce([5, 6], T5)
    assert out == [5, 6]
    assert rep.backend == "none"


def test_commuting_pair_moves_together():
    F = make_fan(7, 0)
    # 10 = (0, 5) is far from 7 = (0, 2), so the two 7s meet and cancel
    out, rep = reduce([7, 10, 7], F, backend="python")
    assert out == [10]
    assert rep.cancellations == 1


def test_try_eliminate_outcomes(T5):
    state = EvolvingState([5, 6, 5], T5)
    assert try_eliminate(state, 0) is Outcome.TRANSPOSED
    assert state.seq == [6, 5]
    state.check()
    assert try_eliminate(state, 0) is Outcome.NOT_REDUCIBLE
    with pytest.raises(IndexError):
        try_eliminate(state, 5)


def test_reduced_but_not_minimal_is_left_alone():
    T = reduced_nonminimal()
    out, rep = reduce(NONMINIMAL_LONG, T, backend="python", debug=True)
    assert out == NONMINIMAL_LONG
    assert rep.attempts > 0
    assert is_reduced_oracle(NONMINIMAL_LONG, T)
    assert flip_distance(T, apply(NONMINIMAL_LONG, T)) == 5


def test_oracle_refuses_long_sequences(T5):
    with pytest.raises(OracleRefusal):
        is_reduced_oracle([5, 5] * 20, T5)


def test_oracle_finds_hidden_pair():
    F = make_fan(7, 0)
    assert not is_reduced_oracle([7, 10, 7], F)
    assert is_reduced_oracle([7, 10], F)
    assert commutation_closure_size([7, 10], F) == 2


def test_invalid_input_rejected(T5):
    from flipred.algebra import InvalidSequenceError

    with pytest.raises(InvalidSequenceError):
        reduce([0, 0], T5)


def test_unknown_backend(T5):
    with pytest.raises(ValueError):
        reduce([5, 5], T5, backend="fortran")


@pytest.mark.parametrize("setting", SETTINGS)
@given(seed=st.integers(0, 10_000), r=st.sampled_from([1.1, 2.0, 5.0]))
def test_reduce_is_sound(setting, seed, r):
    spec = GenSpec(setting, default_edges(setting, 24, r), 24, r, seed % 200)
    T = random_instance(spec)
    seq = random_sequence(T, spec)
    out, rep = reduce(seq, T, backend="python", debug=True)
    assert len(out) <= len(seq)
    assert weak_equal(apply(out, T), apply(seq, T))
    assert rep.final_length == len(seq) - 2 * rep.cancellations - rep.transpositions
    # no adjacent repeats survive
    assert all(a != b for a, b in zip(out, out[1:]))


@pytest.mark.parametrize("setting", SETTINGS)
@given(seed=st.integers(0, 10_000))
def test_reduce_is_idempotent(setting, seed):
    T = small_instance(setting, seed % 40, 40)
    seq = random_valid_sequence(T, 20, random.Random(seed))
    once, _ = reduce(seq, T)
    twice, rep = reduce(once, T)
    # failed attempts keep their commutations, so only the order may move
    assert rep.gain == 0
    assert sorted(twice) == sorted(once)
    assert strong_equal(apply(twice, T), apply(once, T))


def test_second_pass_may_only_commute():
    T = small_instance(Setting.CONVEX, 496 % 40, 40)
    seq = random_valid_sequence(T, 20, random.Random(496))
    once, _ = reduce(seq, T)
    twice, rep = reduce(once, T)
    assert twice != once
    assert rep.gain == 0
    assert strong_equal(apply(twice, T), apply(once, T))


@needs_compiled
@pytest.mark.parametrize("setting", SETTINGS)
@pytest.mark.parametrize("seed", range(6))
def test_compiled_matches_python(setting, seed):
    spec = GenSpec(setting, 200, 150, 2.0, seed)
    T = random_instance(spec)
    seq = random_sequence(T, spec)
    a, ra = reduce(seq, T, backend="python")
    b, rb = reduce(seq, T, backend="compiled")
    assert a == b
    for key in ("cancellations", "transpositions", "attempts", "restarts", "operations"):
        assert getattr(ra, key) == getattr(rb, key)


@needs_compiled
def test_compiled_kernel_does_not_mutate_input(T5):
    seq = [5, 6, 5, 6, 5]
    before = T5.copy()
    kernel.reduce_compiled(seq, T5)
    assert strong_equal(before, T5)
    assert seq == [5, 6, 5, 6, 5]


def test_python_loop_counts(T5):
    out, counts = reduce_python([5, 6, 5], T5)
    assert out == [6, 5]
    assert counts["attempts"] == 1
    assert counts["restarts"] == 1


def test_report_dict(T5):
    _, rep = reduce([5, 5, 6], T5, seed=4)
    d = rep.as_dict()
    assert d["initial_length"] == 3
    assert d["final_length"] == 1
    assert d["gain"] == 2
    assert d["seed"] == 4
    assert d["setting"] == Setting.CONVEX.value


def test_invariant_error_type_is_runtime():
    assert issubclass(ReducerInvariantError, RuntimeError)


@pytest.mark.parametrize("n", range(5, 9))
def test_output_passes_exhaustive_oracle(n):
    from flipred.ngon import random_flips, random_labeled_ngon

    for s in range(60):
        rng = random.Random(1000 * n + s)
        T = random_labeled_ngon(n, rng)
        seq = random_flips(T, rng.randint(2, 12), rng)
        out, _ = reduce(seq, T)
        assert is_reduced_oracle(out, T)
        # no sequence is shorter than the flip distance
        assert len(out) >= flip_distance(T, apply(seq, T))
