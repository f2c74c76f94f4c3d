import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import SETTINGS
from flipred.algebra import apply, is_valid
from flipred.bench import default_edges
from flipred.predicates import incircle
from flipred.seqgen import (
    GenerationError,
    GenSpec,
    delaunay_triangulation,
    lawson_sequence,
    random_instance,
    random_ngon,
    random_sequence,
    redundancy,
    sequence_between_ngon,
    sphere_triangulation,
)
from flipred.triangulation import LabeledTriangulation, Setting, strong_equal, weak_equal


def _spec(setting, length, r, seed):
    return GenSpec(setting, default_edges(setting, length, r), length, r, seed)


def test_genspec_validation():
    with pytest.raises(ValueError):
        GenSpec("convex", 20, 0)
    with pytest.raises(ValueError):
        GenSpec("convex", 20, 5, 0.5)
    assert GenSpec("convex", 20, 100, 3.0).distinct == 33
    assert GenSpec("convex", 20, 1, 10.0).distinct == 1


@pytest.mark.parametrize("setting", SETTINGS)
def test_instance_is_deterministic(setting):
    a = random_instance(GenSpec(setting, 120, seed=7))
    b = random_instance(GenSpec(setting, 120, seed=7))
    c = random_instance(GenSpec(setting, 120, seed=8))
    assert strong_equal(a, b)
    assert not strong_equal(a, c)


@pytest.mark.parametrize("setting", SETTINGS)
@pytest.mark.parametrize("edges", [60, 300, 1000])
def test_instance_size_and_validity(setting, edges):
    T = random_instance(GenSpec(setting, edges, seed=1))
    T.validate(full=edges <= 300)
    assert T.setting is setting
    # convex and combinatorial sizes are exact up to rounding, geometric depends on the hull
    tolerance = 0.15 if setting is Setting.GEOMETRIC else 0.02
    assert abs(T.edge_count - edges) <= tolerance * edges + 3


@pytest.mark.parametrize("setting", SETTINGS)
def test_sequence_is_deterministic(setting):
    spec = _spec(setting, 200, 2.0, 3)
    T = random_instance(spec)
    assert random_sequence(T, spec) == random_sequence(T, spec)


def _neighbour_rule_holds(T: LabeledTriangulation, seq: list[int]) -> bool:
    # a repeat is allowed once an edge sharing a face with it has been flipped since its last flip
    S = T.copy()
    ready: set[int] = set()
    seen: set[int] = set()
    for lab in seq:
        if lab in seen and lab not in ready:
            return False
        S.flip_inplace(lab)
        seen.add(lab)
        ready.discard(lab)
        for nb in S.quad_labels(lab):
            if nb in seen:
                ready.add(nb)
    return True


@pytest.mark.parametrize("setting", SETTINGS)
@given(seed=st.integers(0, 5000), r=st.sampled_from([1.1, 2.0, 10.0]), f=st.integers(20, 300))
def test_sequence_properties(setting, seed, r, f):
    spec = _spec(setting, f, r, seed)
    T = random_instance(spec)
    seq = random_sequence(T, spec)
    assert len(seq) == f
    assert is_valid(seq, T)
    assert _neighbour_rule_holds(T, seq)


@pytest.mark.parametrize("setting", SETTINGS)
@pytest.mark.parametrize("r", [1.1, 2.0, 10.0])
def test_redundancy_within_five_percent(setting, r):
    for seed in range(3):
        spec = _spec(setting, 1000, r, seed)
        T = random_instance(spec)
        seq = random_sequence(T, spec)
        assert abs(redundancy(seq) - r) <= 0.05 * r


def test_too_many_distinct_edges():
    T = random_ngon(8, 0)
    with pytest.raises(GenerationError):
        random_sequence(T, GenSpec("convex", T.edge_count, 20, 1.0, 0))


def test_redundancy_of_empty():
    assert redundancy([]) == 1.0
    assert redundancy([1, 2, 1, 2]) == 2.0


def test_sphere_triangulation_counts():
    for V in range(4, 12):
        T = sphere_triangulation(V)
        T.validate(full=True)
        assert T.edge_count == 3 * V - 6
        assert len(T.triangles()) == 2 * V - 4
        assert not T.boundary_labels()


def test_delaunay_has_empty_circles():
    T = random_instance(GenSpec("geometric", 200, seed=2))
    pts = T.coords
    for a, b, c in T.triangles():
        for v in range(len(pts)):
            if v not in (a, b, c):
                assert incircle(pts[a], pts[b], pts[c], pts[v]) <= 0


def test_lawson_reaches_delaunay():
    spec = _spec("geometric", 80, 1.0, 4)
    T = random_instance(spec)
    assert lawson_sequence(T) == []
    seq = random_sequence(T, spec)
    scrambled = apply(seq, T)
    fixed = apply(lawson_sequence(scrambled), scrambled)
    assert weak_equal(fixed, T)
    assert weak_equal(delaunay_triangulation(list(T.coords)), T)


def test_lawson_needs_geometry():
    with pytest.raises(ValueError):
        lawson_sequence(random_ngon(6, 0))


def test_sequence_between_ngon():
    for seed in range(10):
        T1 = random_ngon(9, seed)
        T2 = random_ngon(9, seed + 100)
        seq = sequence_between_ngon(T1, T2)
        assert weak_equal(apply(seq, T1), T2)
