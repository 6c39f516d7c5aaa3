import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from esplab import DimensionError, DomainError, RngStream, directed_distance, hausdorff_distance, pairwise_distances
from esplab.hausdorff import diameter


def naive_distance(x, y, p):
    # accumulate coordinate by coordinate, as a person would by hand
    acc = 0.0
    for a, b in zip(x, y):
        d = abs(a - b)
        if p == math.inf:
            acc = max(acc, d)
        elif p == 2:
            acc += d * d
        else:
            acc += d
    return math.sqrt(acc) if p == 2 else acc


def naive_directed(P, Q, p):
    worst = 0.0
    for x in P:
        best = math.inf
        for y in Q:
            best = min(best, naive_distance(x, y, p))
        worst = max(worst, best)
    return worst


def naive_hausdorff(P, Q, p):
    return max(naive_directed(P, Q, p), naive_directed(Q, P, p))


def test_examples():
    S = np.array([[0.0, 0.0], [0.5, 0.2]])
    assert hausdorff_distance(S, S) == 0.0
    assert hausdorff_distance([[0.0, 0.0]], [[3.0, 4.0]]) == 5.0
    assert hausdorff_distance([[0.0], [1.0]], [[0.0]]) == 1.0
    assert directed_distance([[0.0]], [[0.0], [1.0]]) == 0.0
    assert directed_distance([[0.0], [1.0]], [[0.0]]) == 1.0


def test_norm_orders():
    assert hausdorff_distance([[0.0, 0.0]], [[3.0, 4.0]], p=1) == 7.0
    assert hausdorff_distance([[0.0, 0.0]], [[3.0, 4.0]], p=np.inf) == 4.0
    assert hausdorff_distance([[0.0, 0.0]], [[3.0, 4.0]], p="inf") == 4.0
    with pytest.raises(DomainError):
        hausdorff_distance([[0.0]], [[1.0]], p=0.5)


def test_errors():
    with pytest.raises(DimensionError):
        hausdorff_distance([[0.0, 0.0]], [[0.0]])
    with pytest.raises(DomainError):
        hausdorff_distance(np.empty((0, 2)), [[0.0, 0.0]])
    with pytest.raises(DomainError):
        hausdorff_distance([[np.nan]], [[0.0]])


@pytest.mark.parametrize("p", [1, 2, math.inf])
@pytest.mark.parametrize("seed", range(4))
def test_matches_naive_double_loop_exactly(p, seed):
    gen = RngStream(seed, 20).generator()
    P = gen.uniform(-1, 1, (37, 3))
    Q = gen.uniform(-1, 1, (23, 3))
    assert directed_distance(P, Q, p) == naive_directed(P.tolist(), Q.tolist(), p)
    assert hausdorff_distance(P, Q, p) == naive_hausdorff(P.tolist(), Q.tolist(), p)
    D = pairwise_distances(P, Q, p)
    for i in (0, 5, 36):
        for j in (0, 22):
            assert D[i, j] == naive_distance(P[i], Q[j], p)


def test_pairwise_properties():
    P = RngStream(1, 21).generator().uniform(-1, 1, (50, 4))
    D = pairwise_distances(P, P)
    assert np.all(np.isfinite(D)) and np.all(D >= 0)
    assert np.all(np.diag(D) == 0)
    np.testing.assert_array_equal(D, D.T)


def test_diameter_brute_force():
    P = RngStream(2, 21).generator().uniform(-1, 1, (100, 3))
    brute = max(naive_distance(x, y, 2) for x in P.tolist() for y in P.tolist())
    assert diameter(P) == brute
    assert diameter([[0.0, 0.0]]) == 0.0
    assert diameter([[0.0, 0.0], [3.0, 4.0]]) == 5.0


point_sets = st.integers(1, 12).flatmap(
    lambda m: st.lists(st.floats(-1, 1), min_size=2 * m, max_size=2 * m).map(lambda v: np.array(v).reshape(m, 2))
)


@settings(max_examples=200, deadline=None)
@given(point_sets, point_sets, point_sets)
def test_metric_axioms(A, B, C):
    dab = hausdorff_distance(A, B)
    assert dab == hausdorff_distance(B, A)
    assert hausdorff_distance(A, C) <= dab + hausdorff_distance(B, C) + 1e-12
    same = {tuple(r) for r in A} == {tuple(r) for r in B}
    assert (dab == 0.0) == same


@settings(max_examples=100, deadline=None)
@given(point_sets, point_sets)
def test_inclusion_gives_zero_directed(A, B):
    union = np.vstack([A, B])
    assert directed_distance(A, union) == 0.0


@settings(max_examples=100, deadline=None)
@given(point_sets, point_sets, st.floats(-1, 1), st.floats(-1, 1))
def test_translation_invariance(A, B, vx, vy):
    v = np.array([vx, vy])
    assert abs(hausdorff_distance(A + v, B + v) - hausdorff_distance(A, B)) <= 1e-12


def test_thousand_random_triples():
    gen = RngStream(3, 22).generator()
    for _ in range(1000):
        A, B, C = (gen.uniform(-1, 1, (gen.integers(1, 8), 2)) for _ in range(3))
        assert hausdorff_distance(A, C) <= hausdorff_distance(A, B) + hausdorff_distance(B, C) + 1e-12
