import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dcovkit import (
    ParameterError,
    ShapeSpec,
    SizeError,
    distance_correlation,
    permutation_distribution,
    permutation_test,
    simulate_shape,
)
from dcovkit import _rng
from dcovkit.inference import test_from_distribution as fold

from oracles import dcov_sq_definition


def test_constant_y_gives_p_one():
    res = permutation_test([0.0, 1.0, 5.0], [2.0, 2.0, 2.0], 50, 3)
    assert res.statistic == 0.0
    assert res.exceed_count == 50
    assert res.p_value == 1.0


def test_perfect_dependence_hits_floor():
    # frozen from a seeded run: no replicate reaches the observed value
    x = np.arange(20.0)
    res = permutation_test(x, x, 199, 1)
    assert res.exceed_count == 0
    assert res.p_value == pytest.approx(1 / 200)


def test_independent_uniforms_pinned():
    x, y = simulate_shape(ShapeSpec("independent", 500, seed=0))
    res = permutation_test(x, y, 999, 0)
    # frozen from a seeded run
    assert res.exceed_count == 57
    assert res.p_value == pytest.approx(58 / 1000)
    assert res.p_value > 0.05


def test_replicates_follow_stream_permutations():
    """Replicate r equals the statistic on y relabelled by stream (seed, r)."""
    rng = np.random.default_rng(5)
    x, y = rng.normal(size=(7, 2)), rng.normal(size=7)
    dist = permutation_distribution(x, y, 6, 42)
    for r in range(1, 7):
        perm = _rng.permutation(42, r, 7)
        assert dist[r - 1] == pytest.approx(dcov_sq_definition(x, y[perm]), rel=1e-12)


def test_distribution_constant_y():
    dist = permutation_distribution(np.arange(6.0), np.zeros(6), 30, 0)
    assert np.all(dist == 0.0)


def test_distribution_deterministic():
    rng = np.random.default_rng(9)
    x, y = rng.normal(size=(40, 2)), rng.normal(size=40)
    a = permutation_distribution(x, y, 100, 77)
    b = permutation_distribution(x, y, 100, 77)
    assert a.tobytes() == b.tobytes()
    assert not np.array_equal(a, permutation_distribution(x, y, 100, 78))


def test_distribution_length_and_sign():
    rng = np.random.default_rng(10)
    dist = permutation_distribution(rng.normal(size=100), rng.normal(size=100), 999, 1)
    assert dist.shape == (999,)
    assert np.all(dist >= 0)


def test_test_is_fold_over_distribution():
    rng = np.random.default_rng(12)
    x, y = rng.normal(size=30), rng.normal(size=30) + 0.3 * rng.normal(size=30)
    for kind in ("dcov_sq", "dcor"):
        res = permutation_test(x, y, 200, 4, kind)
        dist = permutation_distribution(x, y, 200, 4, kind)
        observed = distance_correlation(x, y)
        expected_stat = observed.dcov_sq if kind == "dcov_sq" else observed.dcor
        assert res.statistic == pytest.approx(expected_stat, rel=1e-14)
        assert res.exceed_count == int(np.sum(dist >= res.statistic))
        assert res.p_value == (1 + res.exceed_count) / 201
        assert res == fold(res.statistic, dist, kind, 4)


def test_ties_count_as_exceedances():
    res = fold(1.0, [0.5, 1.0, 2.0], "dcov_sq", 0)
    assert res.exceed_count == 2
    assert res.p_value == 0.75


def test_workers_do_not_change_result():
    rng = np.random.default_rng(13)
    x, y = rng.normal(size=(60, 2)), rng.normal(size=60)
    one = permutation_test(x, y, 301, 9, workers=1)
    many = permutation_test(x, y, 301, 9, workers=8)
    assert one == many
    d1 = permutation_distribution(x, y, 301, 9, workers=1)
    d8 = permutation_distribution(x, y, 301, 9, workers=8)
    assert d1.tobytes() == d8.tobytes()


@pytest.mark.parametrize("n", [1, 2])
def test_too_few_points(n):
    with pytest.raises(SizeError):
        permutation_test(np.arange(n, dtype=float), np.arange(n, dtype=float), 10, 0)


@pytest.mark.parametrize("r", [0, -3, 2.5])
def test_bad_replicates(r):
    with pytest.raises(ParameterError):
        permutation_test(np.arange(5.0), np.arange(5.0), r, 0)


@pytest.mark.parametrize("seed", [-1, 2**64, 1.5, "7"])
def test_bad_seed(seed):
    with pytest.raises(ParameterError):
        permutation_test(np.arange(5.0), np.arange(5.0), 5, seed)


def test_bad_kind():
    with pytest.raises(ParameterError):
        permutation_test(np.arange(5.0), np.arange(5.0), 5, 0, "hsic")


def test_max_seed_accepted():
    res = permutation_test(np.arange(5.0), np.arange(5.0)[::-1], 5, 2**64 - 1)
    assert res.seed == 2**64 - 1


@settings(max_examples=40, deadline=None)
@given(
    st.integers(3, 25),
    st.integers(1, 60),
    st.integers(0, 2**64 - 1),
    st.sampled_from(["dcov_sq", "dcor"]),
)
def test_p_value_bounds(n, replicates, seed, kind):
    rng = np.random.default_rng(seed % 1000)
    res = permutation_test(rng.normal(size=n), rng.normal(size=n), replicates, seed, kind)
    assert 1 / (replicates + 1) <= res.p_value <= 1.0
    assert res.p_value == (1 + res.exceed_count) / (1 + replicates)
    assert 0 <= res.exceed_count <= replicates


def test_null_uniformity_band():
    rejections = 0
    for seed in range(200):
        rng = _rng.stream(seed, 0)
        x, y = rng.normal(size=100), rng.normal(size=100)
        rejections += permutation_test(x, y, 199, seed).p_value <= 0.05
    assert 0.01 <= rejections / 200 <= 0.12
