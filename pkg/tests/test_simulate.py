import numpy as np
import pytest

from dcovkit import (
    SHAPES,
    BackcrossSpec,
    ParameterError,
    ShapeSpec,
    pearson,
    permutation_test,
    simulate_backcross,
    simulate_shape,
)
from dcovkit.simulate import DEFAULT_NOISE

DEPENDENT = [s for s in SHAPES if s != "independent"]


def test_parabola_noiseless():
    x, y = simulate_shape(ShapeSpec("parabola", 200, noise=0.0, seed=1))
    assert np.array_equal(y, x * x)
    assert x.min() >= -1 and x.max() <= 1


def test_circle_noiseless():
    x, y = simulate_shape(ShapeSpec("circle", 300, noise=0.0, seed=2))
    np.testing.assert_allclose(x**2 + y**2, 1.0, atol=1e-12)


def test_cross_noiseless():
    x, y = simulate_shape(ShapeSpec("cross", 300, seed=3))
    assert np.all(np.abs(y) == np.abs(x))
    assert 0 < np.sum(y == x) < 300


def test_four_clusters_centres():
    x, y = simulate_shape(ShapeSpec("four_clusters", 400, noise=0.0, seed=4))
    pts = set(zip(x.tolist(), y.tolist()))
    assert pts == {(1.0, 0.0), (-1.0, 0.0), (0.0, 1.0), (0.0, -1.0)}


def test_default_noise():
    assert ShapeSpec("circle").noise == DEFAULT_NOISE["circle"] == 0.1
    assert ShapeSpec("parabola").noise == 0.05
    assert ShapeSpec("cross").noise == 0.0


@pytest.mark.parametrize("shape", SHAPES)
def test_shape_deterministic(shape):
    a = simulate_shape(ShapeSpec(shape, 50, seed=123))
    b = simulate_shape(ShapeSpec(shape, 50, seed=123))
    c = simulate_shape(ShapeSpec(shape, 50, seed=124))
    assert a[0].tobytes() == b[0].tobytes() and a[1].tobytes() == b[1].tobytes()
    assert not np.array_equal(a[0], c[0])


@pytest.mark.parametrize("shape", DEPENDENT)
def test_symmetry_zero_pearson_large_n(shape):
    x, y = simulate_shape(ShapeSpec(shape, 2000, seed=0))
    assert abs(pearson(x, y)) < 0.1


@pytest.mark.parametrize("shape", DEPENDENT)
def test_dependent_shape_detected(shape):
    x, y = simulate_shape(ShapeSpec(shape, 500, seed=0))
    assert abs(pearson(x, y)) < 0.15
    assert permutation_test(x, y, 999, 0).p_value <= 0.01


@pytest.mark.parametrize(
    "kwargs",
    [dict(shape="triangle"), dict(shape="circle", n=3), dict(shape="circle", noise=-1.0),
     dict(shape="circle", seed=-2)],
)
def test_bad_shape_spec(kwargs):
    with pytest.raises(ParameterError):
        ShapeSpec(**kwargs)


def test_backcross_shape_and_levels():
    g, ph = simulate_backcross(BackcrossSpec(154, 119, missing_rate=0.1, seed=5))
    assert g.shape == (154, 119)
    assert ph.shape == (154,)
    assert set(np.unique(g[~np.isnan(g)])) <= {0.0, 1.0}
    assert np.isnan(g).any()
    assert np.all(np.isfinite(ph))


def test_backcross_linkage():
    g, _ = simulate_backcross(BackcrossSpec(2000, 30, seed=6))
    same = np.mean(g[:, 1:] == g[:, :-1])
    assert same == pytest.approx(0.9, abs=0.01)
    assert np.mean(g) == pytest.approx(0.5, abs=0.02)


def test_backcross_missing_rate():
    g, _ = simulate_backcross(BackcrossSpec(500, 40, missing_rate=0.2, seed=7))
    assert np.isnan(g).mean() == pytest.approx(0.2, abs=0.01)


def test_backcross_null_phenotype_unaffected():
    base = BackcrossSpec(50, 10, None, 0.0, 0.0, 8)
    _, p0 = simulate_backcross(base)
    _, p1 = simulate_backcross(BackcrossSpec(50, 10, 3, 0.0, 0.0, 8))
    assert np.array_equal(p0, p1)


def test_backcross_effect_added():
    g, p = simulate_backcross(BackcrossSpec(60, 10, 4, 2.0, 0.0, 9))
    _, noise = simulate_backcross(BackcrossSpec(60, 10, None, 0.0, 0.0, 9))
    np.testing.assert_allclose(p - noise, 2.0 * g[:, 4])


def test_backcross_deterministic():
    spec = BackcrossSpec(30, 12, 2, 1.0, 0.1, 10)
    a, b = simulate_backcross(spec), simulate_backcross(spec)
    assert a[0].tobytes() == b[0].tobytes() and a[1].tobytes() == b[1].tobytes()


@pytest.mark.parametrize(
    "kwargs",
    [dict(n_individuals=3), dict(n_markers=0), dict(n_markers=5, causal_marker=5),
     dict(missing_rate=1.0), dict(missing_rate=-0.1), dict(effect_size=float("nan"))],
)
def test_bad_backcross_spec(kwargs):
    with pytest.raises(ParameterError):
        BackcrossSpec(**kwargs)
