"""Seeded generators: six zero-correlation shapes and backcross genome data.

All draws come from stream 0 of the seed (see :mod:`dcovkit._rng`), in the
order documented on each generator, so a spec always reproduces the same
arrays bit for bit.
"""

from dataclasses import dataclass

import numpy as np

from . import _rng
from .errors import ParameterError

SHAPES = ("parabola", "circle", "cross", "four_clusters", "sinusoid", "independent")

DEFAULT_NOISE = {
    "parabola": 0.05,
    "circle": 0.1,
    "cross": 0.0,
    "four_clusters": 0.1,
    "sinusoid": 0.05,
    "independent": 0.0,
}

# cluster centres on the axes: E[xy] = 0 by symmetry, yet |x| large forces y ~ 0
CLUSTER_CENTERS = np.array([[1.0, 0.0], [-1.0, 0.0], [0.0, 1.0], [0.0, -1.0]])

LINKAGE = 0.9


@dataclass(frozen=True)
class ShapeSpec:
    shape: str
    n: int = 500
    noise: float | None = None
    seed: int = 0

    def __post_init__(self):
        if self.shape not in SHAPES:
            raise ParameterError(f"unknown shape {self.shape!r}; expected one of {SHAPES}")
        if int(self.n) != self.n or self.n < 4:
            raise ParameterError(f"n must be an integer >= 4, got {self.n!r}")
        noise = DEFAULT_NOISE[self.shape] if self.noise is None else float(self.noise)
        if not np.isfinite(noise) or noise < 0:
            raise ParameterError(f"noise must be finite and >= 0, got {self.noise!r}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "noise", noise)
        object.__setattr__(self, "seed", _rng.check_seed(self.seed))


def simulate_shape(spec):
    """Draw ``(x, y)`` for one shape; returns two read-only 1-D arrays.

    Draw order per shape (all from one stream):

    * parabola, sinusoid: ``n`` uniforms for x, then ``n`` normals for noise
    * circle: ``n`` uniform angles, then an ``(n, 2)`` normal block
    * cross: ``n`` uniforms for x, ``n`` uniform integers in {0, 1} for the sign,
      then ``n`` normals only when noise > 0
    * four_clusters: ``n`` uniform integers in {0..3}, then an ``(n, 2)`` normal block
    * independent: ``n`` uniforms for x, then ``n`` for y
    """
    if not isinstance(spec, ShapeSpec):
        raise ParameterError("simulate_shape expects a ShapeSpec")
    rng = _rng.stream(spec.seed, _rng.DATA_STREAM)
    n, noise = spec.n, spec.noise

    if spec.shape == "parabola":
        x = rng.uniform(-1.0, 1.0, n)
        y = x * x + noise * rng.standard_normal(n)
    elif spec.shape == "sinusoid":
        x = rng.uniform(-1.0, 1.0, n)
        y = np.cos(2.0 * np.pi * x) + noise * rng.standard_normal(n)
    elif spec.shape == "circle":
        theta = rng.uniform(0.0, 2.0 * np.pi, n)
        eps = rng.standard_normal((n, 2))
        x = np.cos(theta) + noise * eps[:, 0]
        y = np.sin(theta) + noise * eps[:, 1]
    elif spec.shape == "cross":
        x = rng.uniform(-1.0, 1.0, n)
        sign = 2.0 * rng.integers(0, 2, n) - 1.0
        y = sign * x + noise * rng.standard_normal(n) if noise else sign * x
    elif spec.shape == "four_clusters":
        centers = CLUSTER_CENTERS[rng.integers(0, 4, n)]
        pts = centers + noise * rng.standard_normal((n, 2))
        x, y = pts[:, 0].copy(), pts[:, 1].copy()
    else:
        x = rng.uniform(-1.0, 1.0, n)
        y = rng.uniform(-1.0, 1.0, n)

    x.flags.writeable = False
    y.flags.writeable = False
    return x, y


@dataclass(frozen=True)
class BackcrossSpec:
    n_individuals: int = 154
    n_markers: int = 119
    causal_marker: int | None = None
    effect_size: float = 0.0
    missing_rate: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if int(self.n_individuals) != self.n_individuals or self.n_individuals < 4:
            raise ParameterError("n_individuals must be an integer >= 4")
        if int(self.n_markers) != self.n_markers or self.n_markers < 1:
            raise ParameterError("n_markers must be an integer >= 1")
        if self.causal_marker is not None and not 0 <= self.causal_marker < self.n_markers:
            raise ParameterError(
                f"causal_marker must lie in [0, {self.n_markers}), got {self.causal_marker}"
            )
        if not np.isfinite(self.effect_size):
            raise ParameterError("effect_size must be finite")
        if not 0.0 <= self.missing_rate < 1.0:
            raise ParameterError("missing_rate must lie in [0, 1)")
        object.__setattr__(self, "seed", _rng.check_seed(self.seed))


def simulate_backcross(spec):
    """Simulate a backcross: linked two-level markers and one phenotype.

    Returns ``(genotypes, phenotype)``. ``genotypes`` is an ``(n, m)`` float
    array with levels 0/1 and NaN where missing. Adjacent markers carry the
    same level with probability 0.9.

    Draws, in order: an ``(n, m)`` uniform block driving the marker chain
    (column 0 picks the starting level, column j > 0 decides whether to
    switch), ``n`` standard normals for the phenotype, then an ``(n, m)``
    uniform block for missingness.
    """
    if not isinstance(spec, BackcrossSpec):
        raise ParameterError("simulate_backcross expects a BackcrossSpec")
    rng = _rng.stream(spec.seed, _rng.DATA_STREAM)
    n, m = spec.n_individuals, spec.n_markers

    u = rng.uniform(size=(n, m))
    geno = np.empty((n, m), dtype=np.int8)
    geno[:, 0] = u[:, 0] < 0.5
    for j in range(1, m):
        switch = u[:, j] >= LINKAGE
        geno[:, j] = np.where(switch, 1 - geno[:, j - 1], geno[:, j - 1])

    phenotype = rng.standard_normal(n)
    if spec.causal_marker is not None:
        phenotype = phenotype + spec.effect_size * geno[:, spec.causal_marker]

    genotypes = geno.astype(np.float64)
    missing = rng.uniform(size=(n, m)) < spec.missing_rate
    genotypes[missing] = np.nan

    genotypes.flags.writeable = False
    phenotype.flags.writeable = False
    return genotypes, phenotype
