"""Distance covariance, distance correlation and classical baselines.

Distances are averaged with the ``1/n**2`` (V-statistic) divisor, which keeps
the squared distance covariance nonnegative and the distance correlation in
``[0, 1]``.
"""

from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import pdist, squareform
from scipy.stats import rankdata

from . import _kernels
from .errors import (
    ConsistencyError,
    DegenerateVarianceError,
    InvalidInputError,
    SizeError,
)

METRICS = ("euclidean", "indicator")

# relative size of negative round-off tolerated before clamping to 0
CLAMP_TOL = 1e-12


def as_sample(x, name="x"):
    """Coerce ``x`` to a read-only float64 ``(n, p)`` array.

    1-D input becomes a single column. Raises on non-finite entries.
    """
    arr = np.asarray(x, dtype=np.float64)
    if arr.ndim == 1:
        arr = arr[:, None]
    elif arr.ndim != 2:
        raise InvalidInputError(f"{name} must be 1-D or 2-D, got shape {arr.shape}")
    if arr.shape[1] < 1:
        raise InvalidInputError(f"{name} has no columns")
    if not np.all(np.isfinite(arr)):
        raise InvalidInputError(f"{name} contains NaN or infinite entries")
    arr = np.ascontiguousarray(arr)
    arr.flags.writeable = False
    return arr


def _paired(x, y):
    x = as_sample(x, "x")
    y = as_sample(y, "y")
    if x.shape[0] != y.shape[0]:
        raise SizeError(f"x has {x.shape[0]} rows but y has {y.shape[0]}")
    if x.shape[0] < 2:
        raise SizeError("need at least 2 observations")
    return x, y


def pairwise_distance_matrix(x, metric="euclidean"):
    """Pairwise distances between the rows of ``x``.

    ``metric='indicator'`` gives 1 for rows that differ in any coordinate and
    0 otherwise. The result is exactly symmetric with a zero diagonal.
    """
    x = as_sample(x)
    if x.shape[0] < 2:
        raise SizeError("need at least 2 observations")
    if metric == "euclidean":
        condensed = pdist(x, "euclidean")
    elif metric == "indicator":
        condensed = (pdist(x, "hamming") > 0).astype(np.float64)
    else:
        raise InvalidInputError(f"unknown metric {metric!r}; expected one of {METRICS}")
    d = squareform(condensed)
    d.flags.writeable = False
    return d


def double_center(d):
    """Subtract row and column means and add back the grand mean."""
    d = np.asarray(d, dtype=np.float64)
    if d.ndim != 2 or d.shape[0] != d.shape[1]:
        raise InvalidInputError(f"distance matrix must be square, got shape {d.shape}")
    row = d.mean(axis=1)
    # reuse row means for symmetric input so the result is exactly symmetric
    col = row if np.array_equal(d, d.T) else d.mean(axis=0)
    a = d - (row[:, None] + col[None, :]) + d.mean()
    a.flags.writeable = False
    return a


def _centered(x, metric):
    return double_center(pairwise_distance_matrix(x, metric))


def _clamp(value, a, b):
    """Clamp tiny negative round-off to 0, refuse anything larger."""
    if value >= 0.0:
        return value
    scale = float(np.max(np.abs(a)) * np.max(np.abs(b)))
    if value >= -CLAMP_TOL * max(scale, np.finfo(float).tiny):
        return 0.0
    raise ConsistencyError(f"squared distance covariance is negative ({value!r})")


def centered_dcov_sq(a, b, perm=None):
    """Average of ``a * b`` over all entries, optionally with ``b`` relabelled.

    ``perm`` relabels the rows and columns of ``b`` together, which is the
    centered matrix of the permuted second sample.
    """
    n = a.shape[0]
    if perm is None:
        perm = _kernels.identity(n)
    raw = _kernels.permuted_inner(a, b, np.asarray(perm, dtype=np.int64)) / (n * n)
    return _clamp(raw, a, b)


def distance_covariance_sq(x, y, x_metric="euclidean", y_metric="euclidean"):
    """Squared sample distance covariance of paired samples ``x`` and ``y``.

    ``x`` and ``y`` need the same number of rows; their dimensions may differ.
    """
    x, y = _paired(x, y)
    return centered_dcov_sq(_centered(x, x_metric), _centered(y, y_metric))


@dataclass(frozen=True)
class DcovResult:
    dcov_sq: float
    dvar_x_sq: float
    dvar_y_sq: float
    dcor: float


def dcor_from_parts(dcov_sq, dvar_x_sq, dvar_y_sq):
    """Normalise a squared covariance; 0 if either variance vanishes."""
    if dvar_x_sq <= 0.0 or dvar_y_sq <= 0.0:
        return 0.0
    r = float(np.sqrt(dcov_sq / np.sqrt(dvar_x_sq * dvar_y_sq)))
    # Cauchy-Schwarz caps the ratio at 1; round-off may push it over
    return min(r, 1.0)


def distance_correlation(x, y, x_metric="euclidean", y_metric="euclidean"):
    x, y = _paired(x, y)
    a = _centered(x, x_metric)
    b = _centered(y, y_metric)
    dcov_sq = centered_dcov_sq(a, b)
    vx = centered_dcov_sq(a, a)
    vy = centered_dcov_sq(b, b)
    return DcovResult(dcov_sq, vx, vy, dcor_from_parts(dcov_sq, vx, vy))


def _vector(x, name):
    arr = as_sample(x, name)
    if arr.shape[1] != 1:
        raise InvalidInputError(f"{name} must be one-dimensional, got {arr.shape[1]} columns")
    return arr[:, 0]


def pearson(x, y):
    """Sample Pearson correlation of two 1-D samples."""
    x = _vector(x, "x")
    y = _vector(y, "y")
    if x.shape[0] != y.shape[0]:
        raise SizeError(f"x has {x.shape[0]} rows but y has {y.shape[0]}")
    if x.shape[0] < 2:
        raise SizeError("need at least 2 observations")
    xc = x - x.mean()
    yc = y - y.mean()
    sxx = float(np.dot(xc, xc))
    syy = float(np.dot(yc, yc))
    if sxx == 0.0 or syy == 0.0:
        raise DegenerateVarianceError("correlation undefined for a constant variable")
    r = float(np.dot(xc, yc)) / np.sqrt(sxx * syy)
    return float(np.clip(r, -1.0, 1.0))


def spearman(x, y):
    """Spearman rank correlation (midranks for ties)."""
    x = _vector(x, "x")
    y = _vector(y, "y")
    return pearson(rankdata(x), rankdata(y))
