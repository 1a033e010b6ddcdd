"""Monte Carlo permutation test of independence.

Replicate ``r`` (``r = 1..R``) relabels the rows of ``y`` with a permutation
drawn from the stream keyed by ``(seed, r)``. Replicates are therefore
independent of evaluation order, and the work can be split across threads
without changing a single bit of the result.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import _kernels, _rng
from .errors import ParameterError, SizeError
from .stats import (
    _centered,
    _clamp,
    _paired,
    centered_dcov_sq,
    dcor_from_parts,
)

STATISTIC_KINDS = ("dcov_sq", "dcor")


@dataclass(frozen=True)
class TestResult:
    statistic: float
    statistic_kind: str
    replicates: int
    exceed_count: int
    p_value: float
    seed: int

    __test__ = False  # not a pytest class


def _check(x, y, replicates, seed, statistic_kind, x_metric, y_metric):
    x, y = _paired(x, y)
    if x.shape[0] < 3:
        raise SizeError("permutation test needs at least 3 observations")
    if isinstance(replicates, bool) or int(replicates) != replicates or replicates < 1:
        raise ParameterError(f"replicates must be a positive integer, got {replicates!r}")
    if statistic_kind not in STATISTIC_KINDS:
        raise ParameterError(
            f"statistic_kind must be one of {STATISTIC_KINDS}, got {statistic_kind!r}"
        )
    seed = _rng.check_seed(seed)
    return _centered(x, x_metric), _centered(y, y_metric), int(replicates), seed


def _permutations(seed, replicates, n):
    perms = np.empty((replicates, n), dtype=np.int64)
    for r in range(replicates):
        perms[r] = _rng.permutation(seed, r + 1, n)
    return perms


def _raw_replicates(a, b, perms, workers):
    out = np.empty(perms.shape[0], dtype=np.float64)
    if workers is None or workers <= 1 or perms.shape[0] < 2:
        _kernels.permuted_inner_batch(a, b, perms, out)
        return out
    bounds = np.linspace(0, perms.shape[0], min(workers, perms.shape[0]) + 1).astype(int)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        jobs = [
            pool.submit(_kernels.permuted_inner_batch, a, b, perms[lo:hi], out[lo:hi])
            for lo, hi in zip(bounds[:-1], bounds[1:])
        ]
        for job in jobs:
            job.result()
    return out


def _statistics(a, b, raw, kind):
    n = a.shape[0]
    values = np.array([_clamp(v / (n * n), a, b) for v in raw], dtype=np.float64)
    if kind == "dcov_sq":
        return values
    vx = centered_dcov_sq(a, a)
    vy = centered_dcov_sq(b, b)
    return np.array([dcor_from_parts(v, vx, vy) for v in values], dtype=np.float64)


def _observed(a, b, kind):
    dcov_sq = centered_dcov_sq(a, b)
    if kind == "dcov_sq":
        return dcov_sq
    return dcor_from_parts(dcov_sq, centered_dcov_sq(a, a), centered_dcov_sq(b, b))


def permutation_distribution(
    x,
    y,
    replicates,
    seed,
    statistic_kind="dcov_sq",
    *,
    x_metric="euclidean",
    y_metric="euclidean",
    workers=None,
):
    """Null replicates of the statistic, in stream order ``1..R``."""
    a, b, replicates, seed = _check(
        x, y, replicates, seed, statistic_kind, x_metric, y_metric
    )
    perms = _permutations(seed, replicates, a.shape[0])
    return _statistics(a, b, _raw_replicates(a, b, perms, workers), statistic_kind)


def test_from_distribution(observed, distribution, statistic_kind, seed):
    """Fold observed statistic and null replicates into a :class:`TestResult`.

    Replicates tying the observed value count as exceedances.
    """
    distribution = np.asarray(distribution)
    count = int(np.count_nonzero(distribution >= observed))
    replicates = int(distribution.shape[0])
    return TestResult(
        statistic=float(observed),
        statistic_kind=statistic_kind,
        replicates=replicates,
        exceed_count=count,
        p_value=(1 + count) / (1 + replicates),
        seed=int(seed),
    )


def permutation_test(
    x,
    y,
    replicates,
    seed,
    statistic_kind="dcov_sq",
    *,
    x_metric="euclidean",
    y_metric="euclidean",
    workers=None,
):
    """Permutation test of independence between paired samples ``x`` and ``y``.

    Parameters
    ----------
    x, y : array_like
        Paired samples with the same number of rows (at least 3). 1-D input is
        treated as a single column.
    replicates : int
        Number of random permutations ``R``.
    seed : int
        Unsigned 64-bit seed. Replicate ``r`` uses stream ``(seed, r)``.
    statistic_kind : {'dcov_sq', 'dcor'}
        Statistic compared against its permutation distribution.
    x_metric, y_metric : {'euclidean', 'indicator'}
        Distance used for each sample.
    workers : int, optional
        Threads used for the replicates. The result does not depend on it.

    Returns
    -------
    TestResult
        ``p_value = (1 + exceed_count) / (1 + R)``.
    """
    a, b, replicates, seed = _check(
        x, y, replicates, seed, statistic_kind, x_metric, y_metric
    )
    perms = _permutations(seed, replicates, a.shape[0])
    null = _statistics(a, b, _raw_replicates(a, b, perms, workers), statistic_kind)
    return test_from_distribution(_observed(a, b, statistic_kind), null, statistic_kind, seed)
