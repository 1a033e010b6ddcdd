"""Per-marker genome scan with the indicator genotype metric.

Each marker is tested separately against the phenotype after dropping
individuals whose genotype is missing at that marker. The permutation
stream of a marker is keyed by a hash of its id mixed with the scan seed,
so reordering the marker columns reorders the records and nothing else.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import _rng
from .errors import InvalidInputError, ParameterError, SizeError
from .inference import permutation_test
from .stats import as_sample

SCAN_STATISTIC = "dcor"


@dataclass(frozen=True)
class MarkerMatrix:
    """Genotype levels per individual (rows) and marker (columns); NaN = missing."""

    genotypes: np.ndarray
    marker_ids: tuple
    max_levels: int = 2

    def __post_init__(self):
        g = np.array(self.genotypes, dtype=np.float64)
        if g.ndim != 2:
            raise InvalidInputError(f"genotypes must be 2-D, got shape {g.shape}")
        if np.isinf(g).any():
            raise InvalidInputError("genotypes contain infinite values")
        ids = tuple(str(i) for i in self.marker_ids)
        if len(ids) != g.shape[1]:
            raise InvalidInputError(f"{len(ids)} marker ids for {g.shape[1]} markers")
        if len(set(ids)) != len(ids):
            raise InvalidInputError("marker ids must be unique")
        for j, mid in enumerate(ids):
            col = g[:, j]
            levels = np.unique(col[~np.isnan(col)])
            if levels.size > self.max_levels:
                raise InvalidInputError(
                    f"marker {mid!r} has {levels.size} levels, at most {self.max_levels} allowed"
                )
        g.flags.writeable = False
        object.__setattr__(self, "genotypes", g)
        object.__setattr__(self, "marker_ids", ids)

    @classmethod
    def from_array(cls, genotypes, marker_ids=None, max_levels=2):
        g = np.asarray(genotypes, dtype=np.float64)
        if marker_ids is None:
            width = len(str(g.shape[1]))
            marker_ids = [f"M{j + 1:0{width}d}" for j in range(g.shape[1])]
        return cls(g, tuple(marker_ids), max_levels)

    @property
    def n(self):
        return self.genotypes.shape[0]

    @property
    def m(self):
        return self.genotypes.shape[1]


@dataclass(frozen=True)
class MarkerRecord:
    marker_id: str
    n_used: int
    statistic: float
    p_value: float
    neglog10_p: float
    degenerate: bool = False


@dataclass(frozen=True)
class ScanResult:
    records: tuple
    replicates: int
    seed: int

    def __len__(self):
        return len(self.records)

    def column(self, name):
        return np.array([getattr(r, name) for r in self.records])

    def peak(self):
        """Index of the strongest marker.

        Largest ``neglog10_p``; ties (common once p hits its floor
        ``1/(R+1)``) go to the larger statistic, then the earlier marker.
        """
        best = max(
            range(len(self.records)),
            key=lambda j: (self.records[j].neglog10_p, self.records[j].statistic, -j),
        )
        return best


def marker_seed(seed, marker_id):
    return _rng.derive_seed(seed, f"marker:{marker_id}")


def _degenerate(marker_id, n_used):
    return MarkerRecord(marker_id, n_used, 0.0, 1.0, 0.0, True)


def scan_markers(markers, phenotype, replicates, seed, *, workers=None):
    """Test every marker against ``phenotype``; one record per marker, in order.

    Genotype distance is the indicator of distinct genotypes, phenotype
    distance is euclidean, the statistic is the distance correlation.
    Markers with fewer than 3 typed individuals, or with a single level
    among them, get ``p_value = 1``, ``statistic = 0`` and ``degenerate``.
    """
    if not isinstance(markers, MarkerMatrix):
        markers = MarkerMatrix.from_array(markers)
    y = as_sample(phenotype, "phenotype")
    if y.shape[0] != markers.n:
        raise SizeError(f"phenotype has {y.shape[0]} rows but markers have {markers.n}")
    seed = _rng.check_seed(seed)
    if isinstance(replicates, bool) or int(replicates) != replicates or replicates < 1:
        raise ParameterError(f"replicates must be a positive integer, got {replicates!r}")

    records = []
    for j, mid in enumerate(markers.marker_ids):
        col = markers.genotypes[:, j]
        keep = ~np.isnan(col)
        n_used = int(keep.sum())
        g = col[keep]
        yk = y[keep]
        if n_used < 3 or np.all(g == g[0]) or np.all(yk == yk[0]):
            records.append(_degenerate(mid, n_used))
            continue
        res = permutation_test(
            g,
            yk,
            replicates,
            marker_seed(seed, mid),
            SCAN_STATISTIC,
            x_metric="indicator",
            workers=workers,
        )
        records.append(
            MarkerRecord(mid, n_used, res.statistic, res.p_value, 0.0 - math.log10(res.p_value))
        )
    return ScanResult(tuple(records), int(replicates), seed)
