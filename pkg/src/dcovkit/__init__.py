"""Distance covariance, distance correlation and permutation tests of independence."""

from .errors import (
    ConsistencyError,
    DcovError,
    DegenerateVarianceError,
    InvalidInputError,
    ParameterError,
    ParseError,
    SizeError,
)
from .inference import (
    TestResult,
    permutation_distribution,
    permutation_test,
)
from .scan import MarkerMatrix, MarkerRecord, ScanResult, scan_markers
from .simulate import (
    SHAPES,
    BackcrossSpec,
    ShapeSpec,
    simulate_backcross,
    simulate_shape,
)
from .stats import (
    DcovResult,
    distance_correlation,
    distance_covariance_sq,
    double_center,
    pairwise_distance_matrix,
    pearson,
    spearman,
)

__version__ = "0.1.0"
