"""Counter-based random streams.

Every stream is a Philox generator keyed by ``(seed, stream_index)``. Two
streams with different keys share no state, so replicate ``r`` of a
permutation test can be drawn without touching replicates ``1..r-1``.

Stream index 0 is reserved for data generation (:mod:`dcovkit.simulate`);
permutation replicates use indices ``1..R``.
"""

import hashlib
from dataclasses import dataclass

import numpy as np

from .errors import ParameterError

UINT64_MAX = 2**64 - 1

DATA_STREAM = 0


def check_seed(seed):
    """Return ``seed`` as a Python int, validating the unsigned 64-bit range."""
    if isinstance(seed, (bool, np.bool_)) or not isinstance(seed, (int, np.integer)):
        raise ParameterError(f"seed must be an integer, got {seed!r}")
    seed = int(seed)
    if not 0 <= seed <= UINT64_MAX:
        raise ParameterError(f"seed must be in [0, 2**64), got {seed}")
    return seed


@dataclass(frozen=True)
class RngSpec:
    seed: int
    stream_index: int = 0

    def __post_init__(self):
        object.__setattr__(self, "seed", check_seed(self.seed))
        if int(self.stream_index) < 0:
            raise ParameterError("stream_index must be >= 0")
        object.__setattr__(self, "stream_index", int(self.stream_index))

    def generator(self):
        return np.random.Generator(
            np.random.Philox(key=np.array([self.seed, self.stream_index], dtype=np.uint64))
        )


def stream(seed, stream_index):
    return RngSpec(seed, stream_index).generator()


def permutation(seed, stream_index, n):
    """Uniform random permutation of ``range(n)`` drawn from one stream.

    numpy's ``Generator.permutation`` is an in-place Fisher-Yates shuffle of
    ``arange(n)`` driven by bounded integer draws from the stream.
    """
    return stream(seed, stream_index).permutation(n)


def derive_seed(seed, label):
    """Mix a 64-bit seed with a string label into a new 64-bit seed.

    The result depends only on ``(seed, label)``, never on call order.
    """
    seed = check_seed(seed)
    h = hashlib.blake2b(digest_size=8, person=b"dcovkit-seed")
    h.update(seed.to_bytes(8, "little"))
    h.update(str(label).encode("utf-8"))
    return int.from_bytes(h.digest(), "little")
