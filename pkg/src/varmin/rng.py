"""Seeded Gaussian noise source.

Wraps the kernel PRNG (splitmix64-seeded xoshiro256** + Box-Muller) so
Python-level code draws from exactly the same stream as the compiled run
loop. The Box-Muller spare is cached across calls, so the stream depends
only on the seed and the total number of draws.
"""

import numpy as np

from .kernels import get_kernels

_MASK64 = (1 << 64) - 1


class GaussianSource:
    """Deterministic N(0, sigma^2) vector source for a 64-bit seed."""

    def __init__(self, seed: int):
        self.seed = int(seed) & _MASK64
        k = get_kernels()
        self._k = k
        self._state = k.xo_seed(np.uint64(self.seed))
        self._gauss = np.zeros(2)

    def normal(self, n: int, sigma: float = 1.0) -> np.ndarray:
        if n < 0:
            raise ValueError("n must be nonnegative")
        if not sigma > 0:
            raise ValueError("sigma must be positive")
        out = np.empty(n)
        self._k.gauss_fill(self._state, self._gauss, out, n, sigma)
        return out

    def raw_uint64(self) -> int:
        return int(self._k.xo_next(self._state))


def gaussian_vector(source: GaussianSource, n: int, sigma: float) -> np.ndarray:
    return source.normal(n, sigma)
