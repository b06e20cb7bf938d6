"""Counter-based random streams.

Every random draw in the package comes from a SplitMix64 sequence whose
starting state is derived from ``(master_seed, purpose, level, index)``.
Because the key fully determines the stream, samples can be farmed out to
any number of workers in any order without changing results.

The same arithmetic is implemented in the compiled kernels; the two must
stay bit-identical (see ``tests/test_backends.py``).
"""
from __future__ import annotations

import zlib
from dataclasses import dataclass

import numpy as np

MASK64 = (1 << 64) - 1
GAMMA = 0x9E3779B97F4A7C15
_M1 = 0xBF58476D1CE4E5B9
_M2 = 0x94D049BB133111EB


def mix64(z: int) -> int:
    """SplitMix64 output finalizer."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * _M1) & MASK64
    z = ((z ^ (z >> 27)) * _M2) & MASK64
    return z ^ (z >> 31)


def absorb(h: int, x: int) -> int:
    """Fold the integer ``x`` into the 64-bit hash state ``h``."""
    return mix64(h ^ mix64((x + GAMMA) & MASK64))


def purpose_code(purpose: str) -> int:
    return zlib.crc32(purpose.encode("utf-8"))


def level_seed(master_seed: int, purpose: str, level: int) -> int:
    """Hash of the first three key components; kernels finish with ``absorb(., index)``."""
    h = mix64(master_seed & MASK64)
    h = absorb(h, purpose_code(purpose))
    return absorb(h, level & MASK64)


@dataclass(frozen=True)
class RngStream:
    """Key of one reproducible random stream."""

    master_seed: int
    purpose: str = "sample"
    level: int = 0
    index: int = 0

    @property
    def level_seed(self) -> int:
        return level_seed(self.master_seed, self.purpose, self.level)

    @property
    def seed(self) -> int:
        return absorb(self.level_seed, self.index & MASK64)

    def with_index(self, index: int) -> "RngStream":
        return RngStream(self.master_seed, self.purpose, self.level, index)

    def generator(self) -> "SplitMix64":
        return SplitMix64(self.seed)


class SplitMix64:
    """Sequential generator over one stream; pure Python, used by the fallback kernels."""

    __slots__ = ("state",)

    def __init__(self, state: int):
        self.state = state & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + GAMMA) & MASK64
        return mix64(self.state)

    def below(self, n: int) -> int:
        """Uniform integer in ``[0, n)`` by Lemire's multiply-shift with rejection (exact)."""
        m = (self.next_u64() >> 32) * n
        low = m & 0xFFFFFFFF
        if low < n:
            threshold = ((1 << 32) - n) % n
            while low < threshold:
                m = (self.next_u64() >> 32) * n
                low = m & 0xFFFFFFFF
        return m >> 32


# Vectorised twins of the helpers above, over uint64 arrays (wrapping arithmetic).

def mix64_array(z: np.ndarray) -> np.ndarray:
    z = z.astype(np.uint64, copy=True)
    with np.errstate(over="ignore"):
        z ^= z >> np.uint64(30)
        z *= np.uint64(_M1)
        z ^= z >> np.uint64(27)
        z *= np.uint64(_M2)
        z ^= z >> np.uint64(31)
    return z


def absorb_array(h: int, x: np.ndarray) -> np.ndarray:
    with np.errstate(over="ignore"):
        inner = mix64_array(x.astype(np.uint64) + np.uint64(GAMMA))
    return mix64_array(np.uint64(h) ^ inner)
