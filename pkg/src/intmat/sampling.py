"""Seeded, reproducible sampling of integer entries, vectors and matrices.

The generator is counter-based (Philox4x64): the key carries the 64-bit
seed value and 64-bit stream index, and parallel Monte Carlo shards offset
the 256-bit counter, so every draw is determined by (seed, stream, shard)
independently of thread scheduling.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DomainError
from .linalg import IntMatrix

_U64 = 1 << 64


@dataclass(frozen=True)
class Seed:
    """(value, stream) pair that fully determines every sample in a run."""

    value: int
    stream: int = 0

    def __post_init__(self):
        for name in ("value", "stream"):
            v = getattr(self, name)
            if not 0 <= v < _U64:
                raise DomainError(f"seed {name} must be an unsigned 64-bit integer")

    def with_stream(self, stream: int) -> "Seed":
        return Seed(self.value, stream)


def generator(seed: Seed, shard: int = 0) -> np.random.Generator:
    """Philox generator keyed by (seed.value, seed.stream).

    Distinct shards start 2**128 counter steps apart, so shard streams
    can never overlap.
    """
    key = np.array([seed.value, seed.stream], dtype=np.uint64)
    counter = np.array([0, 0, shard & (_U64 - 1), shard >> 64], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key, counter=counter))


def raw_u64(gen: np.random.Generator, count: int) -> np.ndarray:
    return gen.integers(0, _U64, size=count, dtype=np.uint64)


def uniform_ints(gen: np.random.Generator, width: int, count: int) -> np.ndarray:
    """`count` uniform draws from {0, ..., width-1}, exactly uniform.

    Rejection from the smallest enclosing power-of-two range: no modulo
    bias. width = 1 degenerates to all zeros.
    """
    if width < 1:
        raise DomainError("width must be positive")
    if width == 1:
        return np.zeros(count, dtype=np.int64)
    mask = (1 << (width - 1).bit_length()) - 1
    out = np.empty(count, dtype=np.int64)
    filled = 0
    while filled < count:
        need = count - filled
        # oversample by the expected rejection rate plus slack
        batch = need * (mask + 1) // width + 16
        draw = raw_u64(gen, batch) & mask
        draw = draw[draw < width]
        take = min(draw.size, need)
        out[filled : filled + take] = draw[:take].astype(np.int64)
        filled += take
    return out


@dataclass(frozen=True)
class EntryDistribution:
    """A finite integer-valued probability law.

    Either uniform on {-m, ..., m} or a custom pmf given as exact
    rationals. support is strictly increasing; pmf sums to exactly 1.
    """

    kind: str
    m: int | None = None
    support: tuple[int, ...] | None = None
    pmf: tuple[Fraction, ...] | None = None

    def __post_init__(self):
        if self.kind == "uniform_symmetric":
            if self.m is None or self.m < 0:
                raise DomainError("uniform_symmetric needs m >= 0")
        elif self.kind == "custom":
            if not self.support or not self.pmf:
                raise DomainError("custom distribution needs support and pmf")
            if len(self.support) != len(self.pmf):
                raise DomainError("support and pmf length mismatch")
            if any(b <= a for a, b in zip(self.support, self.support[1:])):
                raise DomainError("support must be strictly increasing")
            if any(p < 0 for p in self.pmf):
                raise DomainError("pmf entries must be nonnegative")
            if sum(self.pmf, Fraction(0)) != 1:
                raise DomainError("pmf must sum to exactly 1")
        else:
            raise DomainError(f"unknown distribution kind {self.kind!r}")

    @classmethod
    def uniform_symmetric(cls, m: int) -> "EntryDistribution":
        return cls(kind="uniform_symmetric", m=int(m))

    @classmethod
    def custom(cls, support, pmf) -> "EntryDistribution":
        return cls(
            kind="custom",
            support=tuple(int(s) for s in support),
            pmf=tuple(Fraction(p) for p in pmf),
        )

    @property
    def max_probability(self) -> Fraction:
        """Largest point mass of the law (the anti-concentration proxy)."""
        if self.kind == "uniform_symmetric":
            return Fraction(1, 2 * self.m + 1)
        return max(self.pmf)

    def support_values(self) -> tuple[int, ...]:
        if self.kind == "uniform_symmetric":
            return tuple(range(-self.m, self.m + 1))
        return self.support

    def probabilities(self) -> tuple[Fraction, ...]:
        if self.kind == "uniform_symmetric":
            w = 2 * self.m + 1
            return tuple(Fraction(1, w) for _ in range(w))
        return self.pmf

    def max_abs_value(self) -> int:
        return max(abs(v) for v in self.support_values())

    def _thresholds(self) -> np.ndarray:
        # cumulative pmf scaled to a 2**64 grid; per-draw bias <= 2**-64
        cum = Fraction(0)
        bounds = []
        for p in self.pmf[:-1]:
            cum += p
            bounds.append((cum.numerator * _U64) // cum.denominator)
        return np.array(bounds, dtype=np.uint64)

    def sample_array(self, gen: np.random.Generator, count: int) -> np.ndarray:
        """Vectorized i.i.d. draws as an int64 array."""
        if self.kind == "uniform_symmetric":
            return uniform_ints(gen, 2 * self.m + 1, count) - self.m
        r = raw_u64(gen, count)
        idx = np.searchsorted(self._thresholds(), r, side="right")
        return np.asarray(self.support, dtype=np.int64)[idx]


def sample_matrix(n: int, k: int, dist: EntryDistribution, seed: Seed) -> IntMatrix:
    """n x k matrix with i.i.d. entries from dist, reproducible from seed."""
    if n < 1 or k < 1:
        raise DomainError("matrix dimensions must be >= 1")
    flat = dist.sample_array(generator(seed), n * k)
    return IntMatrix(n, k, tuple(int(v) for v in flat))


def sample_vector(n: int, dist: EntryDistribution, seed: Seed) -> IntMatrix:
    """n x 1 vector of i.i.d. entries from dist."""
    return sample_matrix(n, 1, dist, seed)


def vempala_sum_distribution(mu, m: int) -> EntryDistribution:
    """Law of the sum of m independent copies of the sparse sign law.

    The base law puts mass 1-mu on 0 and mu/2 on each of -1, +1; the sum
    is supported on {-m, ..., m} with an exact rational pmf.
    """
    mu = Fraction(mu)
    if not 0 < mu < 1:
        raise DomainError("mu must lie strictly between 0 and 1")
    if m < 1:
        raise DomainError("m must be >= 1")
    base = {-1: mu / 2, 0: 1 - mu, 1: mu / 2}
    acc = {0: Fraction(1)}
    for _ in range(m):
        nxt: dict[int, Fraction] = {}
        for v, p in acc.items():
            for dv, dp in base.items():
                nxt[v + dv] = nxt.get(v + dv, Fraction(0)) + p * dp
        acc = nxt
    support = tuple(range(-m, m + 1))
    return EntryDistribution.custom(support, tuple(acc[s] for s in support))
