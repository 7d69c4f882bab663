"""MDS matrices over integer alphabets: exact verification and
rejection-sampling generation, with the pigeonhole and union bounds."""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

from .errors import DimensionError, DomainError, GenerationError
from .linalg import IntMatrix, det, det_mod, _FILTER_PRIMES
from .sampling import EntryDistribution, Seed, generator


@dataclass(frozen=True)
class MdsVerdict:
    """Outcome of a full minor scan.

    witness is the lexicographically first k-column set whose minor is
    singular, present iff is_mds is False.
    """

    is_mds: bool
    witness: tuple[int, ...] | None
    minors_checked: int

    def __post_init__(self):
        if self.is_mds != (self.witness is None):
            raise DomainError("witness must be present exactly when the verdict is negative")


@dataclass(frozen=True)
class GenerationReport:
    matrix: IntMatrix
    attempts: int
    m_used: int
    seed: Seed


def _minor_is_singular(m: IntMatrix, cols: tuple[int, ...], prefilter: bool) -> bool:
    sub = m.submatrix_columns(cols)
    if prefilter and sub.rows > 3:
        # nonzero det mod p proves the minor nonsingular; a zero verdict
        # falls through to the exact determinant
        for p in _FILTER_PRIMES:
            if det_mod(sub, p) != 0:
                return False
    return det(sub) == 0


def is_mds(m: IntMatrix, prefilter: bool = True) -> MdsVerdict:
    """Check that every k x k minor of the k x n matrix is nonsingular.

    Scans column combinations in lexicographic order and stops at the
    first singular minor; every negative verdict is exactly confirmed.
    """
    k, n = m.rows, m.cols
    if k > n:
        raise DimensionError(f"need k <= n, got {k}x{n}")
    checked = 0
    for cols in combinations(range(n), k):
        checked += 1
        if _minor_is_singular(m, cols, prefilter):
            return MdsVerdict(is_mds=False, witness=cols, minors_checked=checked)
    return MdsVerdict(is_mds=True, witness=None, minors_checked=checked)


def generate_mds(
    k: int,
    n: int,
    m: int | None = None,
    max_attempts: int = 64,
    seed: Seed = Seed(0),
) -> GenerationReport:
    """Rejection-sample uniform {-m,...,m} matrices until one is MDS.

    Attempts run sequentially off a single generator stream so the result
    is reproducible from the seed alone. Raises GenerationError (with the
    attempt count and last witness) when max_attempts is exhausted.
    """
    if k > n:
        raise DimensionError(f"need k <= n, got k={k}, n={n}")
    if max_attempts < 1:
        raise DomainError("max_attempts must be >= 1")
    auto_m = m is None
    if auto_m:
        m = default_generation_m(k, n)
    if m < 1:
        raise DomainError("m must be >= 1")
    gen = generator(seed)
    last_witness = None
    attempt = 0
    # when m was chosen automatically, double it after each exhausted round
    rounds = 8 if auto_m else 1
    for _ in range(rounds):
        dist = EntryDistribution.uniform_symmetric(m)
        for _ in range(max_attempts):
            attempt += 1
            flat = dist.sample_array(gen, k * n)
            cand = IntMatrix(k, n, tuple(int(v) for v in flat))
            verdict = is_mds(cand)
            if verdict.is_mds:
                return GenerationReport(matrix=cand, attempts=attempt, m_used=m, seed=seed)
            last_witness = verdict.witness
        if auto_m:
            m *= 2
    raise GenerationError(
        f"no MDS matrix found in {attempt} attempts (k={k}, n={n}, m={m})",
        attempts=attempt,
        last_witness=last_witness,
    )


def default_generation_m(k: int, n: int, c: float = 0.1) -> int:
    """Smallest m making the union-bound failure estimate <= 1/2.

    Uses a deliberately conservative exponent; generate_mds doubles this
    on repeated failure when m was not given explicitly.
    """
    if k > n or k < 1:
        raise DimensionError("need 1 <= k <= n")
    # (e*n/(k*m^c))^k <= 1/2  <=>  m >= ((e*n/k) * 2^(1/k))^(1/c)
    m = max(1, math.ceil(((math.e * n / k) * 2 ** (1.0 / k)) ** (1.0 / c)))
    while m > 1 and union_bound_failure(k, n, m - 1, c) <= 0.5:
        m -= 1
    while union_bound_failure(k, n, m, c) > 0.5:
        m += 1
    return m


def pigeonhole_min_alphabet(k: int, n: int) -> int:
    """ceil(sqrt(n/k)): the smallest alphabet size not excluded by the
    two-equal-column-prefixes pigeonhole argument. Needs k >= 2."""
    if k < 2:
        raise DomainError("the argument uses the first two rows, so k >= 2")
    if n < 1:
        raise DomainError("n must be >= 1")
    s = math.isqrt((n + k - 1) // k)
    while s * s * k < n:
        s += 1
    return max(s, 1)


def union_bound_failure(k: int, n: int, m: int, c: float) -> float:
    """(e*n / (k * m**c))**k, clamped to [0, 1]."""
    if not 0 < c <= 1:
        raise DomainError("c must lie in (0, 1]")
    if k < 1 or n < k or m < 1:
        raise DomainError("need 1 <= k <= n and m >= 1")
    base = math.e * n / (k * m**c)
    if base >= 1.0:
        return 1.0
    return min(1.0, base**k)
