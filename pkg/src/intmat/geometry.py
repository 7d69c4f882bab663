"""Real-vector diagnostics at extended precision: compressibility, the
least-common-denominator (LCD) scan, spread and spectral-norm probes.

Fractional parts of D*x amplify rounding, so everything that feeds a
grid-scan decision runs on mpmath reals at the vector's precision
(default 128 mantissa bits). The spectral-norm probe, whose contract is
only 1e-6 accuracy, runs in float64.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath
import numpy as np
from mpmath import mpf, workprec

from .errors import DimensionError, DomainError
from .linalg import IntMatrix, RationalVector, kernel_basis
from .sampling import Seed, generator

DEFAULT_PRECISION = 128
_UNIT_NORM_TOL = 1e-9


@dataclass(frozen=True)
class RealVector:
    """Extended-precision real vector (mpmath entries, fixed precision)."""

    entries: tuple
    precision: int = DEFAULT_PRECISION

    def __post_init__(self):
        if not self.entries:
            raise DimensionError("empty vector")
        if self.precision < 64:
            raise DomainError("precision must be at least 64 bits")
        if not all(mpmath.isfinite(e) for e in self.entries):
            raise DomainError("entries must be finite")

    @classmethod
    def from_values(cls, values, precision: int = DEFAULT_PRECISION) -> "RealVector":
        with workprec(precision):
            conv = []
            for v in values:
                if isinstance(v, Fraction):
                    conv.append(mpf(v.numerator) / v.denominator)
                else:
                    conv.append(mpf(v))
        return cls(tuple(conv), precision)

    def __len__(self) -> int:
        return len(self.entries)

    def norm(self):
        with workprec(self.precision):
            return mpmath.sqrt(mpmath.fsum(e * e for e in self.entries))

    def to_floats(self) -> list[float]:
        return [float(e) for e in self.entries]


@dataclass(frozen=True)
class LcdParams:
    """(alpha, beta) pair governing compressibility and the LCD."""

    alpha: float
    beta: float

    def __post_init__(self):
        if not 0 < self.alpha < 1:
            raise DomainError("alpha must lie in (0, 1)")
        if not 0 < self.beta < 1:
            raise DomainError("beta must lie in (0, 1)")

    @classmethod
    def defaults(cls, m: int) -> "LcdParams":
        """The working constants: alpha = 1/50, beta = 1/sqrt(m)."""
        if m < 2:
            raise DomainError("default beta = 1/sqrt(m) needs m >= 2")
        return cls(alpha=1.0 / 50.0, beta=1.0 / math.sqrt(m))

    def sparsity_count(self, n: int) -> int:
        # floor(alpha*n) computed exactly on the binary value of alpha
        return math.floor(Fraction(self.alpha) * n)


@dataclass(frozen=True)
class LcdCertificate:
    """Re-verifiable witness for the first grid point passing the scan."""

    d: float
    sparse_support: tuple[int, ...]
    residual: float


@dataclass(frozen=True)
class LcdScanResult:
    """Grid-resolved LCD upper bound; math.inf means no grid point passed."""

    lcd_upper: float
    grid_step: float
    d_max: float
    certificate: LcdCertificate | None

    @property
    def found(self) -> bool:
        return math.isfinite(self.lcd_upper)


def normalize(v, precision: int = DEFAULT_PRECISION) -> RealVector:
    """v / ||v||_2 at working precision."""
    if isinstance(v, RationalVector):
        vec = RealVector.from_values(v.entries, precision)
    elif isinstance(v, RealVector):
        vec = v
        precision = v.precision
    else:
        vec = RealVector.from_values(v, precision)
    with workprec(precision):
        nrm = vec.norm()
        if nrm == 0:
            raise DomainError("cannot normalize the zero vector")
        return RealVector(tuple(e / nrm for e in vec.entries), precision)


def normal_vector(rows: IntMatrix, dist_m: int = 1, precision: int = DEFAULT_PRECISION) -> RealVector:
    """Deterministic unit kernel vector of a stack of integer rows.

    Scaling the rows by 1/dist_m leaves the kernel unchanged, so the
    computation is exact on the integer matrix. When the kernel has
    dimension > 1 the canonical basis vector with the lowest leading
    free-column index is chosen.
    """
    if dist_m < 1:
        raise DomainError("dist_m must be >= 1")
    basis = kernel_basis(rows)
    if not basis:
        raise DomainError("rows have full column rank; no normal vector exists")
    return normalize(basis[0], precision)


def _unit_check(x: RealVector):
    if abs(float(x.norm()) - 1.0) > _UNIT_NORM_TOL:
        raise DomainError("input must be a unit vector")


def sparse_residual(x: RealVector, s: int):
    """l2 norm of x with its s largest-magnitude entries removed.

    This is the minimal ||v||_2 over all decompositions x = u + v with u
    s-sparse.
    """
    n = len(x)
    if not 0 <= s <= n:
        raise DomainError(f"sparsity s must lie in [0, {n}]")
    if s == n:
        return mpf(0)
    with workprec(x.precision):
        mags = sorted((abs(e) for e in x.entries), reverse=True)
        return mpmath.sqrt(mpmath.fsum(e * e for e in mags[s:]))


def is_compressible(x: RealVector, p: LcdParams) -> bool:
    """Whether x is within l2 distance beta of a floor(alpha*n)-sparse vector."""
    _unit_check(x)
    s = p.sparsity_count(len(x))
    with workprec(x.precision):
        return sparse_residual(x, s) <= mpf(p.beta)


def fractional_part(y):
    """y - round(y) with round-half-up, so the result lies in [-1/2, 1/2)."""
    if isinstance(y, mpf):
        return y - mpmath.floor(y + mpf(1) / 2)
    return float(y) - math.floor(y + 0.5)


def lcd_witness(x: RealVector, d, p: LcdParams) -> bool:
    """Whether {d*x} = u + v with u floor(alpha*n)-sparse and
    ||v||_2 <= beta * min(d, sqrt(n))."""
    if not d > 0:
        raise DomainError("D must be positive")
    s = p.sparsity_count(len(x))
    with workprec(x.precision):
        dd = mpf(d)
        frac = RealVector(
            tuple(fractional_part(dd * e) for e in x.entries), x.precision
        )
        bound = mpf(p.beta) * min(dd, mpmath.sqrt(len(x)))
        return sparse_residual(frac, s) <= bound


def _witness_certificate(x: RealVector, d: float, p: LcdParams) -> LcdCertificate:
    s = p.sparsity_count(len(x))
    with workprec(x.precision):
        dd = mpf(d)
        frac = [fractional_part(dd * e) for e in x.entries]
        # largest magnitudes first, index as deterministic tiebreak
        order = sorted(range(len(frac)), key=lambda i: (-abs(frac[i]), i))
        support = tuple(sorted(order[:s]))
        residual = mpmath.sqrt(mpmath.fsum(frac[i] ** 2 for i in order[s:]))
    return LcdCertificate(d=float(d), sparse_support=support, residual=float(residual))


def lcd_scan(x: RealVector, p: LcdParams, d_max: float, grid_step: float) -> LcdScanResult:
    """Scan D over {step, 2*step, ..., d_max} for the first LCD witness.

    The returned lcd_upper is a grid-resolved upper bound on the true
    infimum; math.inf means the LCD exceeds d_max at this resolution.
    """
    if not 0 < grid_step <= d_max:
        raise DomainError("need 0 < grid_step <= d_max")
    _unit_check(x)
    steps = int(d_max / grid_step + 1e-9)
    for j in range(1, steps + 1):
        d = j * grid_step
        if lcd_witness(x, d, p):
            return LcdScanResult(
                lcd_upper=d,
                grid_step=grid_step,
                d_max=d_max,
                certificate=_witness_certificate(x, d, p),
            )
    return LcdScanResult(lcd_upper=math.inf, grid_step=grid_step, d_max=d_max, certificate=None)


def spread_check(x: RealVector, alpha: float, gamma: float) -> bool:
    """Test ||x|_J||_2^2 >= ||x|_J||_inf^2 + gamma^2 on the small-coordinate
    set J = {i: |x_i| <= 1/sqrt(alpha*n - 1)}.

    The magnitude |x_i| is used for membership; a one-sided comparison
    would make J, and the inequality, sign-dependent.
    """
    n = len(x)
    an = Fraction(alpha) * n
    if an <= 1:
        raise DomainError("alpha * n must exceed 1")
    with workprec(x.precision):
        thresh = 1 / mpmath.sqrt(mpf(an.numerator) / an.denominator - 1)
        small = [e for e in x.entries if abs(e) <= thresh]
        if not small:
            return False
        total = mpmath.fsum(e * e for e in small)
        peak = max(abs(e) for e in small)
        return total >= peak * peak + mpf(gamma) ** 2


def spectral_norm(r: IntMatrix, scale_m: int) -> float:
    """Largest singular value of r/scale_m by power iteration.

    Iterates on the smaller Gram matrix until the Rayleigh quotient moves
    by less than 1e-10 relatively (or 1e4 iterations). The returned value
    is sqrt of a Rayleigh quotient, hence a guaranteed lower bound on the
    true norm; on non-degenerate spectra it is accurate to ~1e-6.
    """
    if scale_m < 1:
        raise DomainError("scale_m must be >= 1")
    a = r.to_numpy().astype(np.float64) / scale_m
    if not a.any():
        return 0.0
    gram = a.T @ a if a.shape[1] <= a.shape[0] else a @ a.T
    k = gram.shape[0]
    # two deterministic starts: the flat vector converges instantly on the
    # structured fixtures, and a fixed-seed Gaussian direction cannot be
    # exactly orthogonal to the top eigenvector of an integer Gram matrix
    starts = [np.ones(k), generator(Seed(0x5BEC)).standard_normal(k)]
    best = 0.0
    for v in starts:
        v = v / np.linalg.norm(v)
        prev_q = 0.0
        for _ in range(10**4):
            w = gram @ v
            nw = np.linalg.norm(w)
            if nw == 0.0:
                break
            v = w / nw
            q = float(v @ gram @ v)
            best = max(best, q)
            if prev_q > 0 and abs(q - prev_q) <= 1e-10 * q:
                break
            prev_q = q
    return math.sqrt(best)


def random_unit_vector(n: int, seed: Seed, precision: int = DEFAULT_PRECISION) -> RealVector:
    """Uniform random direction: normalized Gaussian sample."""
    if n < 1:
        raise DomainError("n must be >= 1")
    gen = generator(seed)
    while True:
        g = gen.standard_normal(n)
        if np.linalg.norm(g) > 1e-6:
            return normalize(RealVector.from_values(g.tolist(), precision))
