"""Independent reference implementations used only by the tests.

These deliberately avoid the library's algorithms: determinants expand by
cofactors, rank/kernel go through a plain Fraction RREF, MDS checks loop
over every minor, and the sparse residual minimizes over every support.
"""

from fractions import Fraction
from itertools import combinations
import math


def cofactor_det(rows):
    """Exact determinant by first-row cofactor expansion."""
    n = len(rows)
    assert all(len(r) == n for r in rows)
    if n == 1:
        return rows[0][0]
    total = 0
    sign = 1
    for j in range(n):
        if rows[0][j] != 0:
            minor = [r[:j] + r[j + 1 :] for r in rows[1:]]
            total += sign * rows[0][j] * cofactor_det(minor)
        sign = -sign
    return total


def rref(rows):
    """Reduced row echelon form over Fractions; returns (rref, pivot_cols)."""
    a = [[Fraction(v) for v in r] for r in rows]
    nrows, ncols = len(a), len(a[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        f = a[r][c]
        a[r] = [v / f for v in a[r]]
        for i in range(nrows):
            if i != r and a[i][c] != 0:
                g = a[i][c]
                a[i] = [x - g * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return a, pivots


def rref_rank(rows):
    return len(rref(rows)[1])


def rref_kernel(rows):
    """Kernel basis from the RREF parameterization, one vector per free column."""
    a, pivots = rref(rows)
    ncols = len(rows[0])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, c in enumerate(pivots):
            v[c] = -a[r][f]
        basis.append(v)
    return basis


def brute_is_mds(rows):
    """Check every k-column minor with the cofactor determinant."""
    k, n = len(rows), len(rows[0])
    for cols in combinations(range(n), k):
        sub = [[r[c] for c in cols] for r in rows]
        if cofactor_det(sub) == 0:
            return False, cols
    return True, None


def brute_sparse_residual(values, s):
    """Minimum l2 norm of x restricted off any s-element support."""
    n = len(values)
    if s >= n:
        return 0.0
    best = math.inf
    for support in combinations(range(n), s):
        rest = [values[i] for i in range(n) if i not in support]
        best = min(best, math.sqrt(sum(v * v for v in rest)))
    return best


def top_singular_value_2x2(rows, scale):
    """Closed-form largest singular value of a scaled 2x2 matrix."""
    a, b = rows[0][0] / scale, rows[0][1] / scale
    c, d = rows[1][0] / scale, rows[1][1] / scale
    # eigenvalues of R^T R via the quadratic formula
    tr = a * a + b * b + c * c + d * d
    det = (a * d - b * c) ** 2
    disc = math.sqrt(max(tr * tr - 4 * det, 0.0))
    return math.sqrt((tr + disc) / 2)
