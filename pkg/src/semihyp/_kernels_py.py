"""Pure-Python versions of the hot inner loops.

Same algorithms as the compiled module semihyp._kernels; selected at import
time by semihyp.kernels.  All arithmetic stays in exact rationals.
"""

from fractions import Fraction

_ZERO = Fraction(0)


def convolve_coeffs(tensor, mu, nu):
    """Coefficients of the convolution of two coefficient vectors.

    tensor[x][y] is the coefficient vector of the product of the point
    masses at x and y; the result is sum_{x,y} mu[x]*nu[y]*tensor[x][y].
    """
    n = len(tensor)
    out = [_ZERO] * n
    for x in range(n):
        cx = mu[x]
        if not cx:
            continue
        row = tensor[x]
        for y in range(n):
            cy = nu[y]
            if not cy:
                continue
            w = cx * cy
            vec = row[y]
            for z in range(n):
                t = vec[z]
                if t:
                    out[z] += w * t
    return out


def assoc_witness(tensor):
    """First triple (i, j, k) where the two association orders differ.

    Returns None when the table is associative.  Both sides are expanded
    through the point-level products only, so the scan is exact.
    """
    n = len(tensor)
    rng = range(n)
    for i in rng:
        ti = tensor[i]
        for j in rng:
            left = ti[j]
            tj = tensor[j]
            for k in rng:
                right = tj[k]
                for z in rng:
                    lhs = _ZERO
                    for w in rng:
                        c = left[w]
                        if c:
                            t = tensor[w][k][z]
                            if t:
                                lhs += c * t
                    rhs = _ZERO
                    for w in rng:
                        c = right[w]
                        if c:
                            t = ti[w][z]
                            if t:
                                rhs += c * t
                    if lhs != rhs:
                        return (i, j, k)
    return None


def pivot_step(rows, pr, pc):
    """In-place Gauss-Jordan pivot on a rational tableau.

    Scales row pr so the pivot becomes 1, then eliminates column pc from
    every other row.  rows is a list of mutable rows of Fractions.
    """
    prow = rows[pr]
    piv = prow[pc]
    if piv != 1:
        m = len(prow)
        for idx in range(m):
            if prow[idx]:
                prow[idx] /= piv
    for r in range(len(rows)):
        if r == pr:
            continue
        row = rows[r]
        f = row[pc]
        if f:
            m = len(row)
            for idx in range(m):
                v = prow[idx]
                if v:
                    row[idx] -= f * v
            row[pc] = _ZERO
