# cython: language_level=3
"""Compiled versions of the hot inner loops.

The arithmetic is still exact: operands are Python Fractions, Cython only
removes interpreter overhead from the loop bookkeeping.  Kept in lockstep
with semihyp._kernels_py (the import-time fallback).
"""

from fractions import Fraction

_ZERO = Fraction(0)


def convolve_coeffs(tensor, mu, nu):
    """Coefficients of the convolution of two coefficient vectors."""
    cdef Py_ssize_t n = len(tensor)
    cdef Py_ssize_t x, y, z
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
                    out[z] = out[z] + w * t
    return out


def assoc_witness(tensor):
    """First triple (i, j, k) where the two association orders differ."""
    cdef Py_ssize_t n = len(tensor)
    cdef Py_ssize_t i, j, k, z, w
    for i in range(n):
        ti = tensor[i]
        for j in range(n):
            left = ti[j]
            tj = tensor[j]
            for k in range(n):
                right = tj[k]
                for z in range(n):
                    lhs = _ZERO
                    for w in range(n):
                        c = left[w]
                        if c:
                            t = tensor[w][k][z]
                            if t:
                                lhs = lhs + c * t
                    rhs = _ZERO
                    for w in range(n):
                        c = right[w]
                        if c:
                            t = ti[w][z]
                            if t:
                                rhs = rhs + c * t
                    if lhs != rhs:
                        return (i, j, k)
    return None


def pivot_step(rows, pr, pc):
    """In-place Gauss-Jordan pivot on a rational tableau."""
    cdef Py_ssize_t r, idx, m
    cdef Py_ssize_t ipr = pr, ipc = pc
    prow = rows[ipr]
    piv = prow[ipc]
    m = len(prow)
    if piv != 1:
        for idx in range(m):
            if prow[idx]:
                prow[idx] = prow[idx] / piv
    for r in range(len(rows)):
        if r == ipr:
            continue
        row = rows[r]
        f = row[ipc]
        if f:
            for idx in range(m):
                v = prow[idx]
                if v:
                    row[idx] = row[idx] - f * v
            row[ipc] = _ZERO
