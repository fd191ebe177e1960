"""Inner loops over combination bitmasks.

Each kernel exists twice: a numba-compiled loop (``*_jit``) and a vectorised
numpy version (``*_numpy``). The public name is bound to one of them at import
time; set ``FERMEREO_DISABLE_JIT=1`` to force the numpy path.
"""

from __future__ import annotations

import numpy as np

from ._jit import HAVE_NUMBA, njit


# -- wedge ------------------------------------------------------------------


@njit
def _popcount(x):
    c = 0
    while x:
        x &= x - 1
        c += 1
    return c


@njit
def wedge_jit(ca, ma, cb, mb, rank_of_mask, out_len):
    out = np.zeros(out_len, dtype=np.complex128)
    for i in range(ca.shape[0]):
        a = ca[i]
        if a == 0:
            continue
        A = ma[i]
        for j in range(cb.shape[0]):
            b = cb[j]
            if b == 0:
                continue
            B = mb[j]
            if A & B:
                continue
            # inversions: pairs p in A, q in B with p > q
            inv = 0
            rest = B
            while rest:
                low = rest & -rest
                inv += _popcount(A & ~((low << 1) - 1))
                rest ^= low
            val = a * b
            if inv & 1:
                val = -val
            out[rank_of_mask[A | B]] += val
    return out


def wedge_numpy(ca, ma, cb, mb, rank_of_mask, out_len):
    out = np.zeros(out_len, dtype=np.complex128)
    ia = np.flatnonzero(ca)
    ib = np.flatnonzero(cb)
    if ia.size == 0 or ib.size == 0:
        return out
    A = ma[ia][:, None]
    B = mb[ib][None, :]
    ok = (A & B) == 0
    inv = np.zeros(ok.shape, dtype=np.int64)
    nbits = int(max(ma.max(initial=0), mb.max(initial=0))).bit_length()
    for q in range(nbits):
        has_q = (B >> q) & 1
        if not has_q.any():
            continue
        above = np.bitwise_count(A & ~np.int64((1 << (q + 1)) - 1)).astype(np.int64)
        inv += has_q * above
    sign = np.where(inv & 1, -1.0, 1.0)
    vals = (ca[ia][:, None] * cb[ib][None, :] * sign)[ok]
    np.add.at(out, rank_of_mask[(A | B)[ok]], vals)
    return out


# -- one-body contraction ---------------------------------------------------


@njit
def contraction_jit(coeffs, masks, rank_of_mask, n_rows, dim):
    """Row J, column i holds the coefficient of e_i after contracting by e_J."""
    out = np.zeros((n_rows, dim), dtype=np.complex128)
    for k in range(coeffs.shape[0]):
        c = coeffs[k]
        if c == 0:
            continue
        K = masks[k]
        pos = 0
        for i in range(dim):
            if (K >> i) & 1:
                val = c
                if pos & 1:
                    val = -val
                out[rank_of_mask[K ^ (1 << i)], i] += val
                pos += 1
    return out


def contraction_numpy(coeffs, masks, rank_of_mask, n_rows, dim):
    out = np.zeros((n_rows, dim), dtype=np.complex128)
    nz = np.flatnonzero(coeffs)
    if nz.size == 0:
        return out
    K = masks[nz]
    c = coeffs[nz]
    for i in range(dim):
        bit = np.int64(1 << i)
        has = (K & bit) != 0
        if not has.any():
            continue
        pos = np.bitwise_count(K[has] & np.int64((1 << i) - 1)).astype(np.int64)
        val = np.where(pos & 1, -c[has], c[has])
        np.add.at(out[:, i], rank_of_mask[K[has] ^ bit], val)
    return out


# -- compound matrices ------------------------------------------------------


@njit
def _det_inplace(a):
    """Determinant by partial-pivot elimination; overwrites ``a``."""
    s = a.shape[0]
    det = 1.0 + 0.0j
    for k in range(s):
        p = k
        best = abs(a[k, k])
        for i in range(k + 1, s):
            if abs(a[i, k]) > best:
                best = abs(a[i, k])
                p = i
        if best == 0.0:
            return 0.0 + 0.0j
        if p != k:
            for j in range(k, s):
                tmp = a[k, j]
                a[k, j] = a[p, j]
                a[p, j] = tmp
            det = -det
        piv = a[k, k]
        det *= piv
        for i in range(k + 1, s):
            f = a[i, k] / piv
            for j in range(k + 1, s):
                a[i, j] -= f * a[k, j]
    return det


@njit
def compound_jit(mat, rows, cols):
    n, s = rows.shape
    m = cols.shape[0]
    out = np.zeros((n, m), dtype=np.complex128)
    if s == 0:
        out[:, :] = 1.0
        return out
    sub = np.empty((s, s), dtype=np.complex128)
    for a in range(n):
        for b in range(m):
            for i in range(s):
                for j in range(s):
                    sub[i, j] = mat[rows[a, i], cols[b, j]]
            out[a, b] = _det_inplace(sub)
    return out


def compound_numpy(mat, rows, cols):
    n, s = rows.shape
    if s == 0:
        return np.ones((n, cols.shape[0]), dtype=np.complex128)
    sub = mat[rows[:, None, :, None], cols[None, :, None, :]]
    return np.linalg.det(sub).astype(np.complex128)


# -- occupancy --------------------------------------------------------------


@njit
def occupancy_jit(masks, pmask):
    out = np.empty(masks.shape[0], dtype=np.int64)
    for k in range(masks.shape[0]):
        out[k] = _popcount(masks[k] & pmask)
    return out


def occupancy_numpy(masks, pmask):
    return np.bitwise_count(masks & np.int64(pmask)).astype(np.int64)


if HAVE_NUMBA:
    wedge_kernel = wedge_jit
    contraction_kernel = contraction_jit
    compound_kernel = compound_jit
    occupancy_kernel = occupancy_jit
else:
    wedge_kernel = wedge_numpy
    contraction_kernel = contraction_numpy
    compound_kernel = compound_numpy
    occupancy_kernel = occupancy_numpy

BACKEND = "numba" if HAVE_NUMBA else "numpy"
