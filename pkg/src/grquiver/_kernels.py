"""Hot inner loops: row reduction and coefficient enumeration over F_p.

Two interchangeable backends live here.  The numba one is used by default;
setting ``GRQUIVER_NO_NUMBA=1`` in the environment (or running without numba
installed) selects the pure-numpy path.  Both produce bit-identical results,
which the test-suite checks.
"""
import os

import numpy as np

_DISABLE = os.environ.get("GRQUIVER_NO_NUMBA", "").strip().lower() in ("1", "true", "yes")

try:
    if _DISABLE:
        raise ImportError("numba disabled by GRQUIVER_NO_NUMBA")
    from numba import njit
    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False

BACKEND = "numba" if HAVE_NUMBA else "numpy"


def inverse_table(p):
    inv = np.zeros(p, dtype=np.int64)
    for a in range(1, p):
        inv[a] = pow(a, p - 2, p)
    return inv


# ---------- numpy reference path

def rref_numpy(a, p):
    """In-place reduced row echelon form of ``a`` (int64) modulo ``p``.

    Pivot rule: leftmost column first, topmost candidate row.  Returns the
    pivot columns as an int64 array whose length is the rank.
    """
    rows, cols = a.shape
    inv = inverse_table(p)
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + nz[0]
        if i != r:
            a[[r, i]] = a[[i, r]]
        a[r] = (a[r] * inv[a[r, c]]) % p
        col = a[:, c].copy()
        col[r] = 0
        hit = np.nonzero(col)[0]
        if hit.size:
            a[hit] = (a[hit] - np.outer(col[hit], a[r])) % p
        pivots.append(c)
        r += 1
    return np.array(pivots, dtype=np.int64)


def combinations_numpy(basis, p):
    """All p**d linear combinations of the rows of ``basis`` (d x n), mod p.

    Row k of the output uses the base-p digits of k (least significant digit
    on row 0 of ``basis``) as coefficients.
    """
    d, n = basis.shape
    total = p ** d
    digits = (np.arange(total)[:, None] // (p ** np.arange(d))[None, :]) % p
    return (digits @ basis) % p


# ---------- numba path

if HAVE_NUMBA:

    @njit(cache=True, nogil=True)
    def _rref_nb(a, p, inv):
        rows, cols = a.shape
        pivots = np.empty(min(rows, cols), dtype=np.int64)
        r = 0
        for c in range(cols):
            if r == rows:
                break
            i = r
            while i < rows and a[i, c] == 0:
                i += 1
            if i == rows:
                continue
            if i != r:
                for k in range(cols):
                    t = a[r, k]
                    a[r, k] = a[i, k]
                    a[i, k] = t
            s = inv[a[r, c]]
            for k in range(cols):
                a[r, k] = (a[r, k] * s) % p
            for i2 in range(rows):
                if i2 != r:
                    f = a[i2, c]
                    if f != 0:
                        for k in range(cols):
                            a[i2, k] = (a[i2, k] - f * a[r, k]) % p
            pivots[r] = c
            r += 1
        return pivots[:r]

    @njit(cache=True, nogil=True)
    def _combinations_nb(basis, p):
        d, n = basis.shape
        total = 1
        for _ in range(d):
            total *= p
        out = np.zeros((total, n), dtype=np.int64)
        for k in range(total):
            rem = k
            for j in range(d):
                c = rem % p
                rem //= p
                if c != 0:
                    for t in range(n):
                        out[k, t] += c * basis[j, t]
            for t in range(n):
                out[k, t] %= p
        return out

    def rref_numba(a, p):
        return _rref_nb(a, p, inverse_table(p))

    def combinations_numba(basis, p):
        return _combinations_nb(np.ascontiguousarray(basis, dtype=np.int64), p)


def rref_inplace(a, p):
    if HAVE_NUMBA:
        return rref_numba(a, p)
    return rref_numpy(a, p)


def combinations(basis, p):
    if HAVE_NUMBA:
        return combinations_numba(basis, p)
    return combinations_numpy(basis, p)
