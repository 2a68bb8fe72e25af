"""Dense linear algebra over small prime fields.

Everything is exact residue arithmetic on int64 numpy arrays.  Two layers:

* :class:`FFMatrix` with :func:`rank`, :func:`kernel_basis`, :func:`solve` is
  the public value type.
* the ``*_mod`` helpers and the subspace helpers work on raw arrays and are
  what the rest of the package calls in its inner loops.

Subspaces of F_p^n are always stored as the nonzero rows of a reduced row
echelon form, so two equal subspaces have identical arrays.
"""
import itertools
from dataclasses import dataclass

import numpy as np

from . import _kernels

SUPPORTED_PRIMES = (2, 3, 5, 7)


def check_prime(p):
    if p not in SUPPORTED_PRIMES:
        raise ValueError(f"modulus {p} not supported; use one of {SUPPORTED_PRIMES}")
    return p


def as_array(a, p=None):
    arr = np.array(a, dtype=np.int64)
    if p is not None:
        arr %= p
    return arr


def frozen(a):
    a = np.ascontiguousarray(a, dtype=np.int64)
    a.setflags(write=False)
    return a


# ---------- raw-array helpers

def rref_mod(a, p):
    """Return ``(R, pivots)``: the reduced row echelon form of ``a`` and its pivot columns."""
    r = np.array(a, dtype=np.int64, copy=True) % p
    if r.ndim != 2:
        raise ValueError("expected a 2-d array")
    pivots = _kernels.rref_inplace(r, p)
    return r, pivots


def rank_mod(a, p):
    a = np.asarray(a)
    if a.size == 0:
        return 0
    return len(rref_mod(a, p)[1])


def nullspace_mod(a, p):
    """Basis (as rows) of the right null space {v : a v = 0}."""
    a = np.asarray(a, dtype=np.int64)
    cols = a.shape[1]
    if a.shape[0] == 0:
        return np.eye(cols, dtype=np.int64)
    r, piv = rref_mod(a, p)
    pivset = set(piv.tolist())
    free = [c for c in range(cols) if c not in pivset]
    out = np.zeros((len(free), cols), dtype=np.int64)
    for k, f in enumerate(free):
        out[k, f] = 1
        for i, c in enumerate(piv):
            out[k, c] = (-r[i, f]) % p
    return out


def solve_mod(a, b, p):
    """Some x with a x = b, or ``None`` when the system is inconsistent."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64).reshape(-1)
    rows, cols = a.shape
    aug = np.zeros((rows, cols + 1), dtype=np.int64)
    aug[:, :cols] = a
    aug[:, cols] = b
    r, piv = rref_mod(aug, p)
    if len(piv) and piv[-1] == cols:
        return None
    x = np.zeros(cols, dtype=np.int64)
    for i, c in enumerate(piv):
        x[c] = r[i, cols]
    return x


def inv_mod(a, p):
    a = np.asarray(a, dtype=np.int64)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("inverse of a non-square matrix")
    aug = np.concatenate([a % p, np.eye(n, dtype=np.int64)], axis=1)
    r, piv = rref_mod(aug, p)
    if len(piv) < n or (n and piv[n - 1] != n - 1):
        raise ValueError("matrix is singular")
    return r[:, n:].copy()


def row_space(vectors, n, p):
    """Canonical basis (RREF rows) of the span of ``vectors`` inside F_p^n."""
    if n == 0:
        return np.zeros((0, 0), dtype=np.int64)
    v = np.asarray(vectors, dtype=np.int64).reshape(-1, n)
    if v.shape[0] == 0:
        return np.zeros((0, n), dtype=np.int64)
    r, piv = rref_mod(v, p)
    return r[: len(piv)].copy()


def pivots_of(basis):
    """Pivot columns of a matrix already in RREF."""
    out = []
    for row in basis:
        nz = np.flatnonzero(row)
        out.append(int(nz[0]))
    return np.array(out, dtype=np.int64)


def reduce_rows(w, basis, p):
    """Reduce the rows of ``w`` modulo the row space of the RREF ``basis``."""
    w = np.asarray(w, dtype=np.int64) % p
    if basis.shape[0] == 0:
        return w
    piv = pivots_of(basis)
    return (w - w[:, piv] @ basis) % p


def contains(basis, w, p):
    """True iff every row of ``w`` lies in the row space of ``basis``."""
    w = np.atleast_2d(np.asarray(w, dtype=np.int64))
    if w.size == 0:
        return True
    return not reduce_rows(w, basis, p).any()


def subspace_sum(a, b, p):
    n = a.shape[1]
    return row_space(np.concatenate([a, b], axis=0), n, p)


def intersect(a, b, p):
    """Intersection of two row spaces, as a canonical basis."""
    n = a.shape[1]
    if a.shape[0] == 0 or b.shape[0] == 0:
        return np.zeros((0, n), dtype=np.int64)
    stacked = np.concatenate([a.T, (-b.T) % p], axis=1)
    ker = nullspace_mod(stacked, p)
    if ker.shape[0] == 0:
        return np.zeros((0, n), dtype=np.int64)
    return row_space(ker[:, : a.shape[0]] @ a % p, n, p)


def complement_columns(basis, n):
    piv = set(pivots_of(basis).tolist())
    return [c for c in range(n) if c not in piv]


def all_combinations(basis, p):
    """Every F_p-linear combination of the rows of ``basis`` (p**d rows)."""
    basis = np.ascontiguousarray(basis, dtype=np.int64)
    return _kernels.combinations(basis, p)


def projective_points(n, p):
    """Nonzero vectors of F_p^n whose first nonzero entry is 1, in lexicographic order."""
    out = []
    for lead in range(n):
        tail = n - lead - 1
        for k in range(p ** tail):
            v = np.zeros(n, dtype=np.int64)
            v[lead] = 1
            rem = k
            for j in range(n - 1, lead, -1):
                v[j] = rem % p
                rem //= p
            out.append(v)
    return out


# ---------- the public value type

@dataclass(frozen=True, eq=False)
class FFMatrix:
    """Immutable dense matrix over F_p, p in {2, 3, 5, 7}."""

    data: np.ndarray
    p: int

    def __init__(self, entries, p):
        check_prime(p)
        arr = np.array(entries, dtype=np.int64)
        if arr.ndim != 2:
            raise ValueError("FFMatrix needs a 2-d array of entries")
        if arr.size and (arr.min() < 0 or arr.max() >= p):
            raise ValueError(f"entries must lie in [0, {p})")
        object.__setattr__(self, "data", frozen(arr))
        object.__setattr__(self, "p", p)

    @classmethod
    def reduce(cls, entries, p):
        """Build from arbitrary integers, reducing them mod p first."""
        check_prime(p)
        return cls(np.array(entries, dtype=np.int64) % p, p)

    @classmethod
    def identity(cls, n, p):
        return cls(np.eye(n, dtype=np.int64), p)

    @classmethod
    def zeros(cls, rows, cols, p):
        return cls(np.zeros((rows, cols), dtype=np.int64), p)

    @property
    def rows(self):
        return self.data.shape[0]

    @property
    def cols(self):
        return self.data.shape[1]

    @property
    def shape(self):
        return self.data.shape

    @property
    def modulus(self):
        return self.p

    def entries(self):
        return tuple(int(x) for x in self.data.reshape(-1))

    def __matmul__(self, other):
        if isinstance(other, FFMatrix):
            if other.p != self.p:
                raise ValueError("moduli differ")
            return FFMatrix((self.data @ other.data) % self.p, self.p)
        return (self.data @ np.asarray(other, dtype=np.int64)) % self.p

    def __eq__(self, other):
        return (isinstance(other, FFMatrix) and self.p == other.p
                and self.data.shape == other.data.shape
                and bool(np.array_equal(self.data, other.data)))

    def __hash__(self):
        return hash((self.p, self.data.shape, self.data.tobytes()))

    def __repr__(self):
        return f"FFMatrix({self.data.tolist()}, p={self.p})"

    def rank(self):
        return rank(self)

    def kernel_basis(self):
        return kernel_basis(self)

    def solve(self, b):
        return solve(self, b)


def rank(m):
    return rank_mod(m.data, m.p)


def kernel_basis(m):
    """Basis of the right null space as a list of vectors (length cols - rank)."""
    return [row.copy() for row in nullspace_mod(m.data, m.p)]


def solve(m, b):
    b = np.asarray(b, dtype=np.int64)
    if b.shape != (m.rows,):
        raise ValueError(f"right-hand side must have length {m.rows}")
    return solve_mod(m.data, b % m.p, m.p)


def grassmannian(n, k, p):
    """Every k-dimensional subspace of F_p^n, as its RREF basis (k x n), each once."""
    if k == 0:
        yield np.zeros((0, n), dtype=np.int64)
        return
    for piv in itertools.combinations(range(n), k):
        slots = [(i, c) for i in range(k) for c in range(piv[i] + 1, n) if c not in piv]
        for vals in itertools.product(range(p), repeat=len(slots)):
            m = np.zeros((k, n), dtype=np.int64)
            for i, c in enumerate(piv):
                m[i, c] = 1
            for (i, c), v in zip(slots, vals):
                m[i, c] = v
            yield m
