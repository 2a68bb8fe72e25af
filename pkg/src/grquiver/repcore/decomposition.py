"""Indecomposability, Krull-Schmidt decomposition and isomorphism tests.

Splitting uses Fitting's lemma: for an endomorphism f of x and n large,
x = Ker f^n (+) Im f^n, and the decomposition is proper unless f is nilpotent
or invertible.  When no basis endomorphism (or a scalar shift of one) splits
x, locality of End(x) is decided exactly:

    I = {f : f(x) in rad x} + {f : f(soc x) = 0}

is a nilpotent two-sided ideal of End(x), so End(x) is local iff End(x)/I
has no idempotent other than 0 and 1, and idempotents lift modulo I.  The
quotient is usually one-dimensional; otherwise it is searched exhaustively
under a size cap.
"""
import itertools

import numpy as np

from .. import ffla
from ..errors import CapExceeded
from .hom import hom_basis, hom_dim, hom_space
from .representation import (Morphism, SubmoduleHandle, rad_basis, soc_basis,
                             top_dims, socle_dims)

DEFAULT_IDEMPOTENT_CAP = 2 ** 16
DEFAULT_CANONICAL_CAP = 2000


def _mats_of(x, flat):
    mats = []
    pos = 0
    for d in x.dims:
        mats.append(flat[pos:pos + d * d].reshape(d, d))
        pos += d * d
    return mats


def _flat(mats):
    return np.concatenate([m.reshape(-1) for m in mats])


def _matpow(m, n, p):
    out = np.eye(m.shape[0], dtype=np.int64)
    base = m % p
    while n:
        if n & 1:
            out = (out @ base) % p
        base = (base @ base) % p
        n >>= 1
    return out


def fitting_split(x, mats):
    """``(Ker f^n, Im f^n)`` as submodules when the endomorphism splits x properly, else None."""
    p = x.p
    n = max(x.dims) if x.dims else 0
    powers = [_matpow(m, n, p) if m.size else m for m in mats]
    if all(not g.any() for g in powers):
        return None
    if all(ffla.rank_mod(g, p) == g.shape[0] for g in powers if g.size):
        return None
    ker = SubmoduleHandle(x, [ffla.nullspace_mod(g, p) if g.size else np.zeros((0, 0), np.int64)
                              for g in powers], check=False)
    img = SubmoduleHandle(x, [ffla.row_space(g.T, g.shape[0], p) for g in powers], check=False)
    return ker, img


def _ideal_coords(x, ebasis):
    """Coordinates (in the RREF End basis) spanning I_rad + I_soc."""
    p = x.p
    rad = rad_basis(x)
    soc = soc_basis(x)
    rad_rows, soc_rows = [], []
    for row in ebasis:
        mats = _mats_of(x, row)
        r_parts, s_parts = [], []
        for m, rb, sb in zip(mats, rad, soc):
            if m.size == 0:
                continue
            r_parts.append(ffla.reduce_rows(m.T, rb, p).reshape(-1))
            s_parts.append(((m @ sb.T) % p).reshape(-1))
        rad_rows.append(np.concatenate(r_parts))
        soc_rows.append(np.concatenate(s_parts))
    d = ebasis.shape[0]
    pieces = []
    for rows in (rad_rows, soc_rows):
        a = np.array(rows, dtype=np.int64)
        pieces.append(ffla.nullspace_mod(a.T, p) if a.shape[1] else np.eye(d, dtype=np.int64))
    return ffla.row_space(np.concatenate(pieces, axis=0), d, p)


def find_splitting(x, cap=DEFAULT_IDEMPOTENT_CAP):
    """A proper decomposition ``(K, I)`` of x into two submodules, or None if x is indecomposable."""
    p = x.p
    ebasis = hom_space(x, x)
    d = ebasis.shape[0]
    if d <= 1:
        return None
    eye = [np.eye(k, dtype=np.int64) for k in x.dims]
    for row in ebasis:
        mats = _mats_of(x, row)
        for lam in range(p):
            shifted = [(m - lam * e) % p for m, e in zip(mats, eye)]
            split = fitting_split(x, shifted)
            if split is not None:
                return split
    ideal = _ideal_coords(x, ebasis)
    dbar = d - ideal.shape[0]
    if dbar <= 1:
        return None
    if p ** dbar > cap:
        raise CapExceeded(f"End(x)/rad-ideal has dimension {dbar}; exhaustive idempotent search "
                          f"over {p ** dbar} elements exceeds the cap {cap}", estimate=p ** dbar)
    piv = ffla.pivots_of(ebasis)
    id_c = _flat(eye)[piv]
    free = ffla.complement_columns(ideal, d)
    units = np.zeros((len(free), d), dtype=np.int64)
    for k, f in enumerate(free):
        units[k, f] = 1
    for c in ffla.all_combinations(units, p)[1:]:
        flat = (c @ ebasis) % p
        mats = _mats_of(x, flat)
        sq = _flat([(m @ m) % p for m in mats])[piv]
        if ffla.reduce_rows(((sq - c) % p).reshape(1, -1), ideal, p).any():
            continue
        if not ffla.reduce_rows(((id_c - c) % p).reshape(1, -1), ideal, p).any():
            continue
        split = fitting_split(x, mats)
        if split is not None:
            return split
    return None


def is_indecomposable(x, cap=DEFAULT_IDEMPOTENT_CAP):
    if x.length == 0:
        raise ValueError("the zero module is not indecomposable")
    cached = x._cache.get("indec")
    if cached is None:
        cached = find_splitting(x, cap) is None
        x._cache["indec"] = cached
    return cached


def decompose_with_inclusions(x, cap=DEFAULT_IDEMPOTENT_CAP):
    """Indecomposable summands with their inclusions into x, in canonical order."""
    if x.length == 0:
        return []
    split = find_splitting(x, cap)
    if split is None:
        x._cache["indec"] = True
        return [(x, Morphism(x, x, [np.eye(d, dtype=np.int64) for d in x.dims], check=False))]
    x._cache["indec"] = False
    out = []
    for sub in split:
        inc = sub.inclusion()
        for summand, f in decompose_with_inclusions(sub.as_representation(), cap):
            summand._cache["indec"] = True
            out.append((summand, inc.compose(f)))
    out.sort(key=lambda sf: sort_key(sf[0]))
    _assert_direct(x, [f for _, f in out])
    return out


def _assert_direct(x, incs):
    p = x.p
    for i, d in enumerate(x.dims):
        if d == 0:
            continue
        block = np.concatenate([f.mats[i] for f in incs], axis=1)
        assert block.shape == (d, d) and ffla.rank_mod(block, p) == d, "summands do not add up"


def decompose(x, cap=DEFAULT_IDEMPOTENT_CAP):
    """Indecomposable summands of x (their direct sum is isomorphic to x)."""
    return [s for s, _ in decompose_with_inclusions(x, cap)]


# ---------- isomorphism

def _has_iso(fs):
    return any(f.is_iso() for f in fs)


def iso_indecomposable(a, b):
    """Isomorphism test valid when a is indecomposable.

    With End(a) local, a and b (of equal dimension vector) are isomorphic iff
    g f is invertible for some basis maps f: a -> b and g: b -> a.
    """
    if a.dims != b.dims:
        return False
    if a.length == 0:
        return True
    fs = hom_basis(a, b)
    if not fs:
        return False
    if _has_iso(fs):
        return True
    gs = hom_basis(b, a)
    for f in fs:
        for g in gs:
            if f.compose(g).is_iso():
                return True
    return False


def iso_test(x, y, cap=DEFAULT_IDEMPOTENT_CAP):
    """Exact isomorphism test (Krull-Schmidt matching of indecomposable summands)."""
    if x.algebra != y.algebra or x.dims != y.dims:
        return False
    if x.length == 0 or x.same_as(y):
        return True
    dxx, dyy, dxy, dyx = hom_dim(x, x), hom_dim(y, y), hom_dim(x, y), hom_dim(y, x)
    if not (dxx == dyy == dxy == dyx):
        return False
    if _has_iso(hom_basis(x, y)):
        return True
    xs = decompose(x, cap)
    ys = decompose(y, cap)
    if len(xs) != len(ys):
        return False
    remaining = list(ys)
    for a in xs:
        for k, b in enumerate(remaining):
            if iso_indecomposable(a, b):
                del remaining[k]
                break
        else:
            return False
    return True


# ---------- invariants and keys

def fingerprint(x):
    """Cheap isomorphism invariant used for bucketing."""
    fp = x._cache.get("fp")
    if fp is None:
        p = x.p
        ranks = tuple(ffla.rank_mod(x.maps[a[0]], p) for a in x.algebra.arrows)
        fp = (x.dims, hom_dim(x, x), tuple(top_dims(x)), tuple(socle_dims(x)), ranks)
        x._cache["fp"] = fp
    return fp


_GL_CACHE = {}


def _gl_order(d, p):
    out = 1
    for i in range(d):
        out *= p ** d - p ** i
    return out


def _gl_elements(d, p):
    key = (d, p)
    if key not in _GL_CACHE:
        mats = []
        for entries in itertools.product(range(p), repeat=d * d):
            m = np.array(entries, dtype=np.int64).reshape(d, d)
            if ffla.rank_mod(m, p) == d:
                mats.append((m, ffla.inv_mod(m, p)))
        _GL_CACHE[key] = mats
    return _GL_CACHE[key]


def canonical_key(x, cap=DEFAULT_CANONICAL_CAP):
    """Lexicographically minimal matrix tuple over all base changes when the
    group is small, otherwise ("fp", fingerprint)."""
    key = x._cache.get("ckey")
    if key is not None:
        return key
    p = x.p
    size = 1
    for d in x.dims:
        size *= _gl_order(d, p)
    if size <= cap:
        alg = x.algebra
        vi = alg.quiver.vertex_index
        groups = [_gl_elements(d, p) if d else [(np.zeros((0, 0), np.int64),) * 2] for d in x.dims]
        best = None
        for choice in itertools.product(*groups):
            cand = []
            for label, s, t in alg.arrows:
                g_t = choice[vi[t]][0]
                g_s_inv = choice[vi[s]][1]
                cand.extend(((g_t @ x.maps[label] @ g_s_inv) % p).reshape(-1).tolist())
            cand = tuple(cand)
            if best is None or cand < best:
                best = cand
        key = ("exact", x.dims, best)
    else:
        key = ("fp",) + fingerprint(x)
    x._cache["ckey"] = key
    return key


def sort_key(x):
    """Canonical output order: length, dimension vector, canonical key."""
    return (x.length, x.dims, canonical_key(x))


class IsoClassTable:
    """Map from isomorphism classes to values, bucketed by fingerprint.

    ``indecomposable=True`` lets lookups use the cheaper test for
    indecomposables.
    """

    def __init__(self, indecomposable=False):
        self.indecomposable = indecomposable
        self._buckets = {}
        self.reps = []
        self.values = []

    def __len__(self):
        return len(self.reps)

    def index(self, x):
        for k in self._buckets.get(fingerprint(x), ()):
            y = self.reps[k]
            same = iso_indecomposable(y, x) if self.indecomposable else iso_test(y, x)
            if same:
                return k
        return None

    def get(self, x, default=None):
        k = self.index(x)
        return default if k is None else self.values[k]

    def add(self, x, value=None):
        """Insert x unless an isomorphic copy is present; returns (index, inserted)."""
        k = self.index(x)
        if k is not None:
            return k, False
        self.reps.append(x)
        self.values.append(value)
        self._buckets.setdefault(fingerprint(x), []).append(len(self.reps) - 1)
        return len(self.reps) - 1, True

    def set(self, k, value):
        self.values[k] = value
