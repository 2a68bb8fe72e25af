"""Hom spaces as null spaces of the intertwining system, and cogeneration."""
import numpy as np

from .. import ffla
from ..errors import CapExceeded
from .representation import Morphism, RepresentationError


def _offsets(x, y):
    offs = []
    total = 0
    for dx, dy in zip(x.dims, y.dims):
        offs.append(total)
        total += dx * dy
    return offs, total


# largest intertwining system (rows x unknowns) solved densely
HOM_SYSTEM_CAP = 4_000_000


def intertwining_system(x, y):
    """Matrix C with Hom(x, y) = ker C, unknowns being the row-major vertex maps."""
    if x.algebra != y.algebra:
        raise RepresentationError("Hom between representations of different algebras")
    alg = x.algebra
    vi = alg.quiver.vertex_index
    p = x.p
    offs, total = _offsets(x, y)
    n_rows = sum(y.dims[vi[t]] * x.dims[vi[s]] for _, s, t in alg.arrows)
    if n_rows * total > HOM_SYSTEM_CAP:
        raise CapExceeded(f"Hom system of {n_rows} x {total} exceeds the cap {HOM_SYSTEM_CAP}",
                          n_rows * total)
    blocks = []
    for label, s, t in alg.arrows:
        i, j = vi[s], vi[t]
        xi, xj, yi, yj = x.dims[i], x.dims[j], y.dims[i], y.dims[j]
        rows = yj * xi
        if rows == 0:
            continue
        c = np.zeros((rows, total), dtype=np.int64)
        # y_a f_i  -  f_j x_a  = 0, with vec_row(A F B) = (A kron B^T) vec_row(F)
        if yi * xi:
            c[:, offs[i]:offs[i] + yi * xi] += np.kron(y.maps[label], np.eye(xi, dtype=np.int64))
        if yj * xj:
            c[:, offs[j]:offs[j] + yj * xj] -= np.kron(np.eye(yj, dtype=np.int64), x.maps[label].T)
        blocks.append(c % p)
    if not blocks:
        return np.zeros((0, total), dtype=np.int64)
    return np.concatenate(blocks, axis=0)


def _unflatten(x, y, vec):
    mats = []
    pos = 0
    for dx, dy in zip(x.dims, y.dims):
        mats.append(vec[pos:pos + dx * dy].reshape(dy, dx))
        pos += dx * dy
    return mats


def hom_space(x, y):
    """Basis of Hom(x, y) as an RREF array of flattened morphisms (rows)."""
    key = ("hom", y.key())
    cached = x._cache.get(key)
    if cached is not None:
        return cached
    p = x.p
    c = intertwining_system(x, y)
    total = c.shape[1]
    if total == 0:
        basis = np.zeros((0, 0), dtype=np.int64)
    else:
        basis = ffla.row_space(ffla.nullspace_mod(c, p), total, p)
    x._cache[key] = basis
    return basis


def hom_basis(x, y):
    """Basis of Hom(x, y) as a list of :class:`Morphism`."""
    return [Morphism(x, y, _unflatten(x, y, row), check=False) for row in hom_space(x, y)]


def hom_dim(x, y):
    return hom_space(x, y).shape[0]


def morphism_from_vector(x, y, vec):
    return Morphism(x, y, _unflatten(x, y, np.asarray(vec, dtype=np.int64) % x.p), check=False)


def common_kernel(morphisms, x):
    """Per-vertex basis of the intersection of the kernels (the whole of x for no maps)."""
    p = x.p
    out = []
    for i, d in enumerate(x.dims):
        if d == 0:
            out.append(np.zeros((0, 0), dtype=np.int64))
            continue
        mats = [f.mats[i] for f in morphisms if f.mats[i].shape[0]]
        if not mats:
            out.append(np.eye(d, dtype=np.int64))
            continue
        out.append(ffla.nullspace_mod(np.concatenate(mats, axis=0), p))
    return out


def is_cogenerated(x, m):
    """True iff the maps x -> m have zero common kernel, i.e. x embeds in a power of m."""
    if x.algebra != m.algebra:
        raise RepresentationError("different algebras")
    if x.length == 0:
        return True
    ker = common_kernel(hom_basis(x, m), x)
    return all(k.shape[0] == 0 for k in ker)


def cogenerating_embedding(x, m):
    """An injective map x -> m^r built from a Hom basis (r = number of maps used), or None."""
    from .representation import direct_sum
    basis = hom_basis(x, m)
    chosen = []
    p = x.p
    cur = [np.eye(d, dtype=np.int64) for d in x.dims]
    for f in basis:
        new = []
        shrink = False
        for i, k in enumerate(cur):
            if k.shape[0] == 0:
                new.append(k)
                continue
            img = (f.mats[i] @ k.T) % p
            sub = ffla.nullspace_mod(img, p)
            kk = (sub @ k) % p if sub.shape[0] else np.zeros((0, k.shape[1]), np.int64)
            if kk.shape[0] < k.shape[0]:
                shrink = True
            new.append(kk)
        if shrink:
            chosen.append(f)
            cur = new
        if all(k.shape[0] == 0 for k in cur):
            break
    if any(k.shape[0] for k in cur):
        return None
    target = direct_sum([m] * len(chosen), algebra=x.algebra)
    mats = [np.concatenate([f.mats[i] for f in chosen], axis=0) if chosen else
            np.zeros((0, d), np.int64) for i, d in enumerate(x.dims)]
    return Morphism(x, target, mats, check=False)
