"""Maximal submodules and exhaustive submodule enumeration."""
import numpy as np

from .. import ffla
from .decomposition import CapExceeded
from .representation import SubmoduleHandle, rad_basis, submodule_from_generators, zero_submodule

DEFAULT_SUBMODULE_CAP = 2 ** 12


def maximal_submodules(x):
    """All maximal submodules: x itself at every vertex but one, where a
    hyperplane containing the radical is taken.

    Every simple is one-dimensional, so maximal submodules have colength 1.
    """
    p = x.p
    rad = rad_basis(x)
    out = []
    for i, d in enumerate(x.dims):
        if d == 0:
            continue
        free = ffla.complement_columns(rad[i], d)
        if not free:
            continue
        red = ffla.reduce_rows(np.eye(d, dtype=np.int64), rad[i], p)[:, free]
        for lam in ffla.projective_points(len(free), p):
            phi = (red @ lam) % p
            basis = [np.eye(k, dtype=np.int64) for k in x.dims]
            basis[i] = ffla.nullspace_mod(phi.reshape(1, d), p)
            out.append(SubmoduleHandle(x, basis, check=False))
    return out


def cyclic_submodules(x):
    """Distinct submodules generated by one vector at one vertex."""
    seen = {}
    for v, d in zip(x.algebra.vertices, x.dims):
        for vec in ffla.projective_points(d, x.p):
            sub = submodule_from_generators(x, [(v, vec)])
            seen.setdefault(sub.key(), sub)
    return list(seen.values())


def submodule_order(sub):
    return (sub.length, sub.dims, sub.key())


def enumerate_submodules(x, cap=DEFAULT_SUBMODULE_CAP):
    """Every submodule of x exactly once, ordered by length, dims, then basis.

    Every submodule is the sum of the cyclic submodules generated by its
    vectors, so closing {0} under sums with cyclics reaches all of them.
    The guard ``p**length(x) <= cap`` keeps the search at desk scale.
    """
    estimate = x.p ** x.length
    if estimate > cap:
        raise CapExceeded(f"submodule enumeration of a module of length {x.length} over "
                          f"F_{x.p} (search size ~{estimate}) exceeds the cap {cap}", estimate)
    cyclics = cyclic_submodules(x)
    zero = zero_submodule(x)
    found = {zero.key(): zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for sub in frontier:
            for c in cyclics:
                if sub.contains(c):
                    continue
                s = sub + c
                if s.key() not in found:
                    found[s.key()] = s
                    nxt.append(s)
        frontier = nxt
    return sorted(found.values(), key=submodule_order)
