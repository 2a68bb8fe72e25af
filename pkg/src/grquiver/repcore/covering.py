"""Covering quivers and push-down, plus the zigzag family on the cover of the
three-vertex quiver a <= b <= c (arrows alpha, alphap: b -> a; beta, betap: c -> b)."""
from dataclasses import dataclass

import numpy as np

from .. import ffla
from ..presentation import AlgebraPresentation, Quiver
from .representation import Representation, RepresentationError


@dataclass(frozen=True)
class CoveringSpec:
    covering: Quiver
    base: Quiver
    vertex_map: dict
    arrow_map: dict

    def __post_init__(self):
        for label, s, t in self.covering.arrows:
            if label not in self.arrow_map:
                raise ValueError(f"covering arrow {label!r} has no image")
            _, bs, bt = self.base.arrow(self.arrow_map[label])
            if (self.vertex_map[s], self.vertex_map[t]) != (bs, bt):
                raise ValueError(f"arrow map incompatible with vertex map at {label!r}")

    def __hash__(self):
        return hash((self.covering, self.base))

    @classmethod
    def identity(cls, quiver):
        return cls(quiver, quiver, {v: v for v in quiver.vertices},
                   {a[0]: a[0] for a in quiver.arrows})

    def fiber(self, v):
        """Covering vertices over base vertex ``v``, in covering order."""
        return [w for w in self.covering.vertices if self.vertex_map[w] == v]


def push_down(spec, xhat, algebra):
    """Representation of ``algebra`` (on ``spec.base``) obtained by summing fibers."""
    if algebra.quiver != spec.base:
        raise ValueError("algebra is not defined on the base quiver")
    cov = xhat.algebra.quiver
    offsets = {}
    dims = []
    for v in spec.base.vertices:
        pos = 0
        for w in spec.fiber(v):
            offsets[w] = pos
            pos += xhat.dim(w)
        dims.append(pos)
    vi = algebra.quiver.vertex_index
    maps = {}
    for label, s, t in spec.base.arrows:
        maps[label] = np.zeros((dims[vi[t]], dims[vi[s]]), dtype=np.int64)
    for label, s, t in cov.arrows:
        blk = xhat.maps[label]
        if blk.size == 0:
            continue
        r, c = offsets[t], offsets[s]
        maps[spec.arrow_map[label]][r:r + blk.shape[0], c:c + blk.shape[1]] += blk
    try:
        return Representation(algebra, dims, maps, check=True)
    except RepresentationError as err:
        raise RepresentationError(f"push-down violates the base relations: {err}") from err


DOUBLED_CHAIN_QUIVER = Quiver(("a", "b", "c"), (("alpha", "b", "a"), ("alphap", "b", "a"),
                                           ("beta", "c", "b"), ("betap", "c", "b")))


def zigzag_covering(n):
    """Covering quiver piece and arrow/vertex maps carrying the zigzag module of rank n >= 1."""
    if n < 1:
        raise ValueError("n must be positive")
    verts = [f"c{i}" for i in range(1, n + 1)] + [f"b{i}" for i in range(n + 1)]
    verts += [f"{a}{i}" for i in range(n + 1) for a in ("a", "ap")]
    arrows = []
    amap = {}
    for i in range(1, n + 1):
        arrows += [(f"beta{i}", f"c{i}", f"b{i - 1}"), (f"betap{i}", f"c{i}", f"b{i}")]
        amap[f"beta{i}"], amap[f"betap{i}"] = "beta", "betap"
    for i in range(n + 1):
        arrows += [(f"alpha{i}", f"b{i}", f"a{i}"), (f"alphap{i}", f"b{i}", f"ap{i}")]
        amap[f"alpha{i}"], amap[f"alphap{i}"] = "alpha", "alphap"
    vmap = {v: v[0] if not v.startswith("ap") else "a" for v in verts}
    return CoveringSpec(Quiver(tuple(verts), tuple(arrows)), DOUBLED_CHAIN_QUIVER, vmap, amap)


def zigzag_representation(n, p=2):
    """The rank-n zigzag module on its covering quiver: a zigzag c_i -> b_{i-1}, b_i with every b
    mapping onto its two sinks by the same functional."""
    spec = zigzag_covering(n)
    alg = AlgebraPresentation(spec.covering, (), p, name=f"zigzag-cover-{n}")
    dims = []
    for v in spec.covering.vertices:
        if v.startswith("b") and 0 < int(v[1:]) < n:
            dims.append(2)
        else:
            dims.append(1)
    maps = {}
    for i in range(1, n + 1):
        # inner b_i has basis (from c_i via betap, from c_{i+1} via beta)
        maps[f"betap{i}"] = [[1], [0]] if i < n else [[1]]
        maps[f"beta{i}"] = [[0], [1]] if i > 1 else [[1]]
    for i in range(n + 1):
        row = [[1, 1]] if 0 < i < n else [[1]]
        maps[f"alpha{i}"] = row
        maps[f"alphap{i}"] = row
    return spec, Representation(alg, dims, maps)


def equal_kernels(x, first, second):
    """True iff the two arrow maps (same source) have the same kernel."""
    p = x.p
    a, b = x.maps[first], x.maps[second]
    ka = ffla.row_space(ffla.nullspace_mod(a, p), a.shape[1], p) if a.shape[1] else a
    kb = ffla.row_space(ffla.nullspace_mod(b, p), b.shape[1], p) if b.shape[1] else b
    return np.array_equal(ka, kb)


def zigzag_module(n, algebra):
    """Push-down of the rank-n zigzag module to ``algebra`` (the hereditary algebra on the base quiver).

    Asserts the equal-kernel condition on alpha, alphap and indecomposability.
    """
    from .decomposition import is_indecomposable
    spec, xhat = zigzag_representation(n, algebra.p)
    x = push_down(spec, xhat, algebra)
    assert equal_kernels(x, "alpha", "alphap"), "alpha and alphap must have equal kernels"
    assert is_indecomposable(x), f"zigzag push-down of rank {n} is decomposable"
    return x
