"""Auslander-Reiten translation through minimal projective presentations.

tau x = D Tr x and tau^- x = Tr D x, where D is the vector-space dual (a
module over the opposite algebra) and Tr is the cokernel of the dualized
presentation map.  Over a basic algebra Hom(P(v), A) is the opposite
projective at v, and a map P(v_k) -> P(u_l) given by a combination of paths
u_l -> v_k dualizes to the reversed combination.
"""
from dataclasses import dataclass

import numpy as np

from . import ffla
from .presentation import projective
from .repcore.representation import (Morphism, Representation, direct_sum, dual, image_of,
                                     kernel_of, quotient_rep, rad_basis)


@dataclass(frozen=True)
class ProjectivePresentation:
    """p1 --d--> p0 --eps--> x -> 0 with d minimal.

    ``gens0[l]`` is the vertex of the l-th summand P(u_l) of p0, ``gens1[k]``
    the vertex of the k-th summand of p1.
    """
    p1: Representation
    p0: Representation
    d: Morphism
    eps: Morphism
    gens0: tuple
    gens1: tuple


def _offsets(alg, gens):
    """Per vertex w: start of each summand's block inside (+)P(u_l)_w."""
    out = {}
    for w in alg.vertices:
        pos, starts = 0, []
        for u in gens:
            starts.append(pos)
            pos += len(alg.basis_paths(u, w))
        out[w] = starts
    return out


def projective_map(alg, gens, target):
    """Source (+)P(u_l) and the morphism to ``target`` sending generator l to ``gens[l][1]``."""
    verts = [u for u, _ in gens]
    src = direct_sum([projective(alg, u) for u in verts], algebra=alg)
    mats = []
    for w in alg.vertices:
        cols = []
        for u, vec in gens:
            vec = np.asarray(vec, dtype=np.int64)
            for q in alg.basis_paths(u, w):
                cols.append(vec % alg.p if not q else (target.path_matrix(q) @ vec) % alg.p)
        n = target.dim(w)
        mats.append(np.array(cols, dtype=np.int64).T.reshape(n, len(cols)) if cols
                    else np.zeros((n, 0), dtype=np.int64))
    return src, Morphism(src, target, mats, check=False)


def top_generators(x):
    """(vertex, vector) pairs whose images span top(x): unit vectors off the radical pivots."""
    rad = rad_basis(x)
    gens = []
    for v, d, r in zip(x.algebra.vertices, x.dims, rad):
        for c in ffla.complement_columns(r, d):
            e = np.zeros(d, dtype=np.int64)
            e[c] = 1
            gens.append((v, e))
    return gens


def projective_cover(x):
    """(P, eps) with eps: P -> x a projective cover."""
    return projective_map(x.algebra, top_generators(x), x)


def minimal_presentation(x):
    alg = x.algebra
    gens0 = top_generators(x)
    p0, eps = projective_map(alg, gens0, x)
    ker = kernel_of(eps)
    krep = ker.as_representation()
    kgens = top_generators(krep)
    # lift kernel generators back to coordinates of p0
    lifted = []
    for v, e in kgens:
        basis = ker.basis[alg.quiver.vertex_index[v]]
        lifted.append((v, (e @ basis) % alg.p))
    p1, d = projective_map(alg, lifted, p0)
    return ProjectivePresentation(p1, p0, d, eps, tuple(u for u, _ in gens0),
                                  tuple(v for v, _ in lifted))


def cokernel(f):
    return quotient_rep(f.target, image_of(f).basis)


def is_projective(x):
    return minimal_presentation(x).p1.length == 0


def is_injective(x):
    return is_projective(dual(x))


def transpose(x):
    """Tr x, a module over the opposite algebra."""
    alg = x.algebra
    op = alg.opposite()
    pres = minimal_presentation(x)
    if pres.p1.length == 0:
        return Representation(op, [0] * len(alg.vertices), {}, check=False)
    p = alg.p
    starts = _offsets(alg, pres.gens0)
    vi = alg.quiver.vertex_index
    # target: (+) P^op(v_k); generator l of (+) P^op(u_l) goes to the reversed path combinations
    tgt = direct_sum([projective(op, v) for v in pres.gens1], algebra=op)
    op_starts = _offsets(op, pres.gens1)
    gens = []
    for l, u in enumerate(pres.gens0):
        vec = np.zeros(tgt.dim(u), dtype=np.int64)
        for k, v in enumerate(pres.gens1):
            image = pres.d.mats[vi[v]][:, _column_of_generator(alg, pres.gens1, k, v)]
            block = image[starts[v][l]:starts[v][l] + len(alg.basis_paths(u, v))]
            op_basis = op.basis_paths(v, u)
            pos = {b: i for i, b in enumerate(op_basis)}
            base = op_starts[u][k]
            for coeff, q in zip(block, alg.basis_paths(u, v)):
                if not coeff:
                    continue
                if not q:
                    vec[base + pos[()]] += coeff
                    continue
                for b, c in op.normal_form(tuple(reversed(q))).items():
                    vec[base + pos[b]] += coeff * c
        gens.append((u, vec % p))
    _, g = projective_map(op, gens, tgt)
    return cokernel(g)


def _column_of_generator(alg, gens, k, v):
    """Column of the k-th generator (at vertex v) inside (+)P(v_j)_v."""
    pos = 0
    for j, w in enumerate(gens):
        if j == k:
            return pos
        pos += len(alg.basis_paths(w, v))
    raise IndexError(k)


def translate(x):
    """tau x = D Tr x; zero for projective x."""
    return dual(transpose(x))


def inverse_translate(x):
    """tau^- x = Tr D x; zero for injective x."""
    return transpose(dual(x))
