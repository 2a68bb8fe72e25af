"""Euler form, Coxeter transformation and defect for hereditary algebras,
plus small exhaustive checks around preprojective and regular modules.

Dimension vectors are column vectors.  With E[i, j] = delta_ij - #(arrows i -> j)
the Euler form is <x, y> = x^T E y, and the Coxeter matrix -E^{-1} E^T sends
dim P(i) to -dim I(i) and dim X to dim tau X for non-projective
indecomposable X.
"""
import itertools
from dataclasses import dataclass, field

import numpy as np
import sympy

from . import ffla
from .artrans import inverse_translate
from .presentation import projective
from .repcore.decomposition import CapExceeded, is_indecomposable
from .repcore.hom import hom_basis, hom_space
from .repcore.representation import Morphism, identity, image_of
from .repcore.submodules import enumerate_submodules


@dataclass(frozen=True)
class EulerData:
    vertices: tuple
    euler: np.ndarray
    coxeter: np.ndarray
    coxeter_inv: np.ndarray
    null_root: tuple = None
    defect: tuple = None

    @property
    def affine(self):
        return self.defect is not None

    def form(self, x, y):
        return int(np.asarray(x) @ self.euler @ np.asarray(y))

    def tits(self, x):
        return self.form(x, x)

    def defect_of(self, dims):
        if self.defect is None:
            raise ValueError("defect only exists for affine quivers")
        return int(np.dot(self.defect, dims))


def euler_data(alg):
    if not alg.is_hereditary:
        raise ValueError("Euler data needs a hereditary presentation (no relations, no cycles)")
    n = len(alg.vertices)
    vi = alg.quiver.vertex_index
    e = sympy.eye(n)
    for _, s, t in alg.arrows:
        e[vi[s], vi[t]] -= 1
    phi = -e.inv() * e.T
    phi_inv = phi.inv()
    h, delta = _null_root(e, phi, alg)
    to_np = lambda m: np.array(m.tolist(), dtype=np.int64)
    return EulerData(tuple(alg.vertices), to_np(e), to_np(phi), to_np(phi_inv), h, delta)


def _null_root(e, phi, alg):
    fixed = (phi - sympy.eye(phi.shape[0])).nullspace()
    if len(fixed) != 1:
        return None, None
    v = fixed[0]
    den = sympy.ilcm(*[sympy.fraction(c)[1] for c in v])
    v = v * den
    g = sympy.igcd(*[int(c) for c in v])
    v = v / g
    if all(c <= 0 for c in v):
        v = -v
    if not all(c > 0 for c in v) or (v.T * e * v)[0] != 0:
        return None, None
    h = tuple(int(c) for c in v)
    d = [int(c) for c in (v.T * e)]
    g = sympy.igcd(*d) if any(d) else 1
    d = [c // g for c in d]
    proj = [sum(c * k for c, k in zip(d, projective(alg, w).dims)) for w in alg.vertices]
    if any(x > 0 for x in proj):
        d = [-c for c in d]
    return h, tuple(d)


def knit_dim_vectors(alg, steps):
    """Rows (vertex, j, dims of tau^-j P(vertex)) by iterating the inverse Coxeter matrix.

    A ray stops before the first vector with a negative coordinate.
    """
    ed = euler_data(alg)
    rows = []
    for v in alg.vertices:
        x = np.array(projective(alg, v).dims, dtype=np.int64)
        for j in range(steps + 1):
            if (x < 0).any() or not x.any():
                break
            rows.append((v, j, tuple(int(c) for c in x)))
            x = ed.coxeter_inv @ x
    return rows


def tau_orbit(x, steps):
    """[x, tau^- x, ..., tau^-steps x], cut at the first zero module."""
    out = [x]
    for _ in range(steps):
        x = inverse_translate(x)
        if x.length == 0:
            break
        out.append(x)
    return out


@dataclass
class TauCogenerationReport:
    b: int
    jmax: int
    least_j: dict = field(default_factory=dict)   # (P, P', i) -> least j or None

    @property
    def n_b(self):
        vals = list(self.least_j.values())
        if not vals or any(v is None for v in vals):
            return None
        return max(vals)


def tau_cogeneration_check(alg, b, jmax):
    """For projectives P, P' and i <= b: the least j <= jmax from which on
    tau^-i P' is cogenerated by every tau^-j' P, j <= j' <= jmax."""
    from .repcore.hom import is_cogenerated
    orbits = {v: tau_orbit(projective(alg, v), max(b, jmax)) for v in alg.vertices}
    report = TauCogenerationReport(b, jmax)
    for v in alg.vertices:
        for w in alg.vertices:
            for i in range(b + 1):
                if i >= len(orbits[w]):
                    continue
                x = orbits[w][i]
                flags = [is_cogenerated(x, c) for c in orbits[v][:jmax + 1]]
                least = None
                for j in range(len(flags) - 1, -1, -1):
                    if not flags[j]:
                        break
                    least = j
                report.least_j[(v, w, i)] = least
    return report


# ---------- defect scans

def _all_maps(x, y, cap):
    basis = hom_space(x, y)
    d = basis.shape[0]
    if x.p ** d > cap:
        raise CapExceeded(f"Hom space of dimension {d} too large to scan", x.p ** d)
    out = []
    for vec in ffla.all_combinations(basis, x.p) if d else [np.zeros(basis.shape[1], np.int64)]:
        mats, pos = [], 0
        for dx, dy in zip(x.dims, y.dims):
            mats.append(vec[pos:pos + dx * dy].reshape(dy, dx))
            pos += dx * dy
        out.append(Morphism(x, y, mats, check=False))
    return out


def regular_radical(r, ed):
    """The unique maximal proper submodule of r that is indecomposable regular (or zero).

    Returns (handle or None, ambiguous flag).
    """
    cands = []
    for s in enumerate_submodules(r):
        if s.is_whole():
            continue
        if s.length == 0:
            cands.append(s)
            continue
        rep = s.as_representation()
        if ed.defect_of(rep.dims) == 0 and is_indecomposable(rep):
            cands.append(s)
    maximal = [s for s in cands if not any(t is not s and t.contains(s) and t.length > s.length
                                           for t in cands)]
    if len(maximal) != 1:
        return None, True
    return maximal[0], False


@dataclass
class MonoEpiReport:
    checked: int = 0
    counterexamples: list = field(default_factory=list)
    ambiguous: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.counterexamples


def classify(snapshot, ed, steps=16):
    """Split snapshot members into (preprojective, regular) lists."""
    from .explorer import is_preprojective
    pre, reg = [], []
    for x in snapshot.members:
        d = ed.defect_of(x.dims)
        if d == 0:
            reg.append(x)
        elif d < 0 and is_preprojective(x, steps):
            pre.append(x)
    return pre, reg


def mono_or_epi_scan(alg, max_len, snapshot=None, map_cap=2 ** 12):
    """Maps P -> R (P preprojective of defect -1, R regular) with image outside the
    regular radical must be mono or epi; every such map up to length ``max_len`` is tested."""
    from .explorer import enumerate_indecomposables
    ed = euler_data(alg)
    if not ed.affine:
        raise ValueError("defect scans need an affine quiver")
    snap = snapshot or enumerate_indecomposables(alg, max_len)
    pre, reg = classify(snap, ed)
    pre = [x for x in pre if ed.defect_of(x.dims) == -1 and x.length <= max_len]
    reg = [x for x in reg if x.length <= max_len]
    report = MonoEpiReport()
    for r in reg:
        rad, ambiguous = regular_radical(r, ed)
        if ambiguous:
            report.ambiguous.append(r)
            continue
        for p_ in pre:
            for f in _all_maps(p_, r, map_cap):
                if rad.contains(image_of(f)):
                    continue
                report.checked += 1
                if not (f.is_injective() or f.is_surjective()):
                    report.counterexamples.append((p_, r, f))
    return report


@dataclass
class JointEmbeddingResult:
    found: bool
    modules: tuple = ()
    maps: tuple = ()
    note: str = ""


def joint_embedding_scan(alg, x, max_len, snapshot=None, map_cap=2 ** 12, tuple_cap=10 ** 5):
    """Search d surjections x -> P_i onto preprojectives of defect -1 with jointly
    injective sum, where d = -defect(x)."""
    from .explorer import enumerate_indecomposables
    ed = euler_data(alg)
    if not ed.affine:
        raise ValueError("defect scans need an affine quiver")
    d = -ed.defect_of(x.dims)
    if d < 1:
        raise ValueError("x must have negative defect")
    if d == 1:
        return JointEmbeddingResult(True, (x,), (identity(x),), "defect -1: identity witness")
    snap = snapshot or enumerate_indecomposables(alg, max_len)
    pre, _ = classify(snap, ed)
    targets = [q for q in pre if ed.defect_of(q.dims) == -1 and q.length <= x.length]
    surj = []
    for q in targets:
        surj += [(q, f) for f in _all_maps(x, q, map_cap) if f.is_surjective()]
    n_tuples = 0
    for combo in itertools.combinations_with_replacement(range(len(surj)), d):
        n_tuples += 1
        if n_tuples > tuple_cap:
            return JointEmbeddingResult(False, note=f"tuple cap {tuple_cap} reached")
        fs = [surj[k][1] for k in combo]
        if _jointly_injective(x, fs):
            return JointEmbeddingResult(True, tuple(surj[k][0] for k in combo), tuple(fs),
                                f"witness among {len(surj)} surjections")
    return JointEmbeddingResult(False, note=f"no witness among {len(surj)} surjections onto "
                                    f"{len(targets)} defect -1 preprojectives up to length "
                                    f"{max_len}")


def _jointly_injective(x, fs):
    p = x.p
    for i, dx in enumerate(x.dims):
        if dx == 0:
            continue
        stacked = np.concatenate([f.mats[i] for f in fs], axis=0)
        if ffla.rank_mod(stacked, p) < dx:
            return False
    return True
