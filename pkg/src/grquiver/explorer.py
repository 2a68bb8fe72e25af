"""Finite-length shadows of subcategories: enumeration, take-off, closures.

Indecomposables are enumerated by length.  An indecomposable Y of length n
has a maximal submodule M with Y/M simple at some vertex v, so Y is an
extension of S(v) by M = (+) N^(m_N).  If the extension classes lying in one
isotypic block N^(m_N) were linearly dependent, an automorphism of M would
kill one of them and split off a copy of N.  Hence it is enough to take, for
every N with Ext(S(v), N) != 0, an m_N-dimensional subspace of Ext(S(v), N)
in RREF, glue, and keep the indecomposable results up to isomorphism.
"""
import itertools
import json
from dataclasses import dataclass, field

import numpy as np

from . import ffla
from .artrans import inverse_translate, translate, is_projective
from .grmeasure import DEFAULT_MEMO, GRMeasure, gr_measure, gr_submodule
from .presentation import injective_bound, projective, projective_bound, simple
from .repcore.decomposition import (CapExceeded, IsoClassTable, canonical_key, decompose,
                                    is_indecomposable, sort_key)
from .repcore.hom import hom_basis, is_cogenerated
from .repcore.representation import (Morphism, Representation, SubmoduleHandle, direct_sum,
                                     image_of, relation_violation)
from .repcore.submodules import enumerate_submodules

DEFAULT_CANDIDATE_CAP = 200_000
RAW_CAP = 2 ** 16
SNAPSHOT_SCHEMA = "grquiver.snapshot/1"


def default_length_cap(alg):
    """12 for hereditary algebras with semidefinite Tits form, 6 otherwise."""
    if alg.is_hereditary:
        n = len(alg.vertices)
        vi = alg.quiver.vertex_index
        q = 2 * np.eye(n)
        for _, s, t in alg.arrows:
            q[vi[s], vi[t]] -= 1
            q[vi[t], vi[s]] -= 1
        if np.linalg.eigvalsh(q).min() > -1e-9:
            return 12
    return 6


@dataclass(frozen=True)
class SubcatSnapshot:
    algebra: object
    max_len: int
    members: tuple
    measures: tuple
    provenance: str = "enumeration"

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def counts_by_length(self):
        out = {n: 0 for n in range(1, self.max_len + 1)}
        for x in self.members:
            out[x.length] += 1
        return out

    def of_length(self, n):
        return [x for x in self.members if x.length == n]

    def restricted(self, max_len, provenance=None):
        keep = [(x, m) for x, m in zip(self.members, self.measures) if x.length <= max_len]
        return SubcatSnapshot(self.algebra, max_len, tuple(x for x, _ in keep),
                              tuple(m for _, m in keep), provenance or self.provenance)


def make_snapshot(alg, max_len, members, provenance="manual", memo=None):
    """Snapshot with members sorted by (measure, canonical order)."""
    memo = DEFAULT_MEMO if memo is None else memo
    pairs = [(x, gr_measure(x, memo)) for x in members]
    pairs.sort(key=lambda xm: (xm[1], sort_key(xm[0]), xm[0].key()))
    return SubcatSnapshot(alg, max_len, tuple(x for x, _ in pairs), tuple(m for _, m in pairs),
                          provenance)


# ---------- extensions by a simple top

def _cocycle_layout(alg, v, n):
    """[(label, target index, offset)] for the arrows leaving v, and the total size."""
    vi = alg.quiver.vertex_index
    layout, pos = [], 0
    for label, s, t in alg.arrows:
        if s == v:
            layout.append((label, vi[t], pos))
            pos += n.dims[vi[t]]
    return layout, pos


def ext_from_simple(v, n):
    """Canonical complement of the coboundaries inside the cocycles for Ext(S(v), n).

    A cocycle assigns c_alpha in n_{t(alpha)} to each arrow alpha leaving v,
    subject to the relations starting at v; coboundaries are c_alpha = n_alpha m.
    Returns (basis rows, layout).
    """
    alg = n.algebra
    p = alg.p
    vi = alg.quiver.vertex_index
    layout, size = _cocycle_layout(alg, v, n)
    if size == 0:
        return np.zeros((0, 0), dtype=np.int64), layout
    offs = {label: pos for label, _, pos in layout}
    rows = []
    for rel in alg.relations:
        if rel.source != v:
            continue
        block = np.zeros((n.dims[vi[rel.target]], size), dtype=np.int64)
        for c, path in rel.terms:
            m = n.path_matrix(path[1:])
            off = offs[path[0]]
            block[:, off:off + m.shape[1]] += c * m
        rows.append(block % p)
    cons = np.concatenate(rows, axis=0) if rows else np.zeros((0, size), dtype=np.int64)
    z = ffla.nullspace_mod(cons, p)
    dv = n.dims[vi[v]]
    cob = np.zeros((dv, size), dtype=np.int64)
    for label, ti, pos in layout:
        cob[:, pos:pos + n.dims[ti]] = n.maps[label].T
    b = ffla.row_space(cob, size, p)
    return ffla.row_space(ffla.reduce_rows(z, b, p), size, p), layout


def glue(v, parts, alg):
    """Extension of S(v) by (+) N_i with classes given as cocycle vectors.

    ``parts`` is a list of (N, cocycle); the new basis vector sits last at v.
    """
    vi = alg.quiver.vertex_index
    iv = vi[v]
    mods = [n for n, _ in parts]
    m = direct_sum(mods, algebra=alg)
    dims = list(m.dims)
    dims[iv] += 1
    maps = {}
    for label, s, t in alg.arrows:
        a = np.zeros((dims[vi[t]], dims[vi[s]]), dtype=np.int64)
        a[:m.dims[vi[t]], :m.dims[vi[s]]] = m.maps[label]
        if s == v:
            col = []
            for n, coc in parts:
                layout, _ = _cocycle_layout(alg, v, n)
                pos = next(pos for lab, _, pos in layout if lab == label)
                col.append(coc[pos:pos + n.dims[vi[t]]])
            col = np.concatenate(col) if col else np.zeros(0, dtype=np.int64)
            a[:len(col), -1] = col
        maps[label] = a
    return Representation(alg, dims, maps, check=False)


def _multisets(items, total):
    """Multiplicity vectors (m_i <= cap_i) over items [(length, cap)] with sum m_i*length = total."""
    def rec(i, rest):
        if rest == 0:
            yield ()
            return
        if i == len(items):
            return
        length, cap = items[i]
        for m in range(min(cap, rest // length), -1, -1):
            for tail in rec(i + 1, rest - m * length):
                yield (m,) + tail
    for combo in rec(0, total):
        yield combo + (0,) * (len(items) - len(combo))


def enumerate_indecomposables(alg, max_len, length_cap=None, candidate_cap=DEFAULT_CANDIDATE_CAP,
                              cross_check=True, memo=None, progress=None):
    """Snapshot of all indecomposables of length <= max_len up to isomorphism."""
    cap = default_length_cap(alg) if length_cap is None else length_cap
    if max_len > cap:
        raise CapExceeded(f"enumeration up to length {max_len} exceeds the length cap {cap}",
                          estimate=max_len)
    p = alg.p
    by_len = {}
    if max_len >= 1:
        by_len[1] = [simple(alg, v) for v in alg.vertices]
    ext_cache = {}
    candidates = 0
    for n in range(2, max_len + 1):
        table = IsoClassTable(indecomposable=True)
        for v in alg.vertices:
            eligible = []
            for length in range(1, n):
                for k, nmod in enumerate(by_len.get(length, [])):
                    key = (v, length, k)
                    if key not in ext_cache:
                        ext_cache[key] = ext_from_simple(v, nmod)[0]
                    e = ext_cache[key]
                    if e.shape[0]:
                        eligible.append((nmod, e))
            items = [(nm.length, e.shape[0]) for nm, e in eligible]
            for mult in _multisets(items, n - 1):
                chosen = [(eligible[i], m) for i, m in enumerate(mult) if m]
                choices = [list(ffla.grassmannian(e.shape[0], m, p)) for (_, e), m in chosen]
                for subs in itertools.product(*choices):
                    candidates += 1
                    if candidates > candidate_cap:
                        raise CapExceeded(f"more than {candidate_cap} extension candidates at "
                                          f"length {n}", estimate=candidates)
                    parts = []
                    for ((nmod, e), _), basis in zip(chosen, subs):
                        for row in basis:
                            parts.append((nmod, (row @ e) % p))
                    y = glue(v, parts, alg)
                    if table.index(y) is None and is_indecomposable(y):
                        table.add(y)
        by_len[n] = sorted(table.reps, key=sort_key)
        if progress:
            progress(n, len(by_len[n]))
    if cross_check:
        for n in range(1, min(max_len, 3) + 1):
            try:
                raw = raw_enumerate(alg, n)
            except CapExceeded:
                continue
            assert len(raw) == len(by_len[n]), \
                f"extension enumeration found {len(by_len[n])} classes of length {n}, raw {len(raw)}"
    members = [x for n in sorted(by_len) for x in by_len[n]]
    return make_snapshot(alg, max_len, members, "enumeration", memo)


def _compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for k in range(total, -1, -1):
        for rest in _compositions(total - k, parts - 1):
            yield (k,) + rest


def raw_enumerate(alg, n, cap=RAW_CAP):
    """Indecomposables of length n by brute force over all matrix tuples (reference oracle)."""
    p = alg.p
    vi = alg.quiver.vertex_index
    table = IsoClassTable(indecomposable=True)
    dvs = list(_compositions(n, len(alg.vertices)))
    sizes = [sum(d[vi[t]] * d[vi[s]] for _, s, t in alg.arrows) for d in dvs]
    total = sum(p ** s for s in sizes)
    if total > cap:
        raise CapExceeded(f"raw enumeration of length {n} needs {total} matrix tuples", total)
    for dims, size in zip(dvs, sizes):
        shapes = [(label, dims[vi[t]], dims[vi[s]]) for label, s, t in alg.arrows]
        for entries in itertools.product(range(p), repeat=size):
            maps, pos = {}, 0
            for label, r, c in shapes:
                maps[label] = np.array(entries[pos:pos + r * c], dtype=np.int64).reshape(r, c)
                pos += r * c
            x = Representation(alg, dims, maps, check=False)
            if relation_violation(x) is not None:
                continue
            if table.index(x) is None and is_indecomposable(x):
                table.add(x)
    return sorted(table.reps, key=sort_key)


# ---------- take-off

@dataclass(frozen=True)
class TakeoffReport:
    measures: tuple
    classes: tuple
    max_len: int
    certified: tuple
    truncated: bool = False
    warning: str = ""


def take_off_sequence(snapshot, count, pbound=None, qbound=None):
    """The ``count`` smallest measures present, each with its classes.

    A measure J is certified when no module longer than the bound can have a
    smaller measure: such a module would contain one of length > L whose
    Gabriel-Roiter submodule W is a member with |Z| <= |W| p q, so it is
    enough that mu(W) + {|W| p q} >= J for every member W with |W| p q > L.
    """
    alg = snapshot.algebra
    pb = projective_bound(alg) if pbound is None else pbound
    qb = injective_bound(alg) if qbound is None else qbound
    distinct = sorted(set(snapshot.measures))
    chosen = distinct[:count]
    classes = tuple(tuple(x for x, m in zip(snapshot.members, snapshot.measures) if m == j)
                    for j in chosen)
    certified = []
    for j in chosen:
        ok = True
        for w, mw in zip(snapshot.members, snapshot.measures):
            reach = w.length * pb * qb
            if reach > snapshot.max_len and mw < j and mw.extended(reach) < j:
                ok = False
                break
        certified.append(ok)
    notes = []
    truncated = len(chosen) < count
    if truncated:
        notes.append(f"only {len(chosen)} measures occur up to length {snapshot.max_len}")
    if not all(certified):
        k = certified.index(False)
        notes.append(f"measures from position {k + 1} on are not certified at length bound "
                     f"{snapshot.max_len}; longer modules may have smaller measures")
    return TakeoffReport(tuple(chosen), classes, snapshot.max_len, tuple(certified),
                         truncated, "; ".join(notes))


# ---------- closures

def preprojectives(alg, max_len, steps=None):
    """tau^- orbits of the indecomposable projectives, members of length <= max_len."""
    steps = 2 * max_len + 2 if steps is None else steps
    table = IsoClassTable(indecomposable=True)
    for v in alg.vertices:
        x = projective(alg, v)
        for _ in range(steps + 1):
            if x.length == 0:
                break
            if x.length <= max_len:
                table.add(x)
            x = inverse_translate(x)
    return sorted(table.reps, key=sort_key)


def is_preprojective(x, steps=16):
    """True if tau^k x is projective for some k <= steps."""
    for _ in range(steps + 1):
        if x.length == 0:
            return False
        if is_projective(x):
            return True
        x = translate(x)
    return False


def cogeneration_closure(alg, seeds, max_len, base=None, memo=None):
    """Indecomposables of length <= max_len cogenerated by the direct sum of the seeds."""
    if base is None:
        base = enumerate_indecomposables(alg, max_len, memo=memo)
    elif base.max_len < max_len:
        raise ValueError("base snapshot is shorter than the requested bound")
    cogen = direct_sum(list(seeds), algebra=alg)
    keep = [(x, m) for x, m in zip(base.members, base.measures)
            if x.length <= max_len and is_cogenerated(x, cogen)]
    return SubcatSnapshot(alg, max_len, tuple(x for x, _ in keep), tuple(m for _, m in keep),
                          "closure")


def is_submodule_closed(snapshot):
    """(True, None), or (False, (member, summand)) for the first summand of a submodule outside."""
    table = IsoClassTable(indecomposable=True)
    for x in snapshot.members:
        table.add(x)
    for x in snapshot.members:
        for sub in enumerate_submodules(x):
            if sub.length == 0:
                continue
            for s in decompose(sub.as_representation()):
                if table.index(s) is None:
                    return False, (x, s)
    return True, None


# ---------- embeddings

class EmbeddingStalled(ValueError):
    def __init__(self, message, state=None):
        super().__init__(message)
        self.state = state


def _kernel(f):
    p = f.p
    return [ffla.row_space(ffla.nullspace_mod(m, p), m.shape[1], p) if m.shape[1]
            else np.zeros((0, 0), np.int64) for m in f.mats]


def embed_avoiding(x, m, m0):
    """Injective u: x -> m with u(x) meeting m0 only in 0.

    Starting from f = 0, repeatedly take M1 = m0 + f(x), a longest submodule
    M' with M1 & M' = 0, and a map f': x -> M' whose kernel does not contain
    Ker f; then f + f' has kernel Ker f & Ker f' and still avoids m0.
    """
    p = x.p
    subs = enumerate_submodules(m)
    f = Morphism(x, m, [np.zeros((dm, dx), np.int64) for dx, dm in zip(x.dims, m.dims)],
                 check=False)
    while True:
        ker = _kernel(f)
        if all(k.shape[0] == 0 for k in ker):
            break
        m1 = m0 + image_of(f)
        free = [s for s in subs if (s & m1).is_zero()]
        best = max(s.length for s in free)
        mp = next(s for s in free if s.length == best)
        inc = mp.inclusion()
        step = None
        for g in hom_basis(x, mp.as_representation()):
            if any(((g.mats[i] @ k.T) % p).any() for i, k in enumerate(ker) if k.shape[0]):
                step = inc.compose(g)
                break
        if step is None:
            raise EmbeddingStalled("no map into a complement of M0 + f(X) shrinks the kernel",
                                   state=f)
        f = f + step
    assert (image_of(f) & m0).is_zero()
    return f


def find_embedding(x, y, cap=2 ** 12):
    """Some injective map x -> y found among all combinations of a Hom basis, or None."""
    basis = hom_basis(x, y)
    if not basis:
        return None
    if x.p ** len(basis) > cap:
        raise CapExceeded(f"embedding search over {x.p ** len(basis)} maps exceeds {cap}",
                          x.p ** len(basis))
    flats = np.array([f.flat() for f in basis], dtype=np.int64)
    for vec in ffla.all_combinations(flats, x.p)[1:]:
        mats, pos = [], 0
        for dx, dy in zip(x.dims, y.dims):
            mats.append(vec[pos:pos + dx * dy].reshape(dy, dx))
            pos += dx * dy
        f = Morphism(x, y, mats, check=False)
        if f.is_injective():
            return f
    return None


def find_high_multiplicity_indec(snapshot, d):
    """First member with [C : S(v)] >= d at every vertex v occurring in the snapshot, or None."""
    alg = snapshot.algebra
    support = [i for i in range(len(alg.vertices)) if any(x.dims[i] for x in snapshot.members)]
    for x in sorted(snapshot.members, key=sort_key):
        if all(x.dims[i] >= d for i in support):
            return x
    return None


def check_gr_bound(snapshot, pbound=None, qbound=None, gr_sub=gr_submodule):
    """(True, None) if |y| <= |gr_submodule(y)| p q for every non-simple member, else (False, y)."""
    alg = snapshot.algebra
    pb = projective_bound(alg) if pbound is None else pbound
    qb = injective_bound(alg) if qbound is None else qbound
    for y in snapshot.members:
        if y.length < 2:
            continue
        if y.length > gr_sub(y).length * pb * qb:
            return False, y
    return True, None


# ---------- export

def snapshot_to_json(snapshot):
    alg = snapshot.algebra
    doc = {
        "schema": SNAPSHOT_SCHEMA,
        "algebra": alg.name,
        "modulus": alg.p,
        "vertices": list(alg.vertices),
        "arrows": [list(a) for a in alg.arrows],
        "max_len": snapshot.max_len,
        "provenance": snapshot.provenance,
        "members": [{"dims": list(x.dims),
                     "maps": {lab: x.maps[lab].tolist() for lab, _, _ in alg.arrows},
                     "measure": list(m.elements)}
                    for x, m in zip(snapshot.members, snapshot.measures)],
    }
    return json.dumps(doc, indent=2)


def snapshot_to_tsv(snapshot):
    lines = ["length\tcount\tmeasures"]
    for n, c in snapshot.counts_by_length().items():
        ms = sorted({m for x, m in zip(snapshot.members, snapshot.measures) if x.length == n})
        lines.append(f"{n}\t{c}\t{' '.join(str(m) for m in ms)}")
    return "\n".join(lines) + "\n"
