"""Quivers with relations over F_p and their indecomposable projectives, injectives and simples.

Conventions (used everywhere in the package):

* an arrow ``alpha: i -> j`` acts on a representation as a linear map X_i -> X_j;
* a path is a tuple of arrow labels in the order they are traversed, so the
  composite "beta then alpha" is the path ``("beta", "alpha")``;
* the projective P(v) has as basis the residues of paths *starting* at v, the
  injective I(v) the duals of residues of paths *ending* at v.

Relations must be homogeneous (all terms of one length) and of length >= 2.
The residue basis is computed by linear elimination in every graded piece
(source, target, length) up to the first length at which every piece
vanishes; that length minus one is the nilpotency bound.
"""
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import ffla

DEFAULT_MAX_PATH_LENGTH = 24


class NonAdmissibleError(ValueError):
    """The relations do not cut the path algebra down to finite dimension."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True)
class Quiver:
    vertices: tuple
    arrows: tuple  # of (label, source, target)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "arrows", tuple(tuple(a) for a in self.arrows))
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("vertex labels must be unique")
        labels = [a[0] for a in self.arrows]
        if len(set(labels)) != len(labels):
            raise ValueError("arrow labels must be unique")
        vs = set(self.vertices)
        for label, s, t in self.arrows:
            if s not in vs or t not in vs:
                raise ValueError(f"arrow {label!r} has an undeclared endpoint")

    @cached_property
    def vertex_index(self):
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def arrow_index(self):
        return {a[0]: i for i, a in enumerate(self.arrows)}

    def arrow(self, label):
        return self.arrows[self.arrow_index[label]]

    def source(self, label):
        return self.arrow(label)[1]

    def target(self, label):
        return self.arrow(label)[2]

    def arrows_from(self, v):
        return [a for a in self.arrows if a[1] == v]

    def arrows_to(self, v):
        return [a for a in self.arrows if a[2] == v]

    def path_ends(self, path):
        """(source, target) of a nonempty path, checking consecutiveness."""
        s = self.source(path[0])
        cur = s
        for label in path:
            if self.source(label) != cur:
                raise ValueError(f"path {path} is not composable at {label!r}")
            cur = self.target(label)
        return s, cur

    def opposite(self):
        return Quiver(self.vertices, tuple((lab, t, s) for lab, s, t in self.arrows))

    def full_subquiver(self, vertices):
        keep = [v for v in self.vertices if v in set(vertices)]
        ks = set(keep)
        return Quiver(tuple(keep), tuple(a for a in self.arrows if a[1] in ks and a[2] in ks))

    def has_oriented_cycle(self):
        indeg = {v: 0 for v in self.vertices}
        for _, s, t in self.arrows:
            indeg[t] += 1
        ready = [v for v in self.vertices if indeg[v] == 0]
        seen = 0
        while ready:
            v = ready.pop()
            seen += 1
            for _, s, t in self.arrows_from(v):
                indeg[t] -= 1
                if indeg[t] == 0:
                    ready.append(t)
        return seen != len(self.vertices)


@dataclass(frozen=True)
class Relation:
    source: object
    target: object
    terms: tuple  # of (coefficient, path)

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple((int(c), tuple(pth)) for c, pth in self.terms))

    @property
    def degree(self):
        return len(self.terms[0][1])

    def opposite(self):
        return Relation(self.target, self.source,
                        tuple((c, tuple(reversed(pth))) for c, pth in self.terms))


def zero_relation(quiver, *path):
    s, t = quiver.path_ends(path)
    return Relation(s, t, ((1, tuple(path)),))


@dataclass
class _Piece:
    paths: list          # every path of this (source, target, length)
    basis: list          # residue basis (subset of paths)
    nf: np.ndarray       # nf[j] = coordinates of path j on the basis


class AlgebraPresentation:
    """Quiver, admissible homogeneous relations, modulus.

    Construction validates the presentation; a non-admissible one raises
    :class:`NonAdmissibleError` carrying a witness path.
    """

    def __init__(self, quiver, relations=(), p=2, nilpotency=None, name=None,
                 max_path_length=DEFAULT_MAX_PATH_LENGTH):
        self.quiver = quiver
        self.relations = tuple(relations)
        self.p = ffla.check_prime(p)
        self.name = name
        self._requested_bound = nilpotency
        self._max_len = max_path_length if nilpotency is None else nilpotency + 1
        self._check_relations()
        self._pieces = {}
        self.nilpotency = self._build_pieces()
        self._opposite = None

    # -- identity

    def _key(self):
        return (self.quiver, self.relations, self.p)

    def __eq__(self, other):
        return isinstance(other, AlgebraPresentation) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        tag = f" {self.name!r}" if self.name else ""
        return (f"<AlgebraPresentation{tag}: {len(self.quiver.vertices)} vertices, "
                f"{len(self.quiver.arrows)} arrows, {len(self.relations)} relations, p={self.p}>")

    @property
    def vertices(self):
        return self.quiver.vertices

    @property
    def arrows(self):
        return self.quiver.arrows

    @property
    def is_hereditary(self):
        return not self.relations and not self.quiver.has_oriented_cycle()

    # -- validation and graded elimination

    def _check_relations(self):
        for rel in self.relations:
            if not rel.terms:
                raise ValueError("empty relation")
            lengths = {len(pth) for _, pth in rel.terms}
            if len(lengths) != 1:
                raise ValueError(f"relation {rel} is not homogeneous")
            if min(lengths) < 2:
                raise ValueError(f"relation {rel} has a term of length < 2 (not admissible)")
            for _, pth in rel.terms:
                if self.quiver.path_ends(pth) != (rel.source, rel.target):
                    raise ValueError(f"term {pth} does not run {rel.source} -> {rel.target}")

    def _paths_of_length(self, length, prev):
        if length == 0:
            return {(v, v): [()] for v in self.quiver.vertices}
        out = {}
        for (s, t), paths in prev.items():
            for pth in paths:
                for label, _, t2 in self.quiver.arrows_from(t):
                    out.setdefault((s, t2), []).append(pth + (label,))
        return out

    def _ideal_rows(self, s, t, length, paths, index):
        p = self.p
        rows = []
        for rel in self.relations:
            m = rel.degree
            if m > length:
                continue
            for i in range(length - m + 1):
                j = length - m - i
                for u in self._raw_paths.get(i, {}).get((s, rel.source), []):
                    for w in self._raw_paths.get(j, {}).get((rel.target, t), []):
                        row = np.zeros(len(paths), dtype=np.int64)
                        for c, pth in rel.terms:
                            row[index[u + pth + w]] += c
                        rows.append(row % p)
        return rows

    def _build_pieces(self):
        p = self.p
        self._raw_paths = {}
        prev = None
        for length in range(self._max_len + 1):
            cur = self._paths_of_length(length, prev)
            self._raw_paths[length] = cur
            prev = cur
            nonzero = None
            for (s, t), paths in sorted(cur.items(), key=lambda kv: self._pair_order(kv[0])):
                index = {pth: k for k, pth in enumerate(paths)}
                rows = self._ideal_rows(s, t, length, paths, index)
                n = len(paths)
                if rows:
                    ideal = ffla.row_space(np.array(rows), n, p)
                else:
                    ideal = np.zeros((0, n), dtype=np.int64)
                free = ffla.complement_columns(ideal, n)
                nf = ffla.reduce_rows(np.eye(n, dtype=np.int64), ideal, p)[:, free]
                piece = _Piece(paths, [paths[f] for f in free], nf)
                self._pieces[(s, t, length)] = piece
                if piece.basis and nonzero is None:
                    nonzero = piece.basis[0]
            if nonzero is None:
                return length - 1
            prev = {k: v for k, v in cur.items()}
        raise NonAdmissibleError(
            f"path {nonzero} of length {self._max_len} does not vanish modulo the relations",
            witness=nonzero)

    def _pair_order(self, pair):
        vi = self.quiver.vertex_index
        return (vi[pair[0]], vi[pair[1]])

    # -- residue bases and normal forms

    def basis_paths(self, s, t):
        """Residue basis of the paths s -> t, ordered by length then discovery order."""
        out = []
        for length in range(self.nilpotency + 1):
            piece = self._pieces.get((s, t, length))
            if piece is not None:
                out.extend(piece.basis)
        return out

    def normal_form(self, path):
        """Coefficients (dict basis path -> coefficient) of the residue of ``path``."""
        path = tuple(path)
        if not path:
            raise ValueError("use the vertex to denote a trivial path")
        s, t = self.quiver.path_ends(path)
        length = len(path)
        piece = self._pieces.get((s, t, length))
        if piece is None:
            return {}
        j = piece.paths.index(path)
        row = piece.nf[j]
        return {piece.basis[k]: int(c) for k, c in enumerate(row) if c}

    def total_dimension(self):
        return sum(len(pc.basis) for pc in self._pieces.values())

    def graded_dimensions(self):
        """{(source, target, length): dimension of the residue space}."""
        return {k: len(pc.basis) for k, pc in sorted(
            self._pieces.items(), key=lambda kv: (kv[0][2],) + self._pair_order(kv[0][:2]))
            if pc.basis}

    # -- derived presentations

    def opposite(self):
        if self._opposite is None:
            op = AlgebraPresentation(self.quiver.opposite(),
                                     [r.opposite() for r in self.relations], self.p,
                                     name=f"{self.name}^op" if self.name else None)
            op._opposite = self
            self._opposite = op
        return self._opposite

    def full_subalgebra(self, vertices):
        """Presentation of the modules supported on ``vertices`` (terms leaving the set vanish)."""
        sub = self.quiver.full_subquiver(vertices)
        keep = set(sub.vertices)
        rels = []
        for rel in self.relations:
            if rel.source not in keep or rel.target not in keep:
                continue
            terms = []
            for c, pth in rel.terms:
                verts = [self.quiver.source(a) for a in pth] + [self.quiver.target(pth[-1])]
                if all(v in keep for v in verts):
                    terms.append((c, pth))
            if terms:
                rels.append(Relation(rel.source, rel.target, tuple(terms)))
        return AlgebraPresentation(sub, rels, self.p,
                                   name=f"{self.name}|{','.join(map(str, sub.vertices))}"
                                   if self.name else None)


def validate(alg):
    """Summary of an (already validated) presentation."""
    return {
        "total_dimension": alg.total_dimension(),
        "nilpotency": alg.nilpotency,
        "graded_dimensions": alg.graded_dimensions(),
        "basis": {(s, t): alg.basis_paths(s, t)
                  for s in alg.vertices for t in alg.vertices if alg.basis_paths(s, t)},
    }


# ---------- projectives, injectives, simples

def projective_basis(alg, v):
    """{w: residue basis paths v -> w} (the trivial path at v is ``()``)."""
    return {w: alg.basis_paths(v, w) for w in alg.vertices}


def injective_basis(alg, v):
    return {w: alg.basis_paths(w, v) for w in alg.vertices}


def _coords(alg, path, basis_list):
    vec = np.zeros(len(basis_list), dtype=np.int64)
    if not path:
        return vec
    pos = {b: k for k, b in enumerate(basis_list)}
    for b, c in alg.normal_form(path).items():
        vec[pos[b]] = c
    return vec


def projective(alg, v):
    from .repcore.representation import Representation
    basis = projective_basis(alg, v)
    maps = {}
    for label, s, t in alg.arrows:
        src, tgt = basis[s], basis[t]
        m = np.zeros((len(tgt), len(src)), dtype=np.int64)
        for k, q in enumerate(src):
            m[:, k] = _coords(alg, q + (label,), tgt)
        maps[label] = m
    dims = [len(basis[w]) for w in alg.vertices]
    return Representation(alg, dims, maps)


def injective(alg, v):
    from .repcore.representation import Representation
    basis = injective_basis(alg, v)
    maps = {}
    for label, s, t in alg.arrows:
        src, tgt = basis[s], basis[t]
        m = np.zeros((len(tgt), len(src)), dtype=np.int64)
        for r, q2 in enumerate(tgt):
            m[r, :] = _coords(alg, (label,) + q2, src)
        maps[label] = m
    dims = [len(basis[w]) for w in alg.vertices]
    return Representation(alg, dims, maps)


def simple(alg, v):
    from .repcore.representation import Representation
    dims = [1 if w == v else 0 for w in alg.vertices]
    return Representation(alg, dims, {})


def projective_bound(alg):
    """Maximal length of an indecomposable projective."""
    return max(sum(len(b) for b in projective_basis(alg, v).values()) for v in alg.vertices)


def injective_bound(alg):
    return max(sum(len(b) for b in injective_basis(alg, v).values()) for v in alg.vertices)
