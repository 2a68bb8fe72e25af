"""Representations, morphisms and submodules of a quiver with relations."""
import numpy as np

from .. import ffla


class RepresentationError(ValueError):
    pass


class Representation:
    """Finite-dimensional representation: one vector space per vertex, one matrix per arrow.

    ``maps[label]`` has shape (dim target, dim source).  Missing arrows are
    zero maps.  Instances are treated as immutable.
    """

    __slots__ = ("algebra", "dims", "maps", "_cache")

    def __init__(self, algebra, dims, maps=None, check=True):
        self.algebra = algebra
        p = algebra.p
        dims = tuple(int(d) for d in dims)
        if len(dims) != len(algebra.vertices):
            raise RepresentationError("one dimension per vertex expected")
        if any(d < 0 for d in dims):
            raise RepresentationError("negative dimension")
        self.dims = dims
        maps = dict(maps or {})
        unknown = set(maps) - set(algebra.quiver.arrow_index)
        if unknown:
            raise RepresentationError(f"unknown arrows {sorted(unknown)}")
        vi = algebra.quiver.vertex_index
        out = {}
        for label, s, t in algebra.arrows:
            shape = (dims[vi[t]], dims[vi[s]])
            if label in maps and maps[label] is not None:
                raw = np.array(maps[label], dtype=np.int64)
                fits = raw.shape == shape or (raw.ndim < 2 and raw.size == shape[0] * shape[1]) \
                    or (raw.size == 0 and 0 in shape)
                m = raw.reshape(shape) % p if fits else None
                if m is None:
                    raise RepresentationError(
                        f"arrow {label!r}: expected shape {shape}, got {np.shape(maps[label])}")
            else:
                m = np.zeros(shape, dtype=np.int64)
            out[label] = ffla.frozen(m)
        self.maps = out
        self._cache = {}
        if check:
            bad = relation_violation(self)
            if bad is not None:
                raise RepresentationError(f"relation {bad} does not vanish")

    @property
    def p(self):
        return self.algebra.p

    @property
    def length(self):
        return sum(self.dims)

    def __len__(self):
        return self.length

    def dim(self, v):
        return self.dims[self.algebra.quiver.vertex_index[v]]

    def dim_vector(self):
        return dict(zip(self.algebra.vertices, self.dims))

    def is_zero(self):
        return self.length == 0

    def path_matrix(self, path, start=None):
        """Matrix of a path (tuple of labels); the empty path needs ``start``."""
        q = self.algebra.quiver
        if not path:
            n = self.dim(start)
            return np.eye(n, dtype=np.int64)
        m = None
        for label in path:
            a = self.maps[label]
            m = a if m is None else (a @ m) % self.p
        return m

    def key(self):
        """Exact identity of the matrix data (not an isomorphism invariant)."""
        if "key" not in self._cache:
            self._cache["key"] = (self.dims, tuple(self.maps[a[0]].tobytes() for a in self.algebra.arrows))
        return self._cache["key"]

    def same_as(self, other):
        return self.algebra == other.algebra and self.key() == other.key()

    def __repr__(self):
        dv = ",".join(str(d) for d in self.dims)
        return f"<Representation ({dv}) over {self.algebra.name or 'algebra'}>"

    def describe(self):
        lines = [f"dims: {dict(zip(self.algebra.vertices, self.dims))}"]
        for label, s, t in self.algebra.arrows:
            m = self.maps[label]
            if m.size:
                lines.append(f"{label}: {s}->{t} {m.tolist()}")
        return "\n".join(lines)


def zero_representation(algebra):
    return Representation(algebra, [0] * len(algebra.vertices), {}, check=False)


def relation_violation(x):
    """First relation that does not evaluate to zero on ``x`` (or None)."""
    alg = x.algebra
    p = alg.p
    for rel in alg.relations:
        acc = None
        for c, pth in rel.terms:
            m = (c * x.path_matrix(pth)) % p
            acc = m if acc is None else (acc + m) % p
        if acc is not None and acc.any():
            return rel
    return None


def check(x):
    """``(True, None)`` if all relations vanish, else ``(False, relation)``."""
    vi = x.algebra.quiver.vertex_index
    for label, s, t in x.algebra.arrows:
        if x.maps[label].shape != (x.dims[vi[t]], x.dims[vi[s]]):
            raise RepresentationError(f"arrow {label!r} has the wrong shape")
    bad = relation_violation(x)
    return (bad is None, bad)


def direct_sum(xs, algebra=None):
    """Block-diagonal direct sum; the empty sum needs ``algebra``."""
    xs = list(xs)
    if not xs:
        if algebra is None:
            raise ValueError("empty direct sum needs the algebra")
        return zero_representation(algebra)
    alg = xs[0].algebra
    if any(x.algebra != alg for x in xs):
        raise RepresentationError("direct sum of representations over different algebras")
    if len(xs) == 1:
        return xs[0]
    dims = [sum(x.dims[i] for x in xs) for i in range(len(alg.vertices))]
    vi = alg.quiver.vertex_index
    maps = {}
    for label, s, t in alg.arrows:
        m = np.zeros((dims[vi[t]], dims[vi[s]]), dtype=np.int64)
        r = c = 0
        for x in xs:
            blk = x.maps[label]
            m[r:r + blk.shape[0], c:c + blk.shape[1]] = blk
            r += blk.shape[0]
            c += blk.shape[1]
        maps[label] = m
    return Representation(alg, dims, maps, check=False)


def dual(x):
    """Vector-space dual D(x) as a representation of the opposite algebra."""
    op = x.algebra.opposite()
    return Representation(op, x.dims, {lab: m.T for lab, m in x.maps.items()}, check=False)


def jh_multiplicity(x, v):
    """Jordan-Hoelder multiplicity of the simple at ``v`` (= dim x_v for a split basic algebra)."""
    return x.dim(v)


def top_dims(x):
    return [x.dims[i] - rad_basis(x)[i].shape[0] for i in range(len(x.dims))]


def rad_basis(x):
    """Per vertex, RREF basis of rad(x)_v = sum of images of arrows ending at v."""
    if "rad" not in x._cache:
        alg = x.algebra
        p = x.p
        out = []
        for v in alg.vertices:
            n = x.dim(v)
            imgs = [x.maps[lab].T for lab, _, t in alg.quiver.arrows_to(v) if x.maps[lab].size]
            out.append(ffla.row_space(np.concatenate(imgs, axis=0), n, p) if imgs
                       else np.zeros((0, n), dtype=np.int64))
        x._cache["rad"] = tuple(out)
    return x._cache["rad"]


def soc_basis(x):
    """Per vertex, RREF basis of soc(x)_v = common kernel of the arrows leaving v."""
    if "soc" not in x._cache:
        alg = x.algebra
        p = x.p
        out = []
        for v in alg.vertices:
            n = x.dim(v)
            outs = [x.maps[lab] for lab, _, _ in alg.quiver.arrows_from(v)]
            if outs and n:
                stacked = np.concatenate(outs, axis=0)
                out.append(ffla.row_space(ffla.nullspace_mod(stacked, p), n, p))
            else:
                out.append(np.eye(n, dtype=np.int64))
        x._cache["soc"] = tuple(out)
    return x._cache["soc"]


def socle_dims(x):
    return [b.shape[0] for b in soc_basis(x)]


def is_semisimple(x):
    return all(not m.any() for m in x.maps.values())


class Morphism:
    """Family of vertex maps ``mats[i]`` (shape (dim target_i, dim source_i))."""

    __slots__ = ("source", "target", "mats")

    def __init__(self, source, target, mats, check=True):
        if source.algebra != target.algebra:
            raise RepresentationError("morphism between different algebras")
        self.source = source
        self.target = target
        p = source.p
        out = []
        for i, (ds, dt) in enumerate(zip(source.dims, target.dims)):
            m = np.array(mats[i], dtype=np.int64).reshape(dt, ds) % p
            out.append(ffla.frozen(m))
        self.mats = tuple(out)
        if check and not self.is_intertwining():
            raise RepresentationError("vertex maps do not commute with the arrows")

    @property
    def p(self):
        return self.source.p

    def at(self, v):
        return self.mats[self.source.algebra.quiver.vertex_index[v]]

    def is_intertwining(self):
        alg = self.source.algebra
        vi = alg.quiver.vertex_index
        p = self.p
        for label, s, t in alg.arrows:
            lhs = (self.target.maps[label] @ self.mats[vi[s]]) % p
            rhs = (self.mats[vi[t]] @ self.source.maps[label]) % p
            if not np.array_equal(lhs, rhs):
                return False
        return True

    def compose(self, first):
        """``self o first``."""
        p = self.p
        return Morphism(first.source, self.target,
                        [(a @ b) % p for a, b in zip(self.mats, first.mats)], check=False)

    def __add__(self, other):
        return Morphism(self.source, self.target,
                        [(a + b) % self.p for a, b in zip(self.mats, other.mats)], check=False)

    def scale(self, c):
        return Morphism(self.source, self.target, [(c * a) % self.p for a in self.mats], check=False)

    def is_zero(self):
        return all(not m.any() for m in self.mats)

    def is_injective(self):
        p = self.p
        return all(ffla.rank_mod(m, p) == m.shape[1] for m in self.mats if m.shape[1])

    def is_surjective(self):
        p = self.p
        return all(ffla.rank_mod(m, p) == m.shape[0] for m in self.mats if m.shape[0])

    def is_iso(self):
        return self.source.dims == self.target.dims and self.is_injective()

    def flat(self):
        return np.concatenate([m.reshape(-1) for m in self.mats]) if self.mats else np.zeros(0, np.int64)

    def __repr__(self):
        return f"<Morphism {self.source.dims} -> {self.target.dims}>"


def identity(x):
    return Morphism(x, x, [np.eye(d, dtype=np.int64) for d in x.dims], check=False)


def zero_morphism(x, y):
    return Morphism(x, y, [np.zeros((dy, dx), dtype=np.int64) for dx, dy in zip(x.dims, y.dims)],
                    check=False)


class SubmoduleHandle:
    """Arrow-stable family of subspaces of ``ambient``; bases are RREF rows."""

    __slots__ = ("ambient", "basis", "_rep", "_key")

    def __init__(self, ambient, basis, check=True):
        self.ambient = ambient
        p = ambient.p
        out = []
        for i, d in enumerate(ambient.dims):
            b = np.asarray(basis[i], dtype=np.int64)
            b = b.reshape(-1, d) if d else np.zeros((0, 0), dtype=np.int64)
            out.append(ffla.frozen(ffla.row_space(b, d, p)))
        self.basis = tuple(out)
        self._rep = None
        self._key = None
        if check and not self.is_arrow_stable():
            raise RepresentationError("subspace family is not arrow-stable")

    @property
    def dims(self):
        return tuple(b.shape[0] for b in self.basis)

    @property
    def length(self):
        return sum(self.dims)

    def key(self):
        if self._key is None:
            self._key = tuple((b.shape[0], b.tobytes()) for b in self.basis)
        return self._key

    def __eq__(self, other):
        return isinstance(other, SubmoduleHandle) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"<Submodule dims={self.dims} of {self.ambient.dims}>"

    def is_arrow_stable(self):
        x = self.ambient
        vi = x.algebra.quiver.vertex_index
        for label, s, t in x.algebra.arrows:
            src = self.basis[vi[s]]
            if src.shape[0] == 0:
                continue
            img = (x.maps[label] @ src.T).T % x.p
            if not ffla.contains(self.basis[vi[t]], img, x.p):
                return False
        return True

    def contains(self, other):
        p = self.ambient.p
        return all(ffla.contains(a, b, p) for a, b in zip(self.basis, other.basis))

    def is_zero(self):
        return self.length == 0

    def is_whole(self):
        return self.dims == self.ambient.dims

    def __add__(self, other):
        p = self.ambient.p
        return SubmoduleHandle(self.ambient, [ffla.subspace_sum(a, b, p) for a, b in
                                              zip(self.basis, other.basis)], check=False)

    def __and__(self, other):
        p = self.ambient.p
        return SubmoduleHandle(self.ambient, [ffla.intersect(a, b, p) for a, b in
                                              zip(self.basis, other.basis)], check=False)

    def as_representation(self):
        """The submodule as a representation in the coordinates of its RREF basis."""
        if self._rep is None:
            self._rep = restrict_to_basis(self.ambient, self.basis)
        return self._rep

    def inclusion(self):
        sub = self.as_representation()
        return Morphism(sub, self.ambient, [b.T for b in self.basis], check=False)

    def quotient(self):
        return quotient_rep(self.ambient, self.basis)


def restrict_to_basis(x, basis):
    """Representation on the span of RREF ``basis`` (assumed arrow-stable)."""
    alg = x.algebra
    vi = alg.quiver.vertex_index
    p = x.p
    maps = {}
    for label, s, t in alg.arrows:
        src = basis[vi[s]]
        tgt = basis[vi[t]]
        img = (x.maps[label] @ src.T) % p
        piv = ffla.pivots_of(tgt)
        maps[label] = img[piv, :] if tgt.shape[0] else np.zeros((0, src.shape[0]), np.int64)
    dims = [b.shape[0] for b in basis]
    return Representation(alg, dims, maps, check=False)


def quotient_rep(x, basis):
    """x / U for the arrow-stable family with RREF ``basis``; coordinates are the non-pivot columns."""
    alg = x.algebra
    vi = alg.quiver.vertex_index
    p = x.p
    free = [ffla.complement_columns(b, d) for b, d in zip(basis, x.dims)]
    maps = {}
    for label, s, t in alg.arrows:
        fs, ft = free[vi[s]], free[vi[t]]
        cols = x.maps[label][:, fs]
        red = ffla.reduce_rows(cols.T, basis[vi[t]], p)
        maps[label] = red[:, ft].T
    dims = [len(f) for f in free]
    return Representation(alg, dims, maps, check=False)


def quotient_projection(x, basis):
    """The canonical projection x -> x/U matching :func:`quotient_rep`."""
    q = quotient_rep(x, basis)
    p = x.p
    mats = []
    for b, d in zip(basis, x.dims):
        free = ffla.complement_columns(b, d)
        red = ffla.reduce_rows(np.eye(d, dtype=np.int64), b, p)
        mats.append(red[:, free].T)
    return Morphism(x, q, mats, check=False)


def whole(x):
    return SubmoduleHandle(x, [np.eye(d, dtype=np.int64) for d in x.dims], check=False)


def zero_submodule(x):
    return SubmoduleHandle(x, [np.zeros((0, d), dtype=np.int64) for d in x.dims], check=False)


def image_of(f):
    p = f.p
    return SubmoduleHandle(f.target, [ffla.row_space(m.T, m.shape[0], p) for m in f.mats],
                           check=False)


def kernel_of(f):
    p = f.p
    sub = SubmoduleHandle(f.source, [ffla.nullspace_mod(m, p) if m.shape[1] else
                                     np.zeros((0, 0), np.int64) for m in f.mats], check=False)
    assert sub.is_arrow_stable()
    return sub


def submodule_from_generators(x, vectors):
    """Smallest submodule containing the given (vertex, vector) pairs."""
    alg = x.algebra
    vi = alg.quiver.vertex_index
    p = x.p
    spaces = [np.zeros((0, d), dtype=np.int64) for d in x.dims]
    queue = []
    for v, vec in vectors:
        queue.append((vi[v], np.asarray(vec, dtype=np.int64) % p))
    while queue:
        i, vec = queue.pop()
        if not vec.any() or ffla.contains(spaces[i], vec, p):
            continue
        spaces[i] = ffla.subspace_sum(spaces[i], vec.reshape(1, -1), p)
        for label, _, t in alg.quiver.arrows_from(alg.vertices[i]):
            queue.append((vi[t], (x.maps[label] @ vec) % p))
    return SubmoduleHandle(x, spaces, check=False)


def from_inclusion(f):
    """Image of an injective morphism, as a submodule handle of its target."""
    return image_of(f)


def restrict(x, subalgebra):
    """Restriction of x to the full subquiver on which ``subalgebra`` is defined."""
    q = x.algebra.quiver
    dims = [x.dim(v) for v in subalgebra.vertices]
    maps = {label: x.maps[label] for label, _, _ in subalgebra.arrows}
    if any(a not in q.arrow_index for a in maps):
        raise RepresentationError("subalgebra arrows are not arrows of the ambient quiver")
    return Representation(subalgebra, dims, maps)
