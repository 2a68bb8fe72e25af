"""Plain-text algebra and module files.

Algebra file, one ``key: value`` per line, ``#`` starts a comment::

    name: chain-zero        (optional)
    modulus: 2
    vertices: a b c
    arrow: alpha b a        (label source target; repeatable)
    relation: 1*beta.alpha  (terms coef*label.label..., joined by + or -; repeatable)
    nilpotency: 2           (optional; checked, not trusted)

Module file::

    algebra: k2             (registry name, or algebra file path relative to this file)
    dims: 1 2               (one per vertex, in vertex order)
    matrix a: 1 0           (row-major entries in [0, p); omitted arrows are zero)
"""
import re
from pathlib import Path

import numpy as np

from .presentation import AlgebraPresentation, Quiver, Relation
from .repcore.representation import Representation


class FormatError(ValueError):
    pass


_ALGEBRA_KEYS = {"name", "modulus", "vertices", "arrow", "relation", "nilpotency"}
_TERM = re.compile(r"\s*([+-])?\s*(?:(\d+)\s*\*)?\s*([^\s+\-*]+)")


def _lines(text):
    for num, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise FormatError(f"line {num}: expected 'key: value'")
        key, value = line.split(":", 1)
        yield num, key.strip(), value.strip()


def parse_relation(text, quiver):
    terms = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise FormatError(f"cannot parse relation {text!r}")
        sign, coef, path = m.groups()
        c = int(coef) if coef else 1
        if sign == "-":
            c = -c
        terms.append((c, tuple(path.split("."))))
        pos = m.end()
    if not terms:
        raise FormatError("empty relation")
    try:
        ends = {quiver.path_ends(pth) for _, pth in terms}
    except (KeyError, ValueError) as err:
        raise FormatError(f"bad path in relation {text!r}: {err}") from err
    if len(ends) != 1:
        raise FormatError(f"relation {text!r} mixes paths with different ends")
    s, t = ends.pop()
    return Relation(s, t, tuple(terms))


def parse_algebra(text):
    fields = {"arrow": [], "relation": []}
    for num, key, value in _lines(text):
        if key not in _ALGEBRA_KEYS:
            raise FormatError(f"line {num}: unknown key {key!r}")
        if key in ("arrow", "relation"):
            fields[key].append(value)
        elif key in fields:
            raise FormatError(f"line {num}: duplicate key {key!r}")
        else:
            fields[key] = value
    for key in ("modulus", "vertices"):
        if key not in fields:
            raise FormatError(f"missing key {key!r}")
    arrows = []
    for a in fields["arrow"]:
        parts = a.split()
        if len(parts) != 3:
            raise FormatError(f"arrow needs 'label source target', got {a!r}")
        arrows.append(tuple(parts))
    try:
        quiver = Quiver(tuple(fields["vertices"].split()), tuple(arrows))
        p = int(fields["modulus"])
        rels = [parse_relation(r, quiver) for r in fields["relation"]]
        nil = int(fields["nilpotency"]) if "nilpotency" in fields else None
        return AlgebraPresentation(quiver, rels, p, nilpotency=nil, name=fields.get("name"))
    except FormatError:
        raise
    except ValueError as err:
        raise FormatError(str(err)) from err


def format_algebra(alg):
    lines = []
    if alg.name:
        lines.append(f"name: {alg.name}")
    lines.append(f"modulus: {alg.p}")
    lines.append("vertices: " + " ".join(map(str, alg.vertices)))
    lines += [f"arrow: {label} {s} {t}" for label, s, t in alg.arrows]
    for rel in alg.relations:
        body = " + ".join(f"{c % alg.p}*{'.'.join(pth)}" for c, pth in rel.terms)
        lines.append(f"relation: {body}")
    return "\n".join(lines) + "\n"


def parse_module(text, resolve):
    """Module from file text; ``resolve(name)`` turns the algebra reference into a presentation."""
    algebra = dims = None
    mats = {}
    for num, key, value in _lines(text):
        if key == "algebra":
            algebra = resolve(value)
        elif key == "dims":
            dims = [int(t) for t in value.split()]
        elif key.startswith("matrix "):
            mats[key.split(None, 1)[1].strip()] = [int(t) for t in value.split()]
        else:
            raise FormatError(f"line {num}: unknown key {key!r}")
    if algebra is None or dims is None:
        raise FormatError("module file needs 'algebra' and 'dims'")
    if len(dims) != len(algebra.vertices):
        raise FormatError(f"dims has {len(dims)} entries for {len(algebra.vertices)} vertices")
    vi = algebra.quiver.vertex_index
    maps = {}
    for label, entries in mats.items():
        if label not in algebra.quiver.arrow_index:
            raise FormatError(f"unknown arrow {label!r}")
        _, s, t = algebra.quiver.arrow(label)
        r, c = dims[vi[t]], dims[vi[s]]
        if len(entries) != r * c:
            raise FormatError(f"matrix {label}: expected {r * c} entries, got {len(entries)}")
        if any(e < 0 or e >= algebra.p for e in entries):
            raise FormatError(f"matrix {label}: entries must lie in [0, {algebra.p})")
        maps[label] = np.array(entries, dtype=np.int64).reshape(r, c)
    return Representation(algebra, dims, maps, check=False)


def format_module(x, algebra_ref=None):
    alg = x.algebra
    lines = [f"algebra: {algebra_ref or alg.name}", "dims: " + " ".join(map(str, x.dims))]
    for label, _, _ in alg.arrows:
        m = x.maps[label]
        if m.size:
            lines.append(f"matrix {label}: " + " ".join(str(int(e)) for e in m.reshape(-1)))
    return "\n".join(lines) + "\n"


def load_algebra(ref):
    """Registry name or path to an algebra file."""
    from . import registry
    if ref in registry.ALGEBRAS:
        return registry.algebra(ref)
    path = Path(ref)
    if not path.exists():
        raise FileNotFoundError(ref)
    return parse_algebra(path.read_text())


def load_module(path):
    path = Path(path)
    text = path.read_text()

    def resolve(ref):
        from . import registry
        if ref in registry.ALGEBRAS:
            return registry.algebra(ref)
        cand = path.parent / ref
        if cand.exists():
            return parse_algebra(cand.read_text())
        raise FormatError(f"unknown algebra reference {ref!r}")
    return parse_module(text, resolve)
