"""Built-in algebras, prebuilt modules and the example checks behind ``grquiver verify``."""
import time
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import ffla
from .artrans import is_projective
from .explorer import (cogeneration_closure, enumerate_indecomposables, is_submodule_closed,
                       preprojectives)
from .grmeasure import GRMeasure, gr_measure
from .presentation import AlgebraPresentation, Quiver, projective, zero_relation
from .repcore.covering import DOUBLED_CHAIN_QUIVER, equal_kernels, zigzag_module
from .repcore.decomposition import CapExceeded, decompose, is_indecomposable, iso_test
from .repcore.representation import Representation, is_semisimple, restrict, top_dims
from .tame import euler_data, tau_cogeneration_check, mono_or_epi_scan, joint_embedding_scan

KRONECKER = Quiver(("1", "2"), (("a", "1", "2"), ("b", "1", "2")))
K3_QUIVER = Quiver(("1", "2"), (("alpha", "1", "2"), ("beta", "1", "2"), ("gamma", "1", "2")))
ZERO_RELATION_QUIVER = Quiver(("a", "b", "c"), (("alpha", "b", "a"), ("beta", "c", "b"),
                                         ("betap", "c", "b")))
D4_QUIVER = Quiver(("0", "1", "2", "3", "4"), tuple((f"x{i}", str(i), "0") for i in range(1, 5)))

ALGEBRAS = ("k2", "k3", "doubled-chain", "chain-zero", "chain-zero-alt", "d4-subspace")


@lru_cache(maxsize=None)
def algebra(name, p=2):
    if name == "k2":
        return AlgebraPresentation(KRONECKER, (), p, name="k2")
    if name == "k3":
        return AlgebraPresentation(K3_QUIVER, (), p, name="k3")
    if name == "doubled-chain":
        return AlgebraPresentation(DOUBLED_CHAIN_QUIVER, (), p, name="doubled-chain")
    if name == "chain-zero":
        rel = zero_relation(ZERO_RELATION_QUIVER, "beta", "alpha")
        return AlgebraPresentation(ZERO_RELATION_QUIVER, (rel,), p, name="chain-zero")
    if name == "chain-zero-alt":
        rel = zero_relation(ZERO_RELATION_QUIVER, "betap", "alpha")
        return AlgebraPresentation(ZERO_RELATION_QUIVER, (rel,), p, name="chain-zero-alt")
    if name == "d4-subspace":
        return AlgebraPresentation(D4_QUIVER, (), p, name="d4-subspace")
    raise KeyError(f"unknown algebra {name!r}; known: {', '.join(ALGEBRAS)}")


# ---------- prebuilt modules

def module_320(p=2):
    """Indecomposable module of dimension vector (3,2,0) on the doubled chain quiver."""
    alg = algebra("doubled-chain", p)
    return Representation(alg, (3, 2, 0), {"alpha": [[1, 0], [0, 1], [0, 0]],
                                           "alphap": [[0, 0], [1, 0], [0, 1]]})


def in_split_restriction_class(x):
    """Doubled chain modules whose restriction to a, b is projective plus semisimple
    and whose restriction to b, c is projective."""
    alg = x.algebra
    ab = alg.full_subalgebra(["a", "b"])
    bc = alg.full_subalgebra(["b", "c"])
    if not is_projective(restrict(x, bc)):
        return False
    return all(s.length == 1 or is_projective(s) for s in decompose(restrict(x, ab)))


def k3_point_basis(a, p=2):
    """Invertible 3x3 matrix whose last row is the point a and whose other rows are unit vectors."""
    a = np.asarray(a, dtype=np.int64) % p
    lead = int(np.flatnonzero(a)[0])
    rows = [np.eye(3, dtype=np.int64)[j] for j in range(3) if j != lead] + [a]
    return np.array(rows)


def k3_quotient(a, p=2):
    """K(3) modulo the arrow combination a, presented on two new arrows u, v.

    New arrows are the first two rows of the point basis applied to (alpha, beta, gamma);
    the third combination is the one killed by the ideal.
    """
    name = "k3/(" + ":".join(str(int(c)) for c in a) + ")"
    quiver = Quiver(("1", "2"), (("u", "1", "2"), ("v", "1", "2")))
    return AlgebraPresentation(quiver, (), p, name=name)


def lift_to_k3(x, a):
    """The K(3)-module annihilated by a0 alpha + a1 beta + a2 gamma corresponding to x."""
    p = x.p
    inv = ffla.inv_mod(k3_point_basis(a, p), p)
    new = [x.maps["u"], x.maps["v"], np.zeros_like(x.maps["u"])]
    old = {}
    for j, label in enumerate(("alpha", "beta", "gamma")):
        old[label] = sum(int(inv[j, k]) * new[k] for k in range(3)) % p
    return Representation(algebra("k3", p), x.dims, old)


def k3_closure(a, max_len, p=2):
    """Cogeneration closure of the preprojective K(3)/I_a-modules, lifted to K(3)."""
    alg = k3_quotient(a, p)
    seeds = preprojectives(alg, max_len)
    snap = cogeneration_closure(alg, seeds, max_len)
    return [lift_to_k3(x, a) for x in snap.members]


def closure_intersection(xs, ys):
    return [x for x in xs if any(iso_test(x, y) for y in ys)]


# ---------- entries and verification

@dataclass(frozen=True)
class ExampleEntry:
    id: str
    title: str
    algebra: str
    checks: tuple      # (name, provenance)


@dataclass
class CheckResult:
    name: str
    provenance: str
    status: str        # pass | fail | skipped-at-cap
    detail: str = ""
    seconds: float = 0.0


@dataclass
class VerifyReport:
    example: str
    caps: dict
    checks: list = field(default_factory=list)

    @property
    def ok(self):
        return all(c.status != "fail" for c in self.checks)

    @property
    def hard_failure(self):
        return any(c.status == "fail" and c.provenance == "stated" for c in self.checks)


ENTRIES = (
    ExampleEntry("kronecker-cogeneration", "preprojective cogeneration on the Kronecker quiver", "k2",
                 (("cogeneration index exists at offset 1", "derived"),
                  ("P(2) cogenerated by tau^-j P(2), j>=1", "derived"))),
    ExampleEntry("kronecker-defect", "defect checks on the Kronecker quiver", "k2",
                 (("maps to regular modules are mono or epi", "stated"),
                  ("joint embedding: identity witness at defect -1", "stated"),
                  ("defect bounded by 6 in absolute value", "stated"),
                  ("joint embedding for the four-subspace simple projective", "derived"))),
    ExampleEntry("k3-point-closures", "K(3) modulo one arrow combination", "k3",
                 (("closures meet in semisimple projectives", "stated"),)),
    ExampleEntry("zigzag-measures", "zigzag covering modules on a <= b <= c", "doubled-chain",
                 (("measure of zigzag 1", "stated"), ("measure of zigzag 2", "stated"),
                  ("length 2+5n and top n", "stated"), ("equal kernels", "stated"),
                  ("(3,2,0) module", "stated"))),
    ExampleEntry("vanishing-closure", "preprojectives vanishing at a", "chain-zero",
                 (("closure grows with the cap", "stated"), ("closure is submodule-closed", "stated"))),
)


def list_examples():
    return list(ENTRIES)


def entry(example_id):
    for e in ENTRIES:
        if e.id == example_id:
            return e
    raise KeyError(f"unknown example {example_id!r}; known: {', '.join(e.id for e in ENTRIES)}")


def _run(report, name, provenance, fn):
    t0 = time.perf_counter()
    try:
        ok, detail = fn()
        status = "pass" if ok else "fail"
    except CapExceeded as err:
        status, detail = "skipped-at-cap", str(err)
    report.checks.append(CheckResult(name, provenance, status, detail,
                                     time.perf_counter() - t0))


def verify(example_id, caps=None, k3=False, alt=False, points=None):
    """Run the checks of one registry entry; ``caps`` are length bounds (entry-specific)."""
    e = entry(example_id)
    caps = list(caps or [])
    fn = {"kronecker-cogeneration": _verify_cogeneration, "kronecker-defect": _verify_defect,
          "k3-point-closures": _verify_k3, "zigzag-measures": _verify_zigzag,
          "vanishing-closure": _verify_vanishing}[e.id]
    return fn(e, caps, k3=k3, alt=alt, points=points)


def _verify_cogeneration(e, caps, k3=False, **_):
    alg = algebra("k3" if k3 else "k2")
    jmax = caps[0] if caps else (2 if k3 else 4)
    report = VerifyReport(e.id, {"jmax": jmax, "algebra": alg.name})
    names = [n for n, _ in e.checks]

    def kt():
        r = tau_cogeneration_check(alg, 1, jmax)
        return r.n_b is not None, f"n(1) = {r.n_b}"

    def p2():
        r = tau_cogeneration_check(alg, 0, jmax)
        j = r.least_j.get(("2", "2", 0))
        return j is not None and j <= 1, f"least j = {j}"
    _run(report, names[0], "derived", kt)
    _run(report, names[1], "derived", p2)
    return report


def _verify_defect(e, caps, **_):
    cap = caps[0] if caps else 4
    alg = algebra("k2")
    report = VerifyReport(e.id, {"max_len": cap})

    def mono_epi():
        r = mono_or_epi_scan(alg, cap)
        return r.ok and not r.ambiguous, (f"{r.checked} maps checked, "
                                          f"{len(r.counterexamples)} counterexamples")

    def joint():
        r = joint_embedding_scan(alg, projective(alg, "1"), cap)
        return r.found and len(r.maps) == 1 and r.maps[0].is_iso(), r.note

    def bound():
        ed = euler_data(alg)
        snap = enumerate_indecomposables(alg, cap)
        ds = sorted({ed.defect_of(x.dims) for x in snap.members})
        return all(-1 <= d <= 1 for d in ds) and all(abs(d) <= 6 for d in ds), f"defects {ds}"

    def d4():
        d4alg = algebra("d4-subspace")
        r = joint_embedding_scan(d4alg, projective(d4alg, "0"), cap)
        # regression: a simple module has no proper nonzero quotient of defect -1
        return not r.found, r.note
    for (name, prov), fn in zip(e.checks, (mono_epi, joint, bound, d4)):
        _run(report, name, prov, fn)
    return report


def _verify_k3(e, caps, points=None, **_):
    cap = caps[0] if caps else 4
    a, b = points or ((1, 0, 0), (0, 1, 0))
    report = VerifyReport(e.id, {"max_len": cap, "points": [list(a), list(b)]})

    def meet():
        common = closure_intersection(k3_closure(a, cap), k3_closure(b, cap))
        good = all(is_semisimple(x) and is_projective(x) for x in common)
        return good and bool(common), f"intersection dims {[x.dims for x in common]}"
    _run(report, e.checks[0][0], "stated", meet)
    return report


def _verify_zigzag(e, caps, **_):
    alg = algebra("doubled-chain")
    report = VerifyReport(e.id, {"n": [1, 2, 3]})
    names = [n for n, _ in e.checks]

    def measure(n, expected):
        def run():
            m = gr_measure(zigzag_module(n, alg))
            return m == GRMeasure(expected), str(m)
        return run

    def lengths():
        got = [(zigzag_module(n, alg).length, sum(top_dims(zigzag_module(n, alg)))) for n in (1, 2, 3)]
        return got == [(2 + 5 * n, n) for n in (1, 2, 3)], str(got)

    def kernels():
        return all(equal_kernels(zigzag_module(n, alg), "alpha", "alphap") for n in (1, 2, 3)), ""

    def m320():
        x = module_320()
        sub = alg.full_subalgebra(["a", "b"])
        r = restrict(x, sub)
        ok = (is_indecomposable(x) and is_indecomposable(r) and not is_projective(r)
              and not is_semisimple(r))
        return ok, f"restriction dims {r.dims}"
    for name, fn in zip(names, (measure(1, (1, 3, 7)), measure(2, (1, 3, 7, 12)), lengths,
                                kernels, m320)):
        _run(report, name, "stated", fn)
    return report


def vanishing_closures(caps, alt=False):
    """[(cap, closure snapshot)] for seeds = preprojectives vanishing at a."""
    alg = algebra("chain-zero-alt" if alt else "chain-zero")
    out = []
    for cap in caps:
        seeds = [x for x in preprojectives(alg, cap) if x.dim("a") == 0]
        out.append((cap, cogeneration_closure(alg, seeds, cap,
                                              base=enumerate_indecomposables(alg, cap,
                                                                             length_cap=cap))))
    return out


def _verify_vanishing(e, caps, alt=False, **_):
    caps = caps or [3, 5, 7]
    report = VerifyReport(e.id, {"caps": caps, "variant": "alt" if alt else "default"})
    closures = []

    def grows():
        closures.extend(vanishing_closures(caps, alt))
        counts = [len(s) for _, s in closures]
        return all(a < b for a, b in zip(counts, counts[1:])), f"class counts {counts}"

    def closed():
        if not closures:
            closures.extend(vanishing_closures(caps, alt))
        return all(is_submodule_closed(s)[0] for _, s in closures), ""
    _run(report, e.checks[0][0], "stated", grows)
    _run(report, e.checks[1][0], "stated", closed)
    return report
