"""Command-line interface.

Exit codes: 0 success, 1 a check failed, 2 usage error, 3 a feasibility cap was exceeded.
"""
import argparse
import json
import sys

from . import registry
from .errors import CapExceeded
from .explorer import (cogeneration_closure, enumerate_indecomposables, snapshot_to_json,
                       snapshot_to_tsv, take_off_sequence)
from .formats import FormatError, load_algebra, load_module
from .grmeasure import gr_measure
from .presentation import NonAdmissibleError, validate
from .repcore.decomposition import decompose
from .repcore.hom import hom_basis, is_cogenerated
from .repcore.representation import RepresentationError, check
from .repcore.submodules import enumerate_submodules
from .tame import knit_dim_vectors

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


class Output:
    """Collects rows and renders them as text, TSV or JSON."""

    def __init__(self, fmt, stream):
        self.fmt = fmt
        self.stream = stream

    def emit(self, doc, rows=None, text=None):
        if self.fmt == "json":
            self.stream.write(json.dumps(doc, indent=2, default=str) + "\n")
        elif self.fmt == "tsv":
            for row in rows or []:
                self.stream.write("\t".join(str(c) for c in row) + "\n")
        else:
            self.stream.write((text if text is not None else
                               "\n".join(" ".join(str(c) for c in r) for r in rows or [])) + "\n")


def _dims(x):
    return "(" + ",".join(map(str, x.dims)) + ")"


def cmd_algebra(args, out):
    alg = load_algebra(args.file)
    rep = validate(alg)
    graded = [[s, t, n, d] for (s, t, n), d in rep["graded_dimensions"].items()]
    out.emit({"total_dimension": rep["total_dimension"], "nilpotency": rep["nilpotency"],
              "graded": graded},
             [["source", "target", "length", "dim"]] + graded,
             f"total dimension {rep['total_dimension']}, nilpotency {rep['nilpotency']}\n" +
             "\n".join(f"  {s} -> {t} length {n}: {d}" for s, t, n, d in graded))
    return EXIT_OK


def cmd_mod(args, out):
    mods = [load_module(f) for f in args.files]
    if args.action == "check":
        rows, bad = [], False
        for f, x in zip(args.files, mods):
            ok, rel = check(x)
            bad |= not ok
            rows.append([f, "ok" if ok else f"violates {rel.source}->{rel.target} "
                         f"{[('.'.join(p), c) for c, p in rel.terms]}"])
        out.emit({"results": rows}, rows)
        return EXIT_FAIL if bad else EXIT_OK
    for x in mods:
        ok, rel = check(x)
        if not ok:
            raise RepresentationError(f"module {_dims(x)} violates a relation")
    if args.action in ("hom", "cogen"):
        if len(mods) != 2:
            raise UsageError(f"mod {args.action} takes exactly two files")
        x, y = mods
        if args.action == "hom":
            basis = hom_basis(x, y)
            out.emit({"dim": len(basis), "basis": [[m.tolist() for m in f.mats] for f in basis]},
                     [["dim", len(basis)]], f"dim Hom = {len(basis)}")
        else:
            res = is_cogenerated(x, y)
            out.emit({"cogenerated": res}, [["cogenerated", res]], str(res).lower())
        return EXIT_OK
    if args.action == "decompose":
        rows, docs = [], []
        for f, x in zip(args.files, mods):
            parts = decompose(x)
            docs.append({"file": f, "summands": [list(s.dims) for s in parts]})
            rows += [[f, _dims(s)] for s in parts]
        out.emit(docs, rows)
        return EXIT_OK
    if args.action == "submodules":
        rows, docs = [], []
        for f, x in zip(args.files, mods):
            subs = enumerate_submodules(x)
            docs.append({"file": f, "count": len(subs), "dims": [list(s.dims) for s in subs]})
            rows.append([f, len(subs)])
        out.emit(docs, rows)
        return EXIT_OK
    raise UsageError(f"unknown mod action {args.action}")


def cmd_gr(args, out):
    x = load_module(args.file)
    m = gr_measure(x)
    out.emit({"measure": list(m.elements)}, [[str(m)]], str(m))
    return EXIT_OK


def cmd_takeoff(args, out):
    alg = load_algebra(args.algebra)
    snap = enumerate_indecomposables(alg, args.max_len, length_cap=args.length_cap)
    rep = take_off_sequence(snap, args.count)
    rows = [[str(m), len(c), "certified" if ok else "uncertified"]
            for m, c, ok in zip(rep.measures, rep.classes, rep.certified)]
    doc = {"max_len": rep.max_len, "warning": rep.warning,
           "measures": [{"measure": list(m.elements), "classes": len(c), "certified": ok}
                        for m, c, ok in zip(rep.measures, rep.classes, rep.certified)]}
    text = "\n".join(str(m) for m in rep.measures)
    if args.split_restriction:
        if alg.name != "doubled-chain":
            raise UsageError("--split-restriction needs the doubled-chain algebra")
        hits = [sum(registry.in_split_restriction_class(x) for x in c) for c in rep.classes]
        for row, d, h in zip(rows, doc["measures"], hits):
            row.append(h)
            d["split_restriction_classes"] = h
        text = "\n".join(f"{m} {h}/{len(c)} in split-restriction class"
                         for m, c, h in zip(rep.measures, rep.classes, hits))
    if rep.warning:
        print(f"warning: {rep.warning}", file=sys.stderr)
    out.emit(doc, rows, text)
    return EXIT_OK


def cmd_closure(args, out):
    alg = load_algebra(args.algebra)
    seeds = [load_module(f) for f in args.seeds]
    for s in seeds:
        if s.algebra != alg:
            raise UsageError("seed modules must live over the given algebra")
    snap = cogeneration_closure(alg, seeds, args.max_len)
    return _emit_snapshot(snap, out, f"{len(snap)} classes")


def cmd_enumerate(args, out):
    alg = load_algebra(args.algebra)
    snap = enumerate_indecomposables(alg, args.max_len, length_cap=args.length_cap)
    return _emit_snapshot(snap, out, f"{len(snap)} classes")


def _emit_snapshot(snap, out, headline):
    if out.fmt == "json":
        out.stream.write(snapshot_to_json(snap) + "\n")
    elif out.fmt == "tsv":
        out.stream.write(snapshot_to_tsv(snap))
    else:
        lines = [headline]
        lines += [f"  {_dims(x)} {m}" for x, m in zip(snap.members, snap.measures)]
        out.stream.write("\n".join(lines) + "\n")
    return EXIT_OK


def cmd_knit(args, out):
    alg = load_algebra(args.algebra)
    rows = knit_dim_vectors(alg, args.steps)
    out.emit([{"vertex": v, "j": j, "dims": list(d)} for v, j, d in rows],
             [[v, j, "(" + ",".join(map(str, d)) + ")"] for v, j, d in rows])
    return EXIT_OK


def cmd_verify(args, out):
    rep = registry.verify(args.example, caps=args.caps, k3=args.k3, alt=args.alt)
    rows = [[c.status, c.provenance, c.name, c.detail, f"{c.seconds:.2f}s"] for c in rep.checks]
    doc = {"example": rep.example, "caps": rep.caps,
           "checks": [vars(c) for c in rep.checks], "ok": rep.ok}
    out.emit(doc, rows, "\n".join(f"{c.status:15s} [{c.provenance}] {c.name}: {c.detail}"
                                  for c in rep.checks))
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_examples(args, out):
    rows = [[e.id, e.algebra, e.title] for e in registry.list_examples()]
    out.emit([dict(zip(("id", "algebra", "title"), r)) for r in rows], rows)
    return EXIT_OK


class UsageError(Exception):
    pass


def build_parser():
    ap = argparse.ArgumentParser(prog="grquiver", description=__doc__.splitlines()[0])
    ap.add_argument("--format", choices=("text", "tsv", "json"), default="text")
    ap.add_argument("--threads", type=int, default=1,
                    help="accepted for compatibility; results never depend on it")
    ap.add_argument("--seed", type=int, default=0, help="seed for randomized subroutines")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("algebra", help="validate an algebra file or registry name")
    p.add_argument("action", choices=("validate",))
    p.add_argument("file")
    p.set_defaults(func=cmd_algebra)

    p = sub.add_parser("mod", help="module operations")
    p.add_argument("action", choices=("check", "hom", "cogen", "decompose", "submodules"))
    p.add_argument("files", nargs="+")
    p.set_defaults(func=cmd_mod)

    p = sub.add_parser("gr", help="Gabriel-Roiter measure")
    p.add_argument("action", choices=("measure",))
    p.add_argument("file")
    p.set_defaults(func=cmd_gr)

    for name, func, extra in (("takeoff", cmd_takeoff, True), ("enumerate", cmd_enumerate, False)):
        p = sub.add_parser(name)
        p.add_argument("algebra")
        p.add_argument("--max-len", type=int, required=True)
        p.add_argument("--length-cap", type=int, default=None)
        if extra:
            p.add_argument("--count", type=int, required=True)
            p.add_argument("--split-restriction", action="store_true",
                           help="doubled-chain only: count classes per measure whose restriction "
                                "to a,b is projective plus semisimple and to b,c projective")
        p.set_defaults(func=func)

    p = sub.add_parser("closure", help="cogeneration closure of seed modules")
    p.add_argument("algebra")
    p.add_argument("--seeds", nargs="+", required=True)
    p.add_argument("--max-len", type=int, required=True)
    p.set_defaults(func=cmd_closure)

    p = sub.add_parser("knit", help="preprojective dimension vectors")
    p.add_argument("algebra")
    p.add_argument("--steps", type=int, required=True)
    p.set_defaults(func=cmd_knit)

    p = sub.add_parser("verify", help="run the checks of a registry example")
    p.add_argument("example")
    p.add_argument("--caps", type=int, nargs="+", default=None)
    p.add_argument("--k3", action="store_true", help="cogeneration checks on K(3) instead of K(2)")
    p.add_argument("--alt", action="store_true", help="vanishing closure with the other zero relation")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("examples", help="list registry examples")
    p.set_defaults(func=cmd_examples)
    return ap


def main(argv=None, stdout=None):
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    out = Output(args.format, stdout)
    try:
        return args.func(args, out)
    except CapExceeded as err:
        print(f"cap exceeded: {err}", file=sys.stderr)
        return EXIT_CAP
    except (UsageError, FileNotFoundError, KeyError) as err:
        print(f"usage: {err}", file=sys.stderr)
        return EXIT_USAGE
    except (FormatError, NonAdmissibleError, RepresentationError, ValueError) as err:
        print(f"check failed: {err}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
