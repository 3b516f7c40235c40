"""Command-line front end.

Every subcommand prints a plain-text report to stdout; diagnostics go to
stderr.  Exit status: 0 on success (including a reached verdict), 1 when
the input fails validation, 2 on usage errors.  A file argument of ``-``
reads standard input; a bare name that does not exist on disk is looked up
among the data files shipped with the package.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from importlib import resources

from .complex import SkeletonSyntaxError, parse_skeleton, validate
from .connection import ConnectionDataError, OutlineError, classify, outline, parse_connection, search
from .lift2 import LiftError, PortraitDataError, obstruct, parse_mapping_portrait
from .portrait import PortraitSyntaxError, fmt, parse_portrait, validate_portrait
from .unmate import UnmateError, compose, substitution, unmate


class UsageError(Exception):
    pass


def _read(path):
    if path == "-":
        return sys.stdin.read()
    if os.path.exists(path):
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    shipped = resources.files("unmating") / "data" / os.path.basename(path)
    if shipped.is_file():
        return shipped.read_text(encoding="utf-8")
    raise UsageError(f"no such file: {path}")


def _skeleton(path):
    s = parse_skeleton(_read(path))
    rep = validate(s)
    if not rep.ok:
        raise SkeletonSyntaxError(rep.format())
    return s


def _workers(args):
    if getattr(args, "workers", None):
        return args.workers
    return int(os.environ.get("UNMATE_THREADS", "1") or 1)


def _frac_sets(sets):
    return [[fmt(x) for x in a] for a in sets]


def _dump(args, data):
    if getattr(args, "json", None):
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump(data, fh, indent=2, sort_keys=True)
            fh.write("\n")


def cmd_validate(args):
    s = parse_skeleton(_read(args.file))
    rep = validate(s)
    print(rep.format())
    return 0 if rep.ok else 1


def cmd_search(args):
    s = _skeleton(args.file)
    found = search(s, args.mode, workers=_workers(args))
    lines = [f"# {s.name}: {len(found)} pseudo-equator(s), mode {args.mode}"]
    dump = []
    for n, pe in enumerate(found, 1):
        cl = pe.classification
        lines.append(f"[{n}] {cl.orientation.value}  order: {cl.certificate(s)}")
        lines += ["  " + ln for ln in pe.connection.serialize().splitlines()]
        item = {"connection": pe.connection.serialize(), "orientation": cl.orientation.value,
                "post_order": cl.certificate(s)}
        if args.emit_portraits and cl.orientation.value == "preserving":
            u = unmate(s, pe.connection, pe.walk)
            lines += ["  " + ln for ln in u.portraits.format().splitlines()]
            item["white"] = _frac_sets(u.portraits.white)
            item["black"] = _frac_sets(u.portraits.black)
        dump.append(item)
    print("\n".join(lines))
    _dump(args, {"skeleton": s.name, "mode": args.mode, "results": dump})
    return 0


def cmd_unmate(args):
    s = _skeleton(args.file)
    conn = parse_connection(_read(args.connection), s)
    u = unmate(s, conn)
    lines = ["M = [" + ", ".join("[" + ", ".join(map(str, row)) + "]" for row in u.matrix) + "]",
             "l = (" + ", ".join(fmt(x) for x in u.lengths) + ")",
             f"theta0 = {fmt(u.angles.base)}",
             u.portraits.format()]
    print("\n".join(lines))
    _dump(args, {"matrix": [list(r) for r in u.matrix], "lengths": [fmt(x) for x in u.lengths],
                 "white": _frac_sets(u.portraits.white), "black": _frac_sets(u.portraits.black)})
    return 0


def cmd_portrait_check(args):
    p = parse_portrait(_read(args.file))
    rep = validate_portrait(p)
    print(rep.format())
    _dump(args, {"ok": rep.ok, "axioms": {r.name: {"pass": r.passed, "witness": r.witness}
                                          for r in rep.results}})
    return 0 if rep.ok else 1


def cmd_obstruct(args):
    mp = parse_mapping_portrait(_read(args.file))
    rep = obstruct(mp, workers=_workers(args))
    print(rep.format())
    _dump(args, {"verdict": rep.verdict, "orders": [
        {"order": list(o.order), "skeletons": o.skeletons, "connections": o.connections,
         "trees": o.trees,
         "candidates": [{"skeleton": n, "connection": c.serialize(), "post_order": cert}
                        for n, c, cert in o.candidates]}
        for o in rep.outcomes]})
    return 0


def cmd_compose(args):
    s = _skeleton(args.file)
    conn = parse_connection(_read(args.connection), s)
    w = outline(s, conn)
    cl = classify(s, w)
    sub = substitution(w)
    lines = [f"orientation: {cl.orientation.value}  order: {cl.certificate(s)}", sub.format(),
             "M = " + str([list(r) for r in sub.matrix])]
    if args.square:
        sq = compose(sub, sub)
        kind = {True: "preserving", False: "reversing", None: "mixed"}[sq.preserving]
        sums = [sum(r[j] for r in sq.matrix) for j in range(sq.k)]
        lines += [f"square: {kind}", sq.format(), "M^2 = " + str([list(r) for r in sq.matrix]),
                  "column sums = " + " ".join(map(str, sums))]
    print("\n".join(lines))
    return 0


def build_parser():
    p = argparse.ArgumentParser(prog="unmating", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("validate", help="check a skeleton file")
    sp.add_argument("file")
    sp.set_defaults(func=cmd_validate)

    sp = sub.add_parser("search", help="enumerate pseudo-equators")
    sp.add_argument("file")
    sp.add_argument("--mode", choices=["preserving", "reversing", "all"], default="preserving")
    sp.add_argument("--emit-portraits", action="store_true")
    sp.add_argument("--workers", type=int)
    sp.add_argument("--json", metavar="PATH", help="also write a structured dump")
    sp.set_defaults(func=cmd_search)

    sp = sub.add_parser("unmate", help="portraits from one connection")
    sp.add_argument("file")
    sp.add_argument("connection")
    sp.add_argument("--json", metavar="PATH")
    sp.set_defaults(func=cmd_unmate)

    sp = sub.add_parser("portrait-check", help="check the critical-portrait axioms")
    sp.add_argument("file")
    sp.add_argument("--json", metavar="PATH")
    sp.set_defaults(func=cmd_portrait_check)

    sp = sub.add_parser("obstruct", help="degree-2 non-existence check")
    sp.add_argument("file")
    sp.add_argument("--workers", type=int)
    sp.add_argument("--json", metavar="PATH")
    sp.set_defaults(func=cmd_obstruct)

    sp = sub.add_parser("compose", help="edge substitution of a connection")
    sp.add_argument("file")
    sp.add_argument("connection")
    sp.add_argument("--square", action="store_true")
    sp.set_defaults(func=cmd_compose)
    return p


_INPUT_ERRORS = (SkeletonSyntaxError, ConnectionDataError, OutlineError, UnmateError,
                 PortraitSyntaxError, PortraitDataError, LiftError, ValueError)


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"unmating: {exc}", file=sys.stderr)
        return 2
    except _INPUT_ERRORS as exc:
        print(f"unmating: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
