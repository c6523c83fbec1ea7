"""Command-line front end.

Exit codes: 0 success, 1 ``iso`` found the graphs not isomorphic, 2 bad
input (parse or domain error), 3 unsupported case, 4 internal error.
"""
import argparse
import json
import sys

from . import plumbing, splice
from .cover import universal_abelian_cover
from .errors import (InternalConsistencyError, ParseError, SpliceCoverError,
                     UnsupportedCaseError)

EXIT_OK, EXIT_DIFFERENT, EXIT_INPUT, EXIT_UNSUPPORTED, EXIT_INTERNAL = range(5)


def _read(path):
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _kind(args, path):
    if args.format:
        return args.format
    return "splice" if path.endswith(".splice") else "plumbing"


def _load_splice(args, path):
    text = _read(path)
    if _kind(args, path) == "splice":
        return splice.parse(text)
    return splice.extract(plumbing.parse(text))


def _parse_order(text):
    if not text:
        return None
    edges = []
    for item in text.split(","):
        a, sep, b = item.strip().partition(":")
        if not sep or not a or not b:
            raise ParseError(f"--order entries look like u:v, got {item!r}")
        edges.append((a, b))
    return edges


def cmd_splice(args, out):
    out.write(splice.serialize(_load_splice(args, args.inputs[0])))


def cmd_cover(args, out):
    diagram = _load_splice(args, args.inputs[0])
    records = [] if args.trace else None
    graph = universal_abelian_cover(diagram, _parse_order(args.order), records)
    if args.trace:
        with open(args.trace, "w", encoding="utf-8") as fh:
            for rec in records:
                fh.write(json.dumps(rec) + "\n")
    out.write(plumbing.serialize(graph))


def cmd_h1(args, out):
    graph = plumbing.parse(_read(args.inputs[0]))
    out.write(f"{plumbing.h1_order(graph)}\n")
    if args.group:
        factors = plumbing.h1_group(graph)
        out.write("invariant factors: " + (" ".join(map(str, factors)) or "trivial") + "\n")


def cmd_check(args, out):
    path = args.inputs[0]
    if _kind(args, path) == "plumbing":
        graph = plumbing.parse(_read(path))
        order = plumbing.h1_order(graph) if not graph.arrows else 0
        tree = graph.is_tree()
        genus0 = all(x.genus == 0 for x in graph.vertices.values())
        qhs = tree and genus0 and order != 0
        out.write(f"tree: {'yes' if tree else 'no'}\n")
        out.write(f"rational homology sphere: {'yes' if qhs else 'no'} (|det| = {order})\n")
        if not qhs:
            return EXIT_INPUT
        diagram = splice.extract(graph)
    else:
        diagram = splice.parse(_read(path))
    ok, bad = splice.ideal_condition(diagram)
    if ok:
        out.write("ideal condition: OK\n")
        return EXIT_OK
    out.write("ideal condition: FAILED\n")
    for v, u, gen, w in bad:
        out.write(f"  at {v} towards {u}: generator {gen} does not divide {w}\n")
    return EXIT_INPUT


def cmd_iso(args, out):
    if len(args.inputs) != 2:
        raise ParseError("iso needs exactly two input files")
    a, b = (plumbing.parse(_read(p)) for p in args.inputs)
    same = plumbing.isomorphic(a, b)
    out.write("isomorphic\n" if same else "not isomorphic\n")
    return EXIT_OK if same else EXIT_DIFFERENT


def cmd_dot(args, out):
    out.write(plumbing.to_dot(plumbing.parse(_read(args.inputs[0]))))


COMMANDS = {"splice": cmd_splice, "cover": cmd_cover, "h1": cmd_h1,
            "check": cmd_check, "iso": cmd_iso, "dot": cmd_dot}


def build_parser():
    p = argparse.ArgumentParser(
        prog="splicecover",
        description="Splice diagrams and universal abelian covers of graph manifolds.")
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("inputs", nargs="+", metavar="FILE")
    p.add_argument("--format", choices=("plumbing", "splice"),
                   help="input kind (default: by extension, .splice or plumbing)")
    p.add_argument("--order", help="cut order as comma-separated u:v node pairs")
    p.add_argument("--trace", metavar="PATH", help="write JSON-lines trace of cut and glue steps")
    p.add_argument("--group", action="store_true", help="h1: also print invariant factors")
    return p


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    if args.command != "iso" and len(args.inputs) != 1:
        err.write(f"error: {args.command} takes one input file\n")
        return EXIT_INPUT
    try:
        status = COMMANDS[args.command](args, out)
    except UnsupportedCaseError as exc:
        err.write(f"unsupported: {exc}\n")
        return EXIT_UNSUPPORTED
    except InternalConsistencyError as exc:
        err.write(f"internal error: {exc}\n")
        return EXIT_INTERNAL
    except (SpliceCoverError, OSError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INPUT
    return EXIT_OK if status is None else status


if __name__ == "__main__":
    sys.exit(main())
