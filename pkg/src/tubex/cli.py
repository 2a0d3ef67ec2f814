"""Command-line front end: `tubex <command> ...`."""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Sequence, TextIO

from . import delta_graph as dg
from . import families as fam
from . import fans
from . import series as ser
from . import verify
from .delta_graph import DeltaGraph
from .errors import InputError, MalformedFileError, TubexError

CONFIG_KEYS = {"kmax": int, "nmax": int, "n_max": int, "threads": int}


def read_config(path: str | None) -> dict[str, int]:
    """key=value lines; '#' starts a comment."""
    if path is None:
        return {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise MalformedFileError(f"cannot read config {path}: {exc.strerror}") from None
    out: dict[str, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip().replace("-", "_")
        if not sep or key not in CONFIG_KEYS:
            raise MalformedFileError(f"{path}:{lineno}: expected one of {sorted(CONFIG_KEYS)} as key=value")
        try:
            out[key] = CONFIG_KEYS[key](value.strip().strip('"'))
        except ValueError:
            raise MalformedFileError(f"{path}:{lineno}: {key} needs an integer") from None
    if "n_max" in out:
        out.setdefault("nmax", out.pop("n_max"))
    return out


def resolve_threads(flag: int | None, config: dict[str, int]) -> int:
    if flag is not None:
        value = flag
    elif "threads" in config:
        value = config["threads"]
    elif os.environ.get("TUBEX_THREADS"):
        try:
            value = int(os.environ["TUBEX_THREADS"])
        except ValueError:
            raise InputError("TUBEX_THREADS must be an integer") from None
    else:
        value = os.cpu_count() or 1
    if value < 1:
        raise InputError("thread count must be positive")
    return value


def parse_range(text: str) -> tuple[int, int, bool]:
    """'6' -> (6, 6, False); '0..6' -> (0, 6, True)."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            a, b = int(lo), int(hi)
            if a > b:
                raise InputError(f"empty range {text!r}")
            return a, b, True
        v = int(text)
        return v, v, False
    except ValueError:
        raise InputError(f"bad n value {text!r}") from None


def load_graph(path: str) -> DeltaGraph:
    try:
        obj = json.loads(Path(path).read_text())
    except OSError as exc:
        raise MalformedFileError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise MalformedFileError(f"{path}: invalid JSON ({exc.msg})") from None
    return dg.graph_from_json(obj)


def graph_from_args(args: argparse.Namespace, n: int | None = None) -> DeltaGraph:
    if args.graph:
        return load_graph(args.graph)
    if not args.family:
        raise InputError("give a graph file with -g or a family with --family")
    n = n if n is not None else parse_range(args.n)[0] if args.n is not None else None
    if n is None:
        raise InputError("--family needs --n")
    return fam.build(args.family, n, base=args.base, j=args.j)


def _tube_text(g: DeltaGraph, t: int) -> str:
    return "{" + ",".join(str(x) for x in g.labels_of(t)) + "}"


def _csv(values: Sequence) -> str:
    return ",".join(str(v) for v in values)


def _dump(obj, out: TextIO) -> None:
    out.write(json.dumps(obj, indent=2) + "\n")


# --------------------------------------------------------------------------
# commands
# --------------------------------------------------------------------------

def cmd_tubes(args, config, out: TextIO) -> int:
    g = graph_from_args(args)
    tubes = g.tubes()
    if args.json:
        _dump([[str(x) for x in g.labels_of(t)] for t in tubes], out)
    else:
        for t in tubes:
            out.write(_tube_text(g, t) + "\n")
    return 0


def cmd_fvector(args, config, out: TextIO) -> int:
    g = graph_from_args(args)
    f = dg.fvector(g, threads=resolve_threads(args.threads, config))
    rows = {"polyhedron": list(f.polyhedron()), "complex": list(f.complex())}
    if args.convention != "both":
        rows = {args.convention: rows[args.convention]}
    if args.json:
        _dump({k: [str(v) for v in row] for k, row in rows.items()}, out)
    elif len(rows) == 1:
        out.write(_csv(next(iter(rows.values()))) + "\n")
    else:
        for k, row in rows.items():
            out.write(f"{k}: {_csv(row)}\n")
    return 0


def cmd_count_max(args, config, out: TextIO) -> int:
    if args.graph:
        out.write(f"{dg.maximal_tubing_count(load_graph(args.graph))}\n")
        return 0
    if args.n is None:
        raise InputError("count-max needs --n")
    lo, hi, ranged = parse_range(args.n)
    if not ranged:
        out.write(f"{dg.maximal_tubing_count(graph_from_args(args, lo))}\n")
        return 0
    counts = [_max_count(args, n) for n in range(lo, hi + 1)]
    out.write(_csv(counts) + "\n")
    return 0


def _max_count(args, n: int) -> int:
    try:
        g = graph_from_args(args, n)
    except InputError:
        # families starting at n = 1 still have the point as their 0-dimensional member
        if n == 0:
            return 1
        raise
    return dg.maximal_tubing_count(g)


def cmd_verify(args, config, out: TextIO) -> int:
    n_max = args.n_max if args.n_max is not None else config.get("nmax", 4)
    if args.list:
        for cid in verify.check_ids(n_max):
            out.write(cid + "\n")
        return 0
    if not args.all and not args.check:
        raise InputError("verify needs --all or --check ID")
    ids = None if args.all else args.check
    reports = verify.run_catalog(n_max, ids, resolve_threads(args.threads, config))
    _dump([r.to_json(timing=args.timing) for r in reports], out)
    return 1 if any(r.failed for r in reports) else 0


def cmd_series(args, config, out: TextIO) -> int:
    if args.action == "list":
        for name in ser.series_names():
            out.write(name + "\n")
        return 0
    name = args.family or args.name
    if not name:
        raise InputError("series expand needs a family")
    nmax = args.nmax if args.nmax is not None else config.get("nmax", 8)
    kmax = args.kmax if args.kmax is not None else config.get("kmax", nmax)
    if nmax < 0 or kmax < 0:
        raise InputError("truncation orders must be nonnegative")
    s = ser.family_series(fam.ALIASES.get(name, name) if name not in ser.ALIASES else name, kmax, nmax)
    _dump(s.to_json() if args.full else s.triangle(), out)
    return 0


def cmd_skeleton(args, config, out: TextIO) -> int:
    g = graph_from_args(args)
    if args.json:
        tubings, edges = verify.skeleton_edges(g)
        _dump({"vertices": [[[str(x) for x in g.labels_of(t)] for t in tb] for tb in tubings], "edges": [list(e) for e in edges]}, out)
    else:
        out.write(verify.skeleton_dot(g, g.name or "skeleton"))
    return 0


def cmd_realize(args, config, out: TextIO) -> int:
    g = graph_from_args(args)
    if not g.is_hypercube():
        raise InputError("the standard cut needs a hypercube graph")
    poly = fans.realize_standard_cut(g)
    if args.obj:
        text = poly.to_obj()
    else:
        text = json.dumps(poly.to_json(g.labels_of, approx=args.approx), indent=2) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        out.write(text)
    return 0 if poly.ok else 1


def cmd_families(args, config, out: TextIO) -> int:
    if args.table is None:
        for name in fam.FAMILY_NAMES:
            out.write(name + "\n")
        return 0
    names = args.family_names or [n for n in fam.FAMILY_NAMES if n not in ("omni", "wand", "subtree", "full")]
    table = fam.family_table(names, args.table, threads=resolve_threads(args.threads, config))
    out.write("family,n,fvector\n")
    for name in sorted(table):
        for n, f in table[name]:
            out.write(f"{name},{n},\"{_csv(f.counts)}\"\n")
    return 0


# --------------------------------------------------------------------------
# parser
# --------------------------------------------------------------------------

def _graph_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("-g", "--graph", help="graph spec JSON file")
    p.add_argument("--family", help="built-in family name")
    p.add_argument("--n", help="dimension, or a range a..b where supported")
    p.add_argument("--base", help="base graph for omni and subtree families")
    p.add_argument("--j", type=int, default=0, help="clique size for the wand family")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tubex", description="Tubings, f-vectors and generating functions of Δ-graph associahedra.")
    parser.add_argument("--config", help="key=value file (kmax, nmax, threads)")
    parser.add_argument("--threads", type=int, help="worker threads (default: TUBEX_THREADS or all cores)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tubes", help="list tubes")
    _graph_options(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_tubes)

    p = sub.add_parser("fvector", help="print the f-vector")
    _graph_options(p)
    p.add_argument("--convention", choices=["both", "polyhedron", "complex"], default="both")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_fvector)

    p = sub.add_parser("count-max", help="count maximal tubings")
    _graph_options(p)
    p.set_defaults(func=cmd_count_max)

    p = sub.add_parser("verify", help="run the check catalog")
    p.add_argument("--all", action="store_true")
    p.add_argument("--check", action="append", help="check id or prefix (repeatable)")
    p.add_argument("--n-max", type=int)
    p.add_argument("--list", action="store_true")
    p.add_argument("--timing", action="store_true", help="include wall-clock times (output no longer reproducible)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("series", help="expand generating functions")
    p.add_argument("action", choices=["expand", "list"])
    p.add_argument("name", nargs="?")
    p.add_argument("--family")
    p.add_argument("--kmax", type=int)
    p.add_argument("--nmax", type=int)
    p.add_argument("--full", action="store_true", help="all coefficients up to kmax, not only k <= n")
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("skeleton", help="export the flip graph of maximal tubings")
    _graph_options(p)
    p.add_argument("--dot", action="store_true", help="DOT output (default)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_skeleton)

    p = sub.add_parser("realize", help="standard cut realization")
    _graph_options(p)
    p.add_argument("--json", action="store_true", help="JSON output (default)")
    p.add_argument("--obj", action="store_true", help="Wavefront OBJ (3-dimensional only)")
    p.add_argument("--approx", action="store_true", help="decimal coordinates in JSON")
    p.add_argument("--out", help="write to a file instead of stdout")
    p.set_defaults(func=cmd_realize)

    p = sub.add_parser("families", help="list families or tabulate f-vectors")
    p.add_argument("--table", type=int, metavar="N_MAX", help="print polyhedron f-vectors for n <= N_MAX")
    p.add_argument("family_names", nargs="*")
    p.set_defaults(func=cmd_families)
    return parser


def main(argv: Sequence[str] | None = None, out: TextIO | None = None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = read_config(args.config)
        if getattr(args, "graph", None) and getattr(args, "family", None):
            raise InputError("give either -g or --family, not both")
        return args.func(args, config, out)
    except TubexError as exc:
        print(f"tubex: error: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
