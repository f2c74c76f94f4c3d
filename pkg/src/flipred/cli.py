"""Command line interface.

Exit codes: 0 success, 1 unreadable or invalid input, 2 a flip sequence that
cannot be applied (the message names the failing index), 3 an internal
invariant failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from . import __version__
from .algebra import InvalidSequenceError, apply
from .formats import (
    FormatError,
    dumps_flipseq,
    dumps_ltri,
    off_to_triangulation,
    read_flipseq,
    read_ltri,
)
from .reducer import ReducerInvariantError, reduce
from .triangulation import Setting, TriangulationError, strong_equal, weak_equal

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_SEQUENCE = 2
EXIT_INTERNAL = 3


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _write(text: str, path: str | None) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _floats(text: str) -> list[float]:
    return [float(x) for x in text.split(",") if x]


def _ints(text: str) -> list[int]:
    out = []
    for part in text.split(","):
        if not part:
            continue
        if ".." in part:
            lo, hi = part.split("..")
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(part))
    return out


def _seeds(text: str) -> list[int]:
    # "30" means seeds 0..29, a list or range is taken as given
    if "," in text or ".." in text:
        return _ints(text)
    return list(range(int(text)))


def cmd_reduce(args: argparse.Namespace) -> int:
    T = read_ltri(args.triangulation)
    seq = read_flipseq(args.sequence)
    out, report = reduce(seq, T, backend=args.backend, debug=args.debug, seed=args.seed)
    if not args.no_verify and not weak_equal(apply(out, T), apply(seq, T)):
        raise CliError("reduced sequence is not weakly equivalent to the input", EXIT_INTERNAL)
    _write(dumps_flipseq(out), args.output)
    if args.report:
        _write(json.dumps(report.as_dict(), sort_keys=True) + "\n", args.report)
    elif args.output not in (None, "-"):
        print(f"length {report.initial_length} -> {report.final_length} (gain {report.gain})", file=sys.stderr)
    return EXIT_OK


def cmd_gen_tri(args: argparse.Namespace) -> int:
    from .seqgen import GenSpec, random_instance

    T = random_instance(GenSpec(args.setting, args.edges, 1, 1.0, args.seed))
    _write(dumps_ltri(T), args.output)
    return EXIT_OK


def cmd_gen_seq(args: argparse.Namespace) -> int:
    from .seqgen import GenSpec, random_sequence

    T = read_ltri(args.triangulation)
    seq = random_sequence(T, GenSpec(T.setting, T.edge_count, args.length, args.redundancy, args.seed))
    _write(dumps_flipseq(seq), args.output)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    T = read_ltri(args.triangulation)
    s1 = read_flipseq(args.first)
    s2 = read_flipseq(args.second)
    A, B = apply(s1, T), apply(s2, T)
    same = strong_equal(A, B) if args.mode == "strong" else weak_equal(A, B)
    print(f"mode={args.mode} equivalent={'true' if same else 'false'}")
    return EXIT_OK


def cmd_distance(args: argparse.Namespace) -> int:
    from .ngon import OracleCapError, flip_distance

    T1 = read_ltri(args.first)
    T2 = read_ltri(args.second)
    if T1.setting is not Setting.CONVEX or T2.setting is not Setting.CONVEX:
        raise CliError("flip distances are computed for convex polygons only", EXIT_INPUT)
    if T1.vertex_count != T2.vertex_count:
        raise CliError("the polygons have different sizes", EXIT_INPUT)
    try:
        print(flip_distance(T1, T2))
    except OracleCapError as exc:
        raise CliError(str(exc), EXIT_INPUT) from None
    return EXIT_OK


def cmd_canon(args: argparse.Namespace) -> int:
    from .ngon import canonical_certificate

    T = read_ltri(args.triangulation)
    if T.setting is not Setting.CONVEX:
        raise CliError("certificates are defined for convex polygons only", EXIT_INPUT)
    seq = read_flipseq(args.sequence)
    print(" ".join(map(str, canonical_certificate(seq, T, args.apex))))
    return EXIT_OK


def cmd_bench(args: argparse.Namespace) -> int:
    from . import bench

    cells = bench.make_cells(
        [Setting(s) for s in args.settings.split(",")],
        _ints(args.lengths),
        _floats(args.redundancies),
        _seeds(args.seeds),
        args.edges,
    )
    if args.compare_kernels:
        lines = [c.line() for c in bench.compare_kernels(cells)]
        _write("\n".join(lines) + "\n", args.output)
        return EXIT_OK
    records = bench.run_bench(cells, jobs=args.jobs, backend=args.backend)
    text = bench.render_table(records) if args.table else "\n".join(r.line() for r in records)
    _write(text + "\n", args.output)
    return EXIT_OK


def cmd_off2ltri(args: argparse.Namespace) -> int:
    T = off_to_triangulation(Path(args.input).read_text(), args.setting, args.input)
    _write(dumps_ltri(T), args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="flipred", description="Reduce edge flip sequences on labelled triangulations.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("reduce", help="reduce a flip sequence")
    r.add_argument("triangulation", help=".ltri file")
    r.add_argument("sequence", help=".flipseq file")
    r.add_argument("-o", "--output", help="reduced .flipseq (default stdout)")
    r.add_argument("--report", help="write the reduction report as JSON")
    r.add_argument("--backend", choices=["compiled", "python"], help="reduction loop implementation")
    r.add_argument("--no-verify", action="store_true", help="skip the weak-equivalence self check")
    r.add_argument("--debug", action="store_true", help="check the evolving state after every attempt")
    r.add_argument("--seed", type=int, help="seed recorded in the report")
    r.set_defaults(func=cmd_reduce)

    g = sub.add_parser("gen-tri", help="generate a random triangulation")
    g.add_argument("--setting", choices=[s.value for s in Setting], default="convex")
    g.add_argument("--edges", type=int, required=True, help="approximate number of edges")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_gen_tri)

    s = sub.add_parser("gen-seq", help="generate a random flip sequence")
    s.add_argument("triangulation")
    s.add_argument("--length", type=int, required=True)
    s.add_argument("--redundancy", type=float, default=1.0)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_gen_seq)

    v = sub.add_parser("verify", help="compare the outcomes of two sequences")
    v.add_argument("triangulation")
    v.add_argument("first")
    v.add_argument("second")
    v.add_argument("--mode", choices=["weak", "strong"], default="weak")
    v.set_defaults(func=cmd_verify)

    d = sub.add_parser("distance", help="exact flip distance between two convex polygon triangulations")
    d.add_argument("first")
    d.add_argument("second")
    d.set_defaults(func=cmd_distance)

    c = sub.add_parser("canon", help="canonical certificate of a sequence on a convex polygon")
    c.add_argument("triangulation")
    c.add_argument("sequence")
    c.add_argument("--apex", type=int, default=0)
    c.set_defaults(func=cmd_canon)

    b = sub.add_parser("bench", help="run generator and reducer benchmark cells")
    b.add_argument("--settings", default="convex")
    b.add_argument("--lengths", default="500,1000,2000", help="comma separated sequence lengths")
    b.add_argument("--redundancies", default="1.1,2,10")
    b.add_argument("--seeds", default="5", help="count, list or lo..hi range")
    b.add_argument("--edges", type=int, help="instance size (default scales with the distinct flips)")
    b.add_argument("--jobs", type=int, default=1)
    b.add_argument("--backend", choices=["compiled", "python"])
    b.add_argument("--table", action="store_true", help="aggregate into a table")
    b.add_argument("--compare-kernels", action="store_true", help="time the compiled and Python loops")
    b.add_argument("-o", "--output")
    b.set_defaults(func=cmd_bench)

    o = sub.add_parser("off2ltri", help="convert a planar triangle OFF mesh")
    o.add_argument("input")
    o.add_argument("-o", "--output")
    o.add_argument("--setting", choices=[s.value for s in Setting], default="geometric")
    o.set_defaults(func=cmd_off2ltri)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (FormatError, TriangulationError, FileNotFoundError, IsADirectoryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InvalidSequenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SEQUENCE
    except ReducerInvariantError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except ValueError as exc:
        # generation and argument errors
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except RuntimeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
