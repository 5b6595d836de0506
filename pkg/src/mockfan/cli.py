"""Batch command-line interface.

Subcommands operate on the structured text formats of `mockfan.formats`
and print to stdout unless `-o` is given.  Exit codes: 0 success,
1 verification mismatch, 2 bad input, 3 internal inconsistency.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional

from . import formats
from .cones import ConeError, dual_cone
from .exact import ExactError
from .fans import FanError, rescale
from .grassmann import GrassmannError, GrassmannSpec, verify, vol_expression
from .subdivision import (ChartError, GlueError, SubdivisionInconsistency,
                          glue_charts, subdivide_chart)
from .volume import vol_skeleton

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_INPUT = 2
EXIT_INTERNAL = 3

_INPUT_ERRORS = (formats.ParseError, ConeError, FanError, ChartError,
                 GlueError, GrassmannError, ExactError, OSError)


def _read(path: str) -> str:
    return Path(path).read_text()


def _emit(text: str, out: Optional[str]):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _cmd_dual(args) -> int:
    cone = formats.read_cone(_read(args.input))
    _emit(formats.write_cone(dual_cone(cone)), args.output)
    return EXIT_OK


def _cmd_faces(args) -> int:
    cone = formats.read_cone(_read(args.input))
    _emit(formats.write_faces(cone), args.output)
    return EXIT_OK


def _cmd_subdivide(args) -> int:
    chart = formats.read_chart(_read(args.input))
    result = subdivide_chart(chart)
    _emit(formats.write_subdivision_result(result), args.output)
    return EXIT_OK


def _cmd_glue(args) -> int:
    results = [subdivide_chart(formats.read_chart(_read(p))) for p in args.inputs]
    glued = glue_charts(results)
    _emit(formats.write_glue_result(glued), args.output)
    return EXIT_OK


def _cmd_bounded(args) -> int:
    fan = formats.read_fan(_read(args.input))
    _emit(formats.write_classification(fan), args.output)
    return EXIT_OK


def _cmd_rescale(args) -> int:
    fan = formats.read_fan(_read(args.input))
    _emit(formats.write_fan(rescale(fan, args.scale)), args.output)
    return EXIT_OK


def _cmd_vol(args) -> int:
    fan = formats.read_fan_or_result(_read(args.input))
    annotations = {}
    if args.annotations:
        annotations = formats.read_annotations(_read(args.annotations), fan)
    cone_ids = {c: f"c{i}" for i, c in enumerate(fan.cones)}
    total = vol_skeleton(fan, annotations, cone_ids=cone_ids)
    _emit(formats.write_expression(total), args.output)
    return EXIT_OK


def _cmd_grassmann_verify(args) -> int:
    spec = GrassmannSpec(args.n, args.d, args.l)
    report = verify(spec)
    _emit(report.render() + "\n", args.output)
    return EXIT_OK if report.passed else EXIT_MISMATCH


def _cmd_grassmann_vol(args) -> int:
    spec = GrassmannSpec(args.n, args.d, args.l)
    report = verify(spec)
    if not report.passed:
        sys.stderr.write("error[mismatch]: verification failed, no volume emitted\n")
        return EXIT_MISMATCH
    _emit(formats.write_expression(vol_expression(spec, report)), args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mockfan",
        description="Exact polyhedral subdivision fans and signed stratum volumes.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        p.add_argument("-o", "--output", help="output file (default: stdout)")
        return p

    p = add("dual", _cmd_dual, "dual cone of a cone file")
    p.add_argument("-i", "--input", required=True)
    p = add("faces", _cmd_faces, "all faces of a cone file")
    p.add_argument("-i", "--input", required=True)
    p = add("subdivide", _cmd_subdivide, "subdivision fan and active sets of a chart")
    p.add_argument("-i", "--input", required=True)
    p = add("glue", _cmd_glue, "subdivide several charts and merge the fans")
    p.add_argument("-i", "--inputs", required=True, nargs="+")
    p = add("bounded", _cmd_bounded, "special/bounded classification of a fan")
    p.add_argument("-i", "--input", required=True)
    p = add("rescale", _cmd_rescale, "image of a t-flagged fan under (v,t) -> (n v,t)")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("--scale", type=int, required=True)
    p = add("vol", _cmd_vol, "signed class sum over bounded cones of a fan")
    p.add_argument("-i", "--input", required=True,
                   help="fan file or subdivision result file")
    p.add_argument("--annotations", help="optional annotations file")
    p = add("grassmann-verify", _cmd_grassmann_verify,
            "verify the Gr(2,n) degree-d bounded cones and active sets")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--l", type=int, default=1)
    p = add("grassmann-vol", _cmd_grassmann_vol,
            "verified signed class sum for the Gr(2,n) instance")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--l", type=int, default=1)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SubdivisionInconsistency as exc:
        sys.stderr.write(f"error[internal]: {exc}\n")
        return EXIT_INTERNAL
    except _INPUT_ERRORS as exc:
        sys.stderr.write(f"error[input]: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
