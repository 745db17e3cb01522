"""Command-line interface.

    cmdscale embed FILE --dims 2 [--svg out.svg] [--coords-out out.csv]
    cmdscale diagnose FILE --dims 2 [--pair 2,3 ...]
    cmdscale triangle --sides 3,4,5 [--shift-vertex 1]

``--format text|json`` selects the report format. FILE may be ``-`` for
standard input or ``rail`` for the bundled Yorkshire fixture. Point indices
on the command line and in reports are 1-based.

Exit status: 0 on success (a non-Euclidean triangle verdict included),
2 for input errors, 3 for numerical failures. Errors are written to
standard error as a JSON object.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys

from . import report
from .errors import InputError, MDSError
from .io import rail_fixture, read_matrix_csv
from .pipeline import embed_spectrum
from .svg import emit_svg


class FileError(InputError):
    code = "FileError"


def _load(path):
    if path == "rail" and not os.path.exists(path):
        return rail_fixture()
    try:
        return read_matrix_csv(path)
    except OSError as exc:
        raise FileError(f"cannot read {path}: {exc.strerror or exc}", path=str(path)) from None


def _pair(text):
    try:
        i, j = (int(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected i,j (1-based), got {text!r}") from None
    return i, j


def _sides(text):
    try:
        vals = tuple(float(t) for t in text.split(","))
    except ValueError:
        vals = ()
    if len(vals) != 3:
        raise argparse.ArgumentTypeError(f"expected a,b,c, got {text!r}")
    return vals


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json"], default=argparse.SUPPRESS,
                        help="report format (default: text)")
    common.add_argument("--svg", metavar="PATH", default=argparse.SUPPRESS,
                        help="also write a 2-D scatter plot as SVG")

    parser = argparse.ArgumentParser(prog="cmdscale", parents=[common],
                                     description="Classical multidimensional scaling toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("embed", parents=[common], help="principal-coordinate embedding")
    p.add_argument("file", help="CSV dissimilarity matrix, '-' for stdin, 'rail' for the fixture")
    p.add_argument("--dims", type=int, default=2)
    p.add_argument("--coords-out", metavar="PATH", help="write coordinates as CSV")

    p = sub.add_parser("diagnose", parents=[common], help="per-eigenvalue distortion report")
    p.add_argument("file")
    p.add_argument("--dims", type=int, default=2)
    p.add_argument("--pair", type=_pair, action="append", metavar="I,J",
                   help="restrict to this pair (repeatable)")

    p = sub.add_parser("triangle", parents=[common], help="exact solution for three points")
    p.add_argument("--sides", type=_sides, required=True, metavar="A,B,C",
                   help="|AB|,|AC|,|BC|")
    p.add_argument("--shift-vertex", type=int, choices=[1, 2, 3])
    return parser


def _write_coords(path, coords):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["label"] + [f"x{k + 1}" for k in range(len(coords[0]) - 1)])
        for row in coords:
            w.writerow([row[0]] + [repr(v) for v in row[1:]])


def run(args):
    fmt = getattr(args, "format", "text")
    svg_path = getattr(args, "svg", None)

    if args.command == "embed":
        d, labels = _load(args.file)
        doc, emb = report.embed_report(d, labels, args.dims)
        if args.coords_out:
            _write_coords(args.coords_out, doc["coordinates"])
        if svg_path:
            emit_svg(emb.coords, doc["labels"], svg_path)
    elif args.command == "diagnose":
        d, labels = _load(args.file)
        pairs = [(i - 1, j - 1) for i, j in args.pair] if args.pair else None
        doc, rep = report.diagnose_report(d, labels, args.dims, pairs)
        if svg_path:
            emit_svg(embed_spectrum(rep.spectrum, args.dims).coords, doc["labels"], svg_path)
    else:
        a, b, c = args.sides
        doc, coords = report.triangle_report(a, b, c, args.shift_vertex)
        if svg_path:
            emit_svg(coords, ["A", "B", "C"], svg_path)

    return report.to_json(doc) if fmt == "json" else report.to_text(doc)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        out = run(args)
    except MDSError as exc:
        sys.stderr.write(json.dumps(exc.to_dict()) + "\n")
        return exc.exit_code
    sys.stdout.write(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
