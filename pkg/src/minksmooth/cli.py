"""Command-line driver.

Subcommands:

    analyze <file> [--out report.json] [--svg out.svg] [--hilbert-box N] [--fast]
    hilbert <file>
    potential <file> [--critical]
    diagram <file> --svg out.svg

Exit codes: 0 success, 2 schema error, 3 inadmissible input, 4 internal
cross-check failure.
"""

from __future__ import annotations

import argparse
import sys

from .pipeline import (
    AnalysisRequest,
    SchemaError,
    TargetMismatch,
    parse_input,
    run_pipeline,
)
from .polytope import NotAdmissible
from .svg import UnsupportedDimension, emit_svg

EXIT_OK = 0
EXIT_SCHEMA = 2
EXIT_INADMISSIBLE = 3
EXIT_CROSSCHECK = 4


def _load_request(path, hilbert_box=None, fast=False) -> AnalysisRequest:
    with open(path, "r", encoding="utf-8") as fh:
        req = parse_input(fh.read())
    if hilbert_box is not None:
        req.options.hilbert_box = hilbert_box
    if fast:
        req.options.verify_level = "fast"
    return req


def _cmd_analyze(args) -> int:
    req = _load_request(args.file, args.hilbert_box, args.fast)
    report = run_pipeline(req)
    text = report.to_json()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    svg_path = args.svg or req.options.emit_svg
    if svg_path:
        with open(svg_path, "w", encoding="utf-8") as fh:
            fh.write(emit_svg(report.data))
    if report.failures:
        print("cross-check failures: " + ", ".join(report.failures), file=sys.stderr)
        return EXIT_CROSSCHECK
    return EXIT_OK


def _cmd_hilbert(args) -> int:
    from .cone import dual, hilbert_basis, sigma_tilde

    req = _load_request(args.file)
    hb = hilbert_basis(dual(sigma_tilde(req.decomposition)))
    for v in hb.elements:
        print(" ".join(str(x) for x in v))
    return EXIT_OK


def _cmd_potential(args) -> int:
    from .potential import build_potential, critical_exists

    req = _load_request(args.file)
    po = build_potential(req.decomposition)
    print(po)
    if args.critical:
        crit = critical_exists(req.decomposition, circle_tol=req.options.root_circle_tol)
        print(f"verdict: {crit.verdict}" + (f" (count {crit.count})" if crit.count is not None else ""))
        for fam in crit.families:
            print(
                "  family: z1 minpoly "
                + str(list(fam.z1_minpoly))
                + ", z2 minpoly "
                + str(list(fam.z2_minpoly))
                + (", on unit circle" if fam.on_unit_circle else "")
            )
        if crit.note:
            print(f"  note: {crit.note}")
    return EXIT_OK


def _cmd_diagram(args) -> int:
    req = _load_request(args.file)
    req.options.verify_level = "fast"
    report = run_pipeline(req)
    with open(args.svg, "w", encoding="utf-8") as fh:
        fh.write(emit_svg(report.data))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="minksmooth", description=__doc__.strip().splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="run the full pipeline and emit a JSON report")
    p.add_argument("file")
    p.add_argument("--out", help="write the report here instead of stdout")
    p.add_argument("--svg", help="also render the base diagram (3d cones only)")
    p.add_argument("--hilbert-box", type=int, default=None, help="bound for the generation check")
    p.add_argument("--fast", action="store_true", help="skip the box-bounded generation check")
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("hilbert", help="print the Hilbert basis of the lifted dual cone")
    p.add_argument("file")
    p.set_defaults(func=_cmd_hilbert)

    p = sub.add_parser("potential", help="print the superpotential")
    p.add_argument("file")
    p.add_argument("--critical", action="store_true", help="also decide torus critical points")
    p.set_defaults(func=_cmd_potential)

    p = sub.add_parser("diagram", help="render the base diagram to SVG")
    p.add_argument("file")
    p.add_argument("--svg", required=True)
    p.set_defaults(func=_cmd_diagram)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except OSError as exc:
        print(f"cannot read input: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except SchemaError as exc:
        print(f"schema error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except (NotAdmissible, TargetMismatch) as exc:
        print(f"inadmissible input: {exc}", file=sys.stderr)
        return EXIT_INADMISSIBLE
    except UnsupportedDimension as exc:
        print(f"unsupported: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except AssertionError as exc:
        print(f"internal cross-check failure: {exc}", file=sys.stderr)
        return EXIT_CROSSCHECK


if __name__ == "__main__":
    sys.exit(main())
