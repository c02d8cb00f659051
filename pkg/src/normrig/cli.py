"""Command-line interface.

    normrig analyze  <doc> [--backend exact|float] [--tolerance T] [--json] [--svg out.svg]
    normrig symmetry <doc> [...]
    normrig color    <doc> [...]
    normrig explore --group NAME [--norm NAME|file] [--max-vertices N]
                    [--trials T] [--seed S] [--out report.json] [--json]

<doc> is a JSON file or a bundled fixture name (fig1a ... fig1f, fig3a ...
fig3c, example3d).  Exit status: 0 clean, 1 when a proven-necessary check
fails, 2 on input errors.
"""

from __future__ import annotations

import argparse
import json
import pathlib
import sys

from . import drawing, explorer, norms, report as report_mod
from .document import DocumentError, load_document
from .framework import make_framework
from .scalars import DEFAULT_TOLERANCE, ScalarContext, UnsupportedError


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="normrig",
                                     description="rigidity analysis of bar-joint "
                                                 "frameworks in normed spaces")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_doc_command(name, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("document", help="JSON file or bundled fixture name")
        p.add_argument("--backend", choices=["exact", "float"], default=None)
        p.add_argument("--tolerance", type=float, default=None)
        p.add_argument("--json", action="store_true", help="machine-form output")
        p.add_argument("--svg", default=None, metavar="PATH",
                       help="render the framework diagram to this file")
        return p

    add_doc_command("analyze", "rigidity verdict and Maxwell counts")
    add_doc_command("symmetry", "symmetric validation, characters, count checks")
    add_doc_command("color", "facet coloring and spanning-tree certificate")

    e = sub.add_parser("explore", help="conjecture-evidence scan")
    e.add_argument("--group", default="cs",
                   help="point group name (cs, cs_diag, c2, c4, c2v, c2v_diag, c4v)")
    e.add_argument("--norm", default="linf2", help="builtin norm name or JSON file")
    e.add_argument("--max-vertices", type=int, default=6)
    e.add_argument("--trials", type=int, default=200)
    e.add_argument("--seed", type=int, default=0)
    e.add_argument("--out", default=None, metavar="PATH", help="write the full JSON report")
    e.add_argument("--json", action="store_true")
    return parser


def _load_with_options(args):
    doc = load_document(args.document)
    if args.backend or args.tolerance is not None:
        backend = args.backend or doc.framework.ctx.backend
        tolerance = args.tolerance if args.tolerance is not None else DEFAULT_TOLERANCE
        ctx = ScalarContext(backend, tolerance if backend == "float" else DEFAULT_TOLERANCE)
        doc.framework = make_framework(doc.framework.graph, doc.framework.points,
                                       doc.framework.norm, ctx)
        doc.options = dict(doc.options, backend=backend)
    return doc


def _emit(rep, args, colored=None, doc=None):
    if args.json:
        print(json.dumps(report_mod.machine_form(rep), indent=2, sort_keys=True, default=str))
    else:
        print(rep.human())
    if getattr(args, "svg", None):
        drawing.draw_framework(doc.framework, colored=colored, out=args.svg,
                               title=doc.name)
        print(f"figure written to {args.svg}", file=sys.stderr)
    return rep.exit_code


def _norm_from_arg(value):
    path = pathlib.Path(value)
    if path.exists():
        node = json.loads(path.read_text())
        from .document import _parse_norm
        return _parse_norm(node, "/norm")
    return norms.builtin_norm(value)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "analyze":
            doc = _load_with_options(args)
            return _emit(report_mod.analyze_report(doc), args, doc=doc)
        if args.command == "symmetry":
            doc = _load_with_options(args)
            return _emit(report_mod.symmetry_report(doc), args, doc=doc)
        if args.command == "color":
            doc = _load_with_options(args)
            rep = report_mod.color_report(doc)
            colored = rep.body.pop("colored", None)
            return _emit(rep, args, colored=colored, doc=doc)
        if args.command == "explore":
            cfg = explorer.ScanConfig(group=args.group, max_vertices=args.max_vertices,
                                      trials=args.trials, seed=args.seed,
                                      norm=_norm_from_arg(args.norm))
            scan = explorer.conjecture_scan(cfg)
            rep = report_mod.explore_report(scan)
            if args.out:
                pathlib.Path(args.out).write_text(
                    json.dumps(scan, indent=2, sort_keys=True) + "\n")
                print(f"report written to {args.out}", file=sys.stderr)
            if args.json:
                print(json.dumps(report_mod.machine_form(rep), indent=2, sort_keys=True,
                                 default=str))
            else:
                print(rep.human())
            return rep.exit_code
    except (DocumentError, UnsupportedError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 2


if __name__ == "__main__":
    raise SystemExit(main())
