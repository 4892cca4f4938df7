"""Command-line interface.

Subcommands::

    validate    parse a document and run every mathematical validity check
    analyze     full classification: predicates, dimensions, refinements
    cohomology  one group on invariant (p,0)-forms (--p, --kind)
    hkt         dual-method torsion criterion for the stored metric
    sl          closed trivializing top form, with the trace cross-check
    family      build a shipped family member, then run one of the above
    sweep       evaluate a family over a parameter grid and check its laws

Instances come either from ``--input FILE`` (a JSON document) or from
``--family ID`` with repeatable ``--param NAME=VALUE`` rational
parameters; the ``family`` subcommand spells the same thing positionally
(``family gt --param t=1/2 analyze``).  Reports go to stdout or ``--out``
in ``--format`` json, table or tex.

Exit status: 0 on success; 2 when the input fails a validity check, with
a machine-readable diagnostic on stderr; 1 when an internal invariant is
breached — that is a bug in the tool, never in the input.
"""

from __future__ import annotations

import argparse
import json
import sys

from .cohomology import KINDS, cohomology_group
from .errors import (
    BadParameters,
    InternalInvariantError,
    NotAlmostAbelian,
    ValidationError,
)
from .families import (
    FAMILY_IDS,
    BlockDecomposition,
    build_family,
    classify,
    recognize_block_form,
    sl_check,
    sweep,
)
from .io import (
    FORMATS,
    InstanceDocument,
    Realized,
    analysis_document,
    cohomology_document,
    emit_report,
    hkt_document,
    load_instance,
    realize,
    sl_document,
    sweep_document,
    validate_document,
)
from .metric import hkt_check

_ACTIONS = ("validate", "analyze", "cohomology", "hkt", "sl")


def _split_param(text: str):
    name, sep, value = text.partition("=")
    if not sep or not name:
        raise BadParameters(
            f"malformed --param {text!r}; expected NAME=VALUE")
    return name, value


def _gather_params(pairs):
    params = {}
    for text in pairs or ():
        name, value = _split_param(text)
        if name in params:
            raise BadParameters(f"parameter {name!r} given twice")
        params[name] = value
    return params


def _family_realized(family_id: str, param_pairs) -> Realized:
    fam = build_family(family_id, _gather_params(param_pairs))
    document = InstanceDocument(
        family_id=fam.family_id,
        family_parameters=tuple(sorted(fam.parameters.items())))
    return Realized(document=document, instance=fam.instance,
                    metric=fam.metric, family=fam)


def _realize_source(args) -> Realized:
    """Build the instance named by --input or --family (exactly one)."""
    has_input = getattr(args, "input", None) is not None
    has_family = getattr(args, "family", None) is not None
    if has_input and has_family:
        raise BadParameters("--input and --family are mutually exclusive")
    if has_input:
        if getattr(args, "param", None):
            raise BadParameters("--param only applies to --family")
        return realize(load_instance(args.input))
    if has_family:
        return _family_realized(args.family, args.param)
    raise BadParameters("no instance given; use --input FILE or --family ID")


def _run_action(action: str, realized: Realized, args) -> dict:
    if action == "validate":
        return validate_document(realized)
    if action == "analyze":
        target = realized.family if realized.family is not None \
            else realized.instance
        gram = None
        if realized.family is None and realized.document.gram is not None:
            gram = [list(row) for row in realized.document.gram]
        report = classify(target, gram=gram)
        return analysis_document(realized, report)
    if action == "cohomology":
        group = cohomology_group(realized.instance, args.kind, args.p)
        return cohomology_document(realized, group)
    if action == "hkt":
        report = hkt_check(realized.instance, realized.metric)
        return hkt_document(realized, report)
    if action == "sl":
        try:
            block = recognize_block_form(realized.instance.g,
                                         realized.instance.triple)
        except NotAlmostAbelian:
            block = None
        if not isinstance(block, BlockDecomposition):
            block = None
        report = sl_check(realized.instance, decomposition=block)
        return sl_document(realized, report)
    raise BadParameters(f"unknown action {action!r}")


def _write(text: str, out) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as handle:
            handle.write(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hcforms",
        description="Exact invariant-form calculus for Lie algebras "
                    "with hypercomplex structure.")
    sub = parser.add_subparsers(dest="command", required=True)

    source = argparse.ArgumentParser(add_help=False)
    source.add_argument("--input", metavar="FILE",
                        help="JSON instance document")
    source.add_argument("--family", metavar="ID", choices=FAMILY_IDS,
                        help="shipped family id")
    source.add_argument("--param", metavar="NAME=RAT", action="append",
                        help="family parameter (repeatable); values are "
                             "exact rationals like 1/2")

    output = argparse.ArgumentParser(add_help=False)
    output.add_argument("--format", choices=FORMATS, default="table",
                        help="report format (default: table)")
    output.add_argument("--out", metavar="FILE",
                        help="write the report here instead of stdout")

    degree = argparse.ArgumentParser(add_help=False)
    degree.add_argument("--p", type=int, default=2, metavar="DEGREE",
                        help="form degree (default: 2)")
    degree.add_argument("--kind", choices=KINDS, default="dolbeault",
                        help="cohomology kind (default: dolbeault)")

    for action in _ACTIONS:
        sub.add_parser(action, parents=[source, output, degree],
                       help=f"run {action} on one instance")

    fam = sub.add_parser("family", parents=[output, degree],
                         help="build a family member and run an action")
    fam.add_argument("id", choices=FAMILY_IDS, help="family id")
    fam.add_argument("action", choices=_ACTIONS, help="what to run")
    fam.add_argument("--param", metavar="NAME=RAT", action="append",
                     help="family parameter (repeatable)")

    sw = sub.add_parser("sweep", parents=[output],
                        help="evaluate a family over a parameter grid")
    sw.add_argument("--family", metavar="ID", choices=FAMILY_IDS,
                    required=True, help="family id")
    sw.add_argument("--param", metavar="NAME=V1,V2,...", action="append",
                    help="override one grid axis with comma-separated "
                         "rational values (repeatable)")
    sw.add_argument("--workers", type=int, default=None,
                    help="parallel point evaluation (results are "
                         "byte-identical for any worker count)")
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "sweep":
            grid = None
            if args.param:
                grid = {}
                for text in args.param:
                    name, value = _split_param(text)
                    if name in grid:
                        raise BadParameters(
                            f"grid axis {name!r} given twice")
                    grid[name] = [v for v in value.split(",") if v]
            result = sweep(args.family, grid=grid, workers=args.workers)
            doc = sweep_document(result)
        elif args.command == "family":
            realized = _family_realized(args.id, args.param)
            doc = _run_action(args.action, realized, args)
        else:
            realized = _realize_source(args)
            doc = _run_action(args.command, realized, args)
    except ValidationError as exc:
        sys.stderr.write(json.dumps(exc.to_json(), sort_keys=True) + "\n")
        return 2
    except InternalInvariantError as exc:
        sys.stderr.write(json.dumps(exc.to_json(), sort_keys=True) + "\n")
        return 1
    _write(emit_report(doc, args.format), args.out)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
