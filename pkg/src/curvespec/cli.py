"""Command-line front end.

Exit codes: 0 success, 1 invalid input, 2 verification mismatch,
3 resource guard exceeded.
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor

from .errors import InvalidPairsError, InvariantError, ResourceLimitError
from .puiseux import characteristic_data, format_pairs, parse_pairs
from .report import build_report, dumps_report, format_resolution, format_spectrum
from .resolution import check_limits, decorate, export_dot
from .spectrum import spectrum_enumeration
from .verify import describe, parse_sweep, sweep_cases, verify_pairs

EXIT_OK, EXIT_INPUT, EXIT_MISMATCH, EXIT_GUARD = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _pairs_arg(parser):
    parser.add_argument("--pairs", required=True, help='Puiseux pairs, e.g. "3,2;1,2"')


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="curvespec", description=__doc__.splitlines()[0])
    parser.add_argument("-o", "--output", help="write to this file instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("spectrum", help="spectrum of exponents")
    _pairs_arg(p)
    p.add_argument("--format", choices=["text", "csv", "json"], default="text")

    p = sub.add_parser("resolution", help="decorated resolution table or DOT graph")
    _pairs_arg(p)
    p.add_argument("--dot", choices=["enriques", "dual"], help="emit a DOT graph instead of the table")

    p = sub.add_parser("verify", help="cross-check all routes and identities")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--pairs", help='Puiseux pairs, e.g. "3,2;1,2"')
    group.add_argument("--sweep", help='random sweep, e.g. "g<=2,k<=12,n<=5,count=50,seed=7"')
    p.add_argument("--jobs", type=int, default=1, help="worker processes for sweeps")
    p.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)

    p = sub.add_parser("report", help="full JSON report")
    _pairs_arg(p)
    return parser


def _cmd_spectrum(args):
    pairs = parse_pairs(args.pairs)
    check_limits(pairs)
    return EXIT_OK, format_spectrum(spectrum_enumeration(characteristic_data(pairs)), args.format)


def _cmd_resolution(args):
    pairs = parse_pairs(args.pairs)
    dec = decorate(pairs)
    if args.dot == "enriques":
        return EXIT_OK, export_dot(dec.diagram, dec)
    if args.dot == "dual":
        return EXIT_OK, export_dot(dec.graph, dec)
    return EXIT_OK, format_resolution(dec)


def _verify_one(pairs, inject_fault=False):
    return verify_pairs(pairs, perturb=inject_fault)


def _verify_lines(report) -> list[str]:
    if report.ok:
        return [f"ok {describe(report)}, 3 routes agree on {report.spectrum.mu} entries"]
    first = report.failures()[0]
    lines = [f"MISMATCH {format_pairs(report.pairs)}: {len(report.failures())} of {len(report.checks)} checks failed"]
    lines.append(f"  first: {first.name}: {first.detail}")
    lines += [f"  {c}" for c in report.failures()[1:]]
    return lines


def _cmd_verify(args):
    if args.pairs is not None:
        cases = [parse_pairs(args.pairs)]
    else:
        cases = sweep_cases(parse_sweep(args.sweep))
    for pairs in cases:
        check_limits(pairs)
    flags = [args.inject_fault] * len(cases)
    if args.jobs > 1 and len(cases) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            reports = list(pool.map(_verify_one, cases, flags))
    else:
        reports = [_verify_one(p, f) for p, f in zip(cases, flags)]
    lines = []
    for rep in reports:
        lines += _verify_lines(rep)
    failed = sum(not r.ok for r in reports)
    lines.append(f"{len(reports) - failed}/{len(reports)} cases passed")
    return (EXIT_MISMATCH if failed else EXIT_OK), "\n".join(lines) + "\n"


def _cmd_report(args):
    pairs = parse_pairs(args.pairs)
    dec = decorate(pairs)
    verification = verify_pairs(pairs)
    report = build_report(pairs, dec, verification)
    return (EXIT_OK if verification.ok else EXIT_MISMATCH), dumps_report(report)


_COMMANDS = {
    "spectrum": _cmd_spectrum,
    "resolution": _cmd_resolution,
    "verify": _cmd_verify,
    "report": _cmd_report,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        code, text = _COMMANDS[args.command](args)
    except InvalidPairsError as exc:
        print(f"curvespec: invalid input: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ResourceLimitError as exc:
        print(f"curvespec: resource limit: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except InvariantError as exc:
        print(f"curvespec: verification failure: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
