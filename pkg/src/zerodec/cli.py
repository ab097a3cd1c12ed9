"""Command-line front end: ``zerodec dec|sym|zeros-dec|orbit``.

Exit codes: 0 success, 1 input/parse error, 2 ideal not zero-dimensional,
3 timeout, 4 triangular set not contained in the ideal's variety.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from zerodec.decgroup import (
    DecOptions,
    EnumerationCapError,
    NotRadicalError,
    dec_from_points,
    dec_group,
    sym_group,
)
from zerodec.groebner import GroebnerTimeout, NotZeroDimensionalError, cached_buchberger
from zerodec.linalg import DEFAULT_SYMBOLIC_CUTOFF
from zerodec.perm import PermutationError, describe, group_closure, parse_generators
from zerodec.polyring import MonomialOrder, ParseError, format_poly, parse_points, parse_system
from zerodec.triangular import ContainmentError, is_regular, is_triangular, orbit_triangular, verify_containment

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_NOT_ZERO_DIM = 2
EXIT_TIMEOUT = 3
EXIT_NOT_CONTAINED = 4

log = logging.getLogger("zerodec")


@dataclass
class RunConfig:
    order: str = "degrevlex"
    radicalize_policy: str = "auto"
    symbolic_cutoff: int = DEFAULT_SYMBOLIC_CUTOFF
    timeout_seconds: int = 600
    output: str = "text"
    cache: str | None = None
    show_gb: bool = False

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> RunConfig:
        return cls(
            order=args.order,
            radicalize_policy=args.radical,
            symbolic_cutoff=args.cutoff,
            timeout_seconds=args.timeout,
            output="json" if args.json else "text",
            cache=args.cache,
            show_gb=getattr(args, "show_gb", False),
        )

    def deadline(self) -> float:
        return time.monotonic() + self.timeout_seconds

    def dec_options(self, deadline: float) -> DecOptions:
        return DecOptions(radical=self.radicalize_policy, cutoff=self.symbolic_cutoff, deadline=deadline)


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}", EXIT_INPUT) from None


def _parse_system_file(path: str, order: str):
    try:
        return parse_system(_read(path), MonomialOrder(order))
    except ParseError as exc:
        raise CliError(f"{path}: {exc}", EXIT_INPUT) from None


def cmd_dec(path: str, config: RunConfig) -> dict:
    ring, polys = _parse_system_file(path, config.order)
    if not polys:
        raise CliError(f"{path}: no polynomials given", EXIT_INPUT)
    deadline = config.deadline()
    t = time.perf_counter()
    G = cached_buchberger(polys, config.cache, ring.order, deadline)
    elapsed = time.perf_counter() - t
    result = dec_group(G, config.dec_options(deadline))
    result.timings["groebner"] = elapsed
    return result.to_dict(include_gb=config.show_gb)


def cmd_sym(path: str, config: RunConfig) -> dict:
    ring, polys = _parse_system_file(path, config.order)
    if len(polys) != 1:
        raise CliError(f"{path}: expected exactly one polynomial, found {len(polys)}", EXIT_INPUT)
    group = sym_group(polys[0], range(ring.nvars))
    report = describe(group)
    report["elements"] = [str(s) for s in group.elements]
    return {"variables": list(ring.names), "polynomial": format_poly(polys[0]), "sym": report}


def cmd_zeros_dec(path: str, config: RunConfig) -> dict:
    try:
        names, points = parse_points(_read(path))
    except ParseError as exc:
        raise CliError(f"{path}: {exc}", EXIT_INPUT) from None
    if not points:
        raise CliError(f"{path}: no points given", EXIT_INPUT)
    result = dec_from_points(points, names)
    return result.to_dict()


def cmd_orbit(system_path: str, triset_path: str, config: RunConfig, group_text: str | None = None) -> dict:
    ring, polys = _parse_system_file(system_path, config.order)
    tring, tpolys = _parse_system_file(triset_path, config.order)
    if tring.names != ring.names:
        raise CliError("the triangular set must declare the same variables as the system", EXIT_INPUT)
    check = is_triangular(tpolys)
    if not check:
        raise CliError(f"{triset_path}: not a triangular set ({check.reason})", EXIT_INPUT)
    T = check.triangular
    deadline = config.deadline()
    G = cached_buchberger(polys, config.cache, ring.order, deadline)
    if not verify_containment(T, G):
        raise CliError("input triangular set is not contained in the variety of the ideal", EXIT_NOT_CONTAINED)
    report: dict = {"variables": list(ring.names), "input": [format_poly(p) for p in T.polys],
                    "input_regular": is_regular(T)}
    if group_text is not None:
        try:
            gens = parse_generators(group_text, ring.nvars)
        except PermutationError as exc:
            raise CliError(f"--group: {exc}", EXIT_INPUT) from None
        group = group_closure(gens, ring.nvars)
        report["group_source"] = "explicit"
    else:
        group = dec_group(G, config.dec_options(deadline)).dec_group
        report["group_source"] = "dec"
    report["group"] = describe(group)
    try:
        orbit = orbit_triangular(T, group, G)
    except ContainmentError as exc:
        raise CliError(str(exc), EXIT_NOT_CONTAINED) from None
    report["orbit"] = [
        {
            "sigma": str(e.sigma),
            "triangular_set": [format_poly(p) for p in e.triangular.canonical().polys],
            "regular": is_regular(e.triangular),
            "verified": e.verified,
        }
        for e in orbit
    ]
    report["violations"] = sum(not e.verified for e in orbit)
    return report


def render_text(value, indent: int = 0) -> str:
    """Plain-text rendering of a JSON-compatible report."""
    pad = "  " * indent
    lines = []
    if isinstance(value, dict):
        for k, v in value.items():
            if isinstance(v, (dict, list)) and v and not _is_flat(v):
                lines.append(f"{pad}{k}:")
                lines.append(render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
    elif isinstance(value, list):
        for v in value:
            if isinstance(v, (dict, list)) and v and not _is_flat(v):
                lines.append(f"{pad}-")
                lines.append(render_text(v, indent + 1))
            else:
                lines.append(f"{pad}- {_scalar(v)}")
    else:
        lines.append(pad + _scalar(value))
    return "\n".join(lines)


def _is_flat(v) -> bool:
    return isinstance(v, list) and all(not isinstance(x, (dict, list)) or _is_flat(x) for x in v) and len(str(v)) < 100


def _scalar(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, list):
        return "[" + ", ".join(_scalar(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{}"
    return str(v)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--order", choices=["lex", "grlex", "degrevlex"], default="degrevlex")
    common.add_argument("--radical", choices=["auto", "strict", "off"], default="auto")
    common.add_argument("--cutoff", type=_positive, default=DEFAULT_SYMBOLIC_CUTOFF,
                        help="largest quotient dimension for the symbolic path")
    common.add_argument("--timeout", type=_positive, default=600, metavar="SECS")
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    common.add_argument("--cache", metavar="DIR", help="persist Groebner bases in DIR")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="zerodec", description="Decomposition groups of zero-dimensional ideals.")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("dec", parents=[common], help="decomposition group of a polynomial system")
    p.add_argument("system")
    p.add_argument("--show-gb", action="store_true", help="include the Groebner basis in the report")
    p = sub.add_parser("sym", parents=[common], help="symmetry group of a single polynomial")
    p.add_argument("polynomial")
    p = sub.add_parser("zeros-dec", parents=[common], help="decomposition group from an explicit zero set")
    p.add_argument("points")
    p = sub.add_parser("orbit", parents=[common], help="new triangular sets from a known one")
    p.add_argument("system")
    p.add_argument("triset")
    p.add_argument("--group", metavar="CYCLES", help='generators, e.g. "(1 2),(1 2 3 4 5)"; skips the Dec pipeline')
    return parser


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def run(argv: Sequence[str] | None = None) -> tuple[int, dict]:
    """Parse arguments, run the command, return (exit code, report)."""
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    config = RunConfig.from_args(args)
    try:
        if args.command == "dec":
            report = cmd_dec(args.system, config)
        elif args.command == "sym":
            report = cmd_sym(args.polynomial, config)
        elif args.command == "zeros-dec":
            report = cmd_zeros_dec(args.points, config)
        else:
            report = cmd_orbit(args.system, args.triset, config, args.group)
    except CliError as exc:
        return exc.code, {"error": str(exc)}
    except NotZeroDimensionalError:
        return EXIT_NOT_ZERO_DIM, {"error": "ideal is not zero-dimensional"}
    except GroebnerTimeout as exc:
        return EXIT_TIMEOUT, {"error": str(exc), "pairs_processed": exc.pairs_processed,
                              "basis_size": exc.basis_size}
    except (NotRadicalError, EnumerationCapError, ValueError) as exc:
        return EXIT_INPUT, {"error": str(exc)}
    return EXIT_OK, report


def main(argv: Sequence[str] | None = None) -> int:
    args_list = list(sys.argv[1:] if argv is None else argv)
    code, report = run(args_list)
    as_json = "--json" in args_list
    if as_json:
        payload = {"schema": SCHEMA_VERSION, "exit_code": code, **report}
        print(json.dumps(payload, indent=2))
    elif "error" in report:
        print(f"zerodec: {report['error']}", file=sys.stderr)
    else:
        print(render_text(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
