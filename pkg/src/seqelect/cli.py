"""Command-line front end.

    seqelect tabulate FILE --method pareto-phragmen --seats 5 --trace
    seqelect tabulate parties.election --divisors dhondt
    seqelect verify --quick

Exit codes: 0 success, 1 input error, 2 method precondition error,
3 internal invariant breach.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import methods
from .electionfile import ElectionFile, ElectionFileError, parse_election
from .harness import DEFAULT_SEED, run_manifest
from .numerics import BallotError
from .partylist import (
    ApportionmentError,
    DivisorFamily,
    NoValidAlpha,
    apportion_divisor,
    apportion_largest_quotients,
    quota,
)
from .score_geom import add_phantoms, convert_scores
from .sequential import MethodError
from .trace import format_value

EXIT_OK, EXIT_INPUT, EXIT_METHOD, EXIT_INTERNAL = 0, 1, 2, 3
PARTYLIST_METHODS = ("largest-quotients", "divisor")


class InputError(ValueError):
    pass


def tabulate(election: ElectionFile, method: str | None = None, *, seats: int | None = None,
             trace: bool = False, convert: int | None = None, phantoms: bool = False,
             divisors: str | None = None, tie_seed: int | None = None, digest: str | None = None) -> dict:
    """Run one method on a parsed election and build the result document."""
    family = DivisorFamily.parse(divisors) if divisors else None
    if election.mode == "partylist":
        return _tabulate_partylist(election, method or "largest-quotients", family or DivisorFamily("sainte-lague"),
                                   trace, digest)
    if method is None:
        raise MethodError("ballots mode needs --method; valid names: " + ", ".join(methods.REGISTRY))
    spec = methods.get(method)
    matrix = election.matrix
    if phantoms:
        matrix = add_phantoms(matrix)
    if convert is not None:
        matrix = convert_scores(matrix, convert)
    ordering, tr = methods.run_method(method, matrix, family, tie_seed)
    names = matrix.candidate_names
    result = {
        "format": "seqelect-result",
        "version": 1,
        "mode": "ballots",
        "method": method,
        "parameters": {
            "seats": seats,
            "convert": convert,
            "phantoms": phantoms,
            "divisors": family.label if family else None,
            "tie_seed": tie_seed,
            "exact": spec.exact,
        },
        "input_sha256": digest,
        "candidates": list(names),
        "ordering": [{"rank": r + 1, "name": names[i], "index": i} for r, i in enumerate(ordering)],
    }
    if seats is not None:
        if seats < 0 or seats > len(ordering):
            raise MethodError(f"--seats must lie between 0 and {len(ordering)}")
        result["winners"] = [names[i] for i in ordering[:seats]]
    if trace:
        result["trace"] = tr.to_dict()
    return result


def _tabulate_partylist(election, method, family, trace, digest) -> dict:
    if method not in PARTYLIST_METHODS:
        raise MethodError(f"partylist mode supports {', '.join(PARTYLIST_METHODS)}, not {method!r}")
    tally = election.tally
    result = {
        "format": "seqelect-result",
        "version": 1,
        "mode": "partylist",
        "method": method,
        "parameters": {"divisors": family.label, "seats": tally.seats},
        "input_sha256": digest,
        "quota": {name: format_value(q) for name, q in zip(tally.names, quota(tally))},
    }
    if method == "largest-quotients":
        app = apportion_largest_quotients(tally, family)
        result["boundary_tie"] = app.boundary_tie
        if trace:
            result["allocation_order"] = [
                {"seat": k + 1, "party": tally.names[p], "quotient": format_value(q)}
                for k, (p, q) in enumerate(app.allocation_order)]
    else:
        app, interval = apportion_divisor(tally, family)
        hi = interval.high
        result["alpha_interval"] = [format_value(interval.low),
                                    None if hi == float("inf") else format_value(hi)]
    result["seats"] = dict(zip(tally.names, app.seats_per_party))
    return result


def render_table(result: dict) -> str:
    lines = [f"method: {result['method']}"]
    if result["mode"] == "partylist":
        width = max(len(n) for n in result["seats"])
        for name, s in result["seats"].items():
            lines.append(f"  {name:<{width}}  {s:>4}   quota {result['quota'][name]}")
        if "alpha_interval" in result:
            lines.append(f"alpha in ({result['alpha_interval'][0]}, {result['alpha_interval'][1]})")
        return "\n".join(lines) + "\n"
    winners = set(result.get("winners", []))
    for entry in result["ordering"]:
        mark = "*" if entry["name"] in winners else " "
        lines.append(f"{mark}{entry['rank']:>3}. {entry['name']}")
    for rec in result.get("trace", {}).get("seats", []):
        extra = ""
        if rec.get("improvers"):
            extra = " improvers: " + ", ".join(
                f"{imp['candidate']} ({imp['for']} vs {imp['against']})" for imp in rec["improvers"])
        lines.append(f"  seat {rec['seat']}: step-1 {rec['step1_winner']} -> {rec['elected']}{extra}")
    return "\n".join(lines) + "\n"


def dump(result: dict, fmt: str) -> str:
    if fmt == "table":
        return render_table(result)
    return json.dumps(result, indent=2, sort_keys=True, ensure_ascii=False, default=_json_default) + "\n"


def _json_default(value):
    if isinstance(value, Fraction):
        return format_value(value)
    raise TypeError(f"cannot serialise {type(value).__name__}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="seqelect", description="Sequential proportional tabulation.")
    sub = parser.add_subparsers(dest="command", required=True)

    tab = sub.add_parser("tabulate", help="order the candidates of one election")
    tab.add_argument("file", type=Path)
    tab.add_argument("--method", help="method name (ballots) or largest-quotients/divisor (partylist)")
    tab.add_argument("--mode", choices=("ballots", "partylist"), help="assert the file's mode")
    tab.add_argument("--seats", type=int)
    tab.add_argument("--trace", action="store_true")
    tab.add_argument("--convert", type=int, metavar="N", help="split score voters into N approval voters")
    tab.add_argument("--phantoms", action="store_true", help="append one phantom voter per candidate")
    tab.add_argument("--divisors", help="dhondt|sainte-lague|adams|hill|dean|ossipoff|custom:LIST")
    tab.add_argument("--tie-seed", type=int, help="seeded candidate permutation for tie-breaks")
    tab.add_argument("--output", choices=("json", "table"), default="json")
    tab.add_argument("--out", type=Path)

    ver = sub.add_parser("verify", help="run the property manifest and print a JSON report")
    ver.add_argument("--seed", type=int, default=DEFAULT_SEED)
    ver.add_argument("--quick", action="store_true")
    ver.add_argument("--out", type=Path)

    sub.add_parser("methods", help="list method names")
    return parser


def _emit(text: str, out: Path | None):
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text, encoding="utf-8")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "methods":
            _emit("\n".join(methods.REGISTRY) + "\n", None)
            return EXIT_OK
        if args.command == "verify":
            reports = run_manifest(args.seed, args.quick)
            failed = [r for r in reports if not r.passed]
            doc = {"seed": args.seed, "checks": len(reports), "failed": len(failed),
                   "reports": [r.to_dict() for r in reports]}
            _emit(json.dumps(doc, indent=2, sort_keys=True, default=str) + "\n", args.out)
            return EXIT_INTERNAL if failed else EXIT_OK

        election = parse_election(args.file)
        if args.mode and args.mode != election.mode:
            raise InputError(f"--mode {args.mode} given but the file is in {election.mode} mode")
        digest = hashlib.sha256(args.file.read_bytes()).hexdigest()
        result = tabulate(election, args.method, seats=args.seats, trace=args.trace, convert=args.convert,
                          phantoms=args.phantoms, divisors=args.divisors, tie_seed=args.tie_seed,
                          digest=digest)
        _emit(dump(result, args.output), args.out)
        return EXIT_OK
    except (ElectionFileError, BallotError, InputError) as exc:
        print(f"seqelect: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except methods.UnknownMethod as exc:
        print(f"seqelect: {exc}", file=sys.stderr)
        return EXIT_METHOD
    except NoValidAlpha as exc:
        print(f"seqelect: precondition failed: no alpha works ({exc}); use largest-quotients", file=sys.stderr)
        return EXIT_METHOD
    except (MethodError, ApportionmentError) as exc:
        print(f"seqelect: precondition failed: {exc}", file=sys.stderr)
        return EXIT_METHOD
    except AssertionError as exc:
        print(f"seqelect: internal invariant breached: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


def main_exit():
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
