"""Command-line front end: construction, verification, search, and reports.

All reports are emitted to stdout as JSON; diagnostics go to stderr.  Exit
status is 0 for a pass, 1 for a verification failure, and 2 for unusable
input.  Each report carries a manifest (command, input digests, parameters,
verdict summary, tool version) that is byte-for-byte reproducible for
identical inputs and parameters.

The default working precision for decimal renderings and covariance checks
is 200 bits, overridable with the AECODES_PRECISION_BITS environment
variable.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

import mpmath

from . import __version__, acceptance
from .angular import CGIndex, HalfInt, clebsch_gordan
from .codes import CodeBasis, GmdeParams, construct_ae_gmde, construct_pi_gmde, map_e, map_f, map_h
from .covariance import (
    binary_dihedral_group,
    binary_icosahedral_group,
    binary_octahedral_group,
    check_covariance,
)
from .errors import build_ae_error_set, build_spin_error_set, op_to_json
from .exactnum import sqrt_rational_to_json
from .klverify import check_conditions, check_kl_correct, check_kl_detect, cross_validate
from .search import enumerate_and_search

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


def default_precision_bits() -> int:
    raw = os.environ.get("AECODES_PRECISION_BITS", "200")
    try:
        bits = int(raw)
    except ValueError as exc:
        raise ValueError(f"AECODES_PRECISION_BITS must be an integer, got {raw!r}") from exc
    if bits < 53:
        raise ValueError("AECODES_PRECISION_BITS must be at least 53")
    return bits


def _digest(path: str) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(65536), b""):
            h.update(chunk)
    return h.hexdigest()


def make_manifest(command: str, inputs: list[str], parameters: dict, verdicts: dict) -> dict:
    return {
        "command": command,
        "inputs": {p: _digest(p) for p in inputs},
        "parameters": parameters,
        "verdicts": verdicts,
        "tool_version": __version__,
    }


def _emit(report: dict) -> None:
    json.dump(report, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")


def _parse_halfint(text: str) -> HalfInt:
    return HalfInt.make(Fraction(text))


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def cmd_construct(args) -> int:
    params = GmdeParams(args.g, args.m, args.delta, args.epsilon)
    build = construct_ae_gmde if args.kind == "ae" else construct_pi_gmde
    code = build(params)
    if args.label:
        code = code.with_kind(code.kind, label=args.label)
    code.save(args.out)
    verdict = {"n": code.two_J, "dim": code.dim, "written": str(args.out)}
    _emit(
        {
            "code": {"kind": code.kind.value, "two_J": code.two_J, "label": code.label},
            "manifest": make_manifest(
                "construct",
                [args.out],
                {
                    "g": args.g,
                    "m": args.m,
                    "delta": args.delta,
                    "epsilon": args.epsilon,
                    "kind": args.kind,
                    "out": str(args.out),
                },
                verdict,
            ),
        }
    )
    return EXIT_PASS


def cmd_verify(args) -> int:
    code = CodeBasis.load(args.code_file)
    params = {
        "file": str(args.code_file),
        "t": args.t,
        "mode": args.mode,
        "t_prime": args.t_prime,
    }
    if args.mode in ("correct", "detect"):
        eset = build_ae_error_set(code.two_J, args.t)
        checker = check_kl_correct if args.mode == "correct" else check_kl_detect
        report = checker(code, eset)
        body = report.to_dict()
        passed = report.passed
    elif args.mode == "conditions":
        t_prime = args.t_prime if args.t_prime is not None else 2 * args.t
        report = check_conditions(code, args.t, t_prime)
        body = report.to_dict()
        passed = report.all_pass
    else:  # cross
        passed = cross_validate(code, args.t)
        body = {"mode": "cross", "pass": passed}
    _emit(
        {
            "report": body,
            "manifest": make_manifest("verify", [args.code_file], params, {"pass": passed}),
        }
    )
    return EXIT_PASS if passed else EXIT_FAIL


def cmd_errors(args) -> int:
    build = build_spin_error_set if args.spin else build_ae_error_set
    eset = build(args.two_j, args.t)
    _emit(
        {
            "t": eset.t,
            "two_J": args.two_j,
            "count": len(eset.ops),
            "operators": [op_to_json(op) for op in eset.ops],
            "manifest": make_manifest(
                "errors",
                [],
                {"two_j": args.two_j, "t": args.t, "spin": bool(args.spin)},
                {"count": len(eset.ops)},
            ),
        }
    )
    return EXIT_PASS


def cmd_cg(args) -> int:
    idx = CGIndex(
        j1=_parse_halfint(args.j1),
        m1=_parse_halfint(args.m1),
        j2=_parse_halfint(args.j2),
        m2=_parse_halfint(args.m2),
        J=_parse_halfint(args.J),
        M=_parse_halfint(args.M),
    )
    value = clebsch_gordan(idx)
    bits = default_precision_bits()
    with mpmath.workprec(bits):
        decimal = mpmath.nstr(value.to_mpf(bits), int(bits / 3.32) + 2)
    _emit(
        {
            "value": sqrt_rational_to_json(value),
            "decimal": decimal,
            "manifest": make_manifest(
                "cg",
                [],
                {k: getattr(args, k) for k in ("j1", "m1", "j2", "m2", "J", "M")},
                {"sign": value.sign},
            ),
        }
    )
    return EXIT_PASS


def cmd_map(args) -> int:
    code = CodeBasis.load(args.code_file)
    mapper = {"e": map_e, "h": map_h, "f": map_f}[args.via]
    mapped = mapper(code)
    mapped.save(args.out)
    _emit(
        {
            "kind_in": code.kind.value,
            "kind_out": mapped.kind.value,
            "manifest": make_manifest(
                "map",
                [args.code_file, args.out],
                {"via": args.via, "file": str(args.code_file), "out": str(args.out)},
                {"written": str(args.out)},
            ),
        }
    )
    return EXIT_PASS


def cmd_search(args) -> int:
    results = enumerate_and_search(
        args.n,
        args.t,
        max_support_size=args.max_size,
        limit=args.limit,
        require_counter_symmetric=args.counter_symmetric,
    )
    out_dir = Path(args.out) if args.out else None
    summary = []
    written: list[str] = []
    for i, res in enumerate(results):
        entry = res.to_dict()
        entry["verdicts"] = {"kl_correct": True, "cross_validate": cross_validate(res.code, args.t)}
        if out_dir is not None:
            out_dir.mkdir(parents=True, exist_ok=True)
            path = out_dir / f"code_{i:03d}.json"
            res.code.save(path)
            entry["file"] = str(path)
            written.append(str(path))
        summary.append(entry)
    report = {
        "n": args.n,
        "t": args.t,
        "found": len(results),
        "results": summary,
        "manifest": make_manifest(
            "search",
            written,
            {
                "n": args.n,
                "t": args.t,
                "max_size": args.max_size,
                "limit": args.limit,
                "counter_symmetric": args.counter_symmetric,
            },
            {"found": len(results)},
        ),
    }
    if out_dir is not None:
        with open(out_dir / "summary.json", "w", encoding="utf-8") as fh:
            json.dump(report, fh, indent=2, sort_keys=True)
            fh.write("\n")
    _emit(report)
    return EXIT_PASS


def cmd_covariance(args) -> int:
    code = CodeBasis.load(args.code_file)
    bits = args.bits if args.bits else default_precision_bits()
    if args.group == "bd":
        group = binary_dihedral_group(args.b, bits)
    elif args.group == "2o":
        group = binary_octahedral_group(bits)
    else:
        group = binary_icosahedral_group(bits)
    report = check_covariance(code, group, args.tol, bits, full_group=args.full_group)
    _emit(
        {
            "report": report.to_dict(),
            "manifest": make_manifest(
                "covariance",
                [args.code_file],
                {
                    "file": str(args.code_file),
                    "group": args.group,
                    "b": args.b,
                    "tol": args.tol,
                    "bits": bits,
                    "full_group": args.full_group,
                },
                {"pass": report.passed},
            ),
        }
    )
    return EXIT_PASS if report.passed else EXIT_FAIL


def cmd_identities(args) -> int:
    from .combinatorics import run_identity_sweeps

    results = run_identity_sweeps()
    _emit(
        {
            "report": results,
            "manifest": make_manifest(
                "identities", [], {}, {"all_passed": results["all_passed"]}
            ),
        }
    )
    return EXIT_PASS if results["all_passed"] else EXIT_FAIL


def cmd_reproduce(args) -> int:
    outcome = acceptance.run_all()
    _emit(
        {
            "report": outcome,
            "manifest": make_manifest(
                "reproduce-paper", [], {}, {"all_pass": outcome["all_pass"]}
            ),
        }
    )
    return EXIT_PASS if outcome["all_pass"] else EXIT_FAIL


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="aecodes",
        description="Construct, verify, search, and inspect absorption-emission codes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build a code from (g, m, delta, epsilon)")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--delta", type=int, required=True)
    p.add_argument("--epsilon", type=int, choices=(-1, 1), required=True)
    p.add_argument("--kind", choices=("ae", "pi"), default="ae")
    p.add_argument("--label", default="")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="verify a code file")
    p.add_argument("code_file")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--mode", choices=("correct", "detect", "conditions", "cross"), default="correct")
    p.add_argument("--t-prime", dest="t_prime", type=int, default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("errors", help="emit an error operator set")
    p.add_argument("--two-j", dest="two_j", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--spin", action="store_true")
    p.set_defaults(func=cmd_errors)

    p = sub.add_parser("cg", help="print one Clebsch-Gordan coefficient")
    for name in ("j1", "m1", "j2", "m2", "J", "M"):
        p.add_argument(
            f"--{name}",
            required=True,
            help="integer or half-integer; use --m1=-1/2 for negative values",
        )
    p.set_defaults(func=cmd_cg)

    p = sub.add_parser("map", help="relabel a code between kinds")
    p.add_argument("code_file")
    p.add_argument("--via", choices=("e", "h", "f"), required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_map)

    p = sub.add_parser("search", help="search staggered-support codes")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--max-size", dest="max_size", type=int, default=2)
    p.add_argument("--limit", type=int, default=None)
    p.add_argument("--counter-symmetric", action="store_true")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("covariance", help="check group covariance of a code file")
    p.add_argument("code_file")
    p.add_argument("--group", choices=("2o", "2i", "bd"), required=True)
    p.add_argument("--b", type=int, default=4, help="b for the binary dihedral family")
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--bits", type=int, default=None)
    p.add_argument("--full-group", action="store_true")
    p.set_defaults(func=cmd_covariance)

    p = sub.add_parser("identities", help="run the binomial identity sweeps")
    p.set_defaults(func=cmd_identities)

    p = sub.add_parser("reproduce-paper", help="run every reproduction scenario")
    p.set_defaults(func=cmd_reproduce)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
