"""Command-line interface with stable, machine-readable output.

Commands: check, irr, enumerate, ell, family, criteria, sl2-order.
Every payload embeds the ring expression next to the tuple data, tuples
serialize as arrays of element strings in the input grammar, and output
is byte-identical across identical invocations (timing is opt-in).

Exit codes: 0 positive answer, 1 negative answer, 2 refused (infinite
ring where a finite one is needed, or budget), 3 excluded sizes, 64 parse
or usage errors, 65 a tuple that is not a solution where one is required.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from .enumeration import (
    BudgetExceededError,
    DEFAULT_BUDGET,
    SearchBox,
    bounded_search,
    compute_ell,
    enumerate_irreducibles,
    enumerate_quiddities,
    sl2_order,
)
from .families import FAMILY_NAMES, FamilyError, generate_family
from .parse import RingSyntaxError, parse_ring, parse_tuple
from .reduction import is_irreducible, verify_certificate
from .rings import InfiniteRingError, RingConstructionError
from .core import QuiddityTuple, quiddity_sign

EXIT_OK = 0
EXIT_NO = 1
EXIT_REFUSED = 2
EXIT_EXCLUDED = 3
EXIT_USAGE = 64
EXIT_NOT_QUIDDITY = 65


def _emit(result: dict, fmt: str = "json", tsv_rows: Optional[list] = None):
    if fmt == "tsv" and tsv_rows is not None:
        for row in tsv_rows:
            sys.stdout.write("\t".join(row) + "\n")
        return
    sys.stdout.write(json.dumps(result, sort_keys=True, indent=2) + "\n")


def _result(command: str, status: str, payload: dict,
            provenance: Optional[list] = None) -> dict:
    return {
        "command": command,
        "status": status,
        "payload": payload,
        "provenance": provenance or [],
    }


def _sign_json(sign):
    if sign is None:
        return None
    return {"sign": int(sign), "char_two": sign.char_two}


def cmd_check(args) -> int:
    ring = parse_ring(args.ring)
    entries = parse_tuple(ring, args.tuple)
    sign = quiddity_sign(entries)
    payload = {
        "ring": ring.expr(),
        "tuple": [str(e) for e in entries],
        "quiddity": sign is not None,
    }
    if sign is not None:
        payload.update(_sign_json(sign))
        _emit(_result("check", "ok", payload), args.format)
        return EXIT_OK
    _emit(_result("check", "no", payload), args.format)
    return EXIT_NO


def cmd_irr(args) -> int:
    ring = parse_ring(args.ring)
    entries = parse_tuple(ring, args.tuple)
    sign = quiddity_sign(entries)
    if sign is None:
        _emit(_result("irr", "error", {
            "ring": ring.expr(),
            "tuple": [str(e) for e in entries],
            "reason": "not a solution of the matrix equation",
        }), args.format)
        return EXIT_NOT_QUIDDITY
    qt = QuiddityTuple(ring, entries, sign)
    verdict = is_irreducible(qt)
    payload = {
        "ring": ring.expr(),
        "tuple": qt.texts(),
        **_sign_json(sign),
        "verdict": verdict.kind,
    }
    if verdict.kind == "irreducible":
        _emit(_result("irr", "ok", payload), args.format)
        return EXIT_OK
    if verdict.kind == "reducible":
        payload["certificate"] = verdict.certificate.to_json()
        _emit(_result("irr", "no", payload), args.format)
        return EXIT_NO
    _emit(_result("irr", "no", payload), args.format)
    return EXIT_EXCLUDED


def cmd_enumerate(args) -> int:
    ring = parse_ring(args.ring)
    n = args.size
    if ring.is_finite:
        if args.irreducible:
            tuples = enumerate_irreducibles(ring, n, jobs=args.jobs)
            kind = "irreducible classes"
        elif args.raw:
            tuples = enumerate_quiddities(ring, n, canonical_only=False,
                                          jobs=args.jobs)
            kind = "all solutions"
        else:
            tuples = enumerate_quiddities(ring, n, canonical_only=True,
                                          jobs=args.jobs)
            kind = "solution classes"
        completeness = "exhaustive"
    else:
        if args.height is None and args.degree is None:
            _emit(_result("enumerate", "refused", {
                "ring": ring.expr(),
                "reason": "infinite ring: supply --height/--degree to run "
                          "a bounded box search",
            }))
            return EXIT_REFUSED
        box = SearchBox(height=args.height if args.height is not None else 3,
                        degree=args.degree if args.degree is not None else 2)
        tuples = bounded_search(ring, n, box, budget=args.budget)
        kind = "irreducible classes"
        completeness = "complete within box only"
    payload = {
        "ring": ring.expr(),
        "size": n,
        "kind": kind,
        "completeness": completeness,
        "count": len(tuples),
        "tuples": [qt.texts() for qt in tuples],
    }
    _emit(_result("enumerate", "ok", payload), args.format,
          tsv_rows=[qt.texts() for qt in tuples])
    return EXIT_OK


def cmd_ell(args) -> int:
    ring = parse_ring(args.ring)
    report = compute_ell(ring, jobs=args.jobs)
    payload = report.to_json(with_timing=args.timing)
    _emit(_result("ell", "ok", payload, provenance=[report.stopping_rule]),
          args.format,
          tsv_rows=[qt.texts()
                    for size in sorted(report.irreducibles_by_size)
                    for qt in report.irreducibles_by_size[size]])
    return EXIT_OK


def cmd_sl2(args) -> int:
    ring = parse_ring(args.ring)
    order = sl2_order(ring)
    _emit(_result("sl2-order", "ok",
                  {"ring": ring.expr(), "order": order}), args.format)
    return EXIT_OK


def cmd_criteria(args) -> int:
    ring = parse_ring(args.ring)
    report = unboundedness_criteria_json(ring)
    _emit(_result("criteria", "ok", report,
                  provenance=report.pop("provenance")), args.format)
    return EXIT_OK


def unboundedness_criteria_json(ring):
    from .families import unboundedness_criteria
    return unboundedness_criteria(ring).to_json()


def cmd_family(args) -> int:
    params = {}
    for item in args.param or []:
        if "=" not in item:
            raise FamilyError(f"--param wants key=value, got {item!r}")
        key, value = item.split("=", 1)
        params[key] = value
    result = generate_family(args.name, params)
    payload = result.to_json()
    if args.verify:
        checks = []
        for member, member_json in zip(result.members, payload["members"]):
            qt = member.quiddity
            checks.append({
                "tuple": qt.texts(),
                "sign_recheck": qt.check(),
                "certificate_recheck":
                    verify_certificate(member.verdict.certificate, qt).ok
                    if member.verdict.certificate is not None else None,
            })
        payload["checks"] = checks
    _emit(_result("family", "ok", payload), args.format)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quiddity",
        description="Exact solutions of the Conway-Coxeter matrix equation "
                    "over a tower of commutative rings.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, ring=True, fmt=True):
        if ring:
            p.add_argument("--ring", required=True,
                           help="ring expression, e.g. Z, Q, Z/6, Z[X]/(X^2+1)")
        if fmt:
            p.add_argument("--format", choices=("json", "tsv"),
                           default="json")

    p = sub.add_parser("check", help="is the tuple a solution, and with "
                                     "which sign")
    add_common(p)
    p.add_argument("--tuple", required=True)
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("irr", help="decide irreducibility; certificates "
                                   "for reducible inputs")
    add_common(p)
    p.add_argument("--tuple", required=True)
    p.set_defaults(fn=cmd_irr)

    p = sub.add_parser("enumerate", help="enumerate solutions of one size")
    add_common(p)
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--irreducible", action="store_true",
                   help="only irreducible classes")
    p.add_argument("--raw", action="store_true",
                   help="all tuples instead of canonical classes")
    p.add_argument("--height", type=int, default=None,
                   help="coefficient box for infinite rings")
    p.add_argument("--degree", type=int, default=None,
                   help="degree box for polynomial entries")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.set_defaults(fn=cmd_enumerate)

    p = sub.add_parser("ell", help="exact maximal irreducible size over a "
                                   "finite ring")
    add_common(p)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--timing", action="store_true",
                   help="include wall-clock timing (breaks byte-stability)")
    p.set_defaults(fn=cmd_ell)

    p = sub.add_parser("sl2-order", help="|SL2(A)| by brute force")
    add_common(p)
    p.set_defaults(fn=cmd_sl2)

    p = sub.add_parser("criteria", help="unboundedness criteria for "
                                        "polynomial rings over the base")
    add_common(p)
    p.set_defaults(fn=cmd_criteria)

    p = sub.add_parser("family", help="generate and verify a printed "
                                      "solution family")
    p.add_argument("--name", required=True, choices=FAMILY_NAMES)
    p.add_argument("--param", action="append",
                   help="key=value, repeatable (a=7, P=X^2-2, n=4, l=1)")
    p.add_argument("--verify", action="store_true",
                   help="re-run certificate and sign checks on the output")
    p.add_argument("--format", choices=("json", "tsv"), default="json")
    p.set_defaults(fn=cmd_family)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    try:
        return args.fn(args)
    except InfiniteRingError as exc:
        _emit(_result(args.command, "refused", {"reason": str(exc)}))
        return EXIT_REFUSED
    except BudgetExceededError as exc:
        _emit(_result(args.command, "refused",
                      {"reason": str(exc), "count": exc.count}))
        return EXIT_REFUSED
    except RingSyntaxError as exc:
        _emit(_result(args.command, "error",
                      {"reason": str(exc), "position": exc.position}))
        return EXIT_USAGE
    except (RingConstructionError, FamilyError, ValueError) as exc:
        _emit(_result(args.command, "error", {"reason": str(exc)}))
        return EXIT_USAGE


def cli():
    sys.exit(main())


if __name__ == "__main__":
    cli()
