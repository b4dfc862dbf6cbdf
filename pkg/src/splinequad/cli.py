"""Command-line front end.

Thin client over :mod:`splinequad.service`: flags are parsed into the same
request body the HTTP API accepts, the shared builders run in-process, and
the resulting document goes to stdout as JSON (default) or CSV.  Exit
status 0 means a document was emitted; 2 means the request could never
work (bad flag, bad partition, unsupported configuration); 3 means the
construction itself failed numerically — including a golden-fixture run
whose values drift past tolerance.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional, Sequence, Tuple

from pydantic import ValidationError

from .errors import (InvalidPartition, NumericFailure,
                     UnsupportedConfiguration)
from .fixtures import FIXTURE_TOLERANCE, FIXTURES, run_fixture
from .service import (RuleBody, build_realline_document, build_rule_document,
                      document_from_rule, parse_free_spec)

_RULE_FLAGS = ("continuity", "nodes", "lengths", "interval", "middle")


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="splinequad",
        description="Construct Gaussian and one-parameter quadrature rules "
                    "for splines of low smoothness on arbitrary partitions.")
    p.add_argument("--continuity", type=int, choices=(0, 1),
                   help="smoothness class of the spline space")
    p.add_argument("--nodes", type=int, metavar="N",
                   help="nodes per ordinary subinterval")
    p.add_argument("--lengths", metavar='"L1,L2,..."',
                   help="comma-separated subinterval lengths")
    p.add_argument("--interval", type=float, nargs=2, metavar=("A", "B"),
                   help="integration interval endpoints")
    p.add_argument("--middle", type=int, metavar="S_M",
                   help="1-based index where the two sweeps meet")
    p.add_argument("--family", choices=("full", "half"), default="full",
                   help="full: N nodes per subinterval; half: N/N-1 pairs")
    p.add_argument("--free", default="zero", metavar="{zero|value=V|pin=X}",
                   help="free-parameter policy for one-parameter families")
    p.add_argument("--format", dest="fmt", choices=("json", "csv"),
                   default="json", help="output document format")
    p.add_argument("--verify", action="store_true",
                   help="attach a truncated-power residual report")
    p.add_argument("--realline", choices=("c0", "c1"),
                   help="emit the interior limit rule instead of a rule")
    p.add_argument("--n", type=int, dest="n", metavar="N",
                   help="node count for --realline")
    p.add_argument("--fixture", choices=sorted(FIXTURES),
                   help="run a built-in golden configuration and diff it")
    return p


def _fail(code: int, message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def _reject_rule_flags(args: argparse.Namespace, mode_flag: str) -> Optional[int]:
    """Modes are exclusive; name the first flag that doesn't belong."""
    for name in _RULE_FLAGS:
        if getattr(args, name) is not None:
            return _fail(2, f"flag --{name}: not valid with {mode_flag}")
    return None


def _emit_json(payload: dict) -> None:
    print(json.dumps(payload, indent=2))


def _csv_rows(per_subinterval: List[dict]) -> List[Tuple[int, float, float]]:
    rows = [(piece["index"], x, w)
            for piece in per_subinterval
            for x, w in zip(piece["nodes"], piece["weights"])]
    rows.sort(key=lambda row: row[1])
    return rows


def _emit_csv(per_subinterval: List[dict]) -> None:
    print("subinterval,x,w")
    for index, x, w in _csv_rows(per_subinterval):
        print(f"{index},{x!r},{w!r}")


def _run_rule_mode(args: argparse.Namespace) -> int:
    for name in _RULE_FLAGS:
        if getattr(args, name) is None:
            return _fail(2, f"flag --{name}: required")
    if args.n is not None:
        return _fail(2, "flag --n: only valid with --realline")
    try:
        lengths = [float(piece) for piece in args.lengths.split(",")]
    except ValueError:
        return _fail(2, f"flag --lengths: could not parse {args.lengths!r} "
                        "as comma-separated numbers")
    try:
        parse_free_spec(args.free)
    except ValueError as bad:
        return _fail(2, f"flag --free: {bad}")
    try:
        body = RuleBody(continuity=args.continuity, nodes=args.nodes,
                        lengths=lengths,
                        interval=(args.interval[0], args.interval[1]),
                        middle=args.middle, family=args.family,
                        free=args.free, verify=args.verify)
    except ValidationError as bad:
        first = bad.errors()[0]
        where = first["loc"][0] if first["loc"] else "request"
        return _fail(2, f"flag --{where}: {first['msg']}")
    doc = build_rule_document(body)
    payload = doc.model_dump()
    if args.fmt == "csv":
        _emit_csv(payload["per_subinterval"])
        if payload["verification"] is not None:
            v = payload["verification"]
            print(f"verify: max residual {v['max_residual']!r}, "
                  f"min weight {v['min_weight']!r}", file=sys.stderr)
    else:
        _emit_json(payload)
    return 0


def _run_realline_mode(args: argparse.Namespace) -> int:
    rejected = _reject_rule_flags(args, "--realline")
    if rejected is not None:
        return rejected
    if args.fixture is not None:
        return _fail(2, "flag --fixture: not valid with --realline")
    if args.n is None:
        return _fail(2, "flag --n: required with --realline")
    if args.n < 1:
        return _fail(2, "flag --n: must be at least 1")
    doc = build_realline_document(args.realline, args.n)
    payload = doc.model_dump()
    if args.fmt == "csv":
        print("subinterval,x,w")
        for x, w in zip(payload["nodes"], payload["weights"]):
            print(f"1,{x!r},{w!r}")
    else:
        _emit_json(payload)
    return 0


def _run_fixture_mode(args: argparse.Namespace) -> int:
    rejected = _reject_rule_flags(args, "--fixture")
    if rejected is not None:
        return rejected
    if args.n is not None:
        return _fail(2, "flag --n: only valid with --realline")
    rule, worst = run_fixture(args.fixture)
    doc = document_from_rule(rule, verify=args.verify)
    payload = doc.model_dump()
    matched = worst <= FIXTURE_TOLERANCE
    payload["fixture"] = {"id": args.fixture,
                          "max_rel_diff": worst,
                          "tolerance": FIXTURE_TOLERANCE,
                          "match": matched}
    if args.fmt == "csv":
        _emit_csv(payload["per_subinterval"])
        print(f"fixture {args.fixture}: max rel diff {worst!r} "
              f"({'ok' if matched else 'MISMATCH'})", file=sys.stderr)
    else:
        _emit_json(payload)
    if not matched:
        return _fail(3, f"fixture {args.fixture}: max relative difference "
                        f"{worst!r} exceeds {FIXTURE_TOLERANCE!r}")
    return 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as stop:  # argparse printed the complaint already
        return int(stop.code or 0)
    if args.fixture is not None and args.realline is not None:
        return _fail(2, "flag --fixture: not valid with --realline")
    try:
        if args.fixture is not None:
            return _run_fixture_mode(args)
        if args.realline is not None:
            return _run_realline_mode(args)
        return _run_rule_mode(args)
    except (InvalidPartition, UnsupportedConfiguration) as bad:
        return _fail(2, str(bad))
    except NumericFailure as bad:
        return _fail(3, str(bad))


def entry() -> None:
    sys.exit(main(sys.argv[1:]))


if __name__ == "__main__":
    entry()
