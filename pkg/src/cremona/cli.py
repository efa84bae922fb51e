"""Command-line front end.

Exit status is 0 on success, 1 on a domain error (reported on stdout as a
JSON object with an ``error`` key) and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Any, Sequence, TextIO

from .errors import CremonaError, InvalidInput
from .links import LinkTrace, factorize, recompose
from .marked_system import (
    Fano3Data,
    HomaloidalType,
    fano3_classify,
    format_type,
    from_homaloidal,
    noether_inequality,
    parse_type,
    sarkisov_degree,
)
from .realization import (
    RationalMap,
    compose,
    factor_by_quadratics,
    homaloidal_type_of,
    random_corpus,
    verify_factorization,
)


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, ensure_ascii=False)


def _read_map(path: str, stdin: TextIO) -> RationalMap:
    try:
        if path == "-":
            text = stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        data = json.loads(text)
    except OSError as exc:
        raise InvalidInput(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"{path} is not valid JSON: {exc.msg}") from exc
    if not isinstance(data, dict):
        raise InvalidInput(f"{path} must hold a JSON object")
    return RationalMap.from_json(data)


def _trace_lines(t: HomaloidalType, trace: LinkTrace) -> list[str]:
    lines = [f"type {format_type(t)}: {len(trace)} links"]
    for i, s in enumerate(trace.steps, 1):
        d = s.degree
        where = f" at {s.link.center}" if s.link.center else ""
        lines.append(f"{i:>3}  {s.link.kind}{where} -> {s.after.surface.name}"
                     f"  a={s.after.a} b={s.after.b}  degree=({d.mu}, {d.lam}, {d.e})")
    return lines


def _cmd_factor(args: argparse.Namespace, out: TextIO, stdin: TextIO) -> None:
    m = None
    if args.map is not None:
        m = _read_map(args.map, stdin)
        t = homaloidal_type_of(m)
    else:
        t = parse_type(args.type)
    trace = factorize(t)
    verified: dict[str, bool] = {}
    if args.verify:
        verified["recompose"] = recompose(trace).same_as(HomaloidalType(t.n, t.cluster.prune()))
        if m is not None:
            verified["polynomial"] = verify_factorization(m, factor_by_quadratics(m))
    if args.json:
        doc: dict[str, Any] = {"type": t.to_json(), "trace": trace.to_json()}
        if args.verify:
            doc["verified"] = verified
        print(dumps(doc), file=out)
        return
    for line in _trace_lines(t, trace):
        print(line, file=out)
    for name, ok in verified.items():
        print(f"verify {name}: {'pass' if ok else 'FAIL'}", file=out)


def _cmd_check(args: argparse.Namespace, out: TextIO, stdin: TextIO) -> None:
    t = parse_type(args.type)
    m = t.mults()
    squares = sum(v * v for v in m) == t.n ** 2 - 1
    linear = sum(m) == 3 * t.n - 3
    noether: bool | None = noether_inequality(t) if t.n > 1 else None
    if args.json:
        print(dumps({"type": format_type(t), "sum_squares": squares, "sum": linear,
                     "noether": noether}), file=out)
        return

    def verdict(ok: bool | None) -> str:
        return "n/a" if ok is None else ("pass" if ok else "FAIL")

    print(f"sum of squares = n^2 - 1: {verdict(squares)}", file=out)
    print(f"sum = 3n - 3: {verdict(linear)}", file=out)
    print(f"three largest exceed n: {verdict(noether)}", file=out)


def _cmd_degree(args: argparse.Namespace, out: TextIO, stdin: TextIO) -> None:
    d = sarkisov_degree(from_homaloidal(parse_type(args.type)))
    if args.json:
        print(dumps({"mu": str(d.mu), "lambda": str(d.lam), "e": d.e}), file=out)
    else:
        print(f"({d.mu}, {d.lam}, {d.e})", file=out)


def _cmd_compose(args: argparse.Namespace, out: TextIO, stdin: TextIO) -> None:
    if len(args.map) != 2:
        raise InvalidInput("compose takes exactly two --map arguments")
    if args.map.count("-") > 1:
        raise InvalidInput("stdin can supply only one map")
    f, g = (_read_map(p, stdin) for p in args.map)
    print(dumps(compose(f, g).to_json()), file=out)


def _cmd_corpus(args: argparse.Namespace, out: TextIO, stdin: TextIO) -> None:
    entries = random_corpus(args.seed, args.k, args.height, max_degree=args.max_degree,
                            with_maps=not args.types_only)
    for e in entries:
        print(dumps(e.to_json()), file=out)


def _fractions(text: str) -> tuple[Fraction, ...]:
    try:
        return tuple(Fraction(s) for s in text.split(",") if s.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidInput(f"bad multiplicity list {text!r}") from exc


def _curves(text: str) -> tuple[tuple[int, Fraction], ...]:
    out = []
    for item in text.split(","):
        if not item.strip():
            continue
        try:
            deg, mult = item.split(":")
            out.append((int(deg), Fraction(mult)))
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidInput(f"curves are deg:mult pairs, got {item!r}") from exc
    return tuple(out)


def _cmd_fano3(args: argparse.Namespace, out: TextIO, stdin: TextIO) -> None:
    data = Fano3Data(args.n, args.r, args.hcube, _curves(args.curves),
                     _fractions(args.points), _fractions(args.near_curves))
    print(dumps(fano3_classify(data).to_json()), file=out)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cremona", description="Plane Cremona maps and their links.")
    sub = p.add_subparsers(dest="command", required=True)

    f = sub.add_parser("factor", help="untwist a type or map into links")
    src = f.add_mutually_exclusive_group(required=True)
    src.add_argument("--type", help='homaloidal type, e.g. "2;1,1,1"')
    src.add_argument("--map", help="map JSON file, or - for stdin")
    f.add_argument("--json", action="store_true")
    f.add_argument("--verify", action="store_true",
                   help="replay the trace; for maps also factor the polynomials")
    f.set_defaults(run=_cmd_factor)

    c = sub.add_parser("check", help="test the homaloidal identities and Noether's inequality")
    c.add_argument("--type", required=True)
    c.add_argument("--json", action="store_true")
    c.set_defaults(run=_cmd_check)

    d = sub.add_parser("degree", help="print the Sarkisov degree (mu, lambda, e)")
    d.add_argument("--type", required=True)
    d.add_argument("--json", action="store_true")
    d.set_defaults(run=_cmd_degree)

    m = sub.add_parser("compose", help="print first o second, reduced")
    m.add_argument("--map", action="append", required=True, help="map JSON file, or - for stdin")
    m.set_defaults(run=_cmd_compose)

    k = sub.add_parser("corpus", help="emit a random chain of quadratic compositions as JSON lines")
    k.add_argument("--seed", type=int, required=True)
    k.add_argument("--k", type=int, required=True)
    k.add_argument("--height", type=int, required=True)
    k.add_argument("--max-degree", type=int, default=20)
    k.add_argument("--types-only", action="store_true", help="skip the polynomial maps")
    k.set_defaults(run=_cmd_corpus)

    t = sub.add_parser("fano3", help="maximal-singularity thresholds on a Fano threefold")
    t.add_argument("--n", type=int, required=True)
    t.add_argument("--r", type=int, required=True)
    t.add_argument("--hcube", type=int, required=True)
    t.add_argument("--curves", default="", help="comma-separated deg:mult pairs")
    t.add_argument("--points", default="", help="comma-separated multiplicities")
    t.add_argument("--near-curves", default="",
                   help="multiplicities of curves over a blown-up point")
    t.set_defaults(run=_cmd_fano3)
    return p


def run(argv: Sequence[str] | None = None, out: TextIO | None = None,
        stdin: TextIO | None = None) -> int:
    out = out if out is not None else sys.stdout
    stdin = stdin if stdin is not None else sys.stdin
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args.run(args, out, stdin)
    except CremonaError as exc:
        print(dumps(exc.to_json()), file=out)
        return 1
    return 0


def main() -> None:
    sys.exit(run())
