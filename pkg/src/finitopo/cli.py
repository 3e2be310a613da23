"""Command-line entry point.

Exit codes: 0 success, 1 a campaign found a discrepancy, 2 usage or input
error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from . import axioms, genop, maps, zoo
from .core import (
    Space,
    TopologyError,
    closure,
    delta_closure,
    delta_interior,
    interior,
    points,
    regular_closed_family,
    space_from_json,
    subset,
)
from .genop import GVariant, Kind, ThetaKind

OP_SCHEMA = "finitopo.op/1"
FAMILY_SCHEMA = "finitopo.family/1"
CHECK_SCHEMA = "finitopo.check/1"

KIND_NAMES = {
    "open": Kind.OPEN,
    "semi": Kind.SEMI,
    "pre": Kind.PRE,
    "b": Kind.B,
    "beta": Kind.BETA,
    "e": Kind.E,
    "estar": Kind.ESTAR,
    "delta-open": Kind.DELTA_OPEN,
    "regular-open": Kind.REGULAR_OPEN,
}
THETA_NAMES = {"estar-theta": ThetaKind.ESTAR_THETA, "beta-theta": ThetaKind.BETA_THETA}
G_NAMES = {"ge": GVariant.GE_STAR_THETA, "pair": GVariant.PAIR}

VERIFY_THEOREMS = (*zoo.THEOREMS, "lemma1", "maps")


class UsageError(Exception):
    pass


def _emit(obj, out: str | None) -> None:
    text = json.dumps(obj, indent=2, sort_keys=True)
    if out:
        Path(out).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)


def _load_space(path: str) -> Space:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise UsageError(f"cannot read space file {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from None
    return space_from_json(data)


def _parse_set(space: Space, text: str) -> int:
    if text.strip() in ("", "{}"):
        return 0
    labels = space.labels
    pts = []
    for tok in text.strip("{} ").split(","):
        tok = tok.strip()
        if labels is not None and tok in labels:
            pts.append(labels.index(tok))
        elif tok.lstrip("-").isdigit() and labels is None:
            pts.append(int(tok))
        else:
            raise UsageError(f"unknown point {tok!r}; points are {_point_names(space)}")
    for p in pts:
        if not 0 <= p < space.n:
            raise UsageError(f"point {p} outside 0..{space.n - 1}")
    return subset(pts)


def _point_names(space: Space) -> str:
    return ",".join(space.labels) if space.labels else f"0..{space.n - 1}"


def _show(space: Space, a: int) -> list:
    pts = points(a)
    return [space.labels[p] for p in pts] if space.labels else pts


# -- op -----------------------------------------------------------------------


def _operator(name: str):
    base = {
        "closure": closure,
        "interior": interior,
        "delta-closure": delta_closure,
        "delta-interior": delta_interior,
    }
    if name in base:
        return base[name]
    for prefix, tk in THETA_NAMES.items():
        if name == f"{prefix}-closure":
            return lambda s, a: genop.theta_closure(s, tk, a)
        if name == f"{prefix}-interior":
            return lambda s, a: genop.theta_interior(s, tk, a)
    for prefix, kind in KIND_NAMES.items():
        if name == f"{prefix}-closure":
            return lambda s, a: genop.kind_closure(s, kind, a)
        if name == f"{prefix}-interior":
            return lambda s, a: genop.kind_interior(s, kind, a)
    raise UsageError(f"unknown operator {name!r}; try closure, estar-closure, estar-theta-closure")


def cmd_op(args) -> int:
    space = _load_space(args.space)
    a = _parse_set(space, args.set)
    result = _operator(args.op)(space, a)
    _emit({"schema": OP_SCHEMA, "op": args.op, "set": _show(space, a), "result": _show(space, result)}, args.out)
    return 0


# -- family -------------------------------------------------------------------


def _family(space: Space, name: str) -> genop.SetFamily:
    if name in KIND_NAMES:
        return genop.open_family(space, KIND_NAMES[name])
    if name in THETA_NAMES:
        return genop.theta_open_family(space, THETA_NAMES[name])
    if name.endswith("-closed") and name[: -len("-closed")] in {**KIND_NAMES, **THETA_NAMES}:
        base = name[: -len("-closed")]
        if base in THETA_NAMES:
            return genop.theta_closed_family(space, THETA_NAMES[base])
        return genop.closed_family(space, KIND_NAMES[base])
    if name.endswith("-regular") and name[: -len("-regular")] in ("estar", "estar-theta", "beta-theta"):
        base = name[: -len("-regular")]
        return genop.regular_sets(space, THETA_NAMES.get(base) or Kind.ESTAR)
    if name == "regular-closed":
        return genop.SetFamily(space.fingerprint, "REGULAR_CLOSED", tuple(regular_closed_family(space)))
    for prefix, variant in G_NAMES.items():
        if name == f"{prefix}-closed":
            return genop.g_closed_family(space, variant)
        if name == f"{prefix}-open":
            return genop.g_open_family(space, variant)
    raise UsageError(f"unknown family {name!r}")


def cmd_family(args) -> int:
    space = _load_space(args.space)
    fam = _family(space, args.kind)
    out = {"schema": FAMILY_SCHEMA, **fam.to_json(space.labels), "count": len(fam)}
    _emit(out, args.out)
    return 0


# -- check --------------------------------------------------------------------


def cmd_check(args) -> int:
    space = _load_space(args.space)
    if args.properties == "all":
        ids = list(axioms.PROPERTY_IDS)
    else:
        ids = [p.strip() for p in args.properties.split(",") if p.strip()]
    results = {}
    verdicts = []
    for pid in ids:
        try:
            v = axioms.check_property(space, pid)
        except KeyError:
            raise UsageError(f"unknown property {pid!r}; known: {', '.join(axioms.PROPERTY_IDS)}") from None
        results[pid] = v.holds
        verdicts.append(v.to_json(space.labels))
    _emit(
        {"schema": CHECK_SCHEMA, "space": space.fingerprint, "properties": results, "verdicts": verdicts},
        args.out,
    )
    return 0


# -- verify / scan / zoo / search ---------------------------------------------


def _random_corpus(n: int, seed: int, count: int) -> list[Space]:
    return [zoo.random_space(n, seed + i, 0.1 + 0.8 * ((seed + i) % 9) / 8) for i in range(count)]


def cmd_verify(args) -> int:
    if args.theorem not in VERIFY_THEOREMS:
        raise UsageError(f"unknown theorem {args.theorem!r}; choose from {', '.join(VERIFY_THEOREMS)}")
    if args.theorem == "maps":
        if args.n > 3 and not args.exhaustive:
            raise UsageError("map campaigns beyond n=3 need --exhaustive")
        report = maps.map_campaign(zoo.corpus(args.n, "canonical"))
    else:
        if args.exhaustive:
            spaces = list(zoo.enumerate_topologies(args.n))
        elif args.seed is None:
            raise UsageError("sampled verification needs an explicit --seed (or use --exhaustive)")
        else:
            spaces = _random_corpus(args.n, args.seed, args.samples)
        if args.theorem == "lemma1":
            report = zoo.verify_lemma1(spaces)
        else:
            report = zoo.verify_theorems(spaces, [args.theorem])
    count = report["spaces"] if args.theorem != "maps" else report["maps"]
    unit = "maps" if args.theorem == "maps" else "spaces"
    report["summary"] = f"{count} {unit}, {report['total_discrepancies']} discrepancies"
    _emit(report, args.out)
    return 1 if report["total_discrepancies"] else 0


def cmd_scan(args) -> int:
    spaces = zoo.corpus(args.n, "labeled")
    if args.implications:
        report = zoo.scan(spaces, "IMPLICATIONS")
        bad = report["arrow_violations"]
    elif args.separations:
        report = zoo.scan(spaces, "SEPARATIONS")
        bad = report["total_discrepancies"]
    else:
        report = zoo.scan(spaces, "THEOREMS")
        bad = report["total_discrepancies"]
    _emit(report, args.out)
    if bad:
        print(f"scan found {bad} discrepancies", file=sys.stderr)
    return 1 if bad else 0


def cmd_zoo(args) -> int:
    mode = "canonical" if args.canonical else "labeled"
    spaces = zoo.corpus(args.n, mode) if args.upto else list(zoo.enumerate_topologies(args.n, mode))
    if args.out:
        count = zoo.write_corpus(spaces, args.out, with_props=not args.no_props)
        print(json.dumps({"schema": zoo.SCHEMA, "written": count, "path": args.out}, sort_keys=True))
    else:
        for s in spaces:
            print(json.dumps(zoo.zoo_record(s, not args.no_props), sort_keys=True))
    return 0


def cmd_search(args) -> int:
    if args.question != "estar-not-estartheta":
        raise UsageError(f"unknown question {args.question!r}; the only one is estar-not-estartheta")
    _emit(zoo.search_open_question(args.n), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="finitopo", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("op", help="apply a set operator")
    p.add_argument("--space", required=True)
    p.add_argument("--op", required=True)
    p.add_argument("--set", default="", help="comma-separated points, e.g. 0,2 or a,c")
    p.add_argument("--out")
    p.set_defaults(func=cmd_op)

    p = sub.add_parser("family", help="list a family of subsets")
    p.add_argument("--space", required=True)
    p.add_argument("--kind", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("check", help="decide space properties")
    p.add_argument("--space", required=True)
    p.add_argument("--properties", default="all")
    p.add_argument("--out")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("verify", help="verify a characterization theorem")
    p.add_argument("--theorem", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--exhaustive", action="store_true")
    p.add_argument("--seed", type=int)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("scan", help="corpus-wide campaign over all spaces up to n")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--implications", action="store_true")
    g.add_argument("--separations", action="store_true")
    g.add_argument("--theorems", action="store_true")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("zoo", help="enumerate topologies as JSON lines")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--canonical", action="store_true")
    p.add_argument("--upto", action="store_true", help="include every size from 1 to n")
    p.add_argument("--no-props", action="store_true")
    p.add_argument("--out", help="append records to this file")
    p.set_defaults(func=cmd_zoo)

    p = sub.add_parser("search", help="search small spaces for an open question")
    p.add_argument("--question", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_search)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, TopologyError) as exc:
        print(f"finitopo {args.verb}: error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())
