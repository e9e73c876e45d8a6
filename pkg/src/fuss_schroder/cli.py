"""Command line front end: ``fuss-schroder {count,enumerate,convert,series,verify}``."""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import bijections, formulas, paths, series, verify
from .partitions import InvalidInputError, from_json, partitions_up_to
from .paths import FamilySpec, LatticePath, ResourceLimitError, SizeClass, TypeCensus

DEFAULT_SERIES_N = 8
ENV_MAX_N = "FUSS_SCHRODER_MAX_N"
ENV_MAX_K = "FUSS_SCHRODER_MAX_K"
ENV_MAX_SERIES_N = "FUSS_SCHRODER_MAX_SERIES_N"


class CommandError(Exception):
    """Validation failure; reported on stderr with exit status 1."""


def _dump(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def _bound(flag, env: str, default: int) -> int:
    if flag is not None:
        return flag
    raw = os.environ.get(env)
    if raw:
        try:
            return int(raw)
        except ValueError:
            raise CommandError(f"{env}={raw!r} is not an integer")
    return default


def _bounds(args) -> tuple[int, int, int]:
    return (
        _bound(args.bound_n, ENV_MAX_N, paths.DEFAULT_MAX_N),
        _bound(args.bound_k, ENV_MAX_K, paths.DEFAULT_MAX_K),
        _bound(args.bound_series, ENV_MAX_SERIES_N, DEFAULT_SERIES_N),
    )


def _residues(text: str) -> frozenset[int]:
    try:
        return frozenset(int(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _spec(args) -> FamilySpec:
    S = frozenset({args.r}) if args.r is not None else args.set
    return FamilySpec(args.n, args.k, S)


def _census_series(spec: FamilySpec, cls: SizeClass) -> TypeCensus:
    A, B, _ = series.solve_system(spec.k, spec.d, spec.n)
    s = verify.series_class(A, B, A * B, spec, cls)
    # the constant term of B counts a lone root, not a path ending in D
    if s is None or (spec.n == 0 and cls is SizeClass.DIAG):
        return TypeCensus()
    return TypeCensus.from_counts({lam: s[spec.n][lam] for lam in partitions_up_to(spec.n)})


def cmd_count(args) -> int:
    spec = _spec(args)
    cls = SizeClass(args.cls)
    bound_n, bound_k, bound_series = _bounds(args)
    if args.method == "bruteforce":
        census = paths.count_by_type_bruteforce(spec, cls, max_n=bound_n, max_k=bound_k)
    elif args.method == "series":
        if spec.n > bound_series:
            raise ResourceLimitError(f"series limited to N <= {bound_series}, got n={spec.n}")
        census = _census_series(spec, cls)
    else:
        census = formulas.formula_census(spec, cls)
        if args.method is None and spec.n <= bound_n and spec.k <= bound_k:
            oracle = paths.count_by_type_bruteforce(spec, cls, max_n=bound_n, max_k=bound_k)
            if oracle != census:
                raise CommandError(
                    f"formula census {_dump(census.to_json())} disagrees with brute force "
                    f"{_dump(oracle.to_json())}"
                )
    if args.type is not None:
        print(census.get_count(from_json(args.type)))
    else:
        print(_dump(census.to_json()))
    return 0


def cmd_enumerate(args) -> int:
    spec = _spec(args)
    bound_n, bound_k, _ = _bounds(args)
    for p in paths.enumerate_paths(spec, SizeClass(args.cls), max_n=bound_n, max_k=bound_k):
        print(_dump(p.to_json()) if args.format == "json" else p.steps)
    return 0


def _describe(p: LatticePath) -> dict:
    seq = bijections.path_to_sequence(p)
    forest = bijections.sequence_to_forest(seq)
    classes = paths.classify(p)
    return {
        **p.spec.to_json(),
        "path": p.steps,
        "sequence": seq.to_json(),
        "forest": forest.to_json(),
        "type": paths.path_type(p).to_json(),
        "classes": [c.value for c in SizeClass if c in classes],
    }


def cmd_convert(args) -> int:
    spec = _spec(args)
    if args.source == "path":
        p = LatticePath(args.input.strip(), spec)
        report = paths.validate_path(p)
        if not report.ok:
            raise CommandError(f"invalid path: {report.first().message}")
    else:
        try:
            data = json.loads(args.input)
        except json.JSONDecodeError as exc:
            raise CommandError(f"cannot parse --input as JSON: {exc}")
        if args.source == "sequence":
            if not isinstance(data, list):
                raise CommandError("sequence input must be a JSON array")
            p = bijections.sequence_to_path(bijections.HeightSequence(tuple(data), spec))
        else:
            forest = bijections.PlaneForest.from_json(data)
            report = bijections.validate_forest(forest, spec)
            if not report.ok:
                raise CommandError(f"invalid forest: {report.first().message}")
            p = bijections.forest_to_path(forest, spec)
    print(_dump(_describe(p)))
    return 0


def cmd_series(args) -> int:
    _, _, bound_series = _bounds(args)
    if args.N > bound_series:
        raise ResourceLimitError(f"series limited to N <= {bound_series}, got N={args.N}")
    print(_dump(series.which_series(args.k, args.d, args.N, args.which).to_json()))
    return 0


def cmd_verify(args) -> int:
    bound_n, bound_k, _ = _bounds(args)
    report = verify.run(args.max_k, args.max_n, args.families, bound_n=bound_n, bound_k=bound_k)
    for row in report.rows:
        print(row)
    for m in report.mismatches:
        print(m)
    print("ALL PASS" if report.ok else f"{len(report.mismatches)} MISMATCHES")
    return 0 if report.ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fuss-schroder",
        description="Count, enumerate and convert (k,S)-Fuss-Schroder paths by type.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    bounds = argparse.ArgumentParser(add_help=False)
    bounds.add_argument("--bound-n", type=int, help=f"brute-force n limit (env {ENV_MAX_N}, default 8)")
    bounds.add_argument("--bound-k", type=int, help=f"brute-force k limit (env {ENV_MAX_K}, default 4)")
    bounds.add_argument(
        "--bound-series", type=int, help=f"series degree limit (env {ENV_MAX_SERIES_N}, default 8)"
    )

    family = argparse.ArgumentParser(add_help=False)
    family.add_argument("--k", type=int, required=True)
    family.add_argument("--n", type=int, required=True)
    which = family.add_mutually_exclusive_group(required=True)
    which.add_argument("--set", type=_residues, help="allowed residues S, e.g. 1,2")
    which.add_argument("--r", type=int, help="single residue; same as --set R")

    classes = [c.value for c in SizeClass]

    p = sub.add_parser("count", parents=[family, bounds], help="census or single count by type")
    p.add_argument("--class", dest="cls", choices=classes, default="large")
    p.add_argument("--type", help="partition as JSON, e.g. [2,1]")
    p.add_argument("--method", choices=["formula", "bruteforce", "series"])
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("enumerate", parents=[family, bounds], help="list paths, one per line")
    p.add_argument("--class", dest="cls", choices=classes, default="large")
    p.add_argument("--format", choices=["steps", "json"], default="steps")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("convert", parents=[family, bounds], help="path / sequence / forest conversion")
    p.add_argument("--from", dest="source", choices=["path", "sequence", "forest"], required=True)
    p.add_argument("--input", required=True)
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("series", parents=[bounds], help="solved generating function coefficients")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--d", type=int, default=1)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--which", choices=["A", "B", "AB"], default="AB")
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("verify", parents=[bounds], help="cross-check every counting route")
    p.add_argument("--max-k", type=int, default=2)
    p.add_argument("--max-n", type=int, default=4)
    p.add_argument("--families", nargs="+", choices=verify.FAMILIES, default=["kS"])
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (CommandError, InvalidInputError, ResourceLimitError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
