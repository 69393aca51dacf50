"""Command-line entry point: ``thompson <subcommand> ...``.

Every run prints a header with the artifact version and the full run
configuration (a ``#`` comment block for CSV, a ``config`` field for JSON).
Exit codes: 0 success, 1 negative result, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import __version__
from .dyadic import format_rational, parse_rational
from .elements import (
    ElementError,
    compose,
    diagram_count,
    evaluate,
    invert,
    is_identity,
    parse_element,
    to_pl_map,
)
from .trees import catalan


class InputError(ValueError):
    pass


def _emit(args, result, rows=None, columns=None) -> None:
    config = {k: v for k, v in vars(args).items() if k != "func"}
    if args.format == "csv" and rows is not None:
        buf = io.StringIO()
        buf.write(f"# thompson {__version__}\n")
        buf.write("# config " + json.dumps(config, sort_keys=True) + "\n")
        w = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow(r)
        text = buf.getvalue()
    else:
        text = json.dumps({"artifact": "thompson", "version": __version__, "config": config,
                           "result": result}, indent=2, default=str) + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _element(text: str):
    """Element text, optionally suffixed with ``^-1`` for the inverse map."""
    inverse = text.endswith("^-1")
    if inverse:
        text = text[:-3]
    elem = parse_element(text)
    m = to_pl_map(elem)
    return elem, (invert(m) if inverse else m)


def cmd_catalan(args) -> int:
    _emit(args, catalan(args.n), [{"n": args.n, "catalan": catalan(args.n)}], ["n", "catalan"])
    return 0


def cmd_count(args) -> int:
    value = diagram_count(args.n, args.group)
    _emit(args, value, [{"group": args.group, "n": args.n, "count": value}],
          ["group", "n", "count"])
    return 0


def cmd_eval(args) -> int:
    _, m = _element(args.element)
    try:
        x = parse_rational(args.x)
    except (ValueError, ZeroDivisionError):
        raise InputError(f"x: cannot parse {args.x!r} as a rational") from None
    if not 0 <= x < 1:
        raise InputError(f"x: {args.x} is not in [0, 1)")
    y = evaluate(m, x)
    _emit(args, {"x": format_rational(x), "image": format_rational(y)},
          [{"x": format_rational(x), "image": format_rational(y)}], ["x", "image"])
    return 0


def cmd_compose(args) -> int:
    maps = [_element(t)[1] for t in args.elements]
    out = maps[-1]
    for m in reversed(maps[:-1]):
        out = compose(m, out)
    _emit(args, {"identity": is_identity(out), "branches": out.to_json()})
    return 0


def cmd_fixed_points(args) -> int:
    from .dynamics import fixed_points

    _, m = _element(args.element)
    report = fixed_points(m)
    rows = [fp.to_json() for fp in report.fixed_points]
    _emit(args, report.to_json(), rows,
          ["location", "right_exponent", "left_exponent", "kind", "continuous"])
    return 0


def cmd_density(args) -> int:
    from .density import DensityEstimate, SphereSpec, exact_density, mc_density

    spec = SphereSpec(args.group, args.n, args.k)
    if args.exact:
        est = exact_density(spec, args.predicate, workers=args.workers)
    else:
        est = mc_density(spec, args.predicate, args.trials, args.seed, workers=args.workers)
    _emit(args, est.to_json(), [est.row()], list(DensityEstimate.COLUMNS))
    return 0


def _load_pair(args):
    from .freeness import pingpong_pair_T, random_pingpong_pair
    from .density import trial_rng

    if args.pair_file:
        try:
            with open(args.pair_file) as fh:
                lines = [ln.strip() for ln in fh if ln.strip() and not ln.startswith("#")]
        except OSError as exc:
            raise InputError(f"pair file: {exc}") from None
        if len(lines) != 2:
            raise InputError("pair file: expected exactly two element lines")
        return parse_element(lines[0]), parse_element(lines[1])
    if args.u and args.v:
        return parse_element(args.u), parse_element(args.v)
    if args.family:
        if args.n is None or args.n < 6:
            raise InputError("--family needs --n >= 6")
        if args.family == "T":
            try:
                return pingpong_pair_T(args.n, args.index)
            except ValueError as exc:
                raise InputError(f"index: {exc}") from None
        return random_pingpong_pair("V", args.n, trial_rng(args.seed, args.index))
    raise InputError("give --pair-file, --u/--v, or --family with --n")


def cmd_certify_free(args) -> int:
    from .freeness import find_certificate, random_word_test, verify_certificate

    u, v = _load_pair(args)
    cert = find_certificate(u, v, args.max_depth)
    if not cert:
        out = cert.to_json()
        out["u"] = u.to_text()
        out["v"] = v.to_text()
        _emit(args, out)
        return 1
    verified = verify_certificate(u, v, cert)
    words = random_word_test(u, v, args.max_len, args.words, args.seed)
    out = {"certified": verified, "certificate": cert.to_json(),
           "word_test": {"words": args.words, "max_len": args.max_len,
                         "identity_words": words}}
    _emit(args, out)
    return 0 if verified and not words else 1


def cmd_asymptotics(args) -> int:
    from . import asymptotics as asy

    if args.table == "limits":
        rows = [r.row() for r in asy.limit_table(tuple(args.ns))]
        _emit(args, rows, rows, ["name", "n", "value", "limit", "gap", "relative_gap"])
    else:
        rows = [s.row() for s in asy.growth_series(args.group, args.ns)]
        _emit(args, rows, rows, ["k", "exact_log", "model_log", "ratio"])
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="thompson", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"thompson {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--output", default=None, help="write here instead of stdout")
    sub = p.add_subparsers(dest="subcommand", required=True)

    s = sub.add_parser("catalan", parents=[common], help="Catalan number C_n")
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(func=cmd_catalan)

    s = sub.add_parser("count", parents=[common], help="number of diagrams of size n")
    s.add_argument("--group", choices=("T", "V"), required=True)
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(func=cmd_count)

    s = sub.add_parser("eval", parents=[common], help="image of a point")
    s.add_argument("element")
    s.add_argument("x", help="rational in [0, 1), e.g. 3/4")
    s.set_defaults(func=cmd_eval)

    s = sub.add_parser("compose", parents=[common],
                       help="compose elements right to left (suffix ^-1 inverts)")
    s.add_argument("elements", nargs="+")
    s.set_defaults(func=cmd_compose)

    s = sub.add_parser("fixed-points", parents=[common], help="fixed-point report")
    s.add_argument("element")
    s.set_defaults(func=cmd_fixed_points)

    s = sub.add_parser("density", parents=[common], help="census or Monte Carlo density")
    s.add_argument("--group", choices=("T", "V"), required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int, default=1)
    s.add_argument("--predicate", required=True,
                   choices=("ns-family", "north-south", "identity", "pingpong-u",
                            "pingpong-v", "pingpong-pair"))
    mode = s.add_mutually_exclusive_group(required=True)
    mode.add_argument("--exact", action="store_true")
    mode.add_argument("--mc", action="store_true")
    s.add_argument("--trials", type=int, default=100_000)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--workers", type=int, default=1)
    s.set_defaults(func=cmd_density)

    s = sub.add_parser("certify-free", parents=[common], help="ping-pong certificate for a pair")
    s.add_argument("--pair-file")
    s.add_argument("--u")
    s.add_argument("--v")
    s.add_argument("--family", choices=("T", "V"))
    s.add_argument("--n", type=int)
    s.add_argument("--index", type=int, default=0)
    s.add_argument("--max-depth", type=int, default=8)
    s.add_argument("--words", type=int, default=500)
    s.add_argument("--max-len", type=int, default=10)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_certify_free)

    s = sub.add_parser("asymptotics", parents=[common], help="limit and growth tables")
    s.add_argument("--table", choices=("limits", "growth"), default="limits")
    s.add_argument("--group", choices=("T", "V"), default="T")
    s.add_argument("--ns", type=int, nargs="+", default=[10, 50, 200, 1000])
    s.set_defaults(func=cmd_asymptotics)
    return p


def main(argv=None) -> int:
    from .density import FeasibilityError

    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, FeasibilityError) as exc:
        # InputError, ElementError and FamilyError are ValueErrors too
        print(f"thompson: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
