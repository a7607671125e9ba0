"""Command-line front end: ``kawashima <command> ...``.

Exit codes: 0 on success, 1 when a verification fails, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from collections import Counter

import mpmath

from . import indices as ix
from .config import DEFAULT_CONFIG, EvalConfig, EvalResult
from .errors import DomainError
from .harmonic import sum_table
from .kfunction import METHODS, eval_at_integer, evaluator, kawashima
from .mzv import mzsv, mzv
from . import relations as rel

CONFIG_ENV = "KAWASHIMA_CONFIG"
CONFIG_KEYS = {"terms", "extrapolate", "precision-bits", "tol", "format", "margin"}


class UsageError(Exception):
    pass


def parse_index(text: str) -> ix.Index:
    """``"1,1,2"`` -> ``(1, 1, 2)``; ``""`` -> ``()``. Whitespace around commas is allowed."""
    if text.strip() == "":
        return ()
    parts = []
    for pos, chunk in enumerate(text.split(","), start=1):
        chunk = chunk.strip()
        try:
            value = int(chunk, 10)
        except ValueError:
            raise UsageError(f"index part {pos} ({chunk!r}) is not an integer") from None
        if value < 1:
            raise UsageError(f"index part {pos} must be a positive integer, got {value}")
        parts.append(value)
    return tuple(parts)


def _index_arg(text: str) -> ix.Index:
    try:
        return parse_index(text)
    except UsageError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _nonempty_index_arg(text: str) -> ix.Index:
    k = _index_arg(text)
    if not k:
        raise argparse.ArgumentTypeError("a nonempty index is required here")
    return k


def load_config_file(path: str) -> dict[str, str]:
    """Read ``key = value`` lines; ``#`` starts a comment."""
    out = {}
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected key = value")
            key, value = (s.strip() for s in line.split("=", 1))
            key = key.replace("_", "-")
            if key not in CONFIG_KEYS:
                raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
            out[key] = value
    return out


def _parse_extrapolate(text: str) -> dict:
    text = text.strip()
    if text == "none":
        return {"extrapolation": "none"}
    pieces = [p.strip() for p in text.split(",")]
    try:
        if len(pieces) == 1:
            return {"extrapolation": "richardson", "points": int(pieces[0])}
        if len(pieces) == 2:
            return {"extrapolation": "richardson", "points": int(pieces[0]), "log_degree": int(pieces[1])}
    except ValueError:
        pass
    raise UsageError(f"--extrapolate expects 'p,d', 'p' or 'none', got {text!r}")


def build_config(args) -> tuple[EvalConfig, str]:
    """Defaults, then the config file, then flags."""
    path = args.config or os.environ.get(CONFIG_ENV)
    settings = load_config_file(path) if path else {}
    for key in CONFIG_KEYS:
        flag = getattr(args, key.replace("-", "_"), None)
        if flag is not None:
            settings[key] = str(flag)
    changes = {}
    try:
        if "terms" in settings:
            changes["terms"] = int(settings["terms"])
        if "precision-bits" in settings:
            changes["precision"] = int(settings["precision-bits"])
        if "tol" in settings:
            changes["tolerance"] = float(settings["tol"])
        if "margin" in settings:
            changes["margin"] = float(settings["margin"])
    except ValueError as exc:
        raise UsageError(f"bad numeric setting: {exc}") from None
    if "extrapolate" in settings:
        changes.update(_parse_extrapolate(settings["extrapolate"]))
    fmt = settings.get("format", "plain")
    if fmt not in ("plain", "json", "csv"):
        raise UsageError(f"unknown format {fmt!r}")
    try:
        return DEFAULT_CONFIG.with_(**changes), fmt
    except DomainError as exc:
        raise UsageError(str(exc)) from None


def refine(evaluate, cfg: EvalConfig, max_terms: int = 1 << 16) -> EvalResult:
    """Double the truncation bound until the error estimate meets the tolerance."""
    result = evaluate(cfg)
    while result.error_estimate > cfg.tolerance and cfg.terms * 2 <= max_terms:
        cfg = cfg.with_(terms=cfg.terms * 2)
        result = evaluate(cfg)
    return result


# --- output ----------------------------------------------------------------


def _emit_result(result: EvalResult, fmt: str, out):
    data = result.to_json()
    if fmt == "json":
        print(json.dumps(data), file=out)
    elif fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(list(data))
        w.writerow(list(data.values()))
    else:
        print(f"{data['value']}\t{data['error_estimate']}", file=out)


def _emit_rows(rows: list[dict], fmt: str, out):
    if fmt == "json":
        for row in rows:
            print(json.dumps(row), file=out)
        return
    if not rows:
        return
    w = csv.writer(out, lineterminator="\n", delimiter="," if fmt == "csv" else "\t")
    w.writerow(list(rows[0]))
    for row in rows:
        w.writerow(["" if v is None else v for v in row.values()])


# --- commands --------------------------------------------------------------


def cmd_dual(args, cfg, fmt, out):
    k = ix.hoffman_dual(args.index)
    print(json.dumps(list(k)) if fmt == "json" else ix.render_index(k), file=out)


def cmd_rev(args, cfg, fmt, out):
    k = ix.reverse(args.index)
    print(json.dumps(list(k)) if fmt == "json" else ix.render_index(k), file=out)


def cmd_star(args, cfg, fmt, out):
    print(ix.star_expand(args.index).dumps(), file=out)


PRODUCTS = {
    "plain": ix.harmonic_product,
    "bar": ix.harmonic_bar_product,
    "circled": ix.circled_star_product,
}


def cmd_product(args, cfg, fmt, out):
    print(PRODUCTS[args.type](args.left, args.right).dumps(), file=out)


def cmd_sum(args, cfg, fmt, out):
    table = sum_table(args.index, args.N)
    rows = [
        {"n": n, "s": _q(a), "s_star": _q(b), "S": _q(c), "S_star": _q(d)}
        for n, a, b, c, d in table.rows()
    ]
    _emit_rows(rows, "json" if fmt == "json" else "csv", out)


def _q(x):
    return f"{x.numerator}/{x.denominator}"


def cmd_mzv(args, cfg, fmt, out):
    fn = mzsv if args.star else mzv
    _emit_result(refine(lambda c: fn(args.index, c), cfg), fmt, out)


def cmd_eval(args, cfg, fmt, out):
    if args.exact:
        try:
            N = int(args.z)
        except ValueError:
            raise UsageError("--exact needs an integer --z") from None
        value = eval_at_integer(args.index, N)
        if fmt == "json":
            print(json.dumps({"value": _q(value), "method": "exact"}), file=out)
        else:
            print(_q(value), file=out)
        return
    z = _parse_z(args.z, cfg.precision)
    result = refine(lambda c: kawashima(args.index, z, c, args.method), cfg)
    _emit_result(result, fmt, out)


def _parse_z(text: str, prec: int = 128):
    with mpmath.workprec(prec):
        return _parse_z_at(text.strip())


def _parse_z_at(text: str):
    if text.endswith("j"):
        try:
            return mpmath.mpc(complex(text))
        except ValueError:
            raise UsageError(f"cannot parse z = {text!r}") from None
    try:
        return mpmath.mpf(text)
    except ValueError:
        raise UsageError(f"cannot parse z = {text!r}") from None


def cmd_taylor(args, cfg, fmt, out):
    ev = evaluator(args.index)
    rows = []
    if args.method == "1":
        for m, (arg, res) in enumerate(ev.taylor_m1(args.order, cfg), start=1):
            data = res.to_json()
            rows.append({"m": m, "argument": arg.dumps(), "value": data["value"],
                         "error_estimate": data["error_estimate"]})
    else:
        for m, res in enumerate(ev.taylor_m3(args.order, cfg), start=1):
            data = res.to_json()
            rows.append({"m": m, "argument": None, "value": data["value"],
                         "error_estimate": data["error_estimate"]})
    _emit_rows(rows, fmt, out)


def _verify_reports(args, cfg):
    what = args.what
    if what == "hoffman":
        return rel.iter_hoffman_duality(args.max_weight, args.max_N)
    if what == "interpolation":
        return rel.iter_interpolation(args.max_weight, args.max_N)
    if what == "products":
        return rel.iter_product_rules(args.pairs, args.max_weight, args.max_N, args.seed)
    if what == "involution":
        return rel.iter_involution_rho(args.max_weight)
    if what == "all":
        return rel.run_profile(args.profile, cfg)
    need = {"kawashima": ("k", "l", "m"), "harmonic": ("k", "l", "z"), "taylor": ("k", "m"),
            "difference": ("k", "z"), "polygamma": ("m", "z"), "cross": ("k", "z")}[what]
    missing = [f"--{n}" for n in need if getattr(args, n) is None]
    if missing:
        raise UsageError(f"verify {what} needs {', '.join(missing)}")
    if what == "kawashima":
        return [rel.check_kawashima_relation(args.k, args.l, args.m, cfg)]
    if what == "harmonic":
        return [rel.check_harmonic_relation(args.k, args.l, _parse_z(args.z, cfg.precision), cfg)]
    if what == "taylor":
        return [rel.check_taylor_identity(args.k, args.m, cfg)]
    if what == "difference":
        return [rel.check_difference_equation(args.k, _parse_z(args.z, cfg.precision), cfg)]
    if what == "polygamma":
        return [rel.check_polygamma(args.m, _parse_z(args.z, cfg.precision), cfg)]
    return [rel.check_cross_method(args.k, _parse_z(args.z, cfg.precision), cfg, pair) for pair in
            (("g", "newton"), ("g", "inductive"), ("newton", "inductive"))]


def cmd_verify(args, cfg, fmt, out):
    if args.what == "all" and args.profile not in rel.PROFILES:
        raise UsageError(f"unknown profile {args.profile!r}; choose from {rel.PROFILES}")
    counts: Counter = Counter()
    failures = []
    writer = csv.writer(out, lineterminator="\n") if fmt == "csv" else None
    if writer:
        writer.writerow(["check", "kind", "params", "lhs", "rhs", "residual", "bound", "verdict"])
    for report in _verify_reports(args, cfg):
        data = report.to_json()
        counts[(report.name, report.verdict)] += 1
        if fmt == "json":
            print(json.dumps(data), file=out)
        elif writer:
            writer.writerow([data["check"], data["kind"], json.dumps(data["params"]), data["lhs"],
                             data["rhs"], data["residual"], data["bound"], data["verdict"]])
        if not report.passed:
            failures.append(data)
    if fmt == "plain":
        names = sorted({name for name, _ in counts})
        print(f"{'check':28s} {'pass':>6s} {'fail':>6s}", file=out)
        for name in names:
            print(f"{name:28s} {counts[(name, 'pass')]:6d} {counts[(name, 'fail')]:6d}", file=out)
        for data in failures:
            print("FAIL", json.dumps(data), file=out)
    return 1 if failures else 0


# --- parser ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("evaluation settings")
    g.add_argument("--format", choices=("plain", "json", "csv"), default=None)
    g.add_argument("--terms", type=int, default=None, help="truncation bound N")
    g.add_argument("--extrapolate", default=None, metavar="P,D", help="points and log degree, or 'none'")
    g.add_argument("--precision-bits", type=int, default=None)
    g.add_argument("--tol", type=float, default=None)
    g.add_argument("--margin", type=float, default=None, help="distance kept from Re(z) = -rho")
    g.add_argument("--config", default=None, help=f"key = value file (also ${CONFIG_ENV})")

    parser = argparse.ArgumentParser(prog="kawashima", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dual", parents=[common], help="Hoffman dual of an index")
    p.add_argument("index", type=_nonempty_index_arg)
    p.set_defaults(func=cmd_dual)

    p = sub.add_parser("rev", parents=[common], help="reverse an index")
    p.add_argument("index", type=_index_arg)
    p.set_defaults(func=cmd_rev)

    p = sub.add_parser("star", parents=[common], help="star expansion of an index")
    p.add_argument("index", type=_nonempty_index_arg)
    p.set_defaults(func=cmd_star)

    p = sub.add_parser("product", parents=[common], help="harmonic products of two indices")
    p.add_argument("--type", choices=tuple(PRODUCTS), default="plain")
    p.add_argument("left", type=_index_arg)
    p.add_argument("right", type=_index_arg)
    p.set_defaults(func=cmd_product)

    p = sub.add_parser("sum", parents=[common], help="exact table of s, s*, S, S*")
    p.add_argument("index", type=_nonempty_index_arg)
    p.add_argument("--N", type=int, required=True)
    p.set_defaults(func=cmd_sum)

    p = sub.add_parser("mzv", parents=[common], help="multiple zeta (or zeta-star) value")
    p.add_argument("index", type=_index_arg)
    p.add_argument("--star", action="store_true")
    p.set_defaults(func=cmd_mzv)

    p = sub.add_parser("eval", parents=[common], help="evaluate F_k(z)")
    p.add_argument("function", choices=("F",))
    p.add_argument("--index", type=_index_arg, required=True)
    p.add_argument("--z", required=True)
    p.add_argument("--method", choices=METHODS, default="g")
    p.add_argument("--exact", action="store_true", help="exact rational value at integer z >= 0")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("taylor", parents=[common], help="Taylor coefficients of F_k at z = 0")
    p.add_argument("--index", type=_nonempty_index_arg, required=True)
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--method", choices=("1", "3"), default="1")
    p.set_defaults(func=cmd_taylor)

    p = sub.add_parser("verify", parents=[common], help="verify identities")
    p.add_argument("what", choices=("hoffman", "interpolation", "products", "involution", "kawashima",
                                    "harmonic", "taylor", "difference", "polygamma", "cross", "all"))
    p.add_argument("--max-weight", type=int, default=6)
    p.add_argument("--max-N", dest="max_N", type=int, default=20)
    p.add_argument("--pairs", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--k", type=_nonempty_index_arg)
    p.add_argument("--l", type=_nonempty_index_arg)
    p.add_argument("--m", type=int)
    p.add_argument("--z")
    p.add_argument("--profile", default="desk")
    p.set_defaults(func=cmd_verify)
    return parser


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg, fmt = build_config(args)
        code = args.func(args, cfg, fmt, out)
    except (UsageError, DomainError, OSError) as exc:
        print(f"kawashima {args.command}: error: {exc}", file=sys.stderr)
        return 2
    return code or 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
