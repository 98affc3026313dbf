"""Command-line interface: ``quateis {coeff,expand,limit,tilde,verify}``.

Exit codes: 0 success, 1 a verification check failed, 2 bad invocation or
domain error.  Set ``QUATEIS_CACHE_DIR`` to persist the Bernoulli table
between runs.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from .arith import bernoulli_table, require_odd_prime, seed_bernoulli_cache
from .eisenstein import (
    A_coeff,
    a_coeff,
    b_coeff,
    build_F,
    build_G_star,
    convergence_table,
    expand_A,
    expand_a,
    expand_b,
    transcendental_table,
    write_jsonl,
)
from .hermitian import H0, form_to_json, parse_form
from .padic import PadicNumber, log_two_power, tilde_a_limit, tilde_a_value
from .verify import SUITES, run_suite

CACHE_ENV = "QUATEIS_CACHE_DIR"


class UsageError(Exception):
    pass


def _frac(x: Fraction) -> str:
    return str(x)


def _inf(v, fmt: str = "json"):
    if v != float("inf"):
        return v
    return None if fmt == "json" else "inf"


def _emit(rows: list[dict], fmt: str, out) -> None:
    if fmt == "json":
        for r in rows:
            out.write(json.dumps(r, separators=(",", ":")) + "\n")
    elif fmt == "csv":
        if not rows:
            return
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: json.dumps(v) if isinstance(v, (dict, list)) else v for k, v in r.items()})
        out.write(buf.getvalue())
    else:
        for r in rows:
            out.write("  ".join(f"{k}={v}" for k, v in r.items()) + "\n")


def _check_weight(k: int) -> None:
    if k % 2 or k < 4:
        raise UsageError(f"weight must be even and >= 4, got {k}")


def _check_prime(p: int) -> None:
    try:
        require_odd_prime(p)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_coeff(args, out) -> int:
    _check_weight(args.k)
    H = parse_form(args.H)
    row = {"k": args.k, "H": form_to_json(H), "a": _frac(a_coeff(args.k, H)), "b": _frac(b_coeff(args.k, H))}
    if args.p is not None:
        _check_prime(args.p)
        row["p"] = args.p
        row["A"] = _frac(A_coeff(args.k, args.p, H))
    if args.format == "human":
        for key in ("a", "b", "A"):
            if key in row:
                out.write(f"{key} = {row[key]}\n")
    else:
        _emit([row], args.format, out)
    return 0


def cmd_expand(args, out) -> int:
    _check_weight(args.k)
    if args.B < 0:
        raise UsageError("trace bound must be nonnegative")
    series = args.series
    if series in ("gstar", "gstar-op", "F"):
        if args.p is None:
            raise UsageError(f"series {series} needs -p")
        _check_prime(args.p)
    if series == "a":
        F = expand_a(args.k, args.B)
    elif series == "b":
        F = expand_b(args.k, args.B)
    elif series == "gstar":
        F = expand_A(args.k, args.p, args.B)
    elif series == "gstar-op":
        F = build_G_star(args.k, args.p, args.B, lazy=True)
    else:
        F = build_F(args.k, args.p, args.B, lazy=True).materialize()
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            write_jsonl(F, fh)
    else:
        write_jsonl(F, out)
    return 0


def cmd_limit(args, out) -> int:
    _check_weight(args.k)
    _check_prime(args.p)
    H = parse_form(args.H)
    rows = [
        {"m": r.m, "weight": r.weight, "valuation": _inf(r.valuation, args.format)}
        for r in convergence_table(args.k, args.p, H, args.m)
    ]
    _emit(rows, args.format, out)
    return 0


def _padic_record(x: PadicNumber) -> dict:
    return {**x.to_json(), "text": str(x), "digits": x.digit_string()}


def cmd_tilde(args, out) -> int:
    _check_prime(args.p)
    p, N = args.p, args.N
    H = parse_form(args.H) if args.H else H0
    closed = tilde_a_value(p, N)
    target = closed if args.target == "closed" else tilde_a_limit(p, N)
    lg = log_two_power(p, N + 2)
    residual = closed * lg + 48 * p
    rows = [
        {"m": r.m, "weight": r.weight, "valuation": r.valuation, "capped": r.capped}
        for r in transcendental_table(p, H, args.m, N, target)
    ]
    summary = {
        "tilde_a": _padic_record(closed),
        "limit": _padic_record(tilde_a_limit(p, N)),
        "target": args.target,
        "residual_valuation": _inf(residual.val),
    }
    if args.format == "json":
        _emit(rows + [summary], "json", out)
    elif args.format == "csv":
        _emit(rows, "csv", out)
        out.write(f"# tilde_a,{closed}\n# residual_valuation,{summary['residual_valuation']}\n")
    else:
        _emit(rows, "human", out)
        out.write(f"tilde_a = {closed}\n          {closed.digit_string()}\n")
        out.write(f"limit   = {tilde_a_limit(p, N)}\n")
        out.write(f"residual tilde_a*log_p(2^(p-1)) + 48p = {residual}\n")
    return 0


def cmd_verify(args, out) -> int:
    params = {}
    suite = args.suite
    if suite == "bernoulli":
        params = {"mmax": args.mmax}
    elif suite == "divisor":
        params = {"nmax": args.nmax, "primes": tuple(args.primes)}
    elif suite == "kummer":
        params = {"p": args.p or 3, "kmax": args.kmax, "mode": args.bound}
    elif suite == "lemma2":
        params = {"n": args.n, "p": args.p or 3, "trace_bound": args.B if args.B is not None else 4}
    elif suite == "coset":
        params = {"n": args.n, "p": args.p or 3, "samples": args.samples, "seed": args.seed}
    elif suite == "gstar":
        _check_weight(args.k or 4)
        params = {"k": args.k or 4, "p": args.p or 3, "trace_bound": args.B if args.B is not None else 1}
    elif suite == "leopoldt":
        params = {"p": args.p or 3, "m_max": args.m}
    elif suite == "padic":
        params = {"p": args.p or 3, "samples": args.samples, "seed": args.seed}
    if "p" in params:
        _check_prime(params["p"])
    report = run_suite(suite, **params)
    _emit([report], args.format if args.format != "human" else "json", out)
    return 0 if report["failures"] == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "human"), default="human")

    parser = argparse.ArgumentParser(prog="quateis", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("coeff", parents=[common], help="a_k(H), b_k(H) and optionally A_k(H)")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("-H", required=True, help='form literal "n,m,[c1,c2,c3,c4]"')
    p.add_argument("-p", type=int)
    p.set_defaults(func=cmd_coeff)

    p = sub.add_parser("expand", parents=[common], help="write a q-expansion as JSON Lines")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("-p", type=int)
    p.add_argument("-B", type=int, required=True, help="trace bound")
    p.add_argument("--series", choices=("a", "b", "gstar", "gstar-op", "F"), default="b")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("limit", parents=[common], help="convergence of b_{k_m}(H) to A_k(H)")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("-p", type=int, required=True)
    p.add_argument("-H", required=True)
    p.add_argument("-m", type=int, required=True)
    p.set_defaults(func=cmd_limit)

    p = sub.add_parser("tilde", parents=[common], help="the transcendental limit coefficient")
    p.add_argument("-p", type=int, required=True)
    p.add_argument("-H")
    p.add_argument("-m", type=int, default=0)
    p.add_argument("-N", type=int, default=12)
    p.add_argument("--target", choices=("closed", "limit"), default="closed",
                   help="compare against -48p/log_p(2^(p-1)) or the Euler-corrected limit")
    p.set_defaults(func=cmd_tilde)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("suite", choices=SUITES)
    p.add_argument("-p", type=int)
    p.add_argument("-k", type=int)
    p.add_argument("-n", type=int, default=2, choices=(1, 2))
    p.add_argument("-B", type=int)
    p.add_argument("-m", type=int, default=5)
    p.add_argument("--kmax", type=int, default=200)
    p.add_argument("--mmax", type=int, default=200)
    p.add_argument("--nmax", type=int, default=1000)
    p.add_argument("--primes", type=int, nargs="+", default=[3, 5, 7])
    p.add_argument("--bound", choices=("sharp", "stated"), default="sharp")
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)
    return parser


def _cache_file() -> Path | None:
    d = os.environ.get(CACHE_ENV)
    return Path(d) / "bernoulli.json" if d else None


def _load_cache() -> int:
    path = _cache_file()
    if path is None or not path.exists():
        return 0
    raw = json.loads(path.read_text())
    table = {int(k): Fraction(int(v[0]), int(v[1])) for k, v in raw.items()}
    seed_bernoulli_cache(table)
    return len(table)


def _save_cache(known: int) -> None:
    path = _cache_file()
    if path is None:
        return
    table = bernoulli_table()
    if len(table) <= known:
        return
    path.parent.mkdir(parents=True, exist_ok=True)
    payload = {str(k): [str(v.numerator), str(v.denominator)] for k, v in sorted(table.items())}
    path.write_text(json.dumps(payload))


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        known = _load_cache()
    except (OSError, ValueError) as exc:
        print(f"quateis: ignoring Bernoulli cache: {exc}", file=sys.stderr)
        known = 0
    try:
        code = args.func(args, out)
    except (UsageError, ValueError, ArithmeticError, LookupError) as exc:
        print(f"quateis: error: {exc}", file=sys.stderr)
        return 2
    _save_cache(known)
    return code


if __name__ == "__main__":
    sys.exit(main())
