"""Command line front end.

Exit codes: 0 success, 1 a check found a counterexample (witness in the
report), 2 bad usage.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction

from .arith import fraction_str, parse_fraction
from .hurwitz import default_table, hurwitz_formula, hurwitz_oracle, load_or_build
from .identities import (
    SELECTIONS,
    RouteDisagreement,
    calibrate,
    scalarize_prime,
    verify_catalog,
)
from .series import discriminant_form, hz_coefficient, series_table

CACHE_ENV = "HZSERIES_CACHE"


class UsageError(Exception):
    pass


def _parse_gamma(text):
    if text is None:
        return None
    parts = [p for p in text.replace(";", ",").split(",") if p.strip()]
    if len(parts) != 2:
        raise UsageError(f"--gamma wants two coordinates like 1/5,3/5, got {text!r}")
    try:
        return tuple(parse_fraction(p.strip()) for p in parts)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad --gamma {text!r}: {exc}") from None


def _form(m):
    if m is None:
        raise UsageError("--m is required")
    if m <= 0 or m % 4 not in (0, 1):
        raise UsageError(f"--m must be a positive integer = 0, 1 mod 4, got {m}")
    return discriminant_form(m)


def _table(args, max_index):
    path = args.cache or os.environ.get(CACHE_ENV)
    if path:
        return load_or_build(path, max_index)
    return default_table(max_index)


def _dump(obj) -> str:
    return json.dumps(obj, indent=1)


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


# -- subcommands ------------------------------------------------------------


def cmd_hurwitz(args):
    lo, hi = _range(args)
    table = _table(args, hi)
    rows = [(n, table[n]) for n in range(lo, hi + 1)]
    code = 0
    bad = None
    if args.check:
        for n, v in rows:
            if n > 0 and n % 4 in (0, 3) and hurwitz_oracle(n) != v:
                bad = {"n": n, "table": fraction_str(v), "oracle": fraction_str(hurwitz_oracle(n))}
                code = 1
                break
    if args.format == "json":
        out = {"hurwitz": {str(n): fraction_str(v) for n, v in rows}}
        if args.check:
            out["witness"] = bad
        return code, _dump(out)
    if args.format == "csv":
        return code, _csv(["n", "H"], [(n, fraction_str(v)) for n, v in rows])
    text = "".join(f"H({n}) = {fraction_str(v)}\n" for n, v in rows)
    if bad:
        text += f"mismatch: {bad}\n"
    return code, text


def _range(args):
    if args.n is not None:
        n = args.n
        return n, n
    if args.n_max is not None:
        return 0, args.n_max
    raise UsageError("give --n or --n-max")


def cmd_coeff(args):
    df = _form(args.m)
    if args.n is None:
        return cmd_table(args)
    gamma = _parse_gamma(args.gamma)
    n = Fraction(args.n_frac) if args.n_frac else Fraction(args.n)
    table = _table(args, int(4 * n) + 4)
    try:
        c = hz_coefficient(df, gamma, n, args.tol, table)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    g = gamma or (0, 0)
    if args.format == "json":
        return 0, _dump({"m": df.m, "gamma": [fraction_str(Fraction(x)) for x in g], "n": fraction_str(n),
                         "value": c.to_json()})
    if args.format == "csv":
        eb = "" if c.is_exact else repr(c.error_bound)
        val = fraction_str(c.exact) if c.is_exact else repr(c.approx)
        return 0, _csv(["gamma", "n", "value", "error_bound"],
                       [[";".join(fraction_str(Fraction(x)) for x in g), fraction_str(n), val, eb]])
    return 0, f"C({fraction_str(n)}, {g}) = {c}\n"


def cmd_table(args):
    df = _form(args.m)
    if args.n_max is None:
        raise UsageError("--n-max is required")
    table = _table(args, 4 * args.n_max + 4)
    try:
        t = series_table(df, args.n_max, args.tol, table)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.format == "json":
        return 0, t.to_json()
    if args.format == "csv":
        return 0, t.to_csv()
    lines = [f"m = {t.m}"]
    for (g, n), v in t.sorted_rows():
        lines.append(f"{g}  n = {fraction_str(n)}  {v}")
    return 0, "\n".join(lines) + "\n"


def cmd_calibrate(args):
    df = _form(args.m)
    sample_max = args.n_max or 200
    table = _table(args, 4 * sample_max + 4)
    gammas = [_parse_gamma(args.gamma)] if args.gamma else [g.rep for g in df.orbit_representatives()]
    try:
        reports = [calibrate(df, g, sample_max, args.tol or 1e-6, table, override=args.override) for g in gammas]
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    code = 0 if all(r.ok for r in reports) else 1
    if args.format == "json":
        return code, _dump({"m": df.m, "reports": [r.to_json_obj() for r in reports]})
    if args.format == "csv":
        rows = []
        for r in reports:
            g = ";".join(fraction_str(x) for x in r.gamma.rep)
            for c, k in sorted(r.kappa.items(), key=lambda kv: kv[0].residue):
                val = fraction_str(k.exact) if k.is_exact else repr(k.approx)
                rows.append([g, r.modulus, c.residue, val, "" if k.is_exact else repr(k.error_bound)])
        return code, _csv(["gamma", "modulus", "residue", "kappa", "error_bound"], rows)
    lines = []
    for r in reports:
        lines.append(f"gamma = {r.gamma}  modulus {r.modulus}  {'exact' if r.exact else 'approximate'}")
        for c, k in sorted(r.kappa.items(), key=lambda kv: kv[0].residue):
            lines.append(f"  n d^2 = {c.residue} mod {c.modulus}: kappa = {k}")
        for v in r.violations:
            lines.append(f"  not constant: {v.to_json()}")
    return code, "\n".join(lines) + "\n"


def cmd_verify(args):
    selection = []
    for item in args.catalog or ["all"]:
        selection += [s for s in item.split(",") if s]
    max_n = args.n_max or 1000
    table = _table(args, 4 * max_n + 4)
    try:
        results = verify_catalog(selection, max_n, table)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    code = 0 if all(r.passed for r in results) else 1
    if args.format == "json":
        return code, _dump({"max_n": max_n, "results": [r.to_json() for r in results]})
    if args.format == "csv":
        rows = [[r.record.source, r.record.m, str(r.record.residue_class), r.record.kappa or "",
                 "pass" if r.passed else "fail", r.checked, json.dumps(r.witness) if r.witness else ""]
                for r in results]
        return code, _csv(["source", "m", "class", "kappa", "status", "checked", "witness"], rows)
    lines = [f"{'PASS' if r.passed else 'FAIL'}  {r.record.source:22s} {str(r.record.residue_class):12s} "
             f"checked {r.checked}" + (f"  witness {r.witness}" if r.witness else "") for r in results]
    return code, "\n".join(lines) + "\n"


def cmd_scalarize(args):
    p = args.p if args.p is not None else args.m
    if p is None:
        raise UsageError("--p is required")
    max_N = args.n_max if args.n_max is not None else 60
    table = _table(args, 4 * max_N + 4)
    code, witness = 0, None
    try:
        items = scalarize_prime(p, max_N, args.tol or 1e-8, table, check=False)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    for it in items:
        if not it.agree:
            code, witness = 1, it.to_json()
            break
    if args.format == "json":
        return code, _dump({"p": p, "coefficients": [it.to_json() for it in items], "witness": witness})
    if args.format == "csv":
        rows = []
        for it in items:
            v, d = it.vector, it.direct
            rows.append([it.N, str(v.value) if v.is_exact else repr(v.approx), v.error_bound,
                         str(d.value) if d.is_exact else repr(d.approx), d.error_bound])
        return code, _csv(["N", "vector", "vector_error", "direct", "direct_error"], rows)
    lines = [f"b({it.N}) = {it.vector}   direct {it.direct}" for it in items]
    if witness:
        lines.append(f"routes disagree: {witness}")
    return code, "\n".join(lines) + "\n"


def cmd_selftest(args):
    checks = []
    checks.append(("hurwitz formula = oracle, n <= 400",
                   all(hurwitz_formula(n) == hurwitz_oracle(n) for n in range(1, 401) if n % 4 in (0, 3))))
    table = _table(args, 2000)
    from .arith import sigma1

    checks.append(("m = 1 series = E_2, n <= 100",
                   all(hz_coefficient(1, None, n, table=table).exact == -24 * sigma1(n) for n in range(1, 101))))
    checks.append(("catalog, n <= 200", all(r.passed for r in verify_catalog("all", 200, table))))
    try:
        scalarize_prime(5, 20, 1e-8, table)
        ok = True
    except RouteDisagreement:
        ok = False
    checks.append(("scalar routes agree, p = 5, N <= 20", ok))
    code = 0 if all(ok for _, ok in checks) else 1
    if args.format == "json":
        return code, _dump({"checks": [{"name": n, "ok": ok} for n, ok in checks]})
    if args.format == "csv":
        return code, _csv(["check", "ok"], [[n, ok] for n, ok in checks])
    return code, "".join(f"{'ok  ' if ok else 'FAIL'}  {n}\n" for n, ok in checks)


COMMANDS = {
    "hurwitz": cmd_hurwitz,
    "coeff": cmd_coeff,
    "table": cmd_table,
    "calibrate": cmd_calibrate,
    "verify": cmd_verify,
    "scalarize": cmd_scalarize,
    "selftest": cmd_selftest,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hzseries", description="Hirzebruch-Zagier series and class number identities")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--format", choices=("json", "csv", "text"), default="text")
        p.add_argument("--cache", help=f"Hurwitz table cache file (default: ${CACHE_ENV}, else in memory)")
        p.add_argument("--m", type=int)
        p.add_argument("--n", type=int)
        p.add_argument("--n-max", type=int)
        p.add_argument("--tol", type=float)
        if name == "coeff":
            p.add_argument("--n-frac", help="non-integral n such as 24/5")
        if name in ("coeff", "calibrate"):
            p.add_argument("--gamma", help="component, e.g. 1/5,3/5 (default 0)")
        if name == "calibrate":
            p.add_argument("--override", action="store_true", help="allow m with cusp forms")
        if name == "verify":
            p.add_argument("--catalog", action="append", help=f"one of {', '.join(SELECTIONS)} or a tag")
        if name == "scalarize":
            p.add_argument("--p", type=int, help="prime = 1 mod 4 (same as --m)")
        if name == "hurwitz":
            p.add_argument("--check", action="store_true", help="compare against reduced form counts")
    return parser


def run(argv=None) -> tuple[int, str]:
    """Execute a command; returns (exit code, report text)."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0), ""
    if args.tol is not None and args.tol <= 0:
        return 2, "error: --tol must be positive\n"
    for flag in ("n", "n_max"):
        v = getattr(args, flag)
        if v is not None and v < 0:
            return 2, f"error: --{flag.replace('_', '-')} must be nonnegative\n"
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        return 2, f"error: {exc}\n"


def main(argv=None) -> int:
    code, text = run(argv)
    stream = sys.stderr if code == 2 else sys.stdout
    stream.write(text if not text or text.endswith("\n") else text + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
