"""Command-line front end: ``hypsum eval|verify|catalog|expand``.

Exit codes: 0 pass, 1 identity failure, 2 pole or excluded domain,
3 skip budget exceeded, 64 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from importlib import resources
from typing import Sequence

from . import catalog as cat
from . import closed_forms as cf
from . import oracle, sweeps
from .errors import HypsumError, UnknownEntry
from .exact import NormalForm, Q, Tag, format_normal_form, format_rational

EXIT_OK, EXIT_FAIL, EXIT_POLE, EXIT_BUDGET, EXIT_USAGE = 0, 1, 2, 3, 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def load_schema() -> dict:
    return json.loads(resources.files("hypsum").joinpath("schema/report-v1.json").read_text())


def dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


# ---------------------------------------------------------------------------
# eval


def _parse_params(items: Sequence[str]) -> dict[str, str]:
    out = {}
    for item in items:
        key, sep, val = item.partition("=")
        if not sep or not key:
            raise UsageError(f"expected key=value, got {item!r}")
        out[key.strip()] = val.strip()
    return out


class _Params:
    def __init__(self, raw: dict[str, str]):
        self.raw = raw
        self.used: set[str] = set()

    def rational(self, key: str, default=None) -> Fraction:
        if key not in self.raw:
            if default is None:
                raise UsageError(f"missing parameter {key}=")
            return Q(default)
        self.used.add(key)
        try:
            return Q(self.raw[key])
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"{key}={self.raw[key]!r} is not a rational") from None

    def integer(self, key: str, default=None, minimum: int | None = 0) -> int:
        v = self.rational(key, default)
        if v.denominator != 1 or (minimum is not None and v < minimum):
            raise UsageError(f"{key} must be an integer >= {minimum}")
        return int(v)

    def sign(self) -> cf.Sign:
        self.used.add("sign")
        try:
            return cf.Sign.parse(self.raw.get("sign", "+"))
        except ValueError as exc:
            raise UsageError(str(exc)) from None

    def rationals(self, key: str) -> list[Fraction]:
        if key not in self.raw:
            raise UsageError(f"missing parameter {key}=")
        self.used.add(key)
        text = self.raw[key]
        if not text:
            return []
        try:
            return [Q(x) for x in text.split(",")]
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"{key}={text!r} is not a comma-separated rational list") from None

    def check_unused(self) -> None:
        extra = sorted(set(self.raw) - self.used)
        if extra:
            raise UsageError(f"unknown parameter(s): {', '.join(extra)}")


def _fmt(v) -> str:
    if isinstance(v, NormalForm):
        return format_normal_form(v)
    if isinstance(v, oracle.SeriesPoly):
        return ",".join(format_rational(c) for c in v.coefficients)
    return format_rational(v)


def _eval_identity(identity: str, p: _Params):
    """Returns ``(value, ok)``; ``ok`` is False only for two-sided identities that disagree."""
    if identity in ("t1-even", "t1-odd"):
        fn = cf.f21_2apj_even if identity == "t1-even" else cf.f21_2apj_odd
        return fn(p.integer("n"), p.rational("a"), p.integer("j", 0), p.sign()), True
    if identity in ("t2-plus", "t2-minus", "alt-plus", "alt-minus"):
        fn = {"t2-plus": cf.f21_m2n_plus, "t2-minus": cf.f21_m2n_minus,
              "alt-plus": cf.f21_alt_plus, "alt-minus": cf.f21_alt_minus}[identity]
        return fn(p.integer("n"), p.rational("a"), p.integer("j", 0)), True
    if identity == "k2gen":
        return cf.kummer2_generalized(p.rational("alpha"), p.rational("beta"), p.integer("j", 0), p.sign()), True
    if identity == "k3gen":
        return cf.kummer3_generalized(p.rational("alpha"), p.rational("gamma"), p.integer("j", 0), p.sign()), True
    if identity == "transform":
        left, right = cf.transform_2_to_half(p.integer("n"), p.rational("beta"), p.rational("gamma"))
        return left, left == right
    if identity == "samoletov":
        s, h, f = cf.samoletov_check(p.integer("n", minimum=1))
        return s, NormalForm.of(s) == h == f
    if identity == "f21-2a":
        return cf.f21_2a_closed(p.integer("n"), p.rational("a")), True
    if identity == "confluent":
        order = p.integer("N", 10)
        series = cf.confluent_expansion_coeffs(p.rational("a"), p.integer("j", 0), p.sign(), order)
        if "k" in p.raw:
            k = p.integer("k")
            if k > order:
                raise UsageError("k must not exceed N")
            return series[k], True
        return series, True
    if identity == "oracle":
        upper, lower = p.rationals("upper"), p.rationals("lower")
        z = p.rational("z")
        n = p.integer("n") if "n" in p.raw else None
        try:
            spec = oracle.HypSeriesSpec.of(upper, lower, z, n)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        return oracle.hyp_terminating_sum(spec), True
    if identity.startswith("catalog:"):
        entry_id = identity.split(":", 1)[1]
        symbols = {"j": p.integer("j")} if "j" in p.raw else {}
        return cat.catalog_entry_eval(entry_id, p.integer("n"), p.rational("a"), **symbols), True
    raise UsageError(f"unknown identity {identity!r}")


def cmd_eval(args) -> int:
    p = _Params(_parse_params(args.params))
    try:
        value, ok = _eval_identity(args.identity, p)
        p.check_unused()
    except UnknownEntry as exc:
        raise UsageError(exc.args[0]) from None
    except HypsumError as exc:
        print(f"{exc.code}: {exc}", file=sys.stderr)
        return EXIT_POLE
    if args.json:
        print(dump_json({"identity": args.identity, "params": dict(sorted(p.raw.items())),
                         "value": sweeps._ser_value(value), "consistent": ok}))
    else:
        print(_fmt(value))
    if isinstance(value, NormalForm) and value.tag is Tag.POLE:
        print("POLE: a gamma factor in the numerator is singular at this point", file=sys.stderr)
        return EXIT_POLE
    return EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------------------
# expand


def cmd_expand(args) -> int:
    p = _Params(_parse_params(args.params))
    a, j, sign = p.rational("a"), p.integer("j", 0), p.sign()
    p.check_unused()
    try:
        series = cf.confluent_expansion_coeffs(a, j, sign, args.order)
    except HypsumError as exc:
        print(f"{exc.code}: {exc}", file=sys.stderr)
        return EXIT_POLE
    if args.json:
        print(dump_json({"a": format_rational(a), "j": j, "sign": sign.symbol, "order": args.order,
                         "coefficients": [format_rational(c) for c in series.coefficients]}))
    else:
        for k, c in enumerate(series.coefficients):
            print(f"x^{k}: {format_rational(c)}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify


def cmd_verify(args) -> int:
    cfg = sweeps.SweepConfig(
        n_max=args.n_max, j_max=args.j_max, signs=tuple(args.signs), a_count=args.a_count,
        a_list=tuple(format_rational(a) for a in args.a) if args.a else None,
        points=args.points, order=args.order, skip_budget=args.skip_budget,
        seed=args.seed, full_results=args.full,
    )
    results = sweeps.run(args.suite, cfg)
    report = sweeps.build_report(args.suite, cfg, results)
    if args.json:
        print(dump_json(report))
    else:
        for res in results:
            s = res.summary()
            verdict = "PASS" if res.passed and res.within_budget(cfg.skip_budget) else "FAIL"
            print(f"{res.suite:10} {verdict}  equal={s['equal']} unequal={s['unequal']} "
                  f"skipped={s['skipped']} restricted={s['restricted']} rejected={s['rejected']}")
            for r in res.reports:
                if r.verdict == "UNEQUAL":
                    point = " ".join(f"{k}={v}" for k, v in r.parameter_point.items())
                    print(f"  UNEQUAL {r.identity_id} {point}: {_fmt_side(r.lhs)} != {_fmt_side(r.rhs)}")
    return sweeps.exit_code(cfg, results)


def _fmt_side(v) -> str:
    return "undefined" if v is None else _fmt(v)


# ---------------------------------------------------------------------------
# catalog


def _point_report(entry_id: str, pc: cat.PointCheck) -> dict:
    return sweeps.VerificationReport(
        f"catalog:{entry_id}", {"n": str(pc.n), "a": format_rational(pc.a)},
        None if pc.oracle is None else NormalForm.of(pc.oracle),
        None if pc.printed is None else NormalForm.of(pc.printed),
        pc.verdict, pc.detail,
    ).to_dict()


def catalog_report(n_max: int, a_samples: Sequence[Fraction]) -> tuple[dict, bool]:
    audits = cat.catalog_audit(n_max, a_samples)
    ok = cat.audit_matches_expected(audits)
    total = {"equal": 0, "unequal": 0, "skipped": 0, "restricted": 0}
    entries, results = [], []
    for au in audits:
        counts = au.counts()
        for k in total:
            total[k] += counts[k]
        e = au.entry
        entries.append({
            "id": e.id, "family": e.family.value, "j": e.j, "sign": "+" if e.sign > 0 else "-",
            "series": e.label(), "status": au.status.value,
            "resolved_status": au.resolved_status.value if au.resolved_status else None,
            "counts": counts,
            "resolved_counts": au.counts(au.resolved_points) if au.resolved_points else None,
            "detail": au.detail, "note": e.note,
        })
        results.extend(_point_report(e.id, pc) for pc in au.points if pc.verdict == "UNEQUAL")
    report = {
        "schema_version": sweeps.SCHEMA_VERSION,
        "suite": "catalog",
        "config": {"n_max": n_max, "a_samples": [format_rational(Q(a)) for a in a_samples]},
        "results": results,
        "summary": total,
        "entries": entries,
        "matches_expected": ok,
    }
    return report, ok


def cmd_catalog(args) -> int:
    if args.n_max < 1:
        raise UsageError("--n-max must be >= 1")
    a_samples = args.a or list(cat.DEFAULT_A_SAMPLES)
    report, ok = catalog_report(args.n_max, a_samples)
    if args.json:
        print(dump_json(report))
    else:
        for e in report["entries"]:
            status = e["status"] + (f" -> {e['resolved_status']}" if e["resolved_status"] else "")
            print(f"{e['id']:5} {e['series']:26} {status:24} {e['detail']}")
        print("matches expected table" if ok else "differs from expected table")
    return EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------------------


def _rational_arg(s: str) -> Fraction:
    try:
        return Q(s)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational: {s!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hypsum", description="Exact hypergeometric summation identities and their verification.")
    sub = parser.add_subparsers(dest="command", required=True)

    ev = sub.add_parser("eval", help="evaluate one identity at a point")
    ev.add_argument("identity")
    ev.add_argument("params", nargs="*", metavar="key=value")
    ev.add_argument("--json", action="store_true")
    ev.set_defaults(func=cmd_eval)

    ve = sub.add_parser("verify", help="run a verification sweep")
    ve.add_argument("suite", choices=list(sweeps.SUITES) + ["all"])
    ve.add_argument("--n-max", type=int)
    ve.add_argument("--j-max", type=int)
    ve.add_argument("--seed", type=int, default=7)
    ve.add_argument("--points", type=int, default=500, help="random points for the transform suite")
    ve.add_argument("--order", type=int, default=40, help="truncation order for the confluent suite")
    ve.add_argument("--skip-budget", type=float, default=0.05)
    ve.add_argument("--a", type=_rational_arg, action="append", help="explicit a value (repeatable)")
    ve.add_argument("--a-count", type=int, default=20, help="random a values per grid point")
    ve.add_argument("--signs", nargs="+", choices=["+", "-"], default=["+", "-"])
    ve.add_argument("--full", action="store_true", help="list EQUAL points too")
    ve.add_argument("--json", action="store_true")
    ve.set_defaults(func=cmd_verify)

    ca = sub.add_parser("catalog", help="audit the j <= 5 special cases")
    ca.add_argument("--n-max", type=int, default=25)
    ca.add_argument("--a", type=_rational_arg, action="append", help="a sample (repeatable)")
    ca.add_argument("--json", action="store_true")
    ca.set_defaults(func=cmd_catalog)

    ex = sub.add_parser("expand", help="confluent expansion coefficients to order N")
    ex.add_argument("params", nargs="*", metavar="key=value", help="a=, j=, sign=")
    ex.add_argument("--order", type=int, default=10)
    ex.add_argument("--json", action="store_true")
    ex.set_defaults(func=cmd_expand)
    return parser


def _validate(args) -> None:
    for name in ("n_max", "j_max", "points", "order", "a_count"):
        v = getattr(args, name, None)
        if v is not None and v < 0:
            raise UsageError(f"--{name.replace('_', '-')} must be >= 0")
    budget = getattr(args, "skip_budget", None)
    if budget is not None and not 0 <= budget <= 1:
        raise UsageError("--skip-budget must lie in [0, 1]")


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _validate(args)
        return args.func(args)
    except UsageError as exc:
        print(f"hypsum: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
