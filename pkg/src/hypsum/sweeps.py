"""Deterministic verification sweeps.

Each suite walks a grid of parameter points in a fixed order, evaluates a
closed form and an independent computation at every point, and records a
:class:`VerificationReport`.  Random parameters come from PCG32 (the
``pcg_basic`` reference generator) so a seed pins every point exactly.

Verdicts: EQUAL / UNEQUAL compare two values; RESTRICTED means both sides
agree the point is outside the domain; SKIPPED_POLE means only the closed
form failed (a pole or a 0*inf it cannot resolve) and counts against the
skip budget.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Callable, Iterator, Sequence

from . import closed_forms as cf
from . import oracle
from .errors import GammaSumError, HypsumError
from .exact import (
    HALF,
    GammaProduct,
    NormalForm,
    Q,
    Tag,
    format_normal_form,
    format_rational,
    gamma_normalize,
    parse_normal_form,
)

SCHEMA_VERSION = "1"


class PCG32:
    """PCG-XSH-RR 64/32, as in O'Neill's ``pcg_basic.c``."""

    MULT = 6364136223846793005
    MASK64 = (1 << 64) - 1
    MASK32 = (1 << 32) - 1

    def __init__(self, initstate: int, initseq: int = 54):
        self.state = 0
        self.inc = ((initseq << 1) | 1) & self.MASK64
        self.next_u32()
        self.state = (self.state + initstate) & self.MASK64
        self.next_u32()

    def next_u32(self) -> int:
        old = self.state
        self.state = (old * self.MULT + self.inc) & self.MASK64
        xorshifted = (((old >> 18) ^ old) >> 27) & self.MASK32
        rot = old >> 59
        return ((xorshifted >> rot) | (xorshifted << ((-rot) & 31))) & self.MASK32

    def bounded(self, bound: int) -> int:
        """Uniform integer in ``[0, bound)`` by rejection (no modulo bias)."""
        threshold = ((1 << 32) - bound) % bound
        while True:
            r = self.next_u32()
            if r >= threshold:
                return r % bound


def draw_rational(rng: PCG32, reject: Callable[[Fraction], bool] | None = None,
                  num_range: int = 20, max_den: int = 8, max_tries: int = 10_000) -> Fraction:
    """Numerator uniform in ``[-num_range, num_range]``, denominator in ``[1, max_den]``."""
    for _ in range(max_tries):
        p = rng.bounded(2 * num_range + 1) - num_range
        q = rng.bounded(max_den) + 1
        x = Fraction(p, q)
        if reject is None or not reject(x):
            return x
    raise RuntimeError("rational sampler rejected every candidate")


# ---------------------------------------------------------------------------
# reports


def _ser_value(v):
    if v is None:
        return None
    if isinstance(v, oracle.SeriesPoly):
        return [format_rational(c) for c in v.coefficients]
    if isinstance(v, (list, tuple)):
        return [_ser_value(x) for x in v]
    if isinstance(v, NormalForm):
        return format_normal_form(v)
    return format_rational(Q(v))


def _de_value(v):
    if v is None:
        return None
    if isinstance(v, list):
        return oracle.SeriesPoly.of([Q(c) for c in v])
    return parse_normal_form(v)


def _as_value(v):
    if v is None or isinstance(v, (NormalForm, oracle.SeriesPoly)):
        return v
    return NormalForm.of(v)


@dataclass
class VerificationReport:
    identity_id: str
    parameter_point: dict
    lhs: object
    rhs: object
    verdict: str
    detail: str = ""

    def to_dict(self) -> dict:
        return {
            "identity_id": self.identity_id,
            "parameter_point": {k: _ser_value(v) if not isinstance(v, str) else v
                                for k, v in self.parameter_point.items()},
            "lhs": _ser_value(self.lhs),
            "rhs": _ser_value(self.rhs),
            "verdict": self.verdict,
            "detail": self.detail,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "VerificationReport":
        return cls(d["identity_id"], dict(d["parameter_point"]), _de_value(d["lhs"]),
                   _de_value(d["rhs"]), d["verdict"], d.get("detail", ""))


def compare(identity_id: str, point: dict, lhs_fn: Callable, rhs_fn: Callable) -> VerificationReport:
    """Evaluate both sides and classify.  ``lhs_fn`` is the independent side."""
    lhs = rhs = None
    lhs_err = rhs_err = None
    try:
        lhs = _as_value(lhs_fn())
    except HypsumError as exc:
        lhs_err = exc
    try:
        rhs = _as_value(rhs_fn())
    except HypsumError as exc:
        rhs_err = exc
    if lhs_err and rhs_err:
        return VerificationReport(identity_id, point, None, None, "RESTRICTED",
                                  f"both undefined: {lhs_err.code} / {rhs_err.code}")
    if lhs_err:
        return VerificationReport(identity_id, point, None, rhs, "UNEQUAL",
                                  f"left side {lhs_err.code}: {lhs_err}")
    if rhs_err:
        return VerificationReport(identity_id, point, lhs, None, "SKIPPED_POLE",
                                  f"right side {rhs_err.code}: {rhs_err}")
    if isinstance(rhs, NormalForm) and rhs.tag in (Tag.POLE, Tag.IRREDUCIBLE) and rhs != lhs:
        return VerificationReport(identity_id, point, lhs, rhs, "SKIPPED_POLE",
                                  f"right side normalizes to {rhs.tag.value}")
    return VerificationReport(identity_id, point, lhs, rhs, "EQUAL" if lhs == rhs else "UNEQUAL")


# ---------------------------------------------------------------------------
# configuration


SUITES = ("theorem1", "theorem2", "altforms", "kummer2", "kummer3",
          "transform", "confluent", "samoletov")

DEFAULT_N_MAX = {"theorem1": 50, "theorem2": 50, "altforms": 50, "kummer2": 30,
                 "kummer3": 30, "transform": 30, "confluent": 0, "samoletov": 100}
DEFAULT_J_MAX = {"theorem1": 10, "theorem2": 10, "altforms": 10, "kummer2": 8,
                 "kummer3": 8, "confluent": 5}
CONFLUENT_A = ("1", "3/2", "5/2", "7/3")


@dataclass(frozen=True)
class SweepConfig:
    """Everything that determines a sweep; equal configs give equal reports."""

    n_max: int | None = None
    j_max: int | None = None
    signs: tuple[str, ...] = ("+", "-")
    a_count: int = 20
    a_list: tuple[str, ...] | None = None
    points: int = 500
    order: int = 40
    skip_budget: float = 0.05
    seed: int = 7
    full_results: bool = False

    def n_for(self, suite: str) -> int:
        return DEFAULT_N_MAX[suite] if self.n_max is None else self.n_max

    def j_for(self, suite: str) -> int:
        return DEFAULT_J_MAX.get(suite, 0) if self.j_max is None else self.j_max

    def to_dict(self) -> dict:
        d = asdict(self)
        d["signs"] = list(self.signs)
        d["a_list"] = list(self.a_list) if self.a_list is not None else None
        return d


@dataclass
class SuiteResult:
    suite: str
    reports: list[VerificationReport] = field(default_factory=list)
    rejected: int = 0

    def summary(self) -> dict:
        out = {"equal": 0, "unequal": 0, "skipped": 0, "restricted": 0, "rejected": self.rejected}
        key = {"EQUAL": "equal", "UNEQUAL": "unequal", "SKIPPED_POLE": "skipped", "RESTRICTED": "restricted"}
        for r in self.reports:
            out[key[r.verdict]] += 1
        return out

    @property
    def passed(self) -> bool:
        return self.summary()["unequal"] == 0

    def within_budget(self, budget: float) -> bool:
        s = self.summary()
        judged = s["equal"] + s["unequal"] + s["skipped"]
        return judged == 0 or s["skipped"] <= budget * judged


class _Sampler:
    """Seeded rational draws that count rejections."""

    def __init__(self, seed: int, stream: int):
        self.rng = PCG32(seed, stream)
        self.rejected = 0

    def draw(self, reject: Callable[[Fraction], bool] | None = None) -> Fraction:
        def counted(x: Fraction) -> bool:
            bad = reject is not None and reject(x)
            self.rejected += bad
            return bad
        return draw_rational(self.rng, counted)

    def a_values(self, cfg: SweepConfig, reject=None) -> list[Fraction]:
        if cfg.a_list is not None:
            kept = [Q(a) for a in cfg.a_list if reject is None or not reject(Q(a))]
            self.rejected += len(cfg.a_list) - len(kept)
            return kept
        return [self.draw(reject) for _ in range(cfg.a_count)]


def _zero_in_poch(c: Fraction, length: int) -> bool:
    """True when ``(c)_k`` vanishes for some ``k <= length``."""
    return c.denominator == 1 and -(length - 1) <= c <= 0


def _pt(**kw) -> dict:
    return {k: (v if isinstance(v, str) else format_rational(Q(v))) for k, v in kw.items()}


def _signs(cfg: SweepConfig) -> list[cf.Sign]:
    return [cf.Sign.parse(s) for s in cfg.signs]


# ---------------------------------------------------------------------------
# suites


def _theorem1(cfg: SweepConfig, sm: _Sampler) -> Iterator[VerificationReport]:
    for n in range(cfg.n_for("theorem1") + 1):
        for j in range(cfg.j_for("theorem1") + 1):
            for sign in _signs(cfg):
                def pole(a, j=j, sign=sign, n=n):
                    return _zero_in_poch(2 * a + sign.pm * j, 2 * n + 1)
                for a in sm.a_values(cfg, pole):
                    c = 2 * a + sign.pm * j
                    p = _pt(n=n, a=a, j=j, sign=sign.symbol)
                    yield compare("theorem1-even", p, lambda: oracle.hyp2f1(2 * n, a, c, 2),
                                  lambda: cf.f21_2apj_even(n, a, j, sign))
                    yield compare("theorem1-odd", p, lambda: oracle.hyp2f1(2 * n + 1, a, c, 2),
                                  lambda: cf.f21_2apj_odd(n, a, j, sign))


def _theorem2(cfg: SweepConfig, sm: _Sampler) -> Iterator[VerificationReport]:
    n_max = cfg.n_for("theorem2")
    for n in range(n_max + 1):
        for j in range(cfg.j_for("theorem2") + 1):
            for a in sm.a_values(cfg):
                p = _pt(n=n, a=a, j=j)
                yield compare("theorem2-plus", p, lambda: oracle.hyp2f1(n, a, -2 * n + j, 2),
                              lambda: cf.f21_m2n_plus(n, a, j))
                yield compare("theorem2-minus", p, lambda: oracle.hyp2f1(n, a, -2 * n - j, 2),
                              lambda: cf.f21_m2n_minus(n, a, j))
    yield from factorial_replacement_reports(min(n_max, 20), 50)


def factorial_replacement_reports(n_max: int, j_max: int) -> Iterator[VerificationReport]:
    """``(n-j)!/(2n-j)!`` read as a gamma ratio against its replacement, ``j >= 2n+1``."""
    for n in range(n_max + 1):
        for j in range(2 * n + 1, j_max + 1):
            yield compare(
                "factorial-replacement", _pt(n=n, j=j),
                lambda: NormalForm.of(Fraction((-1) ** n * math.factorial(j - 2 * n - 1),
                                               math.factorial(j - n - 1))),
                lambda: gamma_normalize(GammaProduct.build(1, [(n - j + 1, 1), (2 * n - j + 1, -1)])),
            )


def _alt_pole(n: int, j: int, shift: int) -> Callable[[Fraction], bool]:
    def reject(a: Fraction) -> bool:
        for base in (HALF - a / 2, 1 - a / 2):
            if _zero_in_poch(base - n - shift, j // 2):
                return True
        return False
    return reject


def _altforms(cfg: SweepConfig, sm: _Sampler) -> Iterator[VerificationReport]:
    for n in range(cfg.n_for("altforms") + 1):
        for j in range(cfg.j_for("altforms") + 1):
            plus, minus = _alt_pole(n, j, 0), _alt_pole(n, j, j)
            for a in sm.a_values(cfg, lambda a: plus(a) or minus(a)):
                p = _pt(n=n, a=a, j=j)
                yield compare("altforms-plus", p, lambda: cf.f21_m2n_plus(n, a, j),
                              lambda: cf.f21_alt_plus(n, a, j))
                yield compare("altforms-minus", p, lambda: cf.f21_m2n_minus(n, a, j),
                              lambda: cf.f21_alt_minus(n, a, j))


def _kummer2(cfg: SweepConfig, sm: _Sampler) -> Iterator[VerificationReport]:
    # beta = -n is the terminating parameter; a nonpositive-integer lower
    # parameter makes the series differ from its beta -> -n limit, so reject
    for n in range(cfg.n_for("kummer2") + 1):
        for j in range(cfg.j_for("kummer2") + 1):
            for sign in _signs(cfg):
                def bad(al, n=n, j=j, sign=sign):
                    c = (al - n + sign.pm * j + 1) / 2
                    return c.denominator == 1 and c <= 0
                for al in sm.a_values(cfg, bad):
                    c = (al - n + sign.pm * j + 1) / 2
                    p = _pt(n=n, alpha=al, beta=-n, j=j, sign=sign.symbol)
                    yield compare(
                        "kummer2", p,
                        lambda: oracle.hyp_terminating_sum(oracle.HypSeriesSpec.of([al, -n], [c], HALF, n)),
                        lambda: cf.kummer2_generalized(al, -n, j, sign),
                    )
                    if j == 0:
                        yield compare("kummer2-classic", p, lambda: cf.kummer2_classic(al, -n),
                                      lambda: cf.kummer2_generalized(al, -n, 0, sign))


def _kummer3(cfg: SweepConfig, sm: _Sampler) -> Iterator[VerificationReport]:
    def bad(g):
        return g.denominator == 1 and g <= 0
    for n in range(cfg.n_for("kummer3") + 1):
        for j in range(cfg.j_for("kummer3") + 1):
            for sign in _signs(cfg):
                for g in sm.a_values(cfg, bad):
                    p = _pt(n=n, alpha=-n, gamma=g, j=j, sign=sign.symbol)
                    b = 1 + n + sign.pm * j
                    yield compare(
                        "kummer3", p,
                        lambda: oracle.hyp_terminating_sum(oracle.HypSeriesSpec.of([-n, b], [g], HALF, n)),
                        lambda: cf.kummer3_generalized(-n, g, j, sign),
                    )
                    if j == 0:
                        yield compare("kummer3-classic", p, lambda: cf.kummer3_classic(-n, g),
                                      lambda: cf.kummer3_generalized(-n, g, 0, sign))


def _transform(cfg: SweepConfig, sm: _Sampler) -> Iterator[VerificationReport]:
    n_max = cfg.n_for("transform")
    for _ in range(cfg.points):
        n = sm.rng.bounded(n_max + 1)
        g = sm.draw(lambda g: _zero_in_poch(g, n))
        b = sm.draw(lambda b: _zero_in_poch(1 - b - n, n))
        pair: dict = {}

        def sides():
            if not pair:
                pair["v"] = cf.transform_2_to_half(n, b, g)
            return pair["v"]
        yield compare("transform", _pt(n=n, beta=b, gamma=g), lambda: sides()[0], lambda: sides()[1])


def _confluent(cfg: SweepConfig, sm: _Sampler) -> Iterator[VerificationReport]:
    N = cfg.order
    a_vals = [Q(a) for a in (cfg.a_list if cfg.a_list is not None else CONFLUENT_A)]
    for a in a_vals:
        for j in range(cfg.j_for("confluent") + 1):
            for sign in _signs(cfg):
                p = _pt(a=a, j=j, sign=sign.symbol, N=N)
                c = 2 * a + sign.pm * j
                yield compare(
                    "confluent", p,
                    lambda: oracle.cauchy_product(oracle.exp_series(Fraction(-1, 2), N),
                                                  oracle.hyp1f1_series(a, c, N)),
                    lambda: cf.confluent_expansion_coeffs(a, j, sign, N),
                )
        yield compare("confluent-j0", _pt(a=a, j=0, N=N),
                      lambda: oracle.hyp0f1_series(a + HALF, Fraction(1, 16), N),
                      lambda: cf.confluent_expansion_coeffs(a, 0, cf.Sign.UPPER, N))


def _samoletov(cfg: SweepConfig, sm: _Sampler) -> Iterator[VerificationReport]:
    for n in range(1, cfg.n_for("samoletov") + 1):
        s, h, f = cf.samoletov_check(n)
        p = _pt(n=n)
        yield compare("samoletov-gamma", p, lambda: s, lambda: h)
        yield compare("samoletov-series", p, lambda: s, lambda: f)
        sign, sq = cf.samoletov_double_factorial_squared(n)
        ok = sq == s * s and (s > 0) == (sign > 0)
        yield VerificationReport("samoletov-squared", p, NormalForm.of(s * s), NormalForm.of(sq),
                                 "EQUAL" if ok else "UNEQUAL", "" if ok else "sign or square differs")


_RUNNERS = {
    "theorem1": _theorem1, "theorem2": _theorem2, "altforms": _altforms,
    "kummer2": _kummer2, "kummer3": _kummer3, "transform": _transform,
    "confluent": _confluent, "samoletov": _samoletov,
}


def run_suite(suite: str, cfg: SweepConfig) -> SuiteResult:
    if suite not in _RUNNERS:
        raise ValueError(f"unknown suite {suite!r}")
    sm = _Sampler(cfg.seed, SUITES.index(suite) + 1)
    res = SuiteResult(suite)
    res.reports.extend(_RUNNERS[suite](cfg, sm))
    res.rejected = sm.rejected
    return res


def run(suite: str, cfg: SweepConfig) -> list[SuiteResult]:
    names = SUITES if suite == "all" else (suite,)
    return [run_suite(s, cfg) for s in names]


def build_report(suite: str, cfg: SweepConfig, results: Sequence[SuiteResult]) -> dict:
    total = {"equal": 0, "unequal": 0, "skipped": 0, "restricted": 0, "rejected": 0}
    rows = []
    per_suite = {}
    per_identity: dict[str, dict] = {}
    key = {"EQUAL": "equal", "UNEQUAL": "unequal", "SKIPPED_POLE": "skipped", "RESTRICTED": "restricted"}
    for res in results:
        s = res.summary()
        per_suite[res.suite] = s
        for k in total:
            total[k] += s[k]
        for r in res.reports:
            counts = per_identity.setdefault(
                r.identity_id, {"equal": 0, "unequal": 0, "skipped": 0, "restricted": 0})
            counts[key[r.verdict]] += 1
            if cfg.full_results or r.verdict != "EQUAL":
                rows.append(r.to_dict())
    return {
        "schema_version": SCHEMA_VERSION,
        "suite": suite,
        "config": cfg.to_dict(),
        "results": rows,
        "summary": total,
        "suites": per_suite,
        "identities": per_identity,
    }


def exit_code(cfg: SweepConfig, results: Sequence[SuiteResult]) -> int:
    """0 pass, 1 some point UNEQUAL, 3 skip budget exceeded."""
    if any(not r.passed for r in results):
        return 1
    if any(not r.within_budget(cfg.skip_budget) for r in results):
        return 3
    return 0
