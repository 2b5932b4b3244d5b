"""Closed-form right-hand sides for 2F1 at argument 2 and 1/2.

Everything here is evaluated from the closed form alone.  The only oracle
calls are in :func:`transform_2_to_half` and :func:`samoletov_check`, whose
contracts are themselves comparisons between series.
"""

from __future__ import annotations

import enum
import math
from fractions import Fraction

from . import oracle
from .errors import ExcludedDomain, ParameterPole
from .exact import (
    HALF,
    GammaProduct,
    NormalForm,
    Q,
    RationalLike,
    DOUBLE_FACTORIAL_MINUS_ONE,
    binomial,
    double_factorial,
    format_rational,
    gamma_normalize,
    pochhammer_int,
    sum_normal_forms,
)


class Sign(enum.Enum):
    """Which of the paired signs in a +-/-+ formula is taken."""

    UPPER = 1
    LOWER = -1

    @property
    def pm(self) -> int:
        return self.value

    def delta(self, j: int) -> int:
        return j if self is Sign.UPPER else 0

    def epsilon(self, j: int) -> int:
        return 0 if self is Sign.UPPER else j

    @property
    def symbol(self) -> str:
        return "+" if self is Sign.UPPER else "-"

    @classmethod
    def parse(cls, s: "str | Sign") -> "Sign":
        if isinstance(s, Sign):
            return s
        key = s.strip().lower()
        if key in ("+", "upper", "plus", "1", "+1"):
            return cls.UPPER
        if key in ("-", "lower", "minus", "-1"):
            return cls.LOWER
        raise ValueError(f"unknown sign {s!r}")


def _nonzero_poch(a: Fraction, m: int, label: str) -> Fraction:
    p = pochhammer_int(a, m)
    if p == 0:
        raise ParameterPole(f"{label} = ({format_rational(a)})_{m} vanishes")
    return p


def _pow2(e: int) -> Fraction:
    return Fraction(2) ** e


# ---------------------------------------------------------------------------
# 2F1(-m, a; 2a +- j; 2)


def _theorem1_sum(n: int, a: Fraction, j: int, sign: Sign, odd: bool) -> Fraction:
    shift = a + sign.delta(j)
    total = Fraction(0)
    for r in range(j // 2 + 1):
        b = binomial(j, 2 * r + 1 if odd else 2 * r)
        if b == 0:
            continue
        lead = pochhammer_int(-n, r)
        if lead == 0:
            continue
        total += (-1) ** r * b * lead * pochhammer_int(shift, n - r)
    return total


def f21_2apj_even(n: int, a: RationalLike, j: int, sign: Sign | str = Sign.UPPER) -> Fraction:
    """``2F1(-2n, a; 2a +- j; 2)``."""
    a, sign = Q(a), Sign.parse(sign)
    c = 2 * a + sign.pm * j
    den = _nonzero_poch(c, 2 * n, f"(2a{sign.symbol}j)_(2n)")
    return _pow2(2 * n) * pochhammer_int(HALF, n) / den * _theorem1_sum(n, a, j, sign, odd=False)


def f21_2apj_odd(n: int, a: RationalLike, j: int, sign: Sign | str = Sign.UPPER) -> Fraction:
    """``2F1(-2n-1, a; 2a +- j; 2)``."""
    a, sign = Q(a), Sign.parse(sign)
    c = 2 * a + sign.pm * j
    den = _nonzero_poch(c, 2 * n + 1, f"(2a{sign.symbol}j)_(2n+1)")
    pre = sign.pm * _pow2(2 * n) * pochhammer_int(Fraction(3, 2), n) / den
    return pre * _theorem1_sum(n, a, j, sign, odd=True)


# ---------------------------------------------------------------------------
# 2F1(-n, a; -2n +- j; 2)


def factorial_ratio_plus(n: int, j: int) -> Fraction:
    """``(n-j)!/(2n-j)!``, or its replacement ``(-1)^n (j-2n-1)!/(j-n-1)!`` once ``j > 2n``."""
    if n + 1 <= j <= 2 * n:
        raise ExcludedDomain(f"j={j} lies in [n+1, 2n] = [{n + 1}, {2 * n}]")
    if j <= n:
        return Fraction(math.factorial(n - j), math.factorial(2 * n - j))
    return Fraction((-1) ** n * math.factorial(j - 2 * n - 1), math.factorial(j - n - 1))


def f21_m2n_plus(n: int, a: RationalLike, j: int) -> Fraction:
    """``2F1(-n, a; -2n + j; 2)`` for ``j`` outside ``[n+1, 2n]``."""
    a = Q(a)
    ratio = factorial_ratio_plus(n, j)
    s = sum(
        (binomial(j, r) * pochhammer_int(a / 2 + HALF - Fraction(r, 2), n) for r in range(j + 1)),
        Fraction(0),
    )
    return _pow2(2 * n - j) * ratio * s


def f21_m2n_minus(n: int, a: RationalLike, j: int) -> Fraction:
    """``2F1(-n, a; -2n - j; 2)``."""
    a = Q(a)
    pre = _pow2(2 * n + j) * Fraction(math.factorial(n), math.factorial(2 * n + j))
    s = sum(
        (
            (-1) ** r * binomial(j, r) * pochhammer_int(a / 2 + HALF - Fraction(r, 2), n + j)
            for r in range(j + 1)
        ),
        Fraction(0),
    )
    return pre * s


def a_coeff(r: int, n: int, j: int, a: RationalLike) -> Fraction:
    """``(1/2 - a/2)_r / (1/2 - a/2 - n - j)_r``."""
    a = Q(a)
    base = HALF - a / 2
    return pochhammer_int(base, r) / _nonzero_poch(base - n - j, r, "A_r denominator")


def b_coeff(r: int, n: int, j: int, a: RationalLike) -> Fraction:
    """``(1 - a/2)_r / (1 - a/2 - n - j)_r``."""
    a = Q(a)
    base = 1 - a / 2
    return pochhammer_int(base, r) / _nonzero_poch(base - n - j, r, "B_r denominator")


def _alt_brackets(n: int, a: Fraction, j: int, shift: int) -> tuple[Fraction, Fraction]:
    j0 = j // 2
    even = sum((binomial(j, 2 * r) * a_coeff(r, n, shift, a) for r in range(j0 + 1)), Fraction(0))
    odd = sum(
        (binomial(j, 2 * r + 1) * b_coeff(r, n, shift, a) for r in range(j0 + 1) if 2 * r + 1 <= j),
        Fraction(0),
    )
    return even, odd


def f21_alt_plus(n: int, a: RationalLike, j: int) -> Fraction:
    """Two-Pochhammer rewriting of :func:`f21_m2n_plus`."""
    a = Q(a)
    ratio = factorial_ratio_plus(n, j)
    even, odd = _alt_brackets(n, a, j, 0)
    bracket = pochhammer_int(a / 2 + HALF, n) * even + pochhammer_int(a / 2, n) * odd
    return _pow2(2 * n - j) * ratio * bracket


def f21_alt_minus(n: int, a: RationalLike, j: int) -> Fraction:
    """Two-Pochhammer rewriting of :func:`f21_m2n_minus`."""
    a = Q(a)
    pre = _pow2(2 * n + j) * Fraction(math.factorial(n), math.factorial(2 * n + j))
    even, odd = _alt_brackets(n, a, j, j)
    bracket = pochhammer_int(a / 2 + HALF, n + j) * even - pochhammer_int(a / 2, n + j) * odd
    return pre * bracket


# ---------------------------------------------------------------------------
# generalized Kummer theorems at argument 1/2


def _gp(coeff, *factors) -> GammaProduct:
    return GammaProduct.build(coeff, factors)


def _affine_gammas(params: dict[str, Fraction], limit: str | None, rows) -> list[tuple]:
    """Gamma factors from rows ``(exp, const, {param: weight})``.

    The slope of each factor is the weight of ``limit`` in its argument, so
    the product is read as the limit of ``limit -> value``.  ``limit=None``
    moves every argument at unit speed.
    """
    if limit is not None and limit not in params:
        raise ValueError(f"limit parameter must be one of {sorted(params)}")
    out = []
    for exp, const, weights in rows:
        arg = const + sum((w * params[p] for p, w in weights.items()), Fraction(0))
        slope = Fraction(1) if limit is None else Fraction(weights.get(limit, 0))
        out.append((arg, exp, slope))
    return out


def kummer2_generalized(
    alpha, beta, j: int, sign: Sign | str = Sign.UPPER, limit: str | None = "beta"
) -> NormalForm:
    """Right side for ``2F1(alpha, beta; (alpha+beta+1 +- j)/2; 1/2)``.

    Each summand is multiplied by the gamma prefactor before normalizing, so
    a pole in the prefactor can be cancelled by a zero in the summand.
    """
    sign = Sign.parse(sign)
    params = {"alpha": Q(alpha), "beta": Q(beta)}
    s, h = sign.pm, HALF
    hj = Fraction(j, 2)
    pre = _affine_gammas(params, limit, [
        (1, h, {}),
        (1, h + s * hj, {"alpha": h, "beta": h}),
        (-1, h, {"alpha": h}),
        (-1, h, {"beta": h}),
        (1, h - s * hj, {"alpha": h, "beta": -h}),
        (-1, h + hj, {"alpha": h, "beta": -h}),
    ])
    terms = []
    for r in range(j + 1):
        hr = Fraction(r, 2)
        factors = pre + _affine_gammas(params, limit, [
            (1, hr, {"beta": h}),
            (-1, Fraction(0), {"beta": h}),
            (1, h, {"alpha": h}),
            (-1, h + hr - hj, {"alpha": h}),
        ])
        terms.append(gamma_normalize(GammaProduct.build((-s) ** r * binomial(j, r), factors)))
    return sum_normal_forms(terms)


def kummer3_generalized(
    alpha, gamma, j: int, sign: Sign | str = Sign.UPPER, limit: str | None = "alpha"
) -> NormalForm:
    """Right side for ``2F1(alpha, 1 - alpha +- j; gamma; 1/2)``."""
    sign = Sign.parse(sign)
    params = {"alpha": Q(alpha), "gamma": Q(gamma)}
    s, h = sign.pm, HALF
    delta, eps = sign.delta(j), sign.epsilon(j)
    pre = _affine_gammas(params, limit, [
        (1, Fraction(0), {"gamma": h}),
        (1, h, {"gamma": h}),
        (-1, Fraction(0), {"gamma": h, "alpha": h}),
        (-1, h, {"gamma": h, "alpha": -h}),
        (1, Fraction(-s * j), {"alpha": 1}),
        (-1, Fraction(eps), {"alpha": 1}),
    ])
    terms = []
    for r in range(j + 1):
        hr = Fraction(r, 2)
        factors = pre + _affine_gammas(params, limit, [
            (1, hr, {"gamma": h, "alpha": -h}),
            (-1, Fraction(0), {"gamma": h, "alpha": -h}),
            (1, Fraction(0), {"gamma": h, "alpha": h}),
            (-1, hr - delta, {"gamma": h, "alpha": h}),
        ])
        coeff = _pow2(s * j) * (-s) ** r * binomial(j, r)
        terms.append(gamma_normalize(GammaProduct.build(coeff, factors)))
    return sum_normal_forms(terms)


def kummer2_classic(alpha, beta, limit: str | None = "beta") -> NormalForm:
    """``sqrt(pi) Gamma(a/2+b/2+1/2) / (Gamma(a/2+1/2) Gamma(b/2+1/2))``."""
    h = HALF
    factors = _affine_gammas({"alpha": Q(alpha), "beta": Q(beta)}, limit, [
        (1, h, {}),
        (1, h, {"alpha": h, "beta": h}),
        (-1, h, {"alpha": h}),
        (-1, h, {"beta": h}),
    ])
    return gamma_normalize(GammaProduct.build(1, factors))


def kummer3_classic(alpha, gamma, limit: str | None = "alpha") -> NormalForm:
    """``Gamma(g/2) Gamma(g/2+1/2) / (Gamma(g/2+a/2) Gamma(g/2-a/2+1/2))``."""
    h = HALF
    factors = _affine_gammas({"alpha": Q(alpha), "gamma": Q(gamma)}, limit, [
        (1, Fraction(0), {"gamma": h}),
        (1, h, {"gamma": h}),
        (-1, Fraction(0), {"gamma": h, "alpha": h}),
        (-1, h, {"gamma": h, "alpha": -h}),
    ])
    return gamma_normalize(GammaProduct.build(1, factors))


# ---------------------------------------------------------------------------
# argument 2 -> 1/2 transformation, the j = 0 closed form, Samoletov's sum


def transform_2_to_half(n: int, beta, gamma) -> tuple[Fraction, Fraction]:
    """Both sides of the 2 -> 1/2 transformation, each summed by the oracle."""
    be, ga = Q(beta), Q(gamma)
    left = oracle.hyp2f1(n, be, ga, 2)
    inner = oracle.hyp2f1(n, 1 - ga - n, 1 - be - n, HALF)
    den = _nonzero_poch(ga, n, "(gamma)_n")
    right = Fraction(-2) ** n * pochhammer_int(be, n) / den * inner
    return left, right


def f21_2a_closed(n: int, a) -> NormalForm:
    """``2F1(-n, a; 2a; 2) = 2^n sqrt(pi) Gamma(1-a) / ((2a)_n Gamma(1/2-n/2) Gamma(1-a-n/2))``."""
    a = Q(a)
    den = _nonzero_poch(2 * a, n, "(2a)_n")
    half_n = Fraction(n, 2)
    # limit in a: Gamma(1/2 - n/2) does not move, so its poles are exact zeros
    return gamma_normalize(
        _gp(
            _pow2(n) / den,
            (HALF, 1, 0),
            (1 - a, 1, -1),
            (HALF - half_n, -1, 0),
            (1 - a - half_n, -1, -1),
        )
    )


def samoletov_sum(n: int) -> Fraction:
    """``sum_k (-1)^k (2k+1)!! / ((n-k)! k! (k+1)!)``."""
    f = math.factorial
    return sum(
        (Fraction((-1) ** k * double_factorial(2 * k + 1), f(n - k) * f(k) * f(k + 1)) for k in range(n + 1)),
        Fraction(0),
    )


def samoletov_gamma_form(n: int) -> NormalForm:
    """Two-branch gamma expression for ``2F1(-n, 3/2; 2; 2)``."""
    h = Fraction(n, 2)
    if n % 2 == 0:
        g = _gp(1, (h + HALF, 1), (HALF, -1), (h + 1, -1))
    else:
        g = _gp(-1, (h + 1, 1), (HALF, -1), (h + Fraction(3, 2), -1))
    return gamma_normalize(g)


def samoletov_double_factorial_squared(n: int) -> tuple[int, Fraction]:
    """Sign and square of ``(-1)^n/sqrt(n!(n+1)!) * (sqrt(n+1) (n-1)!!/n!!)^((-1)^n)``."""
    f = math.factorial
    prev = double_factorial(n - 1) if n else DOUBLE_FACTORIAL_MINUS_ONE
    inner_sq = Fraction((n + 1) * prev**2, double_factorial(n) ** 2)
    if n % 2:
        inner_sq = 1 / inner_sq
    return (-1) ** n, inner_sq / (f(n) * f(n + 1))


def samoletov_check(n: int) -> tuple[Fraction, NormalForm, NormalForm]:
    """``(S, H, F)`` all on the scale of the factorial sum ``S``.

    The factorial sum is ``2F1(-n, 3/2; 2; 2) / n!``; both ``H`` (gamma form)
    and ``F`` (oracle) are divided by ``n!`` so the contract is ``S == H == F``.
    """
    if n < 1:
        raise ValueError("n must be a positive integer")
    scale = math.factorial(n)
    s = samoletov_sum(n)
    g = samoletov_gamma_form(n)
    h = NormalForm.of(g.value / scale, g.pi_half_power) if g.value is not None else g
    f = NormalForm.of(oracle.hyp2f1(n, Fraction(3, 2), 2, 2) / scale)
    return s, h, f


# ---------------------------------------------------------------------------
# confluent expansion


def confluent_expansion_coeffs(a, j: int, sign: Sign | str, N: int) -> oracle.SeriesPoly:
    """Coefficients of ``exp(-x/2) 1F1(a; 2a +- j; x)`` assembled from the argument-2 binomial sums."""
    a, sign = Q(a), Sign.parse(sign)
    c = 2 * a + sign.pm * j
    _nonzero_poch(c, N, f"(2a{sign.symbol}j)_N")
    coeffs = []
    for k in range(N + 1):
        n, odd = divmod(k, 2)
        s = _theorem1_sum(n, a, j, sign, odd=bool(odd))
        den = _pow2(k) * pochhammer_int(c, k) * math.factorial(n)
        coeffs.append((-sign.pm if odd else 1) * s / den)
    return oracle.SeriesPoly(tuple(coeffs))
