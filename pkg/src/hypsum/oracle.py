"""Brute-force ground truth.

Nothing here imports the closed-form code or the Pochhammer helpers in
:mod:`hypsum.exact`; the series are summed directly from their definitions
so a shared bug cannot make both sides agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import UndefinedSeries


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class HypSeriesSpec:
    """``pFq(upper; lower; argument)`` terminating after ``terminate_at`` terms."""

    upper: tuple[Fraction, ...]
    lower: tuple[Fraction, ...]
    argument: Fraction
    terminate_at: int

    @classmethod
    def of(cls, upper: Sequence, lower: Sequence, argument, terminate_at: int | None = None):
        up = tuple(_frac(u) for u in upper)
        if terminate_at is None:
            cands = [-u.numerator for u in up if u.denominator == 1 and u <= 0]
            if not cands:
                raise ValueError("no nonpositive-integer upper parameter; series does not terminate")
            terminate_at = min(cands)
        spec = cls(up, tuple(_frac(c) for c in lower), _frac(argument), terminate_at)
        if Fraction(-terminate_at) not in spec.upper:
            raise ValueError(f"no upper parameter equals -{terminate_at}")
        return spec


def hyp_terminating_sum(spec: HypSeriesSpec) -> Fraction:
    """Exact value of the terminating series ``sum_{k<=n} prod(u)_k/prod(c)_k z^k/k!``.

    Raises :class:`UndefinedSeries` when some ``(c)_k`` with ``k <= n`` is zero.
    """
    n = spec.terminate_at
    for c in spec.lower:
        if c.denominator == 1 and -(n - 1) <= c <= 0:
            raise UndefinedSeries(
                f"lower parameter {c} makes ({c})_k vanish for k = {1 - c.numerator}..{n}"
            )
    # Horner on unreduced integers: acc = 1 + rho_k * acc, reduced once at the end.
    zp, zq = spec.argument.numerator, spec.argument.denominator
    ups = [(u.numerator, u.denominator) for u in spec.upper]
    lows = [(c.numerator, c.denominator) for c in spec.lower]
    uq = 1
    for _, q in ups:
        uq *= q
    lq = 1
    for _, q in lows:
        lq *= q
    num, den = 1, 1
    for k in range(n - 1, -1, -1):
        p_k = zp * lq
        for p, q in ups:
            p_k *= p + k * q
        q_k = zq * uq * (k + 1)
        for p, q in lows:
            q_k *= p + k * q
        num, den = den * q_k + p_k * num, den * q_k
    return Fraction(num, den)


def hyp2f1(n: int, b, c, z) -> Fraction:
    """``2F1(-n, b; c; z)`` via :func:`hyp_terminating_sum`."""
    return hyp_terminating_sum(HypSeriesSpec.of([-n, b], [c], z, n))


def hyp_term_by_term(spec: HypSeriesSpec) -> Fraction:
    """Same value as :func:`hyp_terminating_sum`, one reduced term at a time (slow)."""
    n = spec.terminate_at
    total = Fraction(0)
    for k in range(n + 1):
        num = Fraction(1)
        for u in spec.upper:
            for i in range(k):
                num *= u + i
        den = Fraction(1)
        for c in spec.lower:
            for i in range(k):
                den *= c + i
        if den == 0:
            raise UndefinedSeries(f"lower Pochhammer vanishes at k={k}")
        fact = 1
        for i in range(2, k + 1):
            fact *= i
        total += num / den * spec.argument**k / fact
    return total


# ---------------------------------------------------------------------------
# truncated power series


@dataclass(frozen=True)
class SeriesPoly:
    """Power series in x truncated after ``x**order``."""

    coefficients: tuple[Fraction, ...]

    @classmethod
    def of(cls, coefficients) -> "SeriesPoly":
        return cls(tuple(_frac(c) for c in coefficients))

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    def __add__(self, other: "SeriesPoly") -> "SeriesPoly":
        _check_orders(self, other)
        return SeriesPoly(tuple(a + b for a, b in zip(self.coefficients, other.coefficients)))

    def __mul__(self, other: "SeriesPoly") -> "SeriesPoly":
        return cauchy_product(self, other)

    def __getitem__(self, k: int) -> Fraction:
        return self.coefficients[k]

    def __len__(self) -> int:
        return len(self.coefficients)


def _check_orders(p: SeriesPoly, q: SeriesPoly) -> None:
    if p.order != q.order:
        raise ValueError(f"truncation orders differ: {p.order} vs {q.order}")


def cauchy_product(p: SeriesPoly, q: SeriesPoly) -> SeriesPoly:
    _check_orders(p, q)
    a, b = p.coefficients, q.coefficients
    return SeriesPoly(
        tuple(sum((a[i] * b[k - i] for i in range(k + 1)), Fraction(0)) for k in range(len(a)))
    )


def exp_series(scale, N: int) -> SeriesPoly:
    """Coefficients of ``exp(scale*x)``: ``scale**k/k!``."""
    if N < 0:
        raise ValueError("order must be >= 0")
    scale = _frac(scale)
    out = [Fraction(1)]
    for k in range(1, N + 1):
        out.append(out[-1] * scale / k)
    return SeriesPoly(tuple(out))


def hyp1f1_series(a, c, N: int) -> SeriesPoly:
    """Coefficients ``(a)_k/((c)_k k!)`` of ``1F1(a; c; x)``."""
    a, c = _frac(a), _frac(c)
    out = [Fraction(1)]
    for k in range(N):
        if c + k == 0:
            raise UndefinedSeries(f"({c})_{k + 1} vanishes in 1F1")
        out.append(out[-1] * (a + k) / ((c + k) * (k + 1)))
    return SeriesPoly(tuple(out))


def hyp0f1_series(c, scale, N: int) -> SeriesPoly:
    """``0F1(-; c; scale*x**2)`` as a series in x: only even powers are nonzero."""
    c, scale = _frac(c), _frac(scale)
    out = [Fraction(0)] * (N + 1)
    term = Fraction(1)
    for k in range(N // 2 + 1):
        if k:
            if c + k - 1 == 0:
                raise UndefinedSeries(f"({c})_{k} vanishes in 0F1")
            term = term * scale / ((c + k - 1) * k)
        out[2 * k] = term
    return SeriesPoly(tuple(out))
