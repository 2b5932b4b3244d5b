"""Exact rational primitives, Pochhammer symbols and a gamma-product kernel.

All scalars are :class:`fractions.Fraction`.  Gamma functions are never
evaluated numerically: a :class:`GammaProduct` is reduced to a
:class:`NormalForm`, i.e. ``rational * pi**(k/2)``, or flagged as a zero,
a pole, or irreducible.

Poles follow a limit convention.  Each factor is ``Gamma(x + slope*eps)``
with one shared ``eps -> 0``; the slope is how fast the argument moves with
the parameter being taken to its limit, and defaults to 1.  Near a
nonpositive integer ``Gamma(-m + s*eps) ~ (-1)**m / (m! * s * eps)``, so
matched numerator/denominator poles cancel to a finite ratio (the recurrence
chain), a surplus of denominator poles gives ZERO and a surplus of numerator
poles gives POLE.

A slope of 0 marks an argument that does not move.  Its poles are exact:
``1/Gamma(-m)`` is an exact zero and wins over any eps-pole, while such
factors still cancel against each other through the recurrence.
"""

from __future__ import annotations

import enum
import math
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Union

from .errors import GammaSumError, PochhammerZeroDivision

RationalLike = Union[int, Fraction, str]

HALF = Fraction(1, 2)

# conventions for the empty double factorials
DOUBLE_FACTORIAL_ZERO = 1  # 0!!
DOUBLE_FACTORIAL_MINUS_ONE = 1  # (-1)!!


def Q(x: RationalLike) -> Fraction:
    """Coerce ``x`` to a Fraction; strings may be ``"p"``, ``"p/q"`` or ``"-k/2"``."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a rational")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        s = x.strip()
        if not s or any(ch.isspace() for ch in s) or "." in s or "e" in s.lower():
            raise ValueError(f"not an exact rational: {x!r}")
        return Fraction(s)
    raise TypeError(f"cannot interpret {type(x).__name__} as a rational")


def format_rational(q: Fraction) -> str:
    """``"p/q"`` with no whitespace; integers print bare."""
    q = Q(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def is_nonpositive_integer(x: Fraction) -> bool:
    return x.denominator == 1 and x <= 0


def pochhammer_int(a: RationalLike, m: int) -> Fraction:
    """Rising factorial ``(a)_m`` for any integer ``m``.

    Negative ``m`` uses ``1/((a-1)(a-2)...(a+m))``; a zero factor there is a
    caller error and raises :class:`PochhammerZeroDivision`.
    """
    a = Q(a)
    if m >= 0:
        # integer fast path keeps big sweeps cheap
        p, q = a.numerator, a.denominator
        num = 1
        for i in range(m):
            num *= p + i * q
        return Fraction(num, q**m)
    den = Fraction(1)
    for i in range(1, -m + 1):
        factor = a - i
        if factor == 0:
            raise PochhammerZeroDivision(
                f"({format_rational(a)})_{m} hits the zero factor a-{i}"
            )
        den *= factor
    return 1 / den


def binomial(n: int, k: int) -> int:
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def double_factorial(m: int) -> int:
    """``m!! = m (m-2) (m-4) ...`` for ``m >= 0``; ``0!! = 1``."""
    if m < 0:
        raise ValueError("double_factorial takes m >= 0; use DOUBLE_FACTORIAL_MINUS_ONE")
    out = 1
    for k in range(m, 1, -2):
        out *= k
    return out


def duplication_split_even(a: RationalLike, n: int) -> tuple[Fraction, Fraction]:
    """Return ``((a/2)_n, ((a+1)/2)_n)``, so that ``(a)_{2n} = 4**n * first * second``."""
    a = Q(a)
    return pochhammer_int(a / 2, n), pochhammer_int((a + 1) / 2, n)


def duplication_split_odd(a: RationalLike, n: int) -> tuple[Fraction, Fraction]:
    """Return ``((a+1)/2)_n, (a/2+1)_n)``, so that ``(a)_{2n+1} = a * 4**n * first * second``."""
    a = Q(a)
    return pochhammer_int((a + 1) / 2, n), pochhammer_int(a / 2 + 1, n)


@dataclass(frozen=True, order=True)
class HalfInteger:
    """An element of (1/2)Z, stored as twice its value."""

    twice_value: int

    @classmethod
    def of(cls, x: RationalLike) -> "HalfInteger":
        x = Q(x) * 2
        if x.denominator != 1:
            raise ValueError(f"{format_rational(x / 2)} is not a half-integer")
        return cls(x.numerator)

    @property
    def value(self) -> Fraction:
        return Fraction(self.twice_value, 2)

    @property
    def is_integer(self) -> bool:
        return self.twice_value % 2 == 0


# ---------------------------------------------------------------------------
# gamma products


Factor = tuple  # (arg, exp) or (arg, exp, slope)


@dataclass(frozen=True, eq=False)
class GammaProduct:
    """``coeff * prod Gamma(arg + slope*eps)**exp`` with merged, nonzero exponents.

    Stored factors are ``(arg, slope, exp)``.  Two products compare equal when
    their normal forms do.
    """

    coeff: Fraction = Fraction(1)
    factors: tuple[tuple[Fraction, Fraction, int], ...] = ()

    @classmethod
    def build(
        cls,
        coeff: RationalLike = 1,
        factors: Mapping[RationalLike, int] | Iterable[Factor] = (),
    ) -> "GammaProduct":
        items = factors.items() if isinstance(factors, Mapping) else factors
        merged: dict[tuple[Fraction, Fraction], int] = defaultdict(int)
        for item in items:
            arg, e = item[0], item[1]
            slope = Q(item[2]) if len(item) > 2 else Fraction(1)
            merged[Q(arg), slope] += e
        return cls(Q(coeff), tuple(sorted((x, s, e) for (x, s), e in merged.items() if e)))

    @classmethod
    def sqrt_pi(cls, power: int = 1) -> "GammaProduct":
        return cls.build(1, {HALF: power})

    def __mul__(self, other: "GammaProduct | RationalLike") -> "GammaProduct":
        if not isinstance(other, GammaProduct):
            return GammaProduct(self.coeff * Q(other), self.factors)
        return GammaProduct.build(
            self.coeff * other.coeff,
            [(x, e, s) for x, s, e in self.factors + other.factors],
        )

    __rmul__ = __mul__

    def inverse(self) -> "GammaProduct":
        if self.coeff == 0:
            raise ZeroDivisionError("inverse of a zero gamma product")
        return GammaProduct(1 / self.coeff, tuple((x, s, -e) for x, s, e in self.factors))

    def __truediv__(self, other: "GammaProduct | RationalLike") -> "GammaProduct":
        if not isinstance(other, GammaProduct):
            return GammaProduct(self.coeff / Q(other), self.factors)
        return self * other.inverse()

    def normalize(self) -> "NormalForm":
        return gamma_normalize(self)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GammaProduct):
            return NotImplemented
        return gamma_normalize(self) == gamma_normalize(other)

    def __hash__(self) -> int:
        return hash(gamma_normalize(self))


class Tag(enum.Enum):
    FINITE = "FINITE"
    ZERO = "ZERO"
    POLE = "POLE"
    IRREDUCIBLE = "IRREDUCIBLE"


@dataclass(frozen=True)
class NormalForm:
    """Canonical value of a gamma product.

    FINITE means ``value * pi**(pi_half_power/2)`` with ``value != 0``.
    IRREDUCIBLE keeps the surviving gamma factors in ``residual``.
    """

    tag: Tag
    value: Fraction | None = None
    pi_half_power: int = 0
    residual: tuple[tuple[Fraction, int], ...] = field(default=())

    @classmethod
    def of(cls, value: RationalLike, pi_half_power: int = 0) -> "NormalForm":
        value = Q(value)
        if value == 0:
            return ZERO
        return cls(Tag.FINITE, value, pi_half_power)

    @property
    def is_rational(self) -> bool:
        return self.tag is Tag.ZERO or (self.tag is Tag.FINITE and self.pi_half_power == 0)

    def to_rational(self) -> Fraction:
        if not self.is_rational:
            raise ValueError(f"{self} is not rational")
        return self.value if self.tag is Tag.FINITE else Fraction(0)

    def __mul__(self, other: "NormalForm") -> "NormalForm":
        tags = {self.tag, other.tag}
        if Tag.ZERO in tags and Tag.POLE in tags:
            raise ArithmeticError("ZERO * POLE is indeterminate; multiply the gamma products instead")
        if Tag.ZERO in tags:
            return ZERO
        if Tag.POLE in tags:
            return POLE
        res: dict[Fraction, int] = defaultdict(int)
        for x, e in self.residual + other.residual:
            res[x] += e
        residual = tuple(sorted((x, e) for x, e in res.items() if e))
        value = self.value * other.value
        pi = self.pi_half_power + other.pi_half_power
        if residual:
            return NormalForm(Tag.IRREDUCIBLE, value, pi, residual)
        return NormalForm(Tag.FINITE, value, pi)

    def __str__(self) -> str:
        return format_normal_form(self)


ZERO = NormalForm(Tag.ZERO, Fraction(0))
POLE = NormalForm(Tag.POLE)


def gamma_normalize(g: GammaProduct) -> NormalForm:
    """Reduce a gamma product to ``rational * pi**(k/2)`` where possible.

    Factors are grouped by ``arg mod 1``.  Non-integer classes are rewritten
    as ``(b)_m * Gamma(b)`` with ``0 < b < 1``; ``b = 1/2`` contributes powers
    of ``sqrt(pi)`` and any other surviving ``Gamma(b)`` makes the result
    IRREDUCIBLE.  Integer arguments are resolved by the eps limit described
    in the module docstring.
    """
    if g.coeff == 0:
        return ZERO
    coeff = g.coeff
    # net count of eps-poles (moving) and exact poles (slope 0); > 0 is a pole
    soft = hard = 0
    net: dict[Fraction, int] = defaultdict(int)
    for x, slope, e in g.factors:
        base = x - math.floor(x)
        if base:
            coeff *= pochhammer_int(base, int(x - base)) ** e
            net[base] += e
        elif x >= 1:
            coeff *= Fraction(math.factorial(int(x) - 1)) ** e
        else:
            m = -int(x)
            residue = Fraction((-1) ** m, math.factorial(m))
            if slope:
                coeff *= (residue / slope) ** e
                soft += e
            else:
                coeff *= residue**e
                hard += e
    if hard < 0:
        return ZERO
    if hard > 0:
        return POLE
    if soft < 0:
        return ZERO
    if soft > 0:
        return POLE
    pi_half = net.pop(HALF, 0)
    residual = tuple(sorted((b, e) for b, e in net.items() if e))
    if residual:
        return NormalForm(Tag.IRREDUCIBLE, coeff, pi_half, residual)
    return NormalForm(Tag.FINITE, coeff, pi_half)


def pochhammer_half(a: RationalLike, k: HalfInteger | RationalLike) -> GammaProduct:
    """Formal ``(a)_k = Gamma(a+k)/Gamma(a)`` for a half-integer index."""
    if not isinstance(k, HalfInteger):
        k = HalfInteger.of(k)
    a = Q(a)
    return GammaProduct.build(1, [(a + k.value, 1), (a, -1)])


def sum_normal_forms(forms: Iterable[NormalForm]) -> NormalForm:
    """Exact sum; every nonzero term must share one pi power and residual."""
    total = Fraction(0)
    shape: tuple[int, tuple] | None = None
    for f in forms:
        if f.tag is Tag.ZERO:
            continue
        if f.tag is Tag.POLE:
            return POLE
        this = (f.pi_half_power, f.residual)
        if shape is None:
            shape = this
        elif this != shape:
            raise GammaSumError(f"cannot add terms of shapes {shape} and {this}")
        total += f.value
    if shape is None or total == 0:
        return ZERO
    pi, residual = shape
    if residual:
        return NormalForm(Tag.IRREDUCIBLE, total, pi, residual)
    return NormalForm(Tag.FINITE, total, pi)


def format_normal_form(f: NormalForm) -> str:
    """``"p/q"``, ``"p/q*pi^(k/2)"``, ``"p/q*pi^m"``, ``"POLE"``, or a rational times leftover ``Gamma(b)^e`` factors."""
    if f.tag is Tag.ZERO:
        return "0"
    if f.tag is Tag.POLE:
        return "POLE"
    s = format_rational(f.value)
    k = f.pi_half_power
    if k:
        s += f"*pi^{k // 2}" if k % 2 == 0 else f"*pi^({k}/2)"
    if f.tag is Tag.IRREDUCIBLE:
        s += "*" + "*".join(f"Gamma({format_rational(b)})^{e}" for b, e in f.residual)
    return s


def parse_normal_form(s: str) -> NormalForm:
    """Inverse of :func:`format_normal_form`."""
    s = s.strip()
    if s == "POLE":
        return POLE
    parts = s.split("*")
    value = Q(parts[0])
    pi = 0
    residual = []
    for p in parts[1:]:
        if p.startswith("pi^("):
            pi = int(p[4:-1].split("/")[0])
        elif p.startswith("pi^"):
            pi = 2 * int(p[3:])
        elif p.startswith("Gamma("):
            arg, exp = p[len("Gamma("):].split(")^")
            residual.append((Q(arg), int(exp)))
        else:
            raise ValueError(f"unparseable normal form {s!r}")
    if residual:
        return NormalForm(Tag.IRREDUCIBLE, value, pi, tuple(sorted(residual)))
    return NormalForm.of(value, pi)
