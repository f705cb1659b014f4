"""Exact rational scalars and polynomial arithmetic.

Every quantity in this package is an exact rational number; no floating
point enters any algebraic computation.  Scalars are `fractions.Fraction`
(always reduced, denominator positive), re-exported here as `Rational`.

A univariate polynomial is a dense tuple of coefficients in ascending
degree order, so ``UniPoly((2, 0, 1))`` is ``s^2 + 2``.  Trailing zero
coefficients are trimmed on construction; the zero polynomial has an
empty coefficient tuple and degree ``-inf``.  Each polynomial carries an
indeterminate tag: ``s`` for the frequency variable, ``t`` for the
squared-frequency variable used by the boundary-curve machinery, ``w``
for intermediates.

A bivariate polynomial in the two gain parameters ``k1, k2`` is a sparse
map from exponent pairs ``(i, j)`` to nonzero rational coefficients
(the zero polynomial is the empty map).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Union

Rational = Fraction
RationalLike = Union[Fraction, int, str]

NEG_INFINITY = float("-inf")


class InexactDivisionError(ArithmeticError):
    """Polynomial division left a nonzero remainder where none is allowed."""


class InvalidInstanceError(ValueError):
    """The three defining polynomials do not form a usable instance."""


class LeadingCoefficientError(InvalidInstanceError):
    """The leading coefficient of the family would depend on the gains."""


class DegenerateInstanceError(InvalidInstanceError):
    """The two gain directions are linearly dependent (or otherwise trivial)."""


def parse_rational(value: RationalLike) -> Fraction:
    """Parse an exact rational from an int or a decimal-free string.

    Accepted forms: ``7``, ``"7"``, ``"-3/10"``.  Floats and decimal
    strings are rejected so no rounding can leak into the pipeline.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        raise ValueError("floating-point input is not accepted; use 'num/den' strings")
    if isinstance(value, str):
        text = value.strip()
        if not text:
            raise ValueError("empty rational string")
        if any(ch in text for ch in ".eE"):
            raise ValueError(f"decimal notation not accepted: {value!r}")
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"bad rational string {value!r}: {exc}") from exc
    raise TypeError(f"cannot interpret {type(value).__name__} as a rational")


def format_rational(value: Fraction) -> str:
    """Render a rational as ``"num"`` or ``"num/den"`` (inverse of parse)."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True, slots=True)
class UniPoly:
    """Dense univariate polynomial with exact rational coefficients.

    ``coeffs[m]`` is the coefficient of ``var**m``; trailing zeros are
    stripped so the last stored coefficient is the (nonzero) leading one.
    """

    coeffs: tuple[Fraction, ...]
    var: str = "s"

    def __init__(self, coeffs: Iterable[RationalLike] = (), var: str = "s"):
        cleaned = [
            c if type(c) is Fraction else parse_rational(c) for c in coeffs
        ]
        while cleaned and cleaned[-1] == 0:
            cleaned.pop()
        object.__setattr__(self, "coeffs", tuple(cleaned))
        object.__setattr__(self, "var", var)

    # -- basic queries -------------------------------------------------

    @property
    def degree(self) -> int | float:
        """Degree of the polynomial; ``-inf`` for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else NEG_INFINITY

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading_coefficient(self) -> Fraction:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    @property
    def constant_term(self) -> Fraction:
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def coefficient(self, m: int) -> Fraction:
        return self.coeffs[m] if 0 <= m < len(self.coeffs) else Fraction(0)

    # -- ring operations -----------------------------------------------

    def _check_var(self, other: "UniPoly") -> str:
        # Constants (degree <= 0) combine with any indeterminate.
        if self.var == other.var or len(other.coeffs) <= 1:
            return self.var
        if len(self.coeffs) <= 1:
            return other.var
        raise ValueError(f"mixed indeterminates {self.var!r} and {other.var!r}")

    def __add__(self, other: "UniPoly") -> "UniPoly":
        var = self._check_var(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly(
            (self.coefficient(m) + other.coefficient(m) for m in range(n)), var
        )

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        return self + (-other)

    def __neg__(self) -> "UniPoly":
        return UniPoly((-c for c in self.coeffs), self.var)

    def __mul__(self, other: "UniPoly | Fraction | int") -> "UniPoly":
        if isinstance(other, (Fraction, int)):
            return self.scale(Fraction(other))
        var = self._check_var(other)
        if self.is_zero or other.is_zero:
            return UniPoly((), var)
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UniPoly(out, var)

    __rmul__ = __mul__

    def scale(self, factor: Fraction) -> "UniPoly":
        return UniPoly((c * factor for c in self.coeffs), self.var)

    def times_power(self, power: int) -> "UniPoly":
        """Multiply by ``var**power``."""
        if self.is_zero:
            return self
        return UniPoly((Fraction(0),) * power + self.coeffs, self.var)

    def __divmod__(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        if other.is_zero:
            raise ZeroDivisionError("division by the zero polynomial")
        var = self._check_var(other)
        rem = list(self.coeffs)
        dn = len(other.coeffs)
        if len(rem) < dn:
            return UniPoly((), var), self
        quot = [Fraction(0)] * (len(rem) - dn + 1)
        lead = other.coeffs[-1]
        for top in range(len(rem) - 1, dn - 2, -1):
            c = rem[top] / lead
            if c == 0:
                continue
            quot[top - dn + 1] = c
            for j in range(dn):
                rem[top - dn + 1 + j] -= c * other.coeffs[j]
        return UniPoly(quot, var), UniPoly(rem, var)

    def exact_div(self, other: "UniPoly") -> "UniPoly":
        """Divide exactly; raise `InexactDivisionError` on a nonzero remainder."""
        quot, rem = divmod(self, other)
        if not rem.is_zero:
            raise InexactDivisionError(f"{self} is not divisible by {other}")
        return quot

    def monic(self) -> "UniPoly":
        if self.is_zero:
            raise ValueError("zero polynomial cannot be made monic")
        return self.scale(1 / self.leading_coefficient)

    def derivative(self) -> "UniPoly":
        return UniPoly(
            (m * c for m, c in enumerate(self.coeffs) if m > 0), self.var
        )

    def eval(self, x: RationalLike) -> Fraction:
        """Exact Horner evaluation."""
        point = parse_rational(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * point + c
        return acc

    # -- presentation ----------------------------------------------------

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts: list[str] = []
        for m in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[m]
            if c == 0:
                continue
            if parts:
                sign = " - " if c < 0 else " + "
            else:
                sign = "-" if c < 0 else ""
            mag = abs(c)
            if m == 0:
                body = format_rational(mag)
            else:
                head = "" if mag == 1 else format_rational(mag) + "*"
                body = f"{head}{self.var}" + (f"^{m}" if m > 1 else "")
            parts.append(f"{sign}{body}")
        return "".join(parts)

    def __repr__(self) -> str:
        return f"UniPoly({self}, var={self.var!r})"


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic polynomial gcd by the Euclidean algorithm."""
    x, y = a, b
    while not y.is_zero:
        x, y = y, divmod(x, y)[1]
    return x.monic() if not x.is_zero else x


def content(p: UniPoly) -> Fraction:
    """Positive rational content: gcd of numerators over lcm of denominators."""
    if p.is_zero:
        return Fraction(0)
    num = 0
    den = 1
    for c in p.coeffs:
        num = math.gcd(num, abs(c.numerator))
        den = math.lcm(den, c.denominator)
    return Fraction(num, den)


def primitive_part(p: UniPoly) -> UniPoly:
    """Divide out the content, leaving integer coefficients with gcd 1."""
    if p.is_zero:
        return p
    return p.scale(1 / content(p))


def eval_poly(p: UniPoly, x: RationalLike) -> Fraction:
    return p.eval(x)


class BiPoly:
    """Sparse polynomial in the two gains: map ``(i, j) -> coeff of k1^i k2^j``."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[tuple[int, int], RationalLike] | None = None):
        cleaned: dict[tuple[int, int], Fraction] = {}
        if terms:
            for key, raw in terms.items():
                c = parse_rational(raw)
                if c != 0:
                    cleaned[(int(key[0]), int(key[1]))] = c
        self._terms = cleaned

    # -- constructors ----------------------------------------------------

    @classmethod
    def zero(cls) -> "BiPoly":
        return cls()

    @classmethod
    def constant(cls, c: RationalLike) -> "BiPoly":
        return cls({(0, 0): c})

    @classmethod
    def affine(cls, c0: RationalLike, c1: RationalLike, c2: RationalLike) -> "BiPoly":
        """The polynomial ``c0 + c1*k1 + c2*k2``."""
        return cls({(0, 0): c0, (1, 0): c1, (0, 1): c2})

    # -- queries -----------------------------------------------------------

    @property
    def terms(self) -> dict[tuple[int, int], Fraction]:
        return dict(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def total_degree(self) -> int | float:
        if not self._terms:
            return NEG_INFINITY
        return max(i + j for i, j in self._terms)

    def coefficient(self, i: int, j: int) -> Fraction:
        return self._terms.get((i, j), Fraction(0))

    def leading_term(self) -> tuple[tuple[int, int], Fraction]:
        """Lexicographically largest monomial and its coefficient."""
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        key = max(self._terms)
        return key, self._terms[key]

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other: "BiPoly") -> "BiPoly":
        out = dict(self._terms)
        for key, c in other._terms.items():
            out[key] = out.get(key, Fraction(0)) + c
        return BiPoly(out)

    def __sub__(self, other: "BiPoly") -> "BiPoly":
        return self + (-other)

    def __neg__(self) -> "BiPoly":
        return BiPoly({key: -c for key, c in self._terms.items()})

    def __mul__(self, other: "BiPoly | Fraction | int") -> "BiPoly":
        if isinstance(other, (Fraction, int)):
            return self.scale(Fraction(other))
        out: dict[tuple[int, int], Fraction] = {}
        for (i1, j1), a in self._terms.items():
            for (i2, j2), b in other._terms.items():
                key = (i1 + i2, j1 + j2)
                out[key] = out.get(key, Fraction(0)) + a * b
        return BiPoly(out)

    __rmul__ = __mul__

    def scale(self, factor: Fraction) -> "BiPoly":
        if factor == 0:
            return BiPoly()
        return BiPoly({key: c * factor for key, c in self._terms.items()})

    def eval(self, k1: RationalLike, k2: RationalLike) -> Fraction:
        x = parse_rational(k1)
        y = parse_rational(k2)
        total = Fraction(0)
        for (i, j), c in self._terms.items():
            total += c * x**i * y**j
        return total

    # -- comparison / presentation ------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BiPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts: list[str] = []
        for (i, j) in sorted(self._terms, reverse=True):
            c = self._terms[(i, j)]
            if parts:
                sign = " - " if c < 0 else " + "
            else:
                sign = "-" if c < 0 else ""
            mag = abs(c)
            names = []
            if i:
                names.append("k1" + (f"^{i}" if i > 1 else ""))
            if j:
                names.append("k2" + (f"^{j}" if j > 1 else ""))
            body = "*".join(names)
            if not body:
                body = format_rational(mag)
            elif mag != 1:
                body = format_rational(mag) + "*" + body
            parts.append(f"{sign}{body}")
        return "".join(parts)

    def __repr__(self) -> str:
        return f"BiPoly({self})"


def eval_bipoly(q: BiPoly, k: tuple[RationalLike, RationalLike]) -> Fraction:
    return q.eval(k[0], k[1])


@dataclass(frozen=True, slots=True)
class ProblemInstance:
    """A validated two-gain family ``p0(s) + k1*p1(s) + k2*p2(s)``, p0 monic."""

    p0: UniPoly
    p1: UniPoly
    p2: UniPoly

    @property
    def degree(self) -> int:
        return int(self.p0.degree)

    def poly_at(self, k1: RationalLike, k2: RationalLike) -> UniPoly:
        """The member polynomial at a fixed rational gain pair."""
        x = parse_rational(k1)
        y = parse_rational(k2)
        c0, c1, c2 = self.p0.coeffs, self.p1.coeffs, self.p2.coeffs
        out = list(c0)
        for m, c in enumerate(c1):
            if c:
                out[m] += c * x
        for m, c in enumerate(c2):
            if c:
                out[m] += c * y
        return UniPoly(out, self.p0.var)

    def coefficient_bipolys(self) -> list[BiPoly]:
        """Coefficients of powers of s, each as a polynomial in the gains."""
        n = len(self.p0.coeffs)
        return [
            BiPoly.affine(
                self.p0.coefficient(m), self.p1.coefficient(m), self.p2.coefficient(m)
            )
            for m in range(n)
        ]


def _linearly_dependent(p1: UniPoly, p2: UniPoly) -> bool:
    if p1.is_zero or p2.is_zero:
        return True
    if p1.degree != p2.degree:
        return False
    return p1 * p2.leading_coefficient == p2 * p1.leading_coefficient


def normalize_monic(p0: UniPoly, p1: UniPoly, p2: UniPoly) -> ProblemInstance:
    """Validate a polynomial triple and scale it so p0 is monic.

    The leading coefficient of the family must not depend on the gains,
    which forces ``deg p1 < deg p0`` and ``deg p2 < deg p0``; the two gain
    directions must not be rational multiples of one another.
    """
    if p0.is_zero or p0.degree < 1:
        raise InvalidInstanceError("p0 must have degree at least 1")
    if p1.degree >= p0.degree:
        raise LeadingCoefficientError(
            "k-dependent leading coefficient: deg p1 >= deg p0"
        )
    if p2.degree >= p0.degree:
        raise LeadingCoefficientError(
            "k-dependent leading coefficient: deg p2 >= deg p0"
        )
    if _linearly_dependent(p1, p2):
        raise DegenerateInstanceError(
            "degenerate instance: p1 and p2 are linearly dependent"
        )
    factor = 1 / p0.leading_coefficient
    return ProblemInstance(p0.scale(factor), p1.scale(factor), p2.scale(factor))


def split_real_imag(p: UniPoly) -> tuple[UniPoly, UniPoly]:
    """Split p along the imaginary axis into even and odd carrier polynomials.

    Returns ``(pR, pI)`` in the squared-frequency variable ``t`` with
    ``p(jw) = pR(w^2) + j*w*pI(w^2)``: for ``p = sum c_m s^m`` these are
    ``pR(t) = sum_r (-1)^r c_{2r} t^r`` and ``pI(t) = sum_r (-1)^r c_{2r+1} t^r``.
    """
    even = [(-1) ** r * c for r, c in enumerate(p.coeffs[0::2])]
    odd = [(-1) ** r * c for r, c in enumerate(p.coeffs[1::2])]
    return UniPoly(even, "t"), UniPoly(odd, "t")
