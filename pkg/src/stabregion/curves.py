"""Boundary-curve decomposition and affine determinantal pencils.

The gain pairs at which the family acquires an imaginary-axis root form
a plane curve.  It always splits into a straight line (from the constant
coefficient of the family) and a rational curve swept by solving the two
frequency-axis equations for the gains.  From the rational sweep we build
a symmetric pencil that is affine in the gains and whose determinant
vanishes exactly on the swept curve; stacking the line on top of it as a
diagonal block gives a certificate pencil for the whole boundary.

The determinant of the Hermite pencil factors as (line) times (swept
curve defining polynomial) squared; `verify_factorization` checks this as
an exact bivariate polynomial identity on every run.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .bezout import (
    QuadraticMatrixPencil,
    SymMatrix,
    bareiss_pivots_positive,
    bezout_table,
    det_poly_matrix,
    hermite_pencil,
    integer_matrix_form,
)
from .polynomials import (
    BiPoly,
    DegenerateInstanceError,
    ProblemInstance,
    UniPoly,
    parse_rational,
    split_real_imag,
    RationalLike,
)


@dataclass(frozen=True, slots=True)
class AffineScalar:
    """The affine form ``c0 + c1*k1 + c2*k2``."""

    c0: Fraction
    c1: Fraction
    c2: Fraction

    def __init__(self, c0: RationalLike, c1: RationalLike, c2: RationalLike):
        object.__setattr__(self, "c0", parse_rational(c0))
        object.__setattr__(self, "c1", parse_rational(c1))
        object.__setattr__(self, "c2", parse_rational(c2))

    @property
    def is_zero(self) -> bool:
        return self.c0 == 0 and self.c1 == 0 and self.c2 == 0

    @property
    def is_constant(self) -> bool:
        return self.c1 == 0 and self.c2 == 0

    def eval(self, k1: RationalLike, k2: RationalLike) -> Fraction:
        return self.c0 + self.c1 * parse_rational(k1) + self.c2 * parse_rational(k2)

    def __neg__(self) -> "AffineScalar":
        return AffineScalar(-self.c0, -self.c1, -self.c2)

    def to_bipoly(self) -> BiPoly:
        return BiPoly.affine(self.c0, self.c1, self.c2)

    def __str__(self) -> str:
        return str(self.to_bipoly())


@dataclass(frozen=True, slots=True)
class AffinePencil:
    """Symmetric matrix pencil ``F0 + k1*F1 + k2*F2``."""

    f0: SymMatrix
    f1: SymMatrix
    f2: SymMatrix
    _ints: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not (self.f0.order == self.f1.order == self.f2.order):
            raise ValueError("pencil coefficient matrices must share one order")
        object.__setattr__(
            self, "_ints", integer_matrix_form((self.f0, self.f1, self.f2))
        )

    @property
    def order(self) -> int:
        return self.f0.order

    def eval(self, k1: RationalLike, k2: RationalLike) -> SymMatrix:
        x = parse_rational(k1)
        y = parse_rational(k2)
        n = self.order
        rows = [
            [
                self.f0.entries[i][j]
                + self.f1.entries[i][j] * x
                + self.f2.entries[i][j] * y
                for j in range(n)
            ]
            for i in range(n)
        ]
        return SymMatrix(rows)

    def __neg__(self) -> "AffinePencil":
        return AffinePencil(-self.f0, -self.f1, -self.f2)

    def pd_at(self, k1: RationalLike, k2: RationalLike) -> bool:
        """Exact positive definiteness at a rational point (integer fast path)."""
        x = parse_rational(k1)
        y = parse_rational(k2)
        a, d1 = x.numerator, x.denominator
        b, d2 = y.numerator, y.denominator
        weights = (d1 * d2, a * d2, b * d1)
        tables = self._ints[1]
        n = self.order
        m = [
            [
                sum(w * table[i][j] for w, table in zip(weights, tables) if w)
                for j in range(n)
            ]
            for i in range(n)
        ]
        return bareiss_pivots_positive(m)

    def entry_bipolys(self) -> list[list[BiPoly]]:
        n = self.order
        return [
            [
                BiPoly(
                    {
                        (0, 0): self.f0.entries[i][j],
                        (1, 0): self.f1.entries[i][j],
                        (0, 1): self.f2.entries[i][j],
                    }
                )
                for j in range(n)
            ]
            for i in range(n)
        ]

    def det_bipoly(self) -> BiPoly:
        return det_poly_matrix(self.entry_bipolys(), BiPoly.zero())


@dataclass(frozen=True, slots=True)
class CurveData:
    """Normalized rational sweep of the non-line boundary component.

    ``q0`` is the common denominator, ``(q1/q0, q2/q0)`` the swept gain
    pair as functions of the squared frequency; ``scaling`` is the
    positive rational by which the raw triple was multiplied to reach
    integer coefficients of overall content one.
    """

    q0: UniPoly
    q1: UniPoly
    q2: UniPoly
    line: AffineScalar
    pencil: AffinePencil
    scaling: Fraction

    def point_at(self, t: RationalLike) -> tuple[Fraction, Fraction]:
        """Exact swept point; the denominator must not vanish at t."""
        value = parse_rational(t)
        den = self.q0.eval(value)
        if den == 0:
            raise ZeroDivisionError(f"sweep denominator vanishes at t={value}")
        return (self.q1.eval(value) / den, self.q2.eval(value) / den)


def boundary_line(inst: ProblemInstance) -> AffineScalar:
    """Affine line component of the boundary curve.

    The coefficients are the constant terms of the three defining
    polynomials, rescaled by the least common denominator so the printed
    form is integer (the content is deliberately not reduced).
    """
    coeffs = (
        inst.p0.constant_term,
        inst.p1.constant_term,
        inst.p2.constant_term,
    )
    den = math.lcm(*(c.denominator for c in coeffs))
    return AffineScalar(*(c * den for c in coeffs))


def _raw_parametrization(inst: ProblemInstance) -> tuple[UniPoly, UniPoly, UniPoly]:
    p0r, p0i = split_real_imag(inst.p0)
    p1r, p1i = split_real_imag(inst.p1)
    p2r, p2i = split_real_imag(inst.p2)
    q0 = p1i * p2r - p1r * p2i
    q1 = p2i * p0r - p2r * p0i
    q2 = p1r * p0i - p1i * p0r
    return q0, q1, q2


def _normalization_factor(polys: Sequence[UniPoly]) -> Fraction:
    """Least positive rational making all coefficients integers, content 1."""
    num = 0
    den = 1
    for p in polys:
        for c in p.coeffs:
            num = math.gcd(num, abs(c.numerator))
            den = math.lcm(den, c.denominator)
    if num == 0:
        return Fraction(1)
    return Fraction(den, num)


def rational_parametrization(
    inst: ProblemInstance,
) -> tuple[UniPoly, UniPoly, UniPoly]:
    """Rational sweep (q0, q1, q2) of the non-line boundary component.

    The swept gains are ``k1 = q1/q0`` and ``k2 = q2/q0`` as functions of
    the squared frequency.  Common polynomial factors are kept; the only
    normalization is the uniform scaling to integer coefficients with
    overall content one.
    """
    q0, q1, q2 = _raw_parametrization(inst)
    if q0.is_zero:
        raise DegenerateInstanceError(
            "degenerate instance: sweep denominator vanishes identically"
        )
    factor = _normalization_factor((q0, q1, q2))
    return q0.scale(factor), q1.scale(factor), q2.scale(factor)


def parametrization_scaling(inst: ProblemInstance) -> Fraction:
    """The normalization factor applied by `rational_parametrization`."""
    q0, q1, q2 = _raw_parametrization(inst)
    if q0.is_zero:
        raise DegenerateInstanceError(
            "degenerate instance: sweep denominator vanishes identically"
        )
    return _normalization_factor((q0, q1, q2))


def curve_pencil(q0: UniPoly, q1: UniPoly, q2: UniPoly) -> AffinePencil:
    """Symmetric affine pencil whose determinant vanishes on the sweep.

    Computed directly as the Bezoutian of ``q1 - k1*q0`` and
    ``q2 - k2*q0`` in the sweep variable.  (Expanding that Bezoutian by
    bilinearity gives the mixed term with a minus sign on the k2 part;
    computing it directly leaves no sign ambiguity.)  The quadratic gain
    terms cancel because the Bezoutian of q0 with itself vanishes; a
    residual quadratic term would mean a broken invariant upstream.
    """
    if q0.is_zero:
        raise DegenerateInstanceError("sweep denominator is identically zero")
    degrees = [int(q.degree) for q in (q0, q1, q2) if not q.is_zero]
    size = max(degrees)
    if size < 1:
        raise DegenerateInstanceError("sweep has no frequency dependence")

    a = [
        BiPoly({(0, 0): q1.coefficient(m), (1, 0): -q0.coefficient(m)})
        for m in range(size + 1)
    ]
    b = [
        BiPoly({(0, 0): q2.coefficient(m), (0, 1): -q0.coefficient(m)})
        for m in range(size + 1)
    ]
    table = bezout_table(a, b, size, BiPoly.zero())

    mats = {key: [[Fraction(0)] * size for _ in range(size)] for key in ((0, 0), (1, 0), (0, 1))}
    for i in range(size):
        for j in range(size):
            for key, c in table[i][j].terms.items():
                if key not in mats:
                    raise ValueError(
                        f"pencil entry ({i},{j}) is not affine: monomial {key}"
                    )
                mats[key][i][j] = c
    return AffinePencil(
        f0=SymMatrix(mats[(0, 0)]),
        f1=SymMatrix(mats[(1, 0)]),
        f2=SymMatrix(mats[(0, 1)]),
    )


def build_curve_data(inst: ProblemInstance) -> CurveData:
    """Compute the full boundary decomposition for an instance."""
    q0, q1, q2 = rational_parametrization(inst)
    return CurveData(
        q0=q0,
        q1=q1,
        q2=q2,
        line=boundary_line(inst),
        pencil=curve_pencil(q0, q1, q2),
        scaling=parametrization_scaling(inst),
    )


@dataclass(frozen=True, slots=True)
class FactorizationReport:
    """Witness for the exact identity alpha * det H = beta * line * (det G)^2."""

    alpha: Fraction
    beta: Fraction
    g_scale: Fraction | None
    trivial: bool = False

    def __str__(self) -> str:
        if self.trivial:
            return "factorization identity trivial (both sides zero)"
        return (
            f"{self.alpha} * det H = {self.beta} * l * (det G)^2, "
            f"det G = {self.g_scale} * g"
        )


class FactorizationMismatchError(ArithmeticError):
    """The determinant identity failed, indicating a convention bug."""


def _rational_sqrt(value: Fraction) -> Fraction | None:
    if value < 0:
        return None
    num = math.isqrt(value.numerator)
    den = math.isqrt(value.denominator)
    if num * num == value.numerator and den * den == value.denominator:
        return Fraction(num, den)
    return None


def verify_factorization(
    inst: ProblemInstance,
    line: AffineScalar,
    pencil: AffinePencil,
    hermite: QuadraticMatrixPencil | None = None,
) -> FactorizationReport:
    """Check alpha * det H(k) = beta * l(k) * det G(k)^2 exactly.

    Returns the proportionality constants and the implied rational factor
    between det G and the square-free curve polynomial.  When the line is
    a nonzero constant the identity degenerates to det H proportional to
    det G squared, which the same check covers.
    """
    if hermite is None:
        hermite = hermite_pencil(inst)
    h = hermite.det_bipoly()
    d = pencil.det_bipoly()
    rhs = line.to_bipoly() * d * d

    if h.is_zero and rhs.is_zero:
        return FactorizationReport(Fraction(1), Fraction(1), None, trivial=True)
    if h.is_zero or rhs.is_zero:
        raise FactorizationMismatchError(
            "determinant identity fails: exactly one side is identically zero"
        )
    key_h, lead_h = h.leading_term()
    key_r, lead_r = rhs.leading_term()
    if key_h != key_r:
        raise FactorizationMismatchError(
            f"determinant identity fails: leading monomials {key_h} vs {key_r}"
        )
    alpha = lead_r
    beta = lead_h
    if not (h.scale(alpha) - rhs.scale(beta)).is_zero:
        raise FactorizationMismatchError("determinant identity fails entrywise")
    # Present (alpha, beta) as coprime integers with beta positive.
    common = Fraction(
        math.gcd(alpha.numerator, beta.numerator),
        math.lcm(alpha.denominator, beta.denominator),
    )
    alpha, beta = alpha / common, beta / common
    if beta < 0:
        alpha, beta = -alpha, -beta
    return FactorizationReport(alpha, beta, _rational_sqrt(alpha / beta))


@dataclass(frozen=True, slots=True)
class CertificateAssembly:
    """Certificate pencil with its per-block sign-normalization record."""

    pencil: AffinePencil
    seed: tuple[Fraction, Fraction]
    line_dropped: bool
    line_negated: bool
    curve_negated: bool
    pd_at_seed: bool
    notes: tuple[str, ...] = ()

    @property
    def order(self) -> int:
        return self.pencil.order


def _block_diag(line: AffineScalar | None, pencil: AffinePencil) -> AffinePencil:
    if line is None:
        return pencil
    n = pencil.order + 1

    def embed(scalar: Fraction, mat: SymMatrix) -> SymMatrix:
        rows = [[Fraction(0)] * n for _ in range(n)]
        rows[0][0] = scalar
        for i in range(mat.order):
            for j in range(mat.order):
                rows[i + 1][j + 1] = mat.entries[i][j]
        return SymMatrix(rows)

    return AffinePencil(
        f0=embed(line.c0, pencil.f0),
        f1=embed(line.c1, pencil.f1),
        f2=embed(line.c2, pencil.f2),
    )


def assemble_certificate_pencil(
    inst: ProblemInstance,
    line: AffineScalar,
    pencil: AffinePencil,
    seed: Sequence[RationalLike],
) -> CertificateAssembly:
    """Assemble the block-diagonal certificate pencil, sign-normalized at a seed.

    The seed must be a stable point.  Each block (the scalar line block
    and the curve block) is independently negated when it is negative
    definite at the seed; negation leaves the determinant locus unchanged.
    A constant nonzero line contributes no boundary and is dropped from
    the pencil; a line that is identically zero means the whole plane is
    boundary and is rejected.  If a block is indefinite or singular at the
    seed the assembly still succeeds but is flagged as not positive
    definite there.
    """
    from .certify import STABLE, is_positive_definite, routh_stable

    k1 = parse_rational(seed[0])
    k2 = parse_rational(seed[1])
    if routh_stable(inst.poly_at(k1, k2)) != STABLE:
        raise ValueError(f"assembly seed ({k1}, {k2}) is not a stable point")
    if line.is_zero:
        raise DegenerateInstanceError(
            "line component degenerate: boundary line is the whole plane"
        )

    notes: list[str] = []
    pd_at_seed = True

    curve_block = pencil
    curve_negated = False
    at_seed = pencil.eval(k1, k2)
    if is_positive_definite(at_seed):
        pass
    elif is_positive_definite(-at_seed):
        curve_block = -pencil
        curve_negated = True
        notes.append("curve block negated (negative definite at seed)")
    else:
        pd_at_seed = False
        notes.append("curve block indefinite or singular at seed")

    line_block: AffineScalar | None = line
    line_dropped = False
    line_negated = False
    if line.is_constant:
        line_block = None
        line_dropped = True
        sign = "positive" if line.c0 > 0 else "negative"
        notes.append(f"constant line block {line.c0} dropped ({sign})")
        if line.c0 < 0:
            line_negated = True
    else:
        value = line.eval(k1, k2)
        if value < 0:
            line_block = -line
            line_negated = True
            notes.append("line block negated (negative at seed)")
        elif value == 0:
            pd_at_seed = False
            notes.append("line block vanishes at seed")

    assembled = _block_diag(line_block, curve_block)
    return CertificateAssembly(
        pencil=assembled,
        seed=(k1, k2),
        line_dropped=line_dropped,
        line_negated=line_negated,
        curve_negated=curve_negated,
        pd_at_seed=pd_at_seed,
        notes=tuple(notes),
    )
