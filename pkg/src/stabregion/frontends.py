"""Build two-gain polynomial families from control-design front ends.

Two standard sources of the family ``p0 + k1*p1 + k2*p2``:

* a proportional-integral loop around a rational plant, where the two
  gains enter the closed-loop characteristic polynomial affinely;
* static output feedback with a 1x2 (or 2x1) gain matrix, where the
  feedback term has rank one, so the characteristic polynomial expands
  exactly through the rank-one determinant update
  ``det(M - u v^T) = det M - v^T adj(M) u``.

The adjugate of ``s*I - A`` is produced by the Faddeev-LeVerrier
recurrence in exact rational arithmetic and verified symbolically before
use.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .bezout import det_poly_matrix
from .polynomials import (
    LeadingCoefficientError,
    ProblemInstance,
    UniPoly,
    normalize_monic,
    parse_rational,
    RationalLike,
)

Matrix = tuple[tuple[Fraction, ...], ...]

FORM_INTEGRAL_FIRST = "k1/s+k2"
FORM_GAIN_FIRST = "k1+k2/s"


def _to_matrix(rows: Sequence[Sequence[RationalLike]]) -> Matrix:
    table = tuple(tuple(parse_rational(x) for x in row) for row in rows)
    if not table or any(len(row) != len(table[0]) for row in table):
        raise ValueError("matrix rows must be nonempty and of equal length")
    return table


def _mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if len(a[0]) != len(b):
        raise ValueError("dimension mismatch in matrix product")
    return tuple(
        tuple(
            sum((a[i][k] * b[k][j] for k in range(len(b))), Fraction(0))
            for j in range(len(b[0]))
        )
        for i in range(len(a))
    )


def _mat_add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def _mat_scale(a: Matrix, c: Fraction) -> Matrix:
    return tuple(tuple(x * c for x in row) for row in a)


def _identity(n: int) -> Matrix:
    return tuple(
        tuple(Fraction(1) if i == j else Fraction(0) for j in range(n))
        for i in range(n)
    )


def _trace(a: Matrix) -> Fraction:
    return sum((a[i][i] for i in range(len(a))), Fraction(0))


@dataclass(frozen=True, slots=True)
class PiPlant:
    """Open-loop plant b(s)/a(s) closed by a two-gain PI compensator.

    ``form`` selects which gain multiplies the integral action:
    ``"k1/s+k2"`` or ``"k1+k2/s"``.
    """

    a: UniPoly
    b: UniPoly
    form: str = FORM_INTEGRAL_FIRST

    def __post_init__(self):
        if self.a.is_zero:
            raise ValueError("plant denominator must be nonzero")
        if self.b.degree > self.a.degree:
            raise ValueError("plant must be proper: deg b <= deg a")
        if self.form not in (FORM_INTEGRAL_FIRST, FORM_GAIN_FIRST):
            raise ValueError(f"unknown compensator form {self.form!r}")


def pi_frontend(plant: PiPlant) -> ProblemInstance:
    """Closed-loop family of a PI loop: ``s*a(s) + (ki + kp*s)*b(s)``.

    With form ``"k1/s+k2"`` the triple is ``(s*a, b, s*b)``; with
    ``"k1+k2/s"`` it is ``(s*a, s*b, b)``.  Normalization may reject the
    result (for example a non-strictly-proper plant makes the leading
    coefficient gain-dependent).
    """
    p0 = plant.a.times_power(1)
    sb = plant.b.times_power(1)
    if plant.form == FORM_INTEGRAL_FIRST:
        return normalize_monic(p0, plant.b, sb)
    return normalize_monic(p0, sb, plant.b)


def faddeev_leverrier(
    a_rows: Sequence[Sequence[RationalLike]],
) -> tuple[UniPoly, tuple[Matrix, ...]]:
    """Characteristic polynomial and adjugate of ``s*I - A``.

    Returns the monic characteristic polynomial and matrices N_0..N_{n-1}
    with ``adj(s*I - A) = sum N_r s^r``.  The defining identity
    ``(s*I - A) adj(s*I - A) = charpoly * I`` is re-verified symbolically
    before returning.
    """
    a = _to_matrix(a_rows)
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("characteristic polynomial requires a square matrix")

    coeffs_desc = [Fraction(1)]  # charpoly, highest power first
    m_current = _identity(n)
    adj_desc = [m_current]  # adjugate coefficient of s^(n-1) first
    for k in range(1, n + 1):
        am = _mat_mul(a, m_current)
        c = -_trace(am) / k
        coeffs_desc.append(c)
        if k < n:
            m_current = _mat_add(am, _mat_scale(_identity(n), c))
            adj_desc.append(m_current)

    charpoly = UniPoly(list(reversed(coeffs_desc)), "s")
    adjugate = tuple(reversed(adj_desc))  # ascending powers of s

    # (s*I - A) * sum N_r s^r must equal charpoly * I, coefficient by
    # coefficient: N_{m-1} - A N_m = c_m I (with N out of range = 0).
    zero = tuple(tuple(Fraction(0) for _ in range(n)) for _ in range(n))
    for m in range(n + 1):
        below = adjugate[m - 1] if 1 <= m <= n else zero
        here = adjugate[m] if m < n else zero
        got = _mat_add(below, _mat_scale(_mat_mul(a, here), Fraction(-1)))
        want = _mat_scale(_identity(n), charpoly.coefficient(m))
        if got != want:
            raise ArithmeticError("adjugate identity failed; recurrence bug")
    return charpoly, adjugate


@dataclass(frozen=True, slots=True)
class SofTriple:
    """Static output feedback data (A, B, C) with a two-entry gain matrix."""

    a: Matrix
    b: Matrix
    c: Matrix

    def __init__(
        self,
        a: Sequence[Sequence[RationalLike]],
        b: Sequence[Sequence[RationalLike]],
        c: Sequence[Sequence[RationalLike]],
    ):
        am = _to_matrix(a)
        bm = _to_matrix(b)
        cm = _to_matrix(c)
        n = len(am)
        if any(len(row) != n for row in am):
            raise ValueError("state matrix must be square")
        if len(bm) != n:
            raise ValueError("input matrix must have one row per state")
        if len(cm[0]) != n:
            raise ValueError("output matrix must have one column per state")
        m = len(bm[0])
        p = len(cm)
        if m * p != 2:
            raise ValueError(f"gain matrix must have exactly two entries, got {m}x{p}")
        object.__setattr__(self, "a", am)
        object.__setattr__(self, "b", bm)
        object.__setattr__(self, "c", cm)

    @property
    def inputs(self) -> int:
        return len(self.b[0])

    @property
    def outputs(self) -> int:
        return len(self.c)

    @property
    def states(self) -> int:
        return len(self.a)


def _poly_row_times_matrix_times_col(
    row: Sequence[Fraction], adjugate: Sequence[Matrix], col: Sequence[Fraction]
) -> UniPoly:
    n = len(row)
    coeffs = []
    for mat in adjugate:
        acc = Fraction(0)
        for i in range(n):
            if row[i] == 0:
                continue
            acc += row[i] * sum(
                (mat[i][j] * col[j] for j in range(n)), Fraction(0)
            )
        coeffs.append(acc)
    return UniPoly(coeffs, "s")


def _closed_loop_determinant(triple: SofTriple, k1: Fraction, k2: Fraction) -> UniPoly:
    # det(s*I - A - B K C) computed directly over polynomial entries.
    n = triple.states
    if triple.inputs == 1:
        gain = ((k1, k2),)
    else:
        gain = ((k1,), (k2,))
    bkc = _mat_mul(_mat_mul(triple.b, gain), triple.c)
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            const = -triple.a[i][j] - bkc[i][j]
            lin = Fraction(1) if i == j else Fraction(0)
            row.append(UniPoly((const, lin), "s"))
        rows.append(row)
    return det_poly_matrix(rows, UniPoly((), "s"))


def sof_frontend(triple: SofTriple, check_points: int = 5) -> ProblemInstance:
    """Two-gain family of ``det(s*I - A - B K C)`` for a rank-one gain.

    With one input and two outputs (gain ``[k1 k2]``) the gain direction
    polynomials are ``p_i = -C_i adj(s*I - A) B`` for the two rows of C;
    with two inputs and one output the roles of B's columns and C swap.
    The expansion is cross-checked against the exact determinant of the
    closed-loop matrix at `check_points` pseudorandom rational gains.
    """
    charpoly, adjugate = faddeev_leverrier(triple.a)
    n = triple.states

    if triple.inputs == 1:
        col = tuple(triple.b[i][0] for i in range(n))
        p1 = -_poly_row_times_matrix_times_col(triple.c[0], adjugate, col)
        p2 = -_poly_row_times_matrix_times_col(triple.c[1], adjugate, col)
    else:
        row = triple.c[0]
        col1 = tuple(triple.b[i][0] for i in range(n))
        col2 = tuple(triple.b[i][1] for i in range(n))
        p1 = -_poly_row_times_matrix_times_col(row, adjugate, col1)
        p2 = -_poly_row_times_matrix_times_col(row, adjugate, col2)

    rng = random.Random(20_25)
    for _ in range(check_points):
        k1 = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
        k2 = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
        expanded = charpoly + p1 * k1 + p2 * k2
        direct = _closed_loop_determinant(triple, k1, k2)
        if expanded != direct:
            raise ArithmeticError(
                "rank-one determinant expansion disagrees with the exact "
                f"closed-loop determinant at k=({k1}, {k2})"
            )
    return normalize_monic(charpoly, p1, p2)
