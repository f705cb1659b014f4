"""Bezoutian matrices, resultants and Hermite stability matrices.

The Bezoutian of two polynomials a, b in one variable u is the symmetric
matrix whose entries expand ``(a(u)b(v) - a(v)b(u)) / (v - u)`` on the
monomial basis ``u^(i-1) v^(j-1)``; its determinant is the resultant of
a and b (up to a sign fixed empirically against the Sylvester matrix).

The Hermite matrix of a monic polynomial p is built from the Bezoutian
of the even/odd frequency-axis carriers of p and is positive definite
exactly when p is Hurwitz stable.  Over a two-gain family the Hermite
matrix becomes a matrix pencil quadratic in the gains.

All determinants are computed exactly: rational matrices go through
fraction-free Bareiss elimination on an integer-cleared copy, matrices
with polynomial entries through minor expansion.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .polynomials import (
    BiPoly,
    ProblemInstance,
    UniPoly,
    parse_rational,
    split_real_imag,
    RationalLike,
)

Rows = Sequence[Sequence[Fraction]]


@dataclass(frozen=True, slots=True)
class SymMatrix:
    """Immutable square symmetric matrix of exact rationals."""

    entries: tuple[tuple[Fraction, ...], ...]

    def __init__(self, rows: Sequence[Sequence[RationalLike]]):
        table = tuple(tuple(parse_rational(x) for x in row) for row in rows)
        n = len(table)
        if any(len(row) != n for row in table):
            raise ValueError("matrix must be square")
        for i in range(n):
            for j in range(i):
                if table[i][j] != table[j][i]:
                    raise ValueError(f"matrix not symmetric at ({i}, {j})")
        object.__setattr__(self, "entries", table)

    @property
    def order(self) -> int:
        return len(self.entries)

    @classmethod
    def zero(cls, order: int) -> "SymMatrix":
        return cls([[0] * order for _ in range(order)])

    @classmethod
    def identity(cls, order: int) -> "SymMatrix":
        return cls([[1 if i == j else 0 for j in range(order)] for i in range(order)])

    def entry(self, i: int, j: int) -> Fraction:
        return self.entries[i][j]

    def __add__(self, other: "SymMatrix") -> "SymMatrix":
        if self.order != other.order:
            raise ValueError("order mismatch")
        return SymMatrix(
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.entries, other.entries)
            ]
        )

    def __neg__(self) -> "SymMatrix":
        return self.scale(Fraction(-1))

    def scale(self, factor: RationalLike) -> "SymMatrix":
        f = parse_rational(factor)
        return SymMatrix([[x * f for x in row] for row in self.entries])

    def leading_submatrix(self, k: int) -> "SymMatrix":
        return SymMatrix([row[:k] for row in self.entries[:k]])

    def __str__(self) -> str:
        return "[" + "; ".join(
            " ".join(str(x) for x in row) for row in self.entries
        ) + "]"


# ---------------------------------------------------------------------------
# exact determinants
# ---------------------------------------------------------------------------


def det_rational(matrix: "SymMatrix | Rows") -> Fraction:
    """Exact determinant of a square rational matrix.

    Small orders use direct formulas; larger ones clear denominators and
    run fraction-free Bareiss elimination over the integers to limit
    intermediate coefficient growth.
    """
    rows = matrix.entries if isinstance(matrix, SymMatrix) else matrix
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("matrix must be square")
    if n == 0:
        return Fraction(1)
    if n == 1:
        return Fraction(rows[0][0])
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    if n == 3:
        a, b, c = rows[0]
        d, e, f = rows[1]
        g, h, i = rows[2]
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)

    scale = 1
    for row in rows:
        for x in row:
            scale = math.lcm(scale, Fraction(x).denominator)
    m = [[int(x * scale) for x in row] for row in rows]

    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * pivot - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = pivot
    return Fraction(sign * m[n - 1][n - 1], scale**n)


def bareiss_pivots_positive(m: list[list[int]]) -> bool:
    """True iff all leading principal minors of an integer matrix are > 0.

    Fraction-free Bareiss elimination visits each leading principal minor
    as a pivot; any non-positive pivot decides the answer immediately.
    """
    n = len(m)
    prev = 1
    for k in range(n):
        pivot = m[k][k]
        if pivot <= 0:
            return False
        for i in range(k + 1, n):
            mik = m[i][k]
            row_i = m[i]
            row_k = m[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - mik * row_k[j]) // prev
        prev = pivot
    return True


def integer_matrix_form(
    matrices: Sequence[SymMatrix],
) -> tuple[int, tuple[tuple[tuple[int, ...], ...], ...]]:
    """Clear denominators uniformly: returns (positive factor, int tables)."""
    den = 1
    for mat in matrices:
        for row in mat.entries:
            for x in row:
                den = math.lcm(den, x.denominator)
    tables = tuple(
        tuple(
            tuple(x.numerator * (den // x.denominator) for x in row)
            for row in mat.entries
        )
        for mat in matrices
    )
    return den, tables


def det_cofactor(matrix: "SymMatrix | Rows") -> Fraction:
    """Determinant by recursive cofactor expansion (independent cross-check)."""
    rows = matrix.entries if isinstance(matrix, SymMatrix) else matrix
    n = len(rows)
    if n == 0:
        return Fraction(1)
    if n == 1:
        return Fraction(rows[0][0])
    total = Fraction(0)
    for j in range(n):
        if rows[0][j] == 0:
            continue
        minor = [
            [rows[i][c] for c in range(n) if c != j] for i in range(1, n)
        ]
        total += (-1) ** j * Fraction(rows[0][j]) * det_cofactor(minor)
    return total


def det_poly_matrix(rows: Sequence[Sequence], zero):
    """Determinant of a matrix over any exact commutative ring.

    Entries only need ``+``, ``-`` and ``*``.  Uses Laplace expansion with
    memoization over column subsets, which keeps the work polynomial in
    the matrix order for the small matrices handled here.
    """
    n = len(rows)
    if n == 0:
        raise ValueError("empty matrix")
    cache: dict[tuple[int, ...], object] = {}

    def minor(cols: tuple[int, ...]):
        if cols in cache:
            return cache[cols]
        r = n - len(cols)
        if len(cols) == 1:
            val = rows[r][cols[0]]
        else:
            val = zero
            for pos, col in enumerate(cols):
                entry = rows[r][col]
                rest = cols[:pos] + cols[pos + 1 :]
                term = entry * minor(rest)
                val = val + term if pos % 2 == 0 else val - term
        cache[cols] = val
        return val

    return minor(tuple(range(n)))


# ---------------------------------------------------------------------------
# Bezoutian and resultants
# ---------------------------------------------------------------------------


def bezout_table(a_coeffs: Sequence, b_coeffs: Sequence, size: int, zero) -> list[list]:
    """Bezoutian coefficient table over any exact ring.

    Expands ``(a(u)b(v) - a(v)b(u)) / (v - u)``: each coefficient pair
    ``p < q`` contributes ``a_p b_q - a_q b_p`` along the antidiagonal
    ``(p + r, q - 1 - r)`` for ``r = 0 .. q-p-1``.
    """
    table = [[zero for _ in range(size)] for _ in range(size)]
    top = min(max(len(a_coeffs), len(b_coeffs)), size + 1)

    def coeff(seq: Sequence, m: int):
        return seq[m] if m < len(seq) else zero

    for q in range(1, top):
        bq = coeff(b_coeffs, q)
        aq = coeff(a_coeffs, q)
        for p in range(q):
            d = coeff(a_coeffs, p) * bq - aq * coeff(b_coeffs, p)
            for r in range(q - p):
                table[p + r][q - 1 - r] = table[p + r][q - 1 - r] + d
    return table


def bezout_matrix(a: UniPoly, b: UniPoly, size: int) -> SymMatrix:
    """Bezoutian matrix of two polynomials at an explicit size.

    The size must be positive and at least the larger of the two degrees;
    rows and columns beyond the natural support are zero.
    """
    needed = max(int(a.degree) if not a.is_zero else 0, int(b.degree) if not b.is_zero else 0)
    if size < 1 or size < needed:
        raise ValueError(f"size {size} too small for degrees up to {needed}")
    table = bezout_table(a.coeffs, b.coeffs, size, Fraction(0))
    return SymMatrix(table)


def resultant_bezout(a: UniPoly, b: UniPoly) -> Fraction:
    """Determinant of the Bezoutian at size max(deg a, deg b).

    Zero exactly when a and b share a root.  For equal degrees it agrees
    with the Sylvester resultant up to a sign fixed by the test suite;
    only the absolute value and the zero locus are relied upon.
    """
    if a.is_zero and b.is_zero:
        raise ValueError("resultant of two zero polynomials is undefined")
    if a.is_zero or b.is_zero:
        return Fraction(0)
    size = max(int(a.degree), int(b.degree), 1)
    return det_rational(bezout_matrix(a, b, size))


def sylvester_matrix(a: UniPoly, b: UniPoly) -> list[list[Fraction]]:
    m = int(a.degree)
    n = int(b.degree)
    size = m + n
    rows: list[list[Fraction]] = []
    desc_a = list(reversed(a.coeffs))
    desc_b = list(reversed(b.coeffs))
    for i in range(n):
        rows.append([Fraction(0)] * i + desc_a + [Fraction(0)] * (size - i - m - 1))
    for i in range(m):
        rows.append([Fraction(0)] * i + desc_b + [Fraction(0)] * (size - i - n - 1))
    return rows


def resultant_sylvester(a: UniPoly, b: UniPoly) -> Fraction:
    """Classical Sylvester-matrix resultant (independent oracle)."""
    if a.is_zero and b.is_zero:
        raise ValueError("resultant of two zero polynomials is undefined")
    if a.is_zero or b.is_zero:
        return Fraction(0)
    if a.degree == 0 and b.degree == 0:
        return Fraction(1)
    return det_rational(sylvester_matrix(a, b))


# ---------------------------------------------------------------------------
# Hermite matrices
# ---------------------------------------------------------------------------


def _interleave(even: Sequence, odd: Sequence, zero) -> tuple[list, list]:
    """Coefficient lists of pR(w^2) and w*pI(w^2) in the frequency variable."""
    a: list = []
    for c in even:
        a.extend((c, zero))
    b: list = [zero]
    for c in odd:
        b.extend((c, zero))
    return a, b


def _parity_sign(i: int, j: int) -> int:
    # Basis-sign convention: entries whose index gap is 2 mod 4 are negated,
    # a congruence by diag(+,+,-,-,+,+,...) that leaves definiteness and the
    # determinant unchanged.
    return -1 if (i - j) % 4 == 2 else 1


def hermite_matrix(p: UniPoly) -> SymMatrix:
    """Hermite stability matrix of a nonconstant polynomial.

    The polynomial is normalized monic first.  The result is the n-by-n
    Bezoutian (n = deg p) of the even and odd frequency-axis carriers,
    presented in the classical sign convention (see `_parity_sign`).
    Positive definiteness is equivalent to Hurwitz stability.
    """
    if p.is_zero or p.degree < 1:
        raise ValueError("Hermite matrix requires a nonconstant polynomial")
    monic = p.monic()
    n = int(monic.degree)
    p_r, p_i = split_real_imag(monic)
    a, b = _interleave(p_r.coeffs, p_i.coeffs, Fraction(0))
    table = bezout_table(a, b, n, Fraction(0))
    for i in range(n):
        for j in range(n):
            if _parity_sign(i, j) < 0:
                table[i][j] = -table[i][j]
    return SymMatrix(table)


@dataclass(frozen=True, slots=True)
class QuadraticMatrixPencil:
    """Symmetric pencil ``sum H_{i1,i2} k1^i1 k2^i2`` with total degree <= 2."""

    h00: SymMatrix
    h10: SymMatrix
    h01: SymMatrix
    h20: SymMatrix
    h11: SymMatrix
    h02: SymMatrix
    _ints: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        orders = {m.order for m in self.matrices().values()}
        if len(orders) != 1:
            raise ValueError("pencil coefficient matrices must share one order")
        object.__setattr__(
            self,
            "_ints",
            integer_matrix_form(
                (self.h00, self.h10, self.h01, self.h20, self.h11, self.h02)
            ),
        )

    @property
    def order(self) -> int:
        return self.h00.order

    def matrices(self) -> dict[tuple[int, int], SymMatrix]:
        return {
            (0, 0): self.h00,
            (1, 0): self.h10,
            (0, 1): self.h01,
            (2, 0): self.h20,
            (1, 1): self.h11,
            (0, 2): self.h02,
        }

    def eval(self, k1: RationalLike, k2: RationalLike) -> SymMatrix:
        x = parse_rational(k1)
        y = parse_rational(k2)
        weighted = (
            (Fraction(1), self.h00),
            (x, self.h10),
            (y, self.h01),
            (x * x, self.h20),
            (x * y, self.h11),
            (y * y, self.h02),
        )
        n = self.order
        rows = [[Fraction(0)] * n for _ in range(n)]
        for w, mat in weighted:
            if w == 0:
                continue
            for i in range(n):
                row = mat.entries[i]
                tgt = rows[i]
                for j in range(n):
                    if row[j]:
                        tgt[j] += row[j] * w
        return SymMatrix(rows)

    def pd_at(self, k1: RationalLike, k2: RationalLike) -> bool:
        """Exact positive definiteness at a rational point, integer fast path.

        A positive integer multiple of the evaluated matrix is assembled
        from the denominator-cleared coefficient tables; positive scaling
        preserves the signs of all leading principal minors.
        """
        x = parse_rational(k1)
        y = parse_rational(k2)
        a, d1 = x.numerator, x.denominator
        b, d2 = y.numerator, y.denominator
        weights = (
            d1 * d1 * d2 * d2,
            a * d1 * d2 * d2,
            b * d1 * d1 * d2,
            a * a * d2 * d2,
            a * b * d1 * d2,
            b * b * d1 * d1,
        )
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
        """Entries of the pencil as explicit polynomials in the gains."""
        n = self.order
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                row.append(
                    BiPoly(
                        {
                            key: mat.entries[i][j]
                            for key, mat in self.matrices().items()
                        }
                    )
                )
            out.append(row)
        return out

    def det_bipoly(self) -> BiPoly:
        return det_poly_matrix(self.entry_bipolys(), BiPoly.zero())


def hermite_pencil(inst: ProblemInstance) -> QuadraticMatrixPencil:
    """Symbolic Hermite matrix of a two-gain family, split by gain monomial.

    Evaluating the pencil at any rational gain pair agrees entrywise with
    `hermite_matrix` of the corresponding member polynomial.
    """
    coeffs = inst.coefficient_bipolys()
    even = [c.scale(Fraction((-1) ** r)) for r, c in enumerate(coeffs[0::2])]
    odd = [c.scale(Fraction((-1) ** r)) for r, c in enumerate(coeffs[1::2])]
    a, b = _interleave(even, odd, BiPoly.zero())
    n = inst.degree
    table = bezout_table(a, b, n, BiPoly.zero())

    slots = {
        (0, 0): [],
        (1, 0): [],
        (0, 1): [],
        (2, 0): [],
        (1, 1): [],
        (0, 2): [],
    }
    for key in slots:
        slots[key] = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            entry: BiPoly = table[i][j]
            sign = _parity_sign(i, j)
            for key, c in entry.terms.items():
                if key not in slots:
                    raise ValueError(
                        f"entry ({i},{j}) has unexpected gain monomial {key}"
                    )
                slots[key][i][j] = c if sign > 0 else -c
    return QuadraticMatrixPencil(
        h00=SymMatrix(slots[(0, 0)]),
        h10=SymMatrix(slots[(1, 0)]),
        h01=SymMatrix(slots[(0, 1)]),
        h20=SymMatrix(slots[(2, 0)]),
        h11=SymMatrix(slots[(1, 1)]),
        h02=SymMatrix(slots[(0, 2)]),
    )
