"""Exact stability oracles and LMI-region certification.

`routh_stable` is the ground-truth oracle: an exact rational Routh array
whose first column decides Hurwitz stability with no epsilon heuristics.
A zero anywhere in the first column is reported as "boundary" (a root on
the imaginary axis or a sign-symmetric root pair); the open stability
region never contains such points.

`is_positive_definite` applies Sylvester's criterion with exact leading
principal minors, keeping the certification path free of floating point.

`certify_lmi_region` combines the two: a stable seed at which both the
Hermite matrix and the assembled certificate pencil are positive definite
certifies the seed's connected component as a convex region contained in
the stability region; sampled cross-validation can instead exhibit a
witness that the pencil's feasible set leaks outside.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .bezout import QuadraticMatrixPencil, SymMatrix, det_rational, hermite_matrix
from .curves import AffinePencil, CertificateAssembly
from .polynomials import ProblemInstance, UniPoly, parse_rational, RationalLike

STABLE = "stable"
UNSTABLE = "unstable"
BOUNDARY = "boundary"

CERTIFIED_SUBSET = "certified-lmi-subset"
CERTIFIED_NO_INCLUSION = "certified-no-inclusion"
NOT_PD_AT_SEED = "not-pd-at-seed"
DEGENERATE = "degenerate"

KPoint = tuple[Fraction, Fraction]


def _as_point(k: Sequence[RationalLike]) -> KPoint:
    return (parse_rational(k[0]), parse_rational(k[1]))


def is_positive_definite(matrix: SymMatrix) -> bool:
    """Sylvester criterion: all leading principal minors strictly positive.

    One fraction-free Bareiss pass over a denominator-cleared copy of the
    matrix visits every leading principal minor as a pivot (clearing by a
    positive factor rescales each minor positively, so the signs tested
    are exact).
    """
    if not isinstance(matrix, SymMatrix):
        raise TypeError("positive definiteness is tested on symmetric matrices")
    n = matrix.order
    den = 1
    for row in matrix.entries:
        for x in row:
            den = math.lcm(den, x.denominator)
    m = [[int(x * den) for x in row] for row in matrix.entries]
    prev = 1
    for k in range(n):
        pivot = m[k][k]
        if pivot <= 0:
            return False
        for i in range(k + 1, n):
            mik = m[i][k]
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * pivot - mik * m[k][j]) // prev
        prev = pivot
    return True


def _sign(x: int) -> int:
    return (x > 0) - (x < 0)


def _routh_column_signs(p: UniPoly) -> list[int] | None:
    """Signs of the Routh first column, or None if a division pivot vanishes.

    The array is built fraction-free: each stored row is a positive
    integer multiple of the true row times a tracked sign, so the
    reported signs (and zero positions) are exactly those of the true
    rational Routh array.  Rows are reduced to primitive integer vectors
    to cap coefficient growth.
    """
    monic = p.monic()
    den = 1
    for c in monic.coeffs:
        den = math.lcm(den, c.denominator)
    desc = [int(c * den) for c in reversed(monic.coeffs)]
    row1 = desc[0::2]
    row2 = desc[1::2]
    signs = [1]  # leading coefficient is positive after monic scaling

    def primitive(row: list[int]) -> list[int]:
        g = 0
        for v in row:
            g = math.gcd(g, v)
        if g > 1:
            return [v // g for v in row]
        return row

    prev, cur = row1, primitive(row2)
    sig_prev, sig_cur = 1, 1
    while cur:
        pivot = cur[0]
        signs.append(sig_cur * _sign(pivot))
        if len(prev) <= 1:
            break
        if pivot == 0:
            return None
        nxt = [
            pivot * prev[j + 1] - prev[0] * (cur[j + 1] if j + 1 < len(cur) else 0)
            for j in range(len(prev) - 1)
        ]
        sig_next = sig_prev * _sign(pivot)
        prev, cur = cur, primitive(nxt)
        sig_prev, sig_cur = sig_cur, sig_next
    return signs


def routh_stable(p: UniPoly) -> str:
    """Exact Hurwitz test: "stable", "unstable" or "boundary".

    Boundary means some exact Routh pivot vanished, which happens exactly
    when the polynomial has a root on the imaginary axis or a root pair
    symmetric about it; such polynomials are outside the open stable set.
    """
    if p.is_zero or p.degree < 1:
        raise ValueError("stability test requires a nonconstant polynomial")
    signs = _routh_column_signs(p)
    if signs is None or any(s == 0 for s in signs):
        return BOUNDARY
    return STABLE if all(s > 0 for s in signs) else UNSTABLE


def unstable_root_count(p: UniPoly) -> int | None:
    """Number of open right-half-plane roots, or None in degenerate cases.

    In the regular case the count equals the number of sign changes in the
    Routh first column; an exact zero pivot makes the count undefined here.
    """
    if p.is_zero or p.degree < 1:
        raise ValueError("root counting requires a nonconstant polynomial")
    signs = _routh_column_signs(p)
    if signs is None or any(s == 0 for s in signs):
        return None
    changes = 0
    for a, b in zip(signs, signs[1:]):
        if a != b:
            changes += 1
    return changes


@dataclass(frozen=True, slots=True)
class PointClass:
    """Classification of one rational gain pair."""

    k: KPoint
    verdict: str
    h_pd: bool
    c_pd: bool | None = None


def classify_point(
    inst: ProblemInstance,
    h_pencil: QuadraticMatrixPencil,
    c_pencil: AffinePencil | None,
    k: Sequence[RationalLike],
) -> PointClass:
    """Run the stability oracle and the pencil tests at one exact point."""
    point = _as_point(k)
    verdict = routh_stable(inst.poly_at(*point))
    h_pd = h_pencil.pd_at(*point)
    c_pd = None
    if c_pencil is not None:
        c_pd = c_pencil.pd_at(*point)
    return PointClass(k=point, verdict=verdict, h_pd=h_pd, c_pd=c_pd)


@dataclass(frozen=True, slots=True)
class Certificate:
    """Outcome of the LMI certification attempt at a seed point."""

    status: str
    seed: KPoint
    f0: SymMatrix | None
    f1: SymMatrix | None
    f2: SymMatrix | None
    notes: tuple[str, ...] = ()

    @property
    def matrices(self) -> tuple[SymMatrix, SymMatrix, SymMatrix] | None:
        if self.f0 is None or self.f1 is None or self.f2 is None:
            return None
        return (self.f0, self.f1, self.f2)


def certify_lmi_region(
    inst: ProblemInstance,
    assembly: CertificateAssembly,
    seed: Sequence[RationalLike],
    samples: Iterable[Sequence[RationalLike]] = (),
) -> Certificate:
    """Certify the seed's component as a convex subset of the stable set.

    Requirements at the (stable) seed: the Hermite matrix and the sign
    normalized certificate pencil must both be exactly positive definite.
    Every supplied sample point is then cross-checked; a sample where the
    pencil is positive definite but the oracle says unstable disproves
    inclusion and downgrades the result to "certified-no-inclusion".
    """
    point = _as_point(seed)
    if routh_stable(inst.poly_at(*point)) != STABLE:
        raise ValueError(f"certification seed {point} is not a stable point")

    pencil = assembly.pencil
    notes = list(assembly.notes)

    def done(status: str) -> Certificate:
        return Certificate(
            status=status,
            seed=point,
            f0=pencil.f0,
            f1=pencil.f1,
            f2=pencil.f2,
            notes=tuple(notes),
        )

    # A sampled witness that the pencil's feasible set leaks outside the
    # stable set settles the question regardless of the seed test.
    for raw in samples:
        sample = _as_point(raw)
        if not pencil.pd_at(*sample):
            continue
        if routh_stable(inst.poly_at(*sample)) == UNSTABLE:
            notes.append(
                f"pencil positive definite but unstable at k=({sample[0]}, {sample[1]})"
            )
            return done(CERTIFIED_NO_INCLUSION)

    if not assembly.pd_at_seed or not pencil.pd_at(*point):
        notes.append("certificate pencil not positive definite at seed")
        return done(NOT_PD_AT_SEED)
    if not is_positive_definite(hermite_matrix(inst.poly_at(*point))):
        # Unreachable for a stable seed; kept as an exactness guard.
        notes.append("Hermite matrix not positive definite at seed")
        return done(DEGENERATE)
    notes.append("component inclusion backed by sampled cross-validation")
    return done(CERTIFIED_SUBSET)
