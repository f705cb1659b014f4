from fractions import Fraction

import pytest

from stabregion.polynomials import ProblemInstance, UniPoly, normalize_monic


def spoly(*coeffs) -> UniPoly:
    """Ascending-coefficient polynomial in s."""
    return UniPoly(coeffs, "s")


def tpoly(*coeffs) -> UniPoly:
    return UniPoly(coeffs, "t")


@pytest.fixture
def nn1() -> ProblemInstance:
    # p0 = s(s^2 - 13), p1 = s(s - 5), p2 = s + 1
    return normalize_monic(spoly(0, -13, 0, 1), spoly(0, -5, 1), spoly(1, 1))


@pytest.fixture
def vishnegradsky() -> ProblemInstance:
    # s^3 + k1 s^2 + k2 s + 1
    return normalize_monic(spoly(1, 0, 0, 1), spoly(0, 0, 1), spoly(0, 1))


@pytest.fixture
def francis() -> ProblemInstance:
    # plant (s-1)(s-2) / (s+1)(s^2+s+1), compensator k1 + k2/s
    p0 = spoly(0, 1) * spoly(1, 1) * spoly(1, 1, 1)
    p1 = spoly(0, 1) * spoly(-1, 1) * spoly(-2, 1)
    p2 = spoly(-1, 1) * spoly(-2, 1)
    return normalize_monic(p0, p1, p2)


def make_ackermann(a) -> ProblemInstance:
    a = Fraction(a)
    return normalize_monic(
        UniPoly((14 + 2 * a, 10, 10, 2, 1), "s"),
        UniPoly((Fraction(-3, 10), 2, 0, 2), "s"),
        UniPoly((1, 2), "s"),
    )


@pytest.fixture
def ackermann1() -> ProblemInstance:
    return make_ackermann(1)


@pytest.fixture
def ackermann0() -> ProblemInstance:
    return make_ackermann(0)
