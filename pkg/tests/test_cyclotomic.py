from fractions import Fraction

import pytest

from fusionrep.cyclotomic import (Cyclotomic, cyclotomic_polynomial,
                                  root_of_unity)
from fusionrep.errors import ConductorMismatch


def test_rational_embedding():
    q = Cyclotomic.rational(Fraction(3, 2))
    assert q.as_rational() == Fraction(3, 2)
    assert str(q) == "3/2"
    assert Cyclotomic.zero(5).is_zero()


def test_roots_of_unity_sum():
    s = sum((root_of_unity(12, k) for k in range(12)), Cyclotomic.zero(12))
    assert s.is_zero()
    # primitive roots only: the Ramanujan sum c_12(1) = mu(12) = 0
    prim = [k for k in range(12) if __import__("math").gcd(k, 12) == 1]
    s = sum((root_of_unity(12, k) for k in prim), Cyclotomic.zero(12))
    assert s.is_zero()


def test_quadratic_period():
    w = root_of_unity(7)
    theta = w + w * w + w.galois(4)
    assert (theta + theta.conjugate()).as_rational() == -1
    assert (theta * theta.conjugate()).as_rational() == 2
    # theta satisfies x^2 + x + 2 = 0
    assert (theta * theta + theta + Cyclotomic.rational(2, 7)).is_zero()


def test_lift_and_mismatch():
    w3 = root_of_unity(3)
    w6 = w3.lift(6)
    assert w6.conductor == 6
    assert w6 == root_of_unity(6, 2)
    with pytest.raises(ConductorMismatch):
        _ = w3 + root_of_unity(5)


def test_cyclotomic_polynomial():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(2) == (1, 1)
    assert cyclotomic_polynomial(7) == (1, 1, 1, 1, 1, 1, 1)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)


def test_str_format():
    z = root_of_unity(7)
    x = z * 2 + Cyclotomic.rational(-1, 7)
    got = str(x)
    assert "z7" in got and "-" in got
    three = root_of_unity(7, 3)
    assert str(three * 2 + z - Cyclotomic.rational(1, 7)) \
        == "-1 + z7 + 2*z7^3"


def test_galois_orbit():
    w = root_of_unity(5)
    assert w.galois(2).galois(3) == w.galois(6 % 5)
    tot = sum((w.galois(k) for k in range(1, 5)), Cyclotomic.zero(5))
    assert tot.as_rational() == -1
