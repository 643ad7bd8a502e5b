import random
from fractions import Fraction

import pytest

from rhpwn.mupoly import MU, MuPoly
from rhpwn.scalars import ComplexRational, fraction_str, parse_fraction


def test_parse_and_format_fraction():
    assert parse_fraction("3/4") == Fraction(3, 4)
    assert parse_fraction("-5") == Fraction(-5)
    assert fraction_str(Fraction(8, 4)) == "2"
    assert fraction_str(Fraction(-3, 7)) == "-3/7"


def test_complex_rational_arithmetic():
    a = ComplexRational(Fraction(1, 2), Fraction(-1, 3))
    b = ComplexRational(2, 5)
    assert (a + b) - b == a
    assert a * b / b == a
    assert (a * a.conjugate()).im == 0
    assert a.abs_squared() == Fraction(1, 4) + Fraction(1, 9)
    assert -a + a == ComplexRational(0)


def test_complex_rational_parse_roundtrip():
    rng = random.Random(11)
    for _ in range(100):
        c = ComplexRational(
            Fraction(rng.randint(-20, 20), rng.randint(1, 9)),
            Fraction(rng.randint(-20, 20), rng.randint(1, 9)),
        )
        assert ComplexRational.parse(str(c)) == c
    assert ComplexRational.parse("1/2i") == ComplexRational(0, Fraction(1, 2))
    assert ComplexRational.parse("-3/4-1/2i") == ComplexRational(
        Fraction(-3, 4), Fraction(-1, 2)
    )


def test_mupoly_ring_operations():
    p = MU.scaled(2) + 3  # 2 mu + 3
    q = MU * MU - 1
    assert p * q == q * p
    assert (p + q) - q == p
    assert p**2 == p * p
    assert MuPoly.zero() * p == MuPoly.zero()
    assert p.eval_exact(Fraction(1, 2)) == ComplexRational(4)


def test_mupoly_canonical_and_strings():
    p = MuPoly([1, 0, Fraction(0)])
    assert p.degree == 0
    q = MuPoly.from_strings(["0", "16", "8"])
    assert q == MU.scaled(16) + (MU * MU).scaled(8)
    assert q.to_strings() == ["0", "16", "8"]
    assert str(q) == "8*mu^2 + 16*mu"


def test_mupoly_conjugate_and_eval():
    p = MuPoly([ComplexRational(1, 1), ComplexRational(0, -2)])
    assert p.conjugate() == MuPoly([ComplexRational(1, -1), ComplexRational(0, 2)])
    assert p.eval_float(2.0) == pytest.approx(complex(1, -3))
