"""Shared deterministic random generators for the test suite."""

import math
from fractions import Fraction

from rhpwn.algebra import RHPWN, AlgebraElement
from rhpwn.scalars import ComplexRational
from rhpwn.stepfn import StepFunction


def rand_fraction(rng, span=6, den=4):
    return Fraction(rng.randint(-span, span), rng.randint(1, den))


def rand_coeff(rng, span=6, den=4, complex_ok=True):
    re = rand_fraction(rng, span, den)
    im = rand_fraction(rng, span, den) if complex_ok else 0
    return ComplexRational(re, im)


def rand_step_function(rng, max_pieces=2, complex_ok=True, scale=None):
    """Random step function on unit slots [i, i+1), i in -4..3 (never straddling 0)."""
    count = rng.randint(0, max_pieces)
    slots = rng.sample(range(-4, 4), count)
    pieces = []
    for i in slots:
        r1 = Fraction(rng.randint(0, 2), 4)
        r2 = Fraction(rng.randint(3, 4), 4)
        c = rand_coeff(rng, complex_ok=complex_ok)
        if scale is not None:
            c = c * scale
        pieces.append((i + r1, i + r2, c))
    return StepFunction(pieces)


def admissible_scale(n: int) -> Fraction:
    """A rational s with (max raw |coeff|)^2 * s^2 safely below the order-n bound.

    Raw coefficients from rand_coeff(span=6, den=4) satisfy |c|^2 <= 2 * 36 = 72.
    """
    if n == 1:
        return Fraction(1)
    bound2 = Fraction(2, n**3 * (n - 1))
    target = bound2 / 146  # |c|^2 * s^2 <= 72/146 * bound2 < bound2, strictly
    num = target.numerator * 64 * 64 // target.denominator
    return Fraction(math.isqrt(num), 64)


def rand_admissible(rng, n, max_pieces=2, complex_ok=True):
    return rand_step_function(
        rng, max_pieces=max_pieces, complex_ok=complex_ok, scale=admissible_scale(n)
    )


def rand_element(rng, tag, max_index=6, max_terms=2, complex_ok=True):
    out = AlgebraElement.zero(tag)
    for _ in range(rng.randint(1, max_terms)):
        if tag == RHPWN:
            n = rng.randint(0, max_index)
            k = rng.randint(0, max_index)
        else:
            n = rng.randint(2, max_index)
            k = rng.randint(-max_index, max_index)
        fn = rand_step_function(rng, complex_ok=complex_ok)
        out = out + AlgebraElement.generator(tag, n, k, fn)
    return out
