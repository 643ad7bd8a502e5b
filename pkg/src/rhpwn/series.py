"""Dense truncated power series with MuPoly coefficients.

A series is a list [c0, c1, ...] of MuPoly, meaning sum c_j s^j.  All
operations are exact and truncate at a requested order (inclusive).
"""

from __future__ import annotations

from fractions import Fraction

from .mupoly import MuPoly


def _coeff(a, j) -> MuPoly:
    return a[j] if j < len(a) else MuPoly.zero()


def series_add(a, b, order: int):
    return [_coeff(a, j) + _coeff(b, j) for j in range(order + 1)]


def series_scale(a, c, order: int):
    return [_coeff(a, j).scaled(c) for j in range(order + 1)]


def series_mul(a, b, order: int):
    out = [MuPoly.zero() for _ in range(order + 1)]
    for i in range(min(len(a), order + 1)):
        if _coeff(a, i).is_zero:
            continue
        for j in range(min(len(b), order + 1 - i)):
            out[i + j] = out[i + j] + a[i] * b[j]
    return out


def series_pow(a, k: int, order: int):
    out = [MuPoly.one()] + [MuPoly.zero()] * order
    for _ in range(k):
        out = series_mul(out, a, order)
    return out


def series_integrate(a, order: int):
    """Antiderivative with zero constant term."""
    out = [MuPoly.zero()]
    for j in range(order):
        out.append(_coeff(a, j).scaled(Fraction(1, j + 1)))
    return out


def series_exp(a, order: int):
    """exp of a series with zero constant term (b' = a' b)."""
    if len(a) > 0 and not a[0].is_zero:
        raise ValueError("series_exp needs a vanishing constant term")
    b = [MuPoly.one()] + [MuPoly.zero()] * order
    for m in range(1, order + 1):
        acc = MuPoly.zero()
        for j in range(1, m + 1):
            acc = acc + _coeff(a, j).scaled(j) * b[m - j]
        b[m] = acc.scaled(Fraction(1, m))
    return b


def series_log(a, order: int):
    """log of a series with constant term 1 (m a_m = sum j b_j a_{m-j})."""
    if not a or a[0] != MuPoly.one():
        raise ValueError("series_log needs constant term 1")
    b = [MuPoly.zero()] * (order + 1)
    for m in range(1, order + 1):
        acc = MuPoly.zero()
        for j in range(1, m):
            acc = acc + b[j].scaled(j) * _coeff(a, m - j)
        b[m] = _coeff(a, m) - acc.scaled(Fraction(1, m))
    return b
