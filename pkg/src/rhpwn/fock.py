"""Truncated Fock spaces: kernels, exponential vectors, jets and operators.

The order-n space is spanned by exponential vectors psi_n(f) with inner
product

    n = 1:   <psi_1(f), psi_1(g)> = exp( integral conj(f) g )
    n >= 2:  <psi_n(f), psi_n(g)> =
             exp( -(2/(n^2(n-1))) integral ln(1 - (n^3(n-1)/2) conj(f) g) )

defined for |f|, |g| < (1/n) sqrt(2/(n(n-1))) pointwise (strict; the log
kernel diverges at the bound).  Creation acts as a directional derivative of
psi_n in its argument, so vectors produced by the operators are jets: an
exponential vector decorated with up to two derivative directions.  Inner
products of jets are the corresponding mixed partial derivatives of the
closed-form kernel, computed here with square-free nilpotent arithmetic
(one first-order infinitesimal per direction) rather than finite
differences.

Spaces of different order are orthogonal (the full space is their direct
sum), so cross-order pairings are 0.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import (
    DomainError,
    PrescriptionError,
    UnsupportedGeneratorError,
    UnsupportedOrderError,
)
from .mupoly import MU, MuPoly
from .scalars import ComplexRational
from .stepfn import StepFunction, common_refinement

# -- closed-form kernels and generating functions ---------------------------


def kernel_values(n: int, k: int):
    """Squared norm pi_{n,k} of (B[n,0])^k Phi and h_{n,k} = pi_{n,k}/k!.

    pi_{n,k}(mu) = k! n^k prod_{i<k} (mu + n^2(n-1)/2 * i), exact.
    """
    if n < 1 or k < 0:
        raise DomainError(f"kernel indices need n >= 1, k >= 0, got ({n}, {k})")
    half = Fraction(n * n * (n - 1), 2)
    h = MuPoly.one()
    for i in range(k):
        h = h * (MU + half * i).scaled(n)
    return h.scaled(math.factorial(k)), h


def G_eval(n: int, u: complex, mu: float) -> complex:
    """Exponential-vector generating function G_n(u, mu)."""
    u = complex(u)
    if n == 1:
        return cmath.exp(u * mu)
    c = n**3 * (n - 1) / 2
    if abs(c * u) >= 1:
        raise DomainError(
            f"G_{n} needs |{c}*u| < 1 for the principal log, got u={u}"
        )
    return cmath.exp(-(2 * mu / (n * n * (n - 1))) * cmath.log(1 - c * u))


def Ghat_eval(n: int, u: complex) -> complex:
    """Exponent density: G_n = exp(mu * Ghat_n(u))."""
    u = complex(u)
    if n == 1:
        return u
    c = n**3 * (n - 1) / 2
    if abs(c * u) >= 1:
        raise DomainError(
            f"Ghat_{n} needs |{c}*u| < 1 for the principal log, got u={u}"
        )
    return -(2 / (n * n * (n - 1))) * cmath.log(1 - c * u)


def G_taylor_coeff(n: int, k: int) -> MuPoly:
    """k-th derivative of G_n at u = 0, exact.

    For n >= 2 this is the rising factorial of the binomial series,
    c^k alpha (alpha+1) ... (alpha+k-1) with c = n^3(n-1)/2 and
    alpha = 2 mu / (n^2(n-1)), so each factor contributes n mu + c i.
    Must equal h_{n,k}.
    """
    if n < 1 or k < 0:
        raise DomainError(f"Taylor indices need n >= 1, k >= 0, got ({n}, {k})")
    if n == 1:
        return MuPoly.monomial(k)
    c = Fraction(n**3 * (n - 1), 2)
    out = MuPoly.one()
    for i in range(k):
        out = out * (MU.scaled(n) + c * i)
    return out


# -- admissibility -----------------------------------------------------------


def admissibility_bound_squared(n: int):
    """Strict pointwise bound |f|^2 < 2/(n^3(n-1)); None means unbounded (n=1)."""
    if n < 1:
        raise DomainError(f"Fock order must be >= 1, got {n}")
    if n == 1:
        return None
    return Fraction(2, n**3 * (n - 1))


def require_admissible(n: int, f: StepFunction):
    bound = admissibility_bound_squared(n)
    if bound is None:
        return
    for a, b, c in f.pieces:
        if c.abs_squared() >= bound:
            raise DomainError(
                f"piece [{a},{b}) with |coeff|^2 = {c.abs_squared()} violates the "
                f"order-{n} bound |f|^2 < {bound}"
            )


# -- vectors -----------------------------------------------------------------


class ExponentialVector:
    """psi_n(f): the product of creator exponentials over the pieces of f.

    psi_n(0) is the vacuum.  The test function must satisfy the order-n
    sup-norm bound strictly.
    """

    __slots__ = ("n", "f")

    def __init__(self, n: int, f: StepFunction):
        require_admissible(n, f)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "f", f)

    def __setattr__(self, name, value):
        raise AttributeError("ExponentialVector is immutable")

    def __eq__(self, other):
        if not isinstance(other, ExponentialVector):
            return NotImplemented
        return self.n == other.n and self.f == other.f

    def __hash__(self):
        return hash((self.n, self.f))

    def __str__(self):
        return f"psi_{self.n}({self.f})"

    __repr__ = __str__


class JetVector:
    """Iterated directional derivative of psi_n at its argument.

    directions = (d1, ..., dp), p <= 2, means
    d^p/(de_1 ... de_p) psi_n(f + e_1 d_1 + ... + e_p d_p) at e = 0.
    Mixed partials commute, so directions are kept sorted; a zero direction
    makes the whole vector zero.
    """

    __slots__ = ("base", "directions")

    def __init__(self, base: ExponentialVector, directions=()):
        directions = tuple(sorted(directions, key=lambda d: d.sort_key()))
        if len(directions) > 2:
            raise UnsupportedOrderError(
                f"jet order capped at 2, got {len(directions)} directions"
            )
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "directions", directions)

    def __setattr__(self, name, value):
        raise AttributeError("JetVector is immutable")

    @property
    def n(self) -> int:
        return self.base.n

    @property
    def order(self) -> int:
        return len(self.directions)

    @property
    def is_zero(self) -> bool:
        return any(d.is_zero for d in self.directions)

    def __eq__(self, other):
        if not isinstance(other, JetVector):
            return NotImplemented
        return self.base == other.base and self.directions == other.directions

    def __hash__(self):
        return hash((self.base, self.directions))

    def __str__(self):
        if not self.directions:
            return str(self.base)
        dirs = "; ".join(str(d) for d in self.directions)
        return f"jet({self.base}; {dirs})"

    __repr__ = __str__


def as_jet(v) -> JetVector:
    if isinstance(v, JetVector):
        return v
    if isinstance(v, ExponentialVector):
        return JetVector(v)
    raise TypeError(f"expected a jet or exponential vector, got {v!r}")


class JetSum:
    """Finite formal combination of jets with exact complex-rational weights."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        canon = {}
        items = terms.items() if isinstance(terms, dict) else (terms or ())
        for jet, coeff in items:
            coeff = ComplexRational.coerce(coeff)
            if coeff.is_zero or jet.is_zero:
                continue
            acc = canon.get(jet)
            acc = coeff if acc is None else acc + coeff
            if acc.is_zero:
                canon.pop(jet, None)
            else:
                canon[jet] = acc
        object.__setattr__(self, "terms", canon)

    def __setattr__(self, name, value):
        raise AttributeError("JetSum is immutable")

    @classmethod
    def of(cls, v, coeff=1) -> "JetSum":
        return cls({as_jet(v): coeff})

    def __add__(self, other):
        other = _as_jetsum(other)
        terms = dict(self.terms)
        for jet, coeff in other.terms.items():
            terms[jet] = terms[jet] + coeff if jet in terms else coeff
        return JetSum(terms)

    def __sub__(self, other):
        return self + _as_jetsum(other).scaled(-1)

    def scaled(self, c) -> "JetSum":
        c = ComplexRational.coerce(c)
        return JetSum({jet: coeff * c for jet, coeff in self.terms.items()})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, JetSum):
            return NotImplemented
        return self.terms == other.terms

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({c}) {jet}" for jet, c in self.terms.items())

    __repr__ = __str__


def _as_jetsum(v) -> JetSum:
    if isinstance(v, JetSum):
        return v
    return JetSum.of(v)


# -- nilpotent multi-dual arithmetic (one infinitesimal per direction) -------


class _MultiDual:
    """Polynomials in square-free infinitesimals e_i (e_i^2 = 0).

    Keys are frozensets of parameter indices; the coefficient of the full
    index set is the mixed partial derivative of the represented function.
    """

    __slots__ = ("terms",)

    def __init__(self, terms):
        self.terms = {s: c for s, c in terms.items() if c != 0}

    @classmethod
    def const(cls, c) -> "_MultiDual":
        return cls({frozenset(): complex(c)})

    @classmethod
    def affine(cls, c0, linear) -> "_MultiDual":
        terms = {frozenset(): complex(c0)}
        for i, ci in linear.items():
            terms[frozenset((i,))] = complex(ci)
        return cls(terms)

    def __add__(self, other):
        terms = dict(self.terms)
        for s, c in other.terms.items():
            terms[s] = terms.get(s, 0j) + c
        return _MultiDual(terms)

    def __mul__(self, other):
        terms = {}
        for s1, c1 in self.terms.items():
            for s2, c2 in other.terms.items():
                if s1 & s2:
                    continue
                key = s1 | s2
                terms[key] = terms.get(key, 0j) + c1 * c2
        return _MultiDual(terms)

    def scale(self, c) -> "_MultiDual":
        return _MultiDual({s: v * c for s, v in self.terms.items()})

    def constant_part(self) -> complex:
        return self.terms.get(frozenset(), 0j)

    def nilpotent_part(self) -> "_MultiDual":
        return _MultiDual({s: c for s, c in self.terms.items() if s})

    def exp(self) -> "_MultiDual":
        scalar = cmath.exp(self.constant_part())
        nil = self.nilpotent_part()
        out = _MultiDual.const(1)
        power = _MultiDual.const(1)
        j = 1
        while True:
            power = power * nil
            if not power.terms:
                break
            out = out + power.scale(1 / math.factorial(j))
            j += 1
        return out.scale(scalar)

    def log(self) -> "_MultiDual":
        z0 = self.constant_part()
        out = _MultiDual.const(cmath.log(z0))
        ratio = self.nilpotent_part().scale(1 / z0)
        power = _MultiDual.const(1)
        j = 1
        while True:
            power = power * ratio
            if not power.terms:
                break
            out = out + power.scale((-1) ** (j + 1) / j)
            j += 1
        return out

    def coefficient(self, indices) -> complex:
        return self.terms.get(frozenset(indices), 0j)


# -- inner products -----------------------------------------------------------


def exp_inner_product(n: int, f: StepFunction, g: StepFunction) -> complex:
    """<psi_n(f), psi_n(g)>, conjugate-linear in f.

    Piecewise over the common refinement; the per-piece integrands are exact
    rationals fed to exp/log in float.
    """
    require_admissible(n, f)
    require_admissible(n, g)
    if n == 1:
        return cmath.exp((f.conjugate() * g).integral().to_complex())
    c = float(Fraction(n**3 * (n - 1), 2))
    gamma = float(Fraction(2, n * n * (n - 1)))
    exponent = 0j
    for a, b, (cf, cg) in common_refinement([f, g]):
        w = (cf.conjugate() * cg).to_complex()
        exponent += -gamma * float(b - a) * cmath.log(1 - c * w)
    return cmath.exp(exponent)


def jet_inner_product(u, v) -> complex:
    """Pairing of two jets: a mixed partial of the closed-form kernel.

    Left directions differentiate the conjugated slot, right directions the
    linear slot; pairs of different Fock order return 0 (direct sum).
    """
    u = as_jet(u)
    v = as_jet(v)
    if u.n != v.n:
        return 0j
    n = u.n
    require_admissible(n, u.base.f)
    require_admissible(n, v.base.f)
    p, q = u.order, v.order
    if p + q > 4:
        raise UnsupportedOrderError(f"combined jet order {p + q} exceeds 4")
    fns = [u.base.f, *u.directions, v.base.f, *v.directions]
    if n >= 2:
        c = float(Fraction(n**3 * (n - 1), 2))
        gamma = float(Fraction(2, n * n * (n - 1)))
    S = _MultiDual.const(0)
    for a, b, coeffs in common_refinement(fns):
        ell = float(b - a)
        lc = coeffs[: 1 + p]
        rc = coeffs[1 + p :]
        x = _MultiDual.affine(
            lc[0].conjugate().to_complex(),
            {i: lc[1 + i].conjugate().to_complex() for i in range(p)},
        )
        y = _MultiDual.affine(
            rc[0].to_complex(),
            {p + j: rc[1 + j].to_complex() for j in range(q)},
        )
        if n == 1:
            S = S + (x * y).scale(ell)
        else:
            one_minus = _MultiDual.const(1) + (x * y).scale(-c)
            S = S + one_minus.log().scale(-gamma * ell)
    return S.exp().coefficient(range(p + q))


def pair(u, v) -> complex:
    """Sesquilinear extension of jet_inner_product to formal jet sums."""
    us = _as_jetsum(u)
    vs = _as_jetsum(v)
    total = 0j
    for ju, cu in us.terms.items():
        for jv, cv in vs.terms.items():
            w = (cu.conjugate() * cv).to_complex()
            if w:
                total += w * jet_inner_product(ju, jv)
    return total


@dataclass(frozen=True)
class GramReport:
    matrix: np.ndarray
    min_eigenvalue: float
    psd: bool


def gram_psd_check(n: int, fs, tol: float) -> GramReport:
    """Gram matrix of exponential vectors and its PSD verdict."""
    fs = list(fs)
    size = len(fs)
    for f in fs:
        require_admissible(n, f)
    m = np.zeros((size, size), dtype=complex)
    for i in range(size):
        for j in range(i, size):
            val = exp_inner_product(n, fs[i], fs[j])
            m[i, j] = val
            m[j, i] = val.conjugate()
    if size:
        min_eig = float(np.min(np.linalg.eigvalsh(m)))
    else:
        min_eig = 0.0
    return GramReport(matrix=m, min_eigenvalue=min_eig, psd=min_eig >= -tol)


# -- operator actions ---------------------------------------------------------


def apply_creator(n: int, f: StepFunction, v) -> JetVector:
    """B[n,0](f): shift the exponential-vector argument along f (a 1-jet)."""
    jet = as_jet(v)
    if jet.n != n:
        raise UnsupportedGeneratorError(f"creator of order {n} on a {jet.n}-vector")
    if jet.order >= 2:
        raise UnsupportedOrderError("creator on a jet of order 2 would exceed the cap")
    return JetVector(jet.base, jet.directions + (f,))


def apply_annihilator(n: int, f: StepFunction, v) -> JetSum:
    """B[0,n](f) psi_n(g) = n (integral f g) psi_n(g)
    + (n^3(n-1)/2) d/de psi_n(g + e f g^2)."""
    jet = as_jet(v)
    if jet.n != n:
        raise UnsupportedGeneratorError(f"annihilator of order {n} on a {jet.n}-vector")
    if jet.order == 0:
        return _annihilate_exponential(n, f, jet.base)
    if jet.order == 1:
        return _annihilate_first_jet(n, f, jet)
    raise UnsupportedOrderError("annihilator implemented on jets of order <= 1")


def _annihilate_exponential(n: int, f: StepFunction, v: ExponentialVector) -> JetSum:
    g = v.f
    scalar = (f * g).integral() * n
    weight = Fraction(n**3 * (n - 1), 2)
    return JetSum(
        [
            (JetVector(v), scalar),
            (JetVector(v, (f * g * g,)), ComplexRational(weight)),
        ]
    )


def _annihilate_first_jet(n: int, f: StepFunction, jet: JetVector) -> JetSum:
    # Differentiate the exponential-vector action along the jet direction d:
    # the scalar integral contributes along d, the derivative term becomes a
    # two-parameter curve with cross term 2 f d g.
    g = jet.base.f
    (d,) = jet.directions
    weight = ComplexRational(Fraction(n**3 * (n - 1), 2))
    return JetSum(
        [
            (JetVector(jet.base), (f * d).integral() * n),
            (JetVector(jet.base, (d,)), (f * g).integral() * n),
            (JetVector(jet.base, (d, f * g * g)), weight),
            (JetVector(jet.base, ((f * d * g).scaled(2),)), weight),
        ]
    )


def _mixed_curve_jet(base: ExponentialVector, d_eps, d_rho, d_cross) -> JetSum:
    """d^2/(de dr) psi_n along a surface with tangent directions and curvature."""
    return JetSum(
        [
            (JetVector(base, (d_eps, d_rho)), 1),
            (JetVector(base, (d_cross,)), 1),
        ]
    )


def apply_number(n: int, f: StepFunction, g: StepFunction, v) -> JetSum:
    """B[n-1,n-1](f g) on psi_n(h): scalar part (1/n) integral(f g) plus the
    weighted difference of the two mixed second derivatives."""
    jet = as_jet(v)
    if jet.n != n:
        raise UnsupportedGeneratorError(f"number operator of order {n} on a {jet.n}-vector")
    if jet.order != 0:
        raise UnsupportedOrderError("number operator implemented on exponential vectors")
    h = jet.base.f
    scalar = (f * g).integral() * Fraction(1, n)
    weight = ComplexRational(Fraction(n * (n - 1), 2))
    first = _mixed_curve_jet(jet.base, g, f * h * h, (f * g * h).scaled(2))
    second = _mixed_curve_jet(jet.base, f * h * h, g, StepFunction.zero())
    out = JetSum({JetVector(jet.base): scalar})
    return out + (first - second).scaled(weight)


# -- generic representation via the commutator prescription -------------------


class RepOperator:
    """Composable operator on jet sums; primitives resolve per vector order."""

    def apply(self, state) -> JetSum:
        raise NotImplementedError

    def __call__(self, state) -> JetSum:
        return self.apply(state)


class GeneratorOp(RepOperator):
    """B[n,k](fn), applicable where (n,k) matches a representable primitive:
    the order-m creator (m,0), annihilator (0,m), number (m-1,m-1) or the
    central scalar (0,0)."""

    def __init__(self, n: int, k: int, fn: StepFunction):
        self.n = n
        self.k = k
        self.fn = fn

    def apply(self, state) -> JetSum:
        state = _as_jetsum(state)
        out = JetSum()
        for jet, coeff in state.terms.items():
            out = out + self._apply_jet(jet).scaled(coeff)
        return out

    def _apply_jet(self, jet: JetVector) -> JetSum:
        m = jet.n
        n, k = self.n, self.k
        if (n, k) == (0, 0):
            return JetSum.of(jet, self.fn.integral())
        if (n, k) == (m, 0):
            return JetSum.of(apply_creator(m, self.fn, jet))
        if (n, k) == (0, m):
            return apply_annihilator(m, self.fn, jet)
        if (n, k) == (m - 1, m - 1) and m >= 1:
            return apply_number(m, self.fn, self.fn.support_indicator(), jet)
        raise UnsupportedGeneratorError(
            f"B[{n},{k}] is not a representable primitive on the order-{m} space"
        )

    def __str__(self):
        return f"B[{self.n},{self.k}]({self.fn})"


class ScaledCommutatorOp(RepOperator):
    def __init__(self, scale: ComplexRational, left: RepOperator, right: RepOperator):
        self.scale = scale
        self.left = left
        self.right = right

    def apply(self, state) -> JetSum:
        state = _as_jetsum(state)
        lr = self.left.apply(self.right.apply(state))
        rl = self.right.apply(self.left.apply(state))
        return (lr - rl).scaled(self.scale)

    def __str__(self):
        return f"({self.scale}) [{self.left}, {self.right}]"


def generic_rep_build(
    n: int, k: int, N: int, K: int, g: StepFunction, f: StepFunction
) -> RepOperator:
    """Represent B[n+N-1, k+K-1](g f) as (kN - Kn)^(-1) [B[n,k](g), B[N,K](f)].

    The factors must resolve to representable primitives on the space the
    result is applied to; kN - Kn = 0 makes the prescription inapplicable.
    """
    const = k * N - K * n
    if const == 0:
        raise PrescriptionError(
            f"kN - Kn = 0 for (n,k,N,K) = ({n},{k},{N},{K}); prescription inapplicable"
        )
    scale = ComplexRational(Fraction(1, const))
    return ScaledCommutatorOp(scale, GeneratorOp(n, k, g), GeneratorOp(N, K, f))
