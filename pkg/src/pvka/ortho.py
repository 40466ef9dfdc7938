"""Exact constructors for the classical orthogonal polynomials and the
variant forms the solvable systems need: reversed-argument Laguerre and
imaginary-argument twists.

Each family is built from its explicit hypergeometric-type finite sum so the
three-term recurrences stay available as an independent cross-check.
Parameters may be genuinely complex (Gaussian rational); nothing here is
coerced to real mid-computation.
"""

from __future__ import annotations

from fractions import Fraction

from .algebra import GaussianRational, Poly, QI_ONE, ScalarLike, i_power


class ZeroScaleError(ValueError):
    """reversed_laguerre needs a nonzero argument scale."""


def rational_binomial(x: ScalarLike, m: int) -> GaussianRational:
    """binomial(x, m) for possibly non-integer x, as the falling-factorial
    product prod_{k=1..m} (x - m + k) / k, exactly."""
    if m < 0:
        raise ValueError("lower index must be nonnegative")
    xg = GaussianRational.of(x)
    out = QI_ONE
    for k in range(1, m + 1):
        out = out * (xg - (m - k)) / k
    return out


def pochhammer(x: ScalarLike, m: int) -> GaussianRational:
    """Rising factorial (x)_m = x (x+1) ... (x+m-1)."""
    if m < 0:
        raise ValueError("length must be nonnegative")
    xg = GaussianRational.of(x)
    out = QI_ONE
    for k in range(m):
        out = out * (xg + k)
    return out


def hermite(n: int) -> Poly:
    """Hermite polynomial H_n, leading coefficient 2^n."""
    if n < 0:
        raise ValueError("degree must be nonnegative")
    coeffs = [GaussianRational(0)] * (n + 1)
    fact_n = 1
    for k in range(2, n + 1):
        fact_n *= k
    for m in range(n // 2 + 1):
        fact_m = 1
        for k in range(2, m + 1):
            fact_m *= k
        fact_rest = 1
        for k in range(2, n - 2 * m + 1):
            fact_rest *= k
        c = Fraction((-1) ** m * fact_n, fact_m * fact_rest) * 2 ** (n - 2 * m)
        coeffs[n - 2 * m] = GaussianRational(c)
    return Poly(coeffs)


def laguerre(n: int, alpha: ScalarLike) -> Poly:
    """Laguerre polynomial L_n^(alpha); value at 0 is binomial(n+alpha, n)."""
    if n < 0:
        raise ValueError("degree must be nonnegative")
    a = GaussianRational.of(alpha)
    coeffs = []
    fact = 1
    for k in range(n + 1):
        if k:
            fact *= k
        sign = -1 if k % 2 else 1
        coeffs.append(rational_binomial(a + n, n - k) * Fraction(sign, fact))
    return Poly(coeffs)


def jacobi(n: int, alpha: ScalarLike, beta: ScalarLike) -> Poly:
    """Jacobi polynomial P_n^(alpha,beta); value at 1 is binomial(n+alpha, n).

    Complex parameters are legal and are carried exactly; the degree may drop
    for non-generic parameters and the polynomial is returned as computed.
    """
    if n < 0:
        raise ValueError("degree must be nonnegative")
    a = GaussianRational.of(alpha)
    b = GaussianRational.of(beta)
    half = Fraction(1, 2)
    minus = Poly([-half, half])   # (x - 1) / 2
    plus = Poly([half, half])     # (x + 1) / 2
    out = Poly.zero()
    for s in range(n + 1):
        c = rational_binomial(a + n, n - s) * rational_binomial(b + n, s)
        if c.is_zero():
            continue
        out = out + c * minus**s * plus ** (n - s)
    return out


def reversed_laguerre(n: int, alpha: ScalarLike, c: ScalarLike) -> Poly:
    """x^n L_n^(alpha)(c/x) expanded as a degree-n polynomial in x."""
    scale = GaussianRational.of(c)
    if scale.is_zero():
        raise ZeroScaleError("argument scale must be nonzero")
    a = GaussianRational.of(alpha)
    coeffs = [GaussianRational(0)] * (n + 1)
    fact = 1
    power = QI_ONE
    for k in range(n + 1):
        if k:
            fact *= k
            power = power * scale
        sign = -1 if k % 2 else 1
        coeffs[n - k] = rational_binomial(a + n, n - k) * power * Fraction(sign, fact)
    return Poly(coeffs)


def imaginary_twist(p: Poly, v: int) -> Poly:
    """i^(-v) * p(i*x) expanded exactly."""
    return Poly([c * i_power(k - v) for k, c in enumerate(p.coeffs)])
