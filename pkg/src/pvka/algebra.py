"""Exact arithmetic core: Gaussian rationals, dense polynomials, Wronskians,
fraction-free determinants, proportionality tests and Sturm root counting.

Everything in this module is exact.  Coefficients live in Q(i) represented by
pairs of ``fractions.Fraction``; no floating point enters any code path here.
All values are immutable after construction and every function is pure.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence, Union

Rational = Fraction

ScalarLike = Union[int, Fraction, "GaussianRational"]


class NonSquareMatrixError(ValueError):
    """Determinant requested for a non-square matrix."""


class ComplexCoefficientsError(ValueError):
    """A real-only operation received a polynomial with nonzero imaginary parts."""


def _as_fraction(x: int | Fraction) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class GaussianRational:
    """An exact complex number with rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re: int | Fraction = 0, im: int | Fraction = 0):
        object.__setattr__(self, "re", _as_fraction(re))
        object.__setattr__(self, "im", _as_fraction(im))

    def __setattr__(self, name, value):  # pragma: no cover - safety only
        raise AttributeError("GaussianRational is immutable")

    # -- coercion -----------------------------------------------------------
    @staticmethod
    def of(x: ScalarLike) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if not isinstance(x, (int, Fraction)):
            raise TypeError(f"cannot coerce {type(x).__name__} to GaussianRational")
        return GaussianRational(x)

    # -- predicates ---------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.re and not self.im

    def is_real(self) -> bool:
        return not self.im

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, (int, Fraction, GaussianRational)):
            return NotImplemented
        o = GaussianRational.of(other)
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, (int, Fraction, GaussianRational)):
            return NotImplemented
        o = GaussianRational.of(other)
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        if not isinstance(other, (int, Fraction, GaussianRational)):
            return NotImplemented
        return GaussianRational.of(other) - self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, other):
        if not isinstance(other, (int, Fraction, GaussianRational)):
            return NotImplemented
        o = GaussianRational.of(other)
        return GaussianRational(
            self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, (int, Fraction, GaussianRational)):
            return NotImplemented
        o = GaussianRational.of(other)
        n = o.re * o.re + o.im * o.im
        if not n:
            raise ZeroDivisionError("division by zero GaussianRational")
        return GaussianRational(
            (self.re * o.re + self.im * o.im) / n,
            (self.im * o.re - self.re * o.im) / n,
        )

    def __rtruediv__(self, other):
        if not isinstance(other, (int, Fraction, GaussianRational)):
            return NotImplemented
        return GaussianRational.of(other) / self

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    # -- comparisons / hashing ----------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            o = GaussianRational.of(other)
            return self.re == o.re and self.im == o.im
        return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return not self.is_zero()

    # -- display ------------------------------------------------------------
    def __repr__(self):
        return f"GaussianRational({self.re!r}, {self.im!r})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"

    def __float__(self):
        if self.im:
            raise ComplexCoefficientsError(f"{self} has a nonzero imaginary part")
        return float(self.re)


QI_ZERO = GaussianRational(0)
QI_ONE = GaussianRational(1)
QI_I = GaussianRational(0, 1)

# i**k for k mod 4, used by the imaginary-argument twists.
I_POWERS = (QI_ONE, QI_I, GaussianRational(-1), GaussianRational(0, -1))


def i_power(k: int) -> GaussianRational:
    """Exact i**k for any integer k."""
    return I_POWERS[k % 4]


class Poly:
    """Dense univariate polynomial over GaussianRational, ascending degree.

    The zero polynomial is the empty coefficient tuple; its ``degree`` is the
    sentinel ``None`` rather than any integer, so degree bookkeeping bugs fail
    loudly instead of propagating a -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[ScalarLike] = ()):
        cs = [GaussianRational.of(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):  # pragma: no cover - safety only
        raise AttributeError("Poly is immutable")

    # -- constructors ---------------------------------------------------------
    @staticmethod
    def zero() -> "Poly":
        return _POLY_ZERO

    @staticmethod
    def one() -> "Poly":
        return _POLY_ONE

    @staticmethod
    def monomial(k: int, c: ScalarLike = 1) -> "Poly":
        return Poly([0] * k + [c])

    # -- structure ------------------------------------------------------------
    @property
    def degree(self):
        """Degree as an int, or None for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else None

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> GaussianRational:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coefficient(self, k: int) -> GaussianRational:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else QI_ZERO

    def is_real(self) -> bool:
        return all(c.im == 0 for c in self.coeffs)

    def real_coefficients(self) -> list[Fraction]:
        """Coefficients as Fractions; error if any imaginary part is nonzero."""
        for c in self.coeffs:
            if c.im:
                raise ComplexCoefficientsError(f"coefficient {c} is not real")
        return [c.re for c in self.coeffs]

    # -- ring operations --------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, Poly):
            other = Poly([other])
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, c in enumerate(b):
            out[k] = out[k] + c
        return Poly(out)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = Poly([other])
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return Poly([-c for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, Poly):
            if not self.coeffs or not other.coeffs:
                return _POLY_ZERO
            out = [QI_ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                if a.is_zero():
                    continue
                for j, b in enumerate(other.coeffs):
                    out[i + j] = out[i + j] + a * b
            return Poly(out)
        c = GaussianRational.of(other)
        return Poly([c * a for a in self.coeffs])

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        out = _POLY_ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def derivative(self) -> "Poly":
        return Poly([k * c for k, c in enumerate(self.coeffs)][1:])

    def scale_argument(self, a: ScalarLike) -> "Poly":
        """p(a*x) expanded exactly."""
        s = GaussianRational.of(a)
        out, power = [], QI_ONE
        for c in self.coeffs:
            out.append(c * power)
            power = power * s
        return Poly(out)

    def __call__(self, x: ScalarLike) -> GaussianRational:
        v = QI_ZERO
        xg = GaussianRational.of(x)
        for c in reversed(self.coeffs):
            v = v * xg + c
        return v

    def divexact(self, other: "Poly") -> "Poly":
        """Exact polynomial division; raises if the remainder is nonzero."""
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return _POLY_ZERO
        rem = list(self.coeffs)
        div = other.coeffs
        dq = len(rem) - len(div)
        if dq < 0:
            raise ValueError("exact division failed: degree too small")
        q = [QI_ZERO] * (dq + 1)
        lead = div[-1]
        for k in range(dq, -1, -1):
            c = rem[k + len(div) - 1] / lead
            q[k] = c
            if not c.is_zero():
                for j, d in enumerate(div):
                    rem[k + j] = rem[k + j] - c * d
        if any(not r.is_zero() for r in rem):
            raise ValueError("exact division failed: nonzero remainder")
        return Poly(q)

    # -- comparisons --------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self == Poly([other])
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        if not self.coeffs:
            return "Poly(0)"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            if k == 0:
                terms.append(str(c))
            else:
                var = "x" if k == 1 else f"x^{k}"
                terms.append(var if c == QI_ONE else f"({c})*{var}")
        return "Poly(" + " + ".join(terms) + ")"


_POLY_ZERO = object.__new__(Poly)
object.__setattr__(_POLY_ZERO, "coeffs", ())
_POLY_ONE = object.__new__(Poly)
object.__setattr__(_POLY_ONE, "coeffs", (QI_ONE,))


def derivative(p: Poly) -> Poly:
    """d/dx of a polynomial, exactly."""
    return p.derivative()


class PolyMatrix:
    """Row-major rectangular matrix of polynomials."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Sequence[Poly]):
        if rows * cols != len(entries):
            raise ValueError("entry count does not match matrix shape")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", tuple(entries))

    def __setattr__(self, name, value):  # pragma: no cover - safety only
        raise AttributeError("PolyMatrix is immutable")

    @staticmethod
    def from_rows(rows: Sequence[Sequence[Poly]]) -> "PolyMatrix":
        nrows = len(rows)
        ncols = len(rows[0]) if nrows else 0
        flat: list[Poly] = []
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged rows")
            flat.extend(r)
        return PolyMatrix(nrows, ncols, flat)

    def at(self, i: int, j: int) -> Poly:
        return self.entries[i * self.cols + j]


# ---------------------------------------------------------------------------
# Fraction-free determinants.
#
# The public determinant runs Bareiss elimination.  Real matrices are scaled
# row-wise to integer coefficient lists first; elimination then works entirely
# on Python ints, which is roughly two orders of magnitude faster than
# Fraction arithmetic and is the workhorse behind the randomized identity
# scans.  Matrices with genuinely complex entries take the generic Q(i) path.
# ---------------------------------------------------------------------------


def _int_mul(a: list[int], b: list[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _int_sub(a: list[int], b: list[int]) -> list[int]:
    if len(a) < len(b):
        a = a + [0] * (len(b) - len(a))
    out = list(a)
    for k, y in enumerate(b):
        out[k] -= y
    while out and not out[-1]:
        out.pop()
    return out


def _int_divexact(a: list[int], b: list[int]) -> list[int]:
    # Exact division in Z[x]; valid because Bareiss guarantees divisibility.
    if not a:
        return []
    rem = list(a)
    dq = len(rem) - len(b)
    q = [0] * (dq + 1)
    lead = b[-1]
    for k in range(dq, -1, -1):
        c = rem[k + len(b) - 1]
        if c % lead:
            raise ArithmeticError("non-exact division in fraction-free elimination")
        c //= lead
        q[k] = c
        if c:
            for j, d in enumerate(b):
                rem[k + j] -= c * d
    if any(rem):
        raise ArithmeticError("non-exact division in fraction-free elimination")
    return q


def _bareiss_int(mat: list[list[list[int]]]) -> list[int]:
    n = len(mat)
    sign = 1
    prev = [1]
    for k in range(n - 1):
        if not mat[k][k]:
            for i in range(k + 1, n):
                if mat[i][k]:
                    mat[k], mat[i] = mat[i], mat[k]
                    sign = -sign
                    break
            else:
                return []
        pivot = mat[k][k]
        for i in range(k + 1, n):
            row_i = mat[i]
            for j in range(k + 1, n):
                elt = _int_sub(_int_mul(pivot, row_i[j]), _int_mul(row_i[k], mat[k][j]))
                if k:
                    elt = _int_divexact(elt, prev)
                row_i[j] = elt
            row_i[k] = []
        prev = pivot
    det = mat[n - 1][n - 1]
    return [-c for c in det] if sign < 0 else det


def _bareiss_generic(mat: list[list[Poly]]) -> Poly:
    n = len(mat)
    sign = 1
    prev = _POLY_ONE
    for k in range(n - 1):
        if mat[k][k].is_zero():
            for i in range(k + 1, n):
                if not mat[i][k].is_zero():
                    mat[k], mat[i] = mat[i], mat[k]
                    sign = -sign
                    break
            else:
                return _POLY_ZERO
        pivot = mat[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                elt = pivot * mat[i][j] - mat[i][k] * mat[k][j]
                if k:
                    elt = elt.divexact(prev)
                mat[i][j] = elt
            mat[i][k] = _POLY_ZERO
        prev = pivot
    det = mat[n - 1][n - 1]
    return -det if sign < 0 else det


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


def determinant(m: PolyMatrix) -> Poly:
    """Exact determinant over the polynomial ring, by fraction-free Bareiss
    elimination (no rational-function intermediates)."""
    if m.rows != m.cols:
        raise NonSquareMatrixError(f"{m.rows}x{m.cols} matrix has no determinant")
    n = m.rows
    if n == 0:
        return _POLY_ONE
    if n == 1:
        return m.entries[0]
    if all(p.is_real() for p in m.entries):
        scale = Fraction(1)
        rows: list[list[list[int]]] = []
        for i in range(n):
            den = 1
            for j in range(n):
                for c in m.at(i, j).coeffs:
                    den = _lcm(den, c.re.denominator)
            scale *= den
            rows.append(
                [
                    [int(c.re * den) for c in m.at(i, j).coeffs]
                    for j in range(n)
                ]
            )
        det = _bareiss_int(rows)
        return Poly([Fraction(c) / scale for c in det])
    return _bareiss_generic([[m.at(i, j) for j in range(n)] for i in range(n)])


def wronskian(ps: Sequence[Poly]) -> Poly:
    """Wronskian determinant det( d^(j-1) ps[k] ); the empty Wronskian is 1.

    Built by stacking derivative rows and calling the one audited determinant
    path, with no term-level shortcuts.
    """
    n = len(ps)
    if n == 0:
        return _POLY_ONE
    rows = [list(ps)]
    for _ in range(n - 1):
        rows.append([p.derivative() for p in rows[-1]])
    return determinant(PolyMatrix.from_rows(rows))


def proportional(p: Poly, q: Poly):
    """Return the constant c with p == c*q if one exists, else None.

    Uses cross-multiplication of coefficients only (no division except to
    report c itself), so the test is exact.  (0, 0) returns 1 by convention.
    """
    if p.is_zero() and q.is_zero():
        return QI_ONE
    if p.is_zero() or q.is_zero():
        return None
    if p.degree != q.degree:
        return None
    a, b = p.coeffs, q.coeffs
    k0 = next(k for k, c in enumerate(b) if not c.is_zero())
    if not a[k0]:
        return None
    for k in range(len(a)):
        if a[k] * b[k0] != a[k0] * b[k]:
            return None
    return a[k0] / b[k0]


# ---------------------------------------------------------------------------
# Sturm-sequence root counting.
# ---------------------------------------------------------------------------


def _normalize_int(coeffs: list[Fraction]) -> list[int]:
    # Scale by a positive rational to a primitive integer list (sign kept).
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    if not coeffs:
        return []
    den = 1
    for c in coeffs:
        den = _lcm(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    g = 0
    for c in ints:
        g = math.gcd(g, c)
    return [c // g for c in ints]


def _frac_rem(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    rem = list(a)
    lead = b[-1]
    while len(rem) >= len(b) and any(rem):
        while rem and not rem[-1]:
            rem.pop()
        if len(rem) < len(b):
            break
        c = rem[-1] / lead
        off = len(rem) - len(b)
        for j, d in enumerate(b):
            rem[off + j] -= c * d
        rem.pop()
    while rem and not rem[-1]:
        rem.pop()
    return rem


def _sturm_chain(p_int: list[int]) -> list[list[int]]:
    chain = [list(p_int)]
    dp = [k * c for k, c in enumerate(p_int)][1:]
    if dp:
        chain.append(_normalize_int([Fraction(c) for c in dp]))
    while len(chain[-1]) > 1:
        a = [Fraction(c) for c in chain[-2]]
        b = [Fraction(c) for c in chain[-1]]
        rem = _frac_rem(a, b)
        if not rem:
            break
        chain.append(_normalize_int([-c for c in rem]))
    return chain


def _sign_at(p: list[int], point) -> int:
    # point is a Fraction or +-math.inf; returns -1, 0, or 1.
    if not p:
        return 0
    if point == math.inf:
        return 1 if p[-1] > 0 else -1
    if point == -math.inf:
        s = 1 if p[-1] > 0 else -1
        return s if (len(p) - 1) % 2 == 0 else -s
    num, den = point.numerator, point.denominator
    # Integer Horner: sign of p(num/den) equals sign of sum c_k num^k den^(d-k).
    acc = 0
    dpow = 1
    for c in reversed(p):
        acc = acc * num + c * dpow
        dpow *= den
    return (acc > 0) - (acc < 0)


def _variations(chain: list[list[int]], point) -> int:
    signs = [s for s in (_sign_at(p, point) for p in chain) if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a * b < 0)


def _deflate_root(coeffs: list[Fraction], r: Fraction) -> list[Fraction]:
    # Synthetic division by (x - r); exact, caller guarantees p(r) == 0.
    out = [Fraction(0)] * (len(coeffs) - 1)
    acc = Fraction(0)
    for k in range(len(coeffs) - 1, 0, -1):
        acc = coeffs[k] + acc * r
        out[k - 1] = acc
    return out


def real_root_count(p: Poly, lo, hi) -> int:
    """Number of distinct real roots of p in the open interval (lo, hi).

    lo/hi are Fractions, ints, or +-math.inf.  All coefficients must be real
    and p must be nonzero.  Counting uses an exact Sturm sequence; repeated
    roots are removed by dividing out the gcd the chain itself produces, and
    roots sitting exactly on a finite endpoint are deflated away so the open
    interval is honoured.
    """
    coeffs = p.real_coefficients()
    if not coeffs:
        raise ValueError("root counting is undefined for the zero polynomial")
    lo_f = lo if lo in (math.inf, -math.inf) else _as_fraction(lo)
    hi_f = hi if hi in (math.inf, -math.inf) else _as_fraction(hi)
    if not _lt_extended(lo_f, hi_f):
        raise ValueError("need lo < hi")
    work = list(coeffs)
    for endpoint in (lo_f, hi_f):
        if endpoint in (math.inf, -math.inf):
            continue
        while len(work) > 1 and _poly_value(work, endpoint) == 0:
            work = _deflate_root(work, endpoint)
    if len(work) == 1:
        return 0
    chain = _sturm_chain(_normalize_int(list(work)))
    last = chain[-1]
    if len(last) > 1:
        # Non-trivial gcd of (p, p'): strip repeated roots and recount.
        reduced = [Fraction(c) for c in _int_quotient(_normalize_int(list(work)), last)]
        return real_root_count(Poly(reduced), lo_f, hi_f)
    return _variations(chain, lo_f) - _variations(chain, hi_f)


def _int_quotient(a: list[int], b: list[int]) -> list[int]:
    # Quotient a/b over Q reduced to a primitive integer list (b divides a).
    af = [Fraction(c) for c in a]
    bf = [Fraction(c) for c in b]
    q: list[Fraction] = [Fraction(0)] * (len(af) - len(bf) + 1)
    rem = list(af)
    lead = bf[-1]
    for k in range(len(q) - 1, -1, -1):
        c = rem[k + len(bf) - 1] / lead
        q[k] = c
        for j, d in enumerate(bf):
            rem[k + j] -= c * d
    return _normalize_int(q)


def _poly_value(coeffs: list[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _lt_extended(a, b) -> bool:
    if a == -math.inf:
        return b != -math.inf
    if a == math.inf:
        return False
    if b == math.inf:
        return True
    if b == -math.inf:
        return False
    return a < b
