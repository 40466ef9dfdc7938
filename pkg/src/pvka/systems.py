"""Descriptors for the eleven shape-invariant quantum-mechanical systems.

Each system packages, in one place: the exact spectrum E_n and the forward /
backward factorisation coefficients, the parameter shift and discrete-symmetry
twist, exact polynomial constructors for the eigenstate polynomials P_n and
the twisted (pseudo-state) polynomials xi_v, the sinusoidal coordinate eta(x)
with its square-derivative polynomial S (eta'(x)^2 = S(eta)), and numeric
evaluators for the ground-state log-prefactors and the potential.

Exact data is kept in rationals end to end; parameters are restricted to
rationals so the determinant identities can be verified with no tolerance.
Polynomial constructors deliberately accept any generic rational parameters,
including negatively shifted ones outside the physical windows: the identity
checks are algebraic.  The physical validity predicates (``param_range``,
``pseudo_range``, ``n_max``) are consulted by the numeric spectral checks.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from typing import Mapping

from .algebra import GaussianRational, Poly
from . import ortho

Params = Mapping[str, Fraction]

F = Fraction
HALF = F(1, 2)


class UnknownSystemError(ValueError):
    """No system with the requested id."""


class InvalidParametersError(ValueError):
    """Parameter vector does not match the system's declared names."""


class NonGenericParameterError(ValueError):
    """A closed form degenerates at this parameter point (division by zero or
    a vanishing factorisation coefficient)."""


def _strict_floor(a: Fraction) -> int:
    """Greatest integer strictly less than a for integer a, else floor(a)."""
    fl = a.numerator // a.denominator
    return fl - 1 if fl == a else fl


def _fl(lam: Params, name: str) -> float:
    return float(lam[name])


class System:
    """Base class holding the shared shape-invariance bookkeeping."""

    id: str = "?"
    group: str = "?"                      # "A" or "B"
    param_names: tuple[str, ...] = ()
    delta: dict[str, Fraction] = {}
    cF: Fraction | None = None            # Group A only
    eps: int = 1                          # sign in the twisted forward shift
    eps_prime: int = 1                    # sign in the twisted backward shift
    infinite_spectrum: bool = True
    S: Poly = Poly.one()                  # eta'(x)^2 as a polynomial in eta
    deta_poly: Poly | None = None         # eta'(x) in eta, when polynomial (Group B)
    x_domain: tuple[float, float] = (-math.inf, math.inf)
    eta_domain: tuple = (-math.inf, math.inf)
    default_window: tuple[float, float] = (-5.0, 5.0)

    # ---------------------------------------------------------------- params
    def check_params(self, lam: Params) -> None:
        if set(lam) != set(self.param_names):
            raise InvalidParametersError(
                f"system {self.id} expects parameters {self.param_names}, "
                f"got {tuple(lam)}"
            )

    def shift(self, lam: Params, k: int) -> dict[str, Fraction]:
        """lam + k*delta, componentwise."""
        self.check_params(lam)
        return {n: lam[n] + k * self.delta.get(n, 0) for n in self.param_names}

    def neg(self, lam: Params) -> dict[str, Fraction]:
        """-lam, componentwise (appears in the twisted shift coefficients)."""
        return {n: -lam[n] for n in self.param_names}

    def twist(self, lam: Params) -> dict[str, Fraction]:
        raise NotImplementedError

    # ----------------------------------------------------------------- exact
    def energy(self, n: int, lam: Params) -> Fraction:
        raise NotImplementedError

    def f_coef(self, n: int, lam: Params) -> Fraction:
        """Forward-shift coefficient f_n."""
        raise NotImplementedError

    def b_coef(self, m: int, lam: Params) -> Fraction:
        """Backward-shift coefficient b_m (the factorisation mate of f_{m+1})."""
        raise NotImplementedError

    def eigen_poly(self, n: int, lam: Params) -> Poly:
        raise NotImplementedError

    def pseudo_poly(self, v: int, lam: Params) -> Poly:
        raise NotImplementedError

    def n_max(self, lam: Params):
        """Greatest eigenstate index, or None for an infinite tower."""
        return None

    def pseudo_range(self, v: int, lam: Params) -> bool:
        """Index window in which xi_v really is a pseudo virtual state."""
        return v >= 0

    def param_range(self, lam: Params) -> bool:
        return True

    # -------------------------------------------------------------- numerics
    def eta(self, x: float) -> float:
        raise NotImplementedError

    def deta(self, x: float) -> float:
        raise NotImplementedError

    def w(self, x: float, lam: Params) -> float:
        """log of the ground state, phi_0 = exp(w)."""
        raise NotImplementedError

    def dw(self, x: float, lam: Params) -> float:
        raise NotImplementedError

    def d2w(self, x: float, lam: Params) -> float:
        raise NotImplementedError

    def wt(self, x: float, lam: Params) -> float:
        """log of the pseudo ground prefactor (the v-independent part for
        Group A, the v = 0 one for Group B).  Defaults to w at twisted
        parameters; the imaginary-argument systems override."""
        return self.w(x, self.twist(lam))

    def dwt(self, x: float, lam: Params) -> float:
        return self.dw(x, self.twist(lam))

    def d2wt(self, x: float, lam: Params) -> float:
        return self.d2w(x, self.twist(lam))

    def potential(self, x: float, lam: Params) -> float:
        """Closed-form potential with zero ground-state energy."""
        raise NotImplementedError

    def norm_h(self, n: int, lam: Params) -> float:
        """Squared norm h_n of the n-th eigenstate."""
        raise NotImplementedError

    def __repr__(self):
        return f"<System {self.id}>"


# ---------------------------------------------------------------------------
# Group A systems
# ---------------------------------------------------------------------------


class Harmonic(System):
    """Harmonic oscillator; no parameters, eta(x) = x."""

    id = "H"
    group = "A"
    param_names = ()
    delta = {}
    cF = F(1)
    eps = -1
    S = Poly.one()
    default_window = (-5.0, 5.0)

    def twist(self, lam):
        return {}

    def energy(self, n, lam):
        return F(2 * n)

    def f_coef(self, n, lam):
        return F(2 * n)

    def b_coef(self, m, lam):
        return F(1)

    def eigen_poly(self, n, lam):
        return ortho.hermite(n)

    def pseudo_poly(self, v, lam):
        return ortho.imaginary_twist(ortho.hermite(v), v)

    def eta(self, x):
        return x

    def deta(self, x):
        return 1.0

    def w(self, x, lam):
        return -0.5 * x * x

    def dw(self, x, lam):
        return -x

    def d2w(self, x, lam):
        return -1.0

    def wt(self, x, lam):
        return 0.5 * x * x

    def dwt(self, x, lam):
        return x

    def d2wt(self, x, lam):
        return 1.0

    def potential(self, x, lam):
        return x * x - 1.0

    def norm_h(self, n, lam):
        return math.exp(n * math.log(2.0) + math.lgamma(n + 1) + 0.5 * math.log(math.pi))


class RadialOscillator(System):
    """Radial oscillator; eta(x) = x^2, Laguerre polynomials."""

    id = "L"
    group = "A"
    param_names = ("g",)
    delta = {"g": F(1)}
    cF = F(2)
    eps_prime = -1
    S = Poly([0, 4])
    x_domain = (0.0, math.inf)
    eta_domain = (F(0), math.inf)
    default_window = (0.1, 5.5)

    def twist(self, lam):
        return {"g": 1 - lam["g"]}

    def energy(self, n, lam):
        return F(4 * n)

    def f_coef(self, n, lam):
        return F(-2)

    def b_coef(self, m, lam):
        return F(-2 * (m + 1))

    def eigen_poly(self, n, lam):
        return ortho.laguerre(n, lam["g"] - HALF)

    def pseudo_poly(self, v, lam):
        return ortho.laguerre(v, HALF - lam["g"]).scale_argument(-1)

    def n_max(self, lam):
        return None

    def param_range(self, lam):
        return lam["g"] > HALF

    def eta(self, x):
        return x * x

    def deta(self, x):
        return 2.0 * x

    def w(self, x, lam):
        g = _fl(lam, "g")
        return -0.5 * x * x + g * math.log(x)

    def dw(self, x, lam):
        return -x + _fl(lam, "g") / x

    def d2w(self, x, lam):
        return -1.0 - _fl(lam, "g") / (x * x)

    def wt(self, x, lam):
        g = _fl(lam, "g")
        return 0.5 * x * x + (1.0 - g) * math.log(x)

    def dwt(self, x, lam):
        return x + (1.0 - _fl(lam, "g")) / x

    def d2wt(self, x, lam):
        return 1.0 - (1.0 - _fl(lam, "g")) / (x * x)

    def potential(self, x, lam):
        g = _fl(lam, "g")
        return x * x + g * (g - 1.0) / (x * x) - (1.0 + 2.0 * g)

    def norm_h(self, n, lam):
        g = _fl(lam, "g")
        return math.exp(math.lgamma(n + g + 0.5) - math.log(2.0) - math.lgamma(n + 1))


class PoschlTeller(System):
    """Trigonometric Darboux-Poschl-Teller well on (0, pi/2); Jacobi
    polynomials in eta(x) = cos 2x."""

    id = "J"
    group = "A"
    param_names = ("g", "h")
    delta = {"g": F(1), "h": F(1)}
    cF = F(-4)
    S = Poly([4, 0, -4])
    x_domain = (0.0, math.pi / 2)
    eta_domain = (F(-1), F(1))
    default_window = (0.05, math.pi / 2 - 0.05)

    def twist(self, lam):
        return {"g": 1 - lam["g"], "h": 1 - lam["h"]}

    def energy(self, n, lam):
        return 4 * n * (n + lam["g"] + lam["h"])

    def f_coef(self, n, lam):
        return -2 * (n + lam["g"] + lam["h"])

    def b_coef(self, m, lam):
        return F(-2 * (m + 1))

    def eigen_poly(self, n, lam):
        return ortho.jacobi(n, lam["g"] - HALF, lam["h"] - HALF)

    def pseudo_poly(self, v, lam):
        return ortho.jacobi(v, HALF - lam["g"], HALF - lam["h"])

    def pseudo_range(self, v, lam):
        return 0 <= v < lam["g"] + lam["h"] - 1

    def param_range(self, lam):
        return lam["g"] > F(3, 2) and lam["h"] > F(3, 2)

    def eta(self, x):
        return math.cos(2.0 * x)

    def deta(self, x):
        return -2.0 * math.sin(2.0 * x)

    def w(self, x, lam):
        return _fl(lam, "g") * math.log(math.sin(x)) + _fl(lam, "h") * math.log(math.cos(x))

    def dw(self, x, lam):
        return _fl(lam, "g") / math.tan(x) - _fl(lam, "h") * math.tan(x)

    def d2w(self, x, lam):
        return -_fl(lam, "g") / math.sin(x) ** 2 - _fl(lam, "h") / math.cos(x) ** 2

    def potential(self, x, lam):
        g, h = _fl(lam, "g"), _fl(lam, "h")
        return (
            g * (g - 1.0) / math.sin(x) ** 2
            + h * (h - 1.0) / math.cos(x) ** 2
            - (g + h) ** 2
        )

    def norm_h(self, n, lam):
        g, h = _fl(lam, "g"), _fl(lam, "h")
        return math.exp(
            math.lgamma(n + g + 0.5)
            + math.lgamma(n + h + 0.5)
            - math.log(2.0)
            - math.lgamma(n + 1)
            - math.log(2 * n + g + h)
            - math.lgamma(n + g + h)
        )


class Morse(System):
    """Morse potential; finitely many eigenstates, eta(x) = exp(-x)."""

    id = "M"
    group = "A"
    param_names = ("h", "mu")
    delta = {"h": F(-1), "mu": F(0)}
    cF = F(-1)
    infinite_spectrum = False
    S = Poly([0, 0, 1])
    eta_domain = (F(0), math.inf)
    default_window = (-4.5, 4.0)

    def twist(self, lam):
        return {"h": -1 - lam["h"], "mu": -lam["mu"]}

    def energy(self, n, lam):
        h = lam["h"]
        return h * h - (h - n) ** 2

    def f_coef(self, n, lam):
        if lam["mu"] == 0:
            raise NonGenericParameterError("Morse needs mu != 0")
        return (n - 2 * lam["h"]) / (2 * lam["mu"])

    def b_coef(self, m, lam):
        return -2 * (m + 1) * lam["mu"]

    def eigen_poly(self, n, lam):
        mu = lam["mu"]
        if mu == 0:
            raise NonGenericParameterError("Morse needs mu != 0")
        scale = F(1) / (2 * mu) ** n
        return scale * ortho.reversed_laguerre(n, 2 * lam["h"] - 2 * n, 2 * mu)

    def pseudo_poly(self, v, lam):
        t = self.twist(lam)
        mu = t["mu"]
        if mu == 0:
            raise NonGenericParameterError("Morse needs mu != 0")
        scale = F(1) / (2 * mu) ** v
        return scale * ortho.reversed_laguerre(v, 2 * t["h"] - 2 * v, 2 * mu)

    def n_max(self, lam):
        return _strict_floor(lam["h"])

    def param_range(self, lam):
        return lam["h"] > 0 and lam["mu"] > 0

    def eta(self, x):
        return math.exp(-x)

    def deta(self, x):
        return -math.exp(-x)

    def w(self, x, lam):
        return _fl(lam, "h") * x - _fl(lam, "mu") * math.exp(x)

    def dw(self, x, lam):
        return _fl(lam, "h") - _fl(lam, "mu") * math.exp(x)

    def d2w(self, x, lam):
        return -_fl(lam, "mu") * math.exp(x)

    def potential(self, x, lam):
        h, mu = _fl(lam, "h"), _fl(lam, "mu")
        e = math.exp(x)
        return mu * mu * e * e - mu * (2.0 * h + 1.0) * e + h * h

    def norm_h(self, n, lam):
        h, mu = _fl(lam, "h"), _fl(lam, "mu")
        return math.exp(
            math.lgamma(2 * h - n + 1)
            - 2 * h * math.log(2 * mu)
            - math.lgamma(n + 1)
            - math.log(2 * (h - n))
        )


class Soliton(System):
    """Reflectionless soliton well; eta(x) = sinh x."""

    id = "s"
    group = "A"
    param_names = ("h",)
    delta = {"h": F(-1)}
    cF = F(1)
    infinite_spectrum = False
    S = Poly([1, 0, 1])
    default_window = (-5.0, 5.0)

    def twist(self, lam):
        return {"h": -1 - lam["h"]}

    def energy(self, n, lam):
        h = lam["h"]
        return h * h - (h - n) ** 2

    def f_coef(self, n, lam):
        return lam["h"]

    def b_coef(self, m, lam):
        h = lam["h"]
        if h == 0:
            raise NonGenericParameterError("soliton needs h != 0")
        return (m + 1) * (2 * h - m - 1) / h

    @staticmethod
    def _poly_scale(n: int, h: Fraction) -> GaussianRational:
        # Ratio fixing the normalisation of the imaginary-argument Jacobi form.
        half = (n + 1) // 2
        num = ortho.pochhammer(h - (n - 1) // 2, half)
        den = ortho.pochhammer(h - n + HALF, half)
        if den.is_zero():
            raise NonGenericParameterError("soliton polynomial scale degenerates")
        return num / den

    def eigen_poly(self, n, lam):
        h = lam["h"]
        base = ortho.imaginary_twist(ortho.jacobi(n, -h - HALF, -h - HALF), n)
        sign = -1 if n % 2 else 1
        return (sign * self._poly_scale(n, h)) * base

    def pseudo_poly(self, v, lam):
        ht = -1 - lam["h"]
        base = ortho.imaginary_twist(ortho.jacobi(v, -ht - HALF, -ht - HALF), v)
        sign = -1 if v % 2 else 1
        return (sign * self._poly_scale(v, ht)) * base

    def n_max(self, lam):
        return _strict_floor(lam["h"])

    def param_range(self, lam):
        return lam["h"] > 0

    def eta(self, x):
        return math.sinh(x)

    def deta(self, x):
        return math.cosh(x)

    def w(self, x, lam):
        return -_fl(lam, "h") * math.log(math.cosh(x))

    def dw(self, x, lam):
        return -_fl(lam, "h") * math.tanh(x)

    def d2w(self, x, lam):
        return -_fl(lam, "h") / math.cosh(x) ** 2

    def potential(self, x, lam):
        h = _fl(lam, "h")
        return -h * (h + 1.0) / math.cosh(x) ** 2 + h * h

    def norm_h(self, n, lam):
        h = _fl(lam, "h")
        return math.exp(
            (2 * h - 2 * n) * math.log(2.0)
            + 2 * math.lgamma(h + 1)
            - math.lgamma(n + 1)
            - math.log(h - n)
            - math.lgamma(2 * h - n + 1)
        )


class HyperbolicSymmetricTop(System):
    """Hyperbolic symmetric top; complex-parameter Jacobi polynomials twisted
    back to real coefficients, eta(x) = sinh x."""

    id = "hst"
    group = "A"
    param_names = ("h", "mu")
    delta = {"h": F(-1), "mu": F(0)}
    cF = F(1)
    infinite_spectrum = False
    S = Poly([1, 0, 1])
    default_window = (-5.0, 5.0)

    def twist(self, lam):
        return {"h": -1 - lam["h"], "mu": -lam["mu"]}

    def energy(self, n, lam):
        h = lam["h"]
        return h * h - (h - n) ** 2

    def f_coef(self, n, lam):
        return (n - 2 * lam["h"]) / F(2)

    def b_coef(self, m, lam):
        return F(-2 * (m + 1))

    def eigen_poly(self, n, lam):
        h, mu = lam["h"], lam["mu"]
        alpha = GaussianRational(-h - HALF, -mu)
        p = ortho.imaginary_twist(ortho.jacobi(n, alpha, alpha.conjugate()), n)
        if not p.is_real():
            raise NonGenericParameterError("hst eigenpolynomial failed to be real")
        return p

    def pseudo_poly(self, v, lam):
        h, mu = lam["h"], lam["mu"]
        alpha = GaussianRational(h + HALF, mu)
        p = ortho.imaginary_twist(ortho.jacobi(v, alpha, alpha.conjugate()), v)
        if not p.is_real():
            raise NonGenericParameterError("hst pseudo polynomial failed to be real")
        return p

    def n_max(self, lam):
        return _strict_floor(lam["h"])

    def param_range(self, lam):
        return lam["h"] > 0 and lam["mu"] > 0

    def eta(self, x):
        return math.sinh(x)

    def deta(self, x):
        return math.cosh(x)

    def w(self, x, lam):
        return -_fl(lam, "h") * math.log(math.cosh(x)) - _fl(lam, "mu") * math.atan(
            math.sinh(x)
        )

    def dw(self, x, lam):
        return -_fl(lam, "h") * math.tanh(x) - _fl(lam, "mu") / math.cosh(x)

    def d2w(self, x, lam):
        c = math.cosh(x)
        return (-_fl(lam, "h") + _fl(lam, "mu") * math.sinh(x)) / (c * c)

    def potential(self, x, lam):
        h, mu = _fl(lam, "h"), _fl(lam, "mu")
        c2 = math.cosh(x) ** 2
        return (-h * (h + 1.0) + mu * mu + mu * (2.0 * h + 1.0) * math.sinh(x)) / c2 + h * h

    def norm_h(self, n, lam):
        from scipy.special import loggamma

        h, mu = _fl(lam, "h"), _fl(lam, "mu")
        log_cgamma2 = 2.0 * loggamma(complex(h - n + 0.5, mu)).real
        return math.exp(
            math.log(math.pi)
            + math.lgamma(2 * h - n + 1)
            - 2 * h * math.log(2.0)
            - math.lgamma(n + 1)
            - math.log(h - n)
            - log_cgamma2
        )


class HyperbolicPoschlTeller(System):
    """Hyperbolic Darboux-Poschl-Teller potential; eta(x) = cosh 2x."""

    id = "hDPT"
    group = "A"
    param_names = ("g", "h")
    delta = {"g": F(1), "h": F(-1)}
    cF = F(4)
    infinite_spectrum = False
    S = Poly([-4, 0, 4])
    x_domain = (0.0, math.inf)
    eta_domain = (F(1), math.inf)
    default_window = (0.08, 5.0)

    def twist(self, lam):
        return {"g": 1 - lam["g"], "h": -1 - lam["h"]}

    def energy(self, n, lam):
        return 4 * n * (lam["h"] - lam["g"] - n)

    def f_coef(self, n, lam):
        return 2 * (n + lam["g"] - lam["h"])

    def b_coef(self, m, lam):
        return F(-2 * (m + 1))

    def eigen_poly(self, n, lam):
        return ortho.jacobi(n, lam["g"] - HALF, -lam["h"] - HALF)

    def pseudo_poly(self, v, lam):
        return ortho.jacobi(v, HALF - lam["g"], lam["h"] + HALF)

    def n_max(self, lam):
        return _strict_floor((lam["h"] - lam["g"]) / 2)

    def param_range(self, lam):
        return lam["h"] > lam["g"] > HALF

    def eta(self, x):
        return math.cosh(2.0 * x)

    def deta(self, x):
        return 2.0 * math.sinh(2.0 * x)

    def w(self, x, lam):
        return _fl(lam, "g") * math.log(math.sinh(x)) - _fl(lam, "h") * math.log(
            math.cosh(x)
        )

    def dw(self, x, lam):
        return _fl(lam, "g") / math.tanh(x) - _fl(lam, "h") * math.tanh(x)

    def d2w(self, x, lam):
        return -_fl(lam, "g") / math.sinh(x) ** 2 - _fl(lam, "h") / math.cosh(x) ** 2

    def potential(self, x, lam):
        g, h = _fl(lam, "g"), _fl(lam, "h")
        return (
            g * (g - 1.0) / math.sinh(x) ** 2
            - h * (h + 1.0) / math.cosh(x) ** 2
            + (h - g) ** 2
        )

    def norm_h(self, n, lam):
        g, h = _fl(lam, "g"), _fl(lam, "h")
        return math.exp(
            math.lgamma(n + g + 0.5)
            + math.lgamma(h - g - n + 1)
            - math.log(2.0)
            - math.lgamma(n + 1)
            - math.log(h - g - 2 * n)
            - math.lgamma(h - n + 0.5)
        )


# ---------------------------------------------------------------------------
# Group B systems
# ---------------------------------------------------------------------------


class Coulomb(System):
    """Coulomb potential plus centrifugal barrier; eta(x) = 1/x and
    reversed-argument Laguerre polynomials."""

    id = "C"
    group = "B"
    param_names = ("g",)
    delta = {"g": F(1)}
    S = Poly([0, 0, 0, 0, 1])
    deta_poly = Poly([0, 0, -1])
    x_domain = (0.0, math.inf)
    eta_domain = (F(0), math.inf)
    default_window = (0.25, 45.0)

    def twist(self, lam):
        return {"g": 1 - lam["g"]}

    def _safe(self, q: Fraction, what: str) -> Fraction:
        if q == 0:
            raise NonGenericParameterError(f"Coulomb {what} degenerates")
        return q

    def energy(self, n, lam):
        g = self._safe(lam["g"], "g")
        gn = self._safe(g + n, "g+n")
        return 1 / g**2 - 1 / gn**2

    def f_coef(self, n, lam):
        g = self._safe(lam["g"], "g")
        gn = self._safe(g + n, "g+n")
        return F(-2) / (g * gn**2)

    def b_coef(self, m, lam):
        g = self._safe(lam["g"], "g")
        return -(m + 1) * (2 * g + m + 1) / (2 * g)

    def eigen_poly(self, n, lam):
        gn = self._safe(lam["g"] + n, "g+n")
        return ortho.reversed_laguerre(n, 2 * lam["g"] - 1, F(2) / gn)

    def pseudo_poly(self, v, lam):
        gt = 1 - lam["g"]
        gv = self._safe(gt + v, "1-g+v")
        return ortho.reversed_laguerre(v, 2 * gt - 1, F(2) / gv)

    def pseudo_range(self, v, lam):
        return 0 <= v < lam["g"] - 1

    def param_range(self, lam):
        return lam["g"] > HALF

    def eta(self, x):
        return 1.0 / x

    def deta(self, x):
        return -1.0 / (x * x)

    def w(self, x, lam):
        g = _fl(lam, "g")
        return g * math.log(x) - x / g

    def dw(self, x, lam):
        g = _fl(lam, "g")
        return g / x - 1.0 / g

    def d2w(self, x, lam):
        return -_fl(lam, "g") / (x * x)

    def potential(self, x, lam):
        g = _fl(lam, "g")
        return g * (g - 1.0) / (x * x) - 2.0 / x + 1.0 / (g * g)

    def norm_h(self, n, lam):
        g = _fl(lam, "g")
        return math.exp(
            (2 * g + 2) * math.log((g + n) / 2.0)
            + math.log(4.0)
            - math.lgamma(n + 1)
            + math.lgamma(2 * g + n)
        )


class KeplerSpherical(System):
    """Kepler problem on the sphere; eta(x) = cot x, complex-parameter Jacobi
    polynomials twisted back to real coefficients."""

    id = "K"
    group = "B"
    param_names = ("g", "mu")
    delta = {"g": F(1), "mu": F(0)}
    S = (Poly([1, 0, 1])) ** 2
    deta_poly = Poly([-1, 0, -1])
    x_domain = (0.0, math.pi)
    eta_domain = (-math.inf, math.inf)
    default_window = (0.15, math.pi - 0.15)

    def twist(self, lam):
        return {"g": 1 - lam["g"], "mu": lam["mu"]}

    def _gn(self, lam, n) -> Fraction:
        gn = lam["g"] + n
        if gn == 0:
            raise NonGenericParameterError("Kepler(spherical) g+n degenerates")
        return gn

    def energy(self, n, lam):
        g, mu = lam["g"], lam["mu"]
        if g == 0:
            raise NonGenericParameterError("Kepler(spherical) g degenerates")
        gn = self._gn(lam, n)
        return gn**2 - g**2 + mu**2 / g**2 - mu**2 / gn**2

    def f_coef(self, n, lam):
        g, mu = lam["g"], lam["mu"]
        if g == 0:
            raise NonGenericParameterError("Kepler(spherical) g degenerates")
        gn = self._gn(lam, n)
        return (g**2 * gn**2 + mu**2) / (g * gn**2)

    def b_coef(self, m, lam):
        g = lam["g"]
        if g == 0:
            raise NonGenericParameterError("Kepler(spherical) g degenerates")
        return (m + 1) * (2 * g + m + 1) / g

    def _poly(self, n: int, g: Fraction, mu: Fraction) -> Poly:
        gn = g + n
        if gn == 0:
            raise NonGenericParameterError("Kepler(spherical) g+n degenerates")
        alpha = GaussianRational(-g - n, mu / gn)
        p = ortho.imaginary_twist(ortho.jacobi(n, alpha, alpha.conjugate()), n)
        if not p.is_real():
            raise NonGenericParameterError("K polynomial failed to be real")
        return p

    def eigen_poly(self, n, lam):
        return self._poly(n, lam["g"], lam["mu"])

    def pseudo_poly(self, v, lam):
        return self._poly(v, 1 - lam["g"], lam["mu"])

    def pseudo_range(self, v, lam):
        return 0 <= v < 2 * lam["g"] - 1

    def param_range(self, lam):
        return lam["g"] > F(3, 2) and lam["mu"] > 0

    def eta(self, x):
        return 1.0 / math.tan(x)

    def deta(self, x):
        return -1.0 / math.sin(x) ** 2

    def w(self, x, lam):
        g, mu = _fl(lam, "g"), _fl(lam, "mu")
        return g * math.log(math.sin(x)) - mu * x / g

    def dw(self, x, lam):
        g, mu = _fl(lam, "g"), _fl(lam, "mu")
        return g / math.tan(x) - mu / g

    def d2w(self, x, lam):
        return -_fl(lam, "g") / math.sin(x) ** 2

    def potential(self, x, lam):
        g, mu = _fl(lam, "g"), _fl(lam, "mu")
        return (
            g * (g - 1.0) / math.sin(x) ** 2
            - 2.0 * mu / math.tan(x)
            + mu * mu / (g * g)
            - g * g
        )

    def norm_h(self, n, lam):
        from scipy.special import loggamma

        g, mu = _fl(lam, "g"), _fl(lam, "mu")
        gn = g + n
        log_cgamma2 = 2.0 * loggamma(complex(g, mu / gn)).real
        return math.exp(
            -math.pi * mu / gn
            + (1 - 2 * gn) * math.log(2.0)
            + math.log(math.pi * gn)
            + math.lgamma(2 * g + n)
            - math.lgamma(n + 1)
            - math.log(gn * gn + (mu / gn) ** 2)
            - log_cgamma2
        )


class RosenMorse(System):
    """Rosen-Morse II potential; eta(x) = tanh x."""

    id = "RM"
    group = "B"
    param_names = ("h", "mu")
    delta = {"h": F(-1), "mu": F(0)}
    infinite_spectrum = False
    S = (Poly([1, 0, -1])) ** 2
    deta_poly = Poly([1, 0, -1])
    eta_domain = (F(-1), F(1))
    default_window = (-5.0, 5.0)

    def twist(self, lam):
        return {"h": -1 - lam["h"], "mu": lam["mu"]}

    def _hn(self, lam, n) -> Fraction:
        hn = lam["h"] - n
        if hn == 0:
            raise NonGenericParameterError("Rosen-Morse h-n degenerates")
        return hn

    def energy(self, n, lam):
        h, mu = lam["h"], lam["mu"]
        if h == 0:
            raise NonGenericParameterError("Rosen-Morse h degenerates")
        hn = self._hn(lam, n)
        return h**2 - hn**2 + mu**2 / h**2 - mu**2 / hn**2

    def f_coef(self, n, lam):
        h, mu = lam["h"], lam["mu"]
        if h == 0:
            raise NonGenericParameterError("Rosen-Morse h degenerates")
        hn = self._hn(lam, n)
        return (h**2 * hn**2 - mu**2) / (h * hn**2)

    def b_coef(self, m, lam):
        h = lam["h"]
        if h == 0:
            raise NonGenericParameterError("Rosen-Morse h degenerates")
        return (m + 1) * (2 * h - m - 1) / h

    def _poly(self, n: int, h: Fraction, mu: Fraction) -> Poly:
        hn = h - n
        if hn == 0:
            raise NonGenericParameterError("Rosen-Morse h-n degenerates")
        return ortho.jacobi(n, hn + mu / hn, hn - mu / hn)

    def eigen_poly(self, n, lam):
        return self._poly(n, lam["h"], lam["mu"])

    def pseudo_poly(self, v, lam):
        return self._poly(v, -1 - lam["h"], lam["mu"])

    def n_max(self, lam):
        h, mu = lam["h"], lam["mu"]
        n = _strict_floor(h)
        while n >= 0 and (h - n) ** 2 <= mu:
            n -= 1
        return n

    def param_range(self, lam):
        h, mu = lam["h"], lam["mu"]
        return h > 0 and 0 < mu < h * h

    def eta(self, x):
        return math.tanh(x)

    def deta(self, x):
        return 1.0 / math.cosh(x) ** 2

    def w(self, x, lam):
        h, mu = _fl(lam, "h"), _fl(lam, "mu")
        return -h * math.log(math.cosh(x)) - mu * x / h

    def dw(self, x, lam):
        h, mu = _fl(lam, "h"), _fl(lam, "mu")
        return -h * math.tanh(x) - mu / h

    def d2w(self, x, lam):
        return -_fl(lam, "h") / math.cosh(x) ** 2

    def potential(self, x, lam):
        h, mu = _fl(lam, "h"), _fl(lam, "mu")
        return (
            -h * (h + 1.0) / math.cosh(x) ** 2
            + 2.0 * mu * math.tanh(x)
            + h * h
            + mu * mu / (h * h)
        )

    def norm_h(self, n, lam):
        h, mu = _fl(lam, "h"), _fl(lam, "mu")
        hn = h - n
        return math.exp(
            (2 * h - 2 * n) * math.log(2.0)
            + math.log(hn)
            + math.lgamma(h + mu / hn + 1)
            + math.lgamma(h - mu / hn + 1)
            - math.lgamma(n + 1)
            - math.log(hn * hn - (mu / hn) ** 2)
            - math.lgamma(2 * h - n + 1)
        )


class KeplerHyperbolic(System):
    """Kepler problem in hyperbolic space (Eckart potential); eta(x) = coth x."""

    id = "Kh"
    group = "B"
    param_names = ("g", "mu")
    delta = {"g": F(1), "mu": F(0)}
    infinite_spectrum = False
    S = (Poly([1, 0, -1])) ** 2
    deta_poly = Poly([1, 0, -1])
    x_domain = (0.0, math.inf)
    eta_domain = (F(1), math.inf)
    default_window = (0.1, 6.0)

    def twist(self, lam):
        return {"g": 1 - lam["g"], "mu": lam["mu"]}

    def _gn(self, lam, n) -> Fraction:
        gn = lam["g"] + n
        if gn == 0:
            raise NonGenericParameterError("Kepler(hyperbolic) g+n degenerates")
        return gn

    def energy(self, n, lam):
        g, mu = lam["g"], lam["mu"]
        if g == 0:
            raise NonGenericParameterError("Kepler(hyperbolic) g degenerates")
        gn = self._gn(lam, n)
        return g**2 - gn**2 + mu**2 / g**2 - mu**2 / gn**2

    def f_coef(self, n, lam):
        g, mu = lam["g"], lam["mu"]
        if g == 0:
            raise NonGenericParameterError("Kepler(hyperbolic) g degenerates")
        gn = self._gn(lam, n)
        return (mu**2 - g**2 * gn**2) / (g * gn**2)

    def b_coef(self, m, lam):
        g = lam["g"]
        if g == 0:
            raise NonGenericParameterError("Kepler(hyperbolic) g degenerates")
        return (m + 1) * (2 * g + m + 1) / g

    def _poly(self, n: int, g: Fraction, mu: Fraction) -> Poly:
        gn = g + n
        if gn == 0:
            raise NonGenericParameterError("Kepler(hyperbolic) g+n degenerates")
        return ortho.jacobi(n, -g - n + mu / gn, -g - n - mu / gn)

    def eigen_poly(self, n, lam):
        return self._poly(n, lam["g"], lam["mu"])

    def pseudo_poly(self, v, lam):
        return self._poly(v, 1 - lam["g"], lam["mu"])

    def pseudo_range(self, v, lam):
        g, mu = lam["g"], lam["mu"]
        return 0 <= v < g - 1 or v > mu / g + g - 1

    def n_max(self, lam):
        g, mu = lam["g"], lam["mu"]
        n = 0
        while (g + n + 1) ** 2 < mu:
            n += 1
        return n

    def param_range(self, lam):
        g, mu = lam["g"], lam["mu"]
        return g > HALF and mu > g * g

    def eta(self, x):
        return 1.0 / math.tanh(x)

    def deta(self, x):
        return -1.0 / math.sinh(x) ** 2

    def w(self, x, lam):
        g, mu = _fl(lam, "g"), _fl(lam, "mu")
        return g * math.log(math.sinh(x)) - mu * x / g

    def dw(self, x, lam):
        g, mu = _fl(lam, "g"), _fl(lam, "mu")
        return g / math.tanh(x) - mu / g

    def d2w(self, x, lam):
        return -_fl(lam, "g") / math.sinh(x) ** 2

    def potential(self, x, lam):
        g, mu = _fl(lam, "g"), _fl(lam, "mu")
        return (
            g * (g - 1.0) / math.sinh(x) ** 2
            - 2.0 * mu / math.tanh(x)
            + g * g
            + mu * mu / (g * g)
        )

    def norm_h(self, n, lam):
        g, mu = _fl(lam, "g"), _fl(lam, "mu")
        gn = g + n
        return math.exp(
            math.log(gn)
            + math.lgamma(1 - g + mu / gn)
            + math.lgamma(2 * g + n)
            - (2 * g + 2 * n) * math.log(2.0)
            - math.lgamma(n + 1)
            - math.log((mu / gn) ** 2 - gn * gn)
            - math.lgamma(g + mu / gn)
        )


_SYSTEM_CLASSES = (
    Harmonic,
    RadialOscillator,
    PoschlTeller,
    Coulomb,
    KeplerSpherical,
    Morse,
    Soliton,
    RosenMorse,
    HyperbolicSymmetricTop,
    KeplerHyperbolic,
    HyperbolicPoschlTeller,
)

SYSTEMS: dict[str, System] = {cls.id: cls() for cls in _SYSTEM_CLASSES}

SYSTEM_IDS = tuple(SYSTEMS)

GROUP_A = tuple(s.id for s in SYSTEMS.values() if s.group == "A")
GROUP_B = tuple(s.id for s in SYSTEMS.values() if s.group == "B")


def descriptor(system_id: str) -> System:
    """Look up a system by its short id (H, L, J, C, K, M, s, RM, hst, Kh, hDPT)."""
    try:
        return SYSTEMS[system_id]
    except KeyError:
        raise UnknownSystemError(f"unknown system id {system_id!r}") from None


def energy(system_id: str, n: int, lam: Params) -> Fraction:
    return descriptor(system_id).energy(n, lam)


def eigen_poly(system_id: str, n: int, lam: Params) -> Poly:
    return descriptor(system_id).eigen_poly(n, lam)


def pseudo_poly(system_id: str, v: int, lam: Params) -> Poly:
    return descriptor(system_id).pseudo_poly(v, lam)


def shift_params(system_id: str, lam: Params, k: int) -> dict[str, Fraction]:
    return descriptor(system_id).shift(lam, k)


def nmax(system_id: str, lam: Params):
    return descriptor(system_id).n_max(lam)
