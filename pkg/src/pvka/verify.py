"""Check suites: exact proportionality identities, numeric potential and
eigenfunction equivalence, spectral and orthogonality checks, and the
Krein-Adler nodelessness gate.

Exact checks carry no tolerance.  Numeric checks compute every second
log-derivative analytically from the factorisation prefactor(x) * Xi(eta(x))
with exact polynomial derivatives; finite differences appear only in the
Schrodinger residual check, where they are the independent oracle.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .algebra import Poly, proportional, real_root_count
from .deform import (
    DeletionSpec,
    bar_set,
    ell,
    ka_condition,
    numerator_poly,
    xi_bar_capital,
    xi_capital,
)
from .systems import NonGenericParameterError, Params, System, descriptor

F = Fraction


class SingularPointError(ArithmeticError):
    """A polynomial zero sits within margin of a grid point where the
    configuration promised a regular potential."""


class QuadratureFailureError(ArithmeticError):
    """Adaptive quadrature failed to converge."""


# ---------------------------------------------------------------------------
# Result containers
# ---------------------------------------------------------------------------


@dataclass
class GridSpec:
    """Evaluation grid, strictly inside the physical x-interval."""

    lo: float
    hi: float
    count: int = 201
    spacing: str = "linear"
    margin: float = 1e-3

    def points(self) -> list[float]:
        if self.count < 2:
            return [0.5 * (self.lo + self.hi)]
        if self.spacing == "log":
            if self.lo <= 0:
                raise ValueError("log spacing needs lo > 0")
            llo, lhi = math.log(self.lo), math.log(self.hi)
            return [
                math.exp(llo + (lhi - llo) * k / (self.count - 1))
                for k in range(self.count)
            ]
        return [
            self.lo + (self.hi - self.lo) * k / (self.count - 1)
            for k in range(self.count)
        ]

    @staticmethod
    def for_system(sys_: System, count: int = 201) -> "GridSpec":
        lo, hi = sys_.default_window
        return GridSpec(lo, hi, count)


@dataclass
class CheckResult:
    name: str
    status: str                      # "pass" | "fail" | "skipped"
    max_abs_error: float | None = None
    constant: str | None = None
    details: str = ""

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    @property
    def failed(self) -> bool:
        return self.status == "fail"

    def as_dict(self) -> dict:
        out: dict = {"name": self.name, "status": self.status}
        if self.max_abs_error is not None:
            out["max_abs_error"] = self.max_abs_error
        if self.constant is not None:
            out["constant"] = self.constant
        if self.details:
            out["details"] = self.details
        return out


@dataclass
class VerificationReport:
    spec: dict
    results: list[CheckResult] = field(default_factory=list)
    wall_time: float = 0.0

    def add(self, result: CheckResult) -> CheckResult:
        if any(r.name == result.name for r in self.results):
            raise ValueError(f"duplicate check name {result.name!r}")
        self.results.append(result)
        return result

    def summary(self) -> dict:
        return {
            "pass": sum(r.status == "pass" for r in self.results),
            "fail": sum(r.status == "fail" for r in self.results),
            "skipped": sum(r.status == "skipped" for r in self.results),
        }

    @property
    def ok(self) -> bool:
        return not any(r.failed for r in self.results)

    def as_dict(self) -> dict:
        return {
            "spec": self.spec,
            "results": [r.as_dict() for r in self.results],
            "summary": self.summary(),
        }


def _skip(name: str, exc: Exception) -> CheckResult:
    return CheckResult(name, "skipped", details=f"non-generic parameters: {exc}")


# ---------------------------------------------------------------------------
# Exact checks
# ---------------------------------------------------------------------------


def check_identity(spec: DeletionSpec) -> CheckResult:
    """Core determinant identity: Xi_D(lam) is proportional, with a nonzero
    exact constant, to Xibar_Dbar(lam_bar)."""
    name = "identity"
    try:
        xi = xi_capital(spec.system, spec.lam, spec.D)
        xib = xi_bar_capital(spec.system, spec.lam_bar, spec.Dbar)
    except NonGenericParameterError as exc:
        return _skip(name, exc)
    c = proportional(xi, xib)
    expected_deg = ell(spec.D)
    notes = []
    if xi.degree != expected_deg:
        notes.append(f"degree drop: deg Xi = {xi.degree}, generic {expected_deg}")
    if c is None or c.is_zero():
        return CheckResult(name, "fail", details="polynomials not proportional; " + "; ".join(notes))
    return CheckResult(name, "pass", constant=str(c), details="; ".join(notes))


def check_numerator_identity(spec: DeletionSpec, n: int) -> CheckResult:
    """Numerator chain: P_{D,n}(lam) proportional to the eigenstate-side
    numerator at level N+1+n with shifted parameters."""
    name = f"numerator[n={n}]"
    try:
        lhs = numerator_poly(spec.system, spec.lam, spec.D, n)
        rhs = xi_bar_capital(spec.system, spec.lam_bar, spec.Dbar + (spec.N + 1 + n,))
    except NonGenericParameterError as exc:
        return _skip(name, exc)
    c = proportional(lhs, rhs)
    if c is None or c.is_zero():
        return CheckResult(name, "fail", details="numerator polynomials not proportional")
    return CheckResult(name, "pass", constant=str(c))


def check_deleted_identity(spec: DeletionSpec, j: int) -> CheckResult:
    """Deleted-state chain (1-based j): Xi with d_j removed is proportional to
    the eigenstate-side numerator at level N - d_j."""
    name = f"deleted[j={j}]"
    if not 1 <= j <= spec.M:
        raise ValueError(f"j must lie in 1..{spec.M}")
    sub = spec.D[: j - 1] + spec.D[j:]
    try:
        lhs = xi_capital(spec.system, spec.lam, sub)
        rhs = xi_bar_capital(
            spec.system, spec.lam_bar, spec.Dbar + (spec.N - spec.D[j - 1],)
        )
    except NonGenericParameterError as exc:
        return _skip(name, exc)
    c = proportional(lhs, rhs)
    if c is None or c.is_zero():
        return CheckResult(name, "fail", details="deleted-state polynomials not proportional")
    return CheckResult(name, "pass", constant=str(c))


def check_shift_down(system: str, lam: Params, D: Sequence[int]) -> CheckResult:
    """Xibar_{D + {0}}(lam) proportional to Xibar_{D-}(lam + delta)."""
    name = "shift_down"
    sys_ = descriptor(system)
    ds = tuple(D)
    if not ds or min(ds) < 1:
        raise ValueError("shift_down needs min(D) >= 1")
    try:
        lhs = xi_bar_capital(system, lam, ds + (0,))
        rhs = xi_bar_capital(system, sys_.shift(lam, 1), tuple(d - 1 for d in ds))
    except NonGenericParameterError as exc:
        return _skip(name, exc)
    c = proportional(lhs, rhs)
    if c is None or c.is_zero():
        return CheckResult(name, "fail", details="downward shift identity broken")
    return CheckResult(name, "pass", constant=str(c))


def check_shift_up(system: str, lam: Params, D: Sequence[int]) -> CheckResult:
    """P_{D,0}(lam) proportional to Xi_{D+}(lam + delta)."""
    name = "shift_up"
    sys_ = descriptor(system)
    ds = tuple(D)
    try:
        lhs = numerator_poly(system, lam, ds, 0)
        rhs = xi_capital(system, sys_.shift(lam, 1), tuple(d + 1 for d in ds))
    except NonGenericParameterError as exc:
        return _skip(name, exc)
    c = proportional(lhs, rhs)
    if c is None or c.is_zero():
        return CheckResult(name, "fail", details="upward shift identity broken")
    return CheckResult(name, "pass", constant=str(c))


def check_xi_const(system: str, lam: Params, N: int) -> CheckResult:
    """Xibar over the full level set {0..N} must be a nonzero constant."""
    name = f"xi_const[N={N}]"
    try:
        xib = xi_bar_capital(system, lam, tuple(range(N + 1)))
    except NonGenericParameterError as exc:
        return _skip(name, exc)
    if xib.degree == 0:
        return CheckResult(name, "pass", constant=str(xib.coeffs[0]))
    return CheckResult(
        name, "fail", details=f"expected degree 0, got degree {xib.degree}"
    )


def check_energy_formulas(
    system: str, lam: Params, N: int, n_range: Sequence[int], v_range: Sequence[int]
) -> CheckResult:
    """Exact spectral bookkeeping between the original and shifted systems."""
    name = f"energy_formulas[N={N}]"
    sys_ = descriptor(system)
    try:
        lam_bar = sys_.shift(lam, -(N + 1))
        shift_energy = sys_.energy(-N - 1, lam)
        for n in n_range:
            if sys_.energy(n, lam) - shift_energy != sys_.energy(N + 1 + n, lam_bar):
                return CheckResult(name, "fail", details=f"eigen level n={n} mismatch")
        for v in v_range:
            if sys_.energy(-v - 1, lam) - shift_energy != sys_.energy(N - v, lam_bar):
                return CheckResult(name, "fail", details=f"pseudo level v={v} mismatch")
    except NonGenericParameterError as exc:
        return _skip(name, exc)
    return CheckResult(name, "pass")


# ---------------------------------------------------------------------------
# Numeric evaluators
# ---------------------------------------------------------------------------


def _float_coeffs(p: Poly) -> list[float]:
    out = []
    for c in p.real_coefficients():
        try:
            out.append(float(c))
        except OverflowError as exc:  # pragma: no cover - astronomically large
            raise ArithmeticError("polynomial coefficient overflowed a double") from exc
    return out


def _horner(cs: Sequence[float], x: float) -> float:
    v = 0.0
    for c in reversed(cs):
        v = v * x + c
    return v


def _horner_abs(cs: Sequence[float], x: float) -> float:
    """sum |c_k| |x|^k, the natural magnitude scale of the evaluation."""
    ax = abs(x)
    v = 0.0
    for c in reversed(cs):
        v = v * ax + abs(c)
    return v


def _poly_log_eval(cs: Sequence[float], x: float) -> tuple[float, float]:
    """(sign, log|p(x)|) robust against overflow for |x| >> 1."""
    if not cs:
        return 0.0, -math.inf
    if abs(x) <= 1.0:
        v = _horner(cs, x)
        if v == 0.0:
            return 0.0, -math.inf
        return math.copysign(1.0, v), math.log(abs(v))
    # factor out x^deg and evaluate in 1/x
    inv = 1.0 / x
    v = _horner(list(reversed(cs)), inv)
    if v == 0.0:
        return 0.0, -math.inf
    deg = len(cs) - 1
    sign = math.copysign(1.0, v) * (1.0 if x > 0 or deg % 2 == 0 else -1.0)
    return sign, math.log(abs(v)) + deg * math.log(abs(x))


class _PolyData:
    """Float coefficients of p, p', p'' plus a singularity guard."""

    __slots__ = ("c0", "c1", "c2")

    def __init__(self, p: Poly):
        self.c0 = _float_coeffs(p)
        self.c1 = _float_coeffs(p.derivative())
        self.c2 = _float_coeffs(p.derivative().derivative())

    def value(self, eta: float) -> float:
        return _horner(self.c0, eta)

    def near_zero(self, eta: float, rel: float = 1e-9) -> bool:
        return abs(_horner(self.c0, eta)) <= rel * max(_horner_abs(self.c0, eta), 1e-300)

    def log_ratios(self, eta: float) -> tuple[float, float]:
        """(p'/p, p''/p) at eta."""
        v = _horner(self.c0, eta)
        return _horner(self.c1, eta) / v, _horner(self.c2, eta) / v


class _SData:
    """Float data of the square-derivative polynomial S(eta) = eta'(x)^2."""

    __slots__ = ("s0", "s1", "s2")

    def __init__(self, sys_: System):
        self.s0 = _float_coeffs(sys_.S)
        self.s1 = _float_coeffs(sys_.S.derivative())
        self.s2 = _float_coeffs(sys_.S.derivative().derivative())

    def d2_log_etaprime(self, eta: float) -> float:
        s = _horner(self.s0, eta)
        s1 = _horner(self.s1, eta)
        s2 = _horner(self.s2, eta)
        return 0.5 * s2 - s1 * s1 / (4.0 * s)

    def eta_dd(self, eta: float) -> float:
        """eta''(x) expressed through eta: S'(eta)/2."""
        return 0.5 * _horner(self.s1, eta)

    def eta_d_sq(self, eta: float) -> float:
        return _horner(self.s0, eta)


def _d2_log_poly(sys_: System, pd: _PolyData, sd: _SData, x: float) -> float:
    """d^2/dx^2 log |p(eta(x))| from exact polynomial derivatives."""
    eta = sys_.eta(x)
    r1, r2 = pd.log_ratios(eta)
    return sd.eta_dd(eta) * r1 + sd.eta_d_sq(eta) * (r2 - r1 * r1)


# -- prefactors -------------------------------------------------------------


def _log_u(sys_: System, x: float) -> float:
    # u = eta'/cF = phi_0(lam+delta)/phi_0(lam) is positive on the open domain.
    return math.log(abs(sys_.deta(x))) - math.log(abs(float(sys_.cF)))


def _prefactor_bar_logs(sys_: System, lam: Params, D: Sequence[int]):
    """(log, d2log) evaluators of the eigenstate-side prefactor Abar_D."""
    m = len(D)
    if sys_.group == "A":
        c2 = m * (m - 1) // 2
        sd = _SData(sys_)

        def logv(x: float) -> float:
            return m * sys_.w(x, lam) + c2 * _log_u(sys_, x)

        def d2v(x: float) -> float:
            return m * sys_.d2w(x, lam) + c2 * sd.d2_log_etaprime(sys_.eta(x))

        return logv, d2v
    lams = [sys_.shift(lam, d) for d in D]

    def logv(x: float) -> float:
        return sum(sys_.w(x, lm) for lm in lams)

    def d2v(x: float) -> float:
        return sum(sys_.d2w(x, lm) for lm in lams)

    return logv, d2v


def _prefactor_pseudo_logs(sys_: System, lam: Params, D: Sequence[int]):
    """(log, d2log) evaluators of the pseudo-state-side prefactor A_D."""
    m = len(D)
    if sys_.group == "A":
        c2 = m * (m - 1) // 2
        sd = _SData(sys_)

        def logv(x: float) -> float:
            return m * sys_.wt(x, lam) + c2 * _log_u(sys_, x)

        def d2v(x: float) -> float:
            return m * sys_.d2wt(x, lam) + c2 * sd.d2_log_etaprime(sys_.eta(x))

        return logv, d2v
    t = sys_.twist(lam)
    lams = [sys_.shift(t, d) for d in D]

    def logv(x: float) -> float:
        return sum(sys_.w(x, lm) for lm in lams)

    def d2v(x: float) -> float:
        return sum(sys_.d2w(x, lm) for lm in lams)

    return logv, d2v


def prefactor_A(system: str, lam: Params, D: Sequence[int]) -> Callable[[float], float]:
    """Numeric A_D(x; lam), the pseudo-state Wronskian prefactor."""
    sys_ = descriptor(system)
    logv, _ = _prefactor_pseudo_logs(sys_, lam, tuple(D))
    return lambda x: math.exp(logv(x))

def prefactor_Abar(system: str, lam: Params, D: Sequence[int]) -> Callable[[float], float]:
    """Numeric Abar_D(x; lam), the eigenstate Wronskian prefactor."""
    sys_ = descriptor(system)
    logv, _ = _prefactor_bar_logs(sys_, lam, tuple(D))
    return lambda x: math.exp(logv(x))


def F_ratio(system: str, lam: Params, N: int) -> Callable[[float], float]:
    """Numeric F(x, N, lam) = A_{0..N}(x; lam)."""
    sys_ = descriptor(system)
    logv, _ = _prefactor_pseudo_logs(sys_, lam, tuple(range(N + 1)))
    return lambda x: math.exp(logv(x))


# -- deformed potentials ------------------------------------------------------


def _u_dc_parts(spec: DeletionSpec):
    sys_ = descriptor(spec.system)
    xi = xi_capital(spec.system, spec.lam, spec.D)
    pd = _PolyData(xi)
    sd = _SData(sys_)
    _, d2pref = _prefactor_pseudo_logs(sys_, spec.lam, spec.D)

    def u(x: float) -> float:
        return (
            sys_.potential(x, spec.lam)
            - 2.0 * d2pref(x)
            - 2.0 * _d2_log_poly(sys_, pd, sd, x)
        )

    return u, pd


def _u_ka_parts(spec: DeletionSpec):
    sys_ = descriptor(spec.system)
    xib = xi_bar_capital(spec.system, spec.lam_bar, spec.Dbar)
    pd = _PolyData(xib)
    sd = _SData(sys_)
    _, d2pref = _prefactor_bar_logs(sys_, spec.lam_bar, spec.Dbar)

    def u(x: float) -> float:
        return (
            sys_.potential(x, spec.lam_bar)
            - 2.0 * d2pref(x)
            - 2.0 * _d2_log_poly(sys_, pd, sd, x)
        )

    return u, pd


def deformed_potential_dc(spec: DeletionSpec) -> Callable[[float], float]:
    """U^DC(x): the original potential deformed by the pseudo-state Wronskian."""
    return _u_dc_parts(spec)[0]


def deformed_potential_ka(spec: DeletionSpec) -> Callable[[float], float]:
    """U^KA(x): the shifted potential deformed by the eigenstate Wronskian."""
    return _u_ka_parts(spec)[0]


# -- deformed eigenfunctions --------------------------------------------------


def phi_dc(spec: DeletionSpec, n: int) -> Callable[[float], float]:
    """The n-th surviving eigenfunction of the deformed system, exactly the
    Wronskian ratio W[pseudo..., phi_n] / W[pseudo...] with no normalisation
    slack (so the closed-form norm applies verbatim)."""
    sys_ = descriptor(spec.system)
    num = _PolyData(numerator_poly(spec.system, spec.lam, spec.D, n))
    den = _PolyData(xi_capital(spec.system, spec.lam, spec.D))
    if sys_.group == "A":
        lam_pref = sys_.shift(spec.lam, -spec.M)
    else:
        lam_pref = sys_.shift(spec.lam, n)

    def phi(x: float) -> float:
        eta = sys_.eta(x)
        sn, ln = _poly_log_eval(num.c0, eta)
        sdn, ldn = _poly_log_eval(den.c0, eta)
        if sn == 0.0:
            return 0.0
        logv = sys_.w(x, lam_pref) + ln - ldn
        if logv < -700.0:
            return 0.0
        return sn * sdn * math.exp(logv)

    return phi


def phi_dc_added(spec: DeletionSpec, j: int) -> Callable[[float], float]:
    """The j-th (1-based) created bound state of the deformed system, with
    energy E_{-d_j - 1}(lam)."""
    sys_ = descriptor(spec.system)
    if not 1 <= j <= spec.M:
        raise ValueError(f"j must lie in 1..{spec.M}")
    sub = spec.D[: j - 1] + spec.D[j:]
    num = _PolyData(xi_capital(spec.system, spec.lam, sub))
    den = _PolyData(xi_capital(spec.system, spec.lam, spec.D))
    if sys_.group == "A":
        lam_pref = sys_.shift(spec.lam, -(spec.M - 1))

        def logpref(x: float) -> float:
            return -sys_.wt(x, lam_pref)

    else:
        lam_pref = sys_.shift(sys_.twist(spec.lam), spec.D[j - 1])

        def logpref(x: float) -> float:
            return -sys_.w(x, lam_pref)

    def phi(x: float) -> float:
        eta = sys_.eta(x)
        sn, ln = _poly_log_eval(num.c0, eta)
        sdn, ldn = _poly_log_eval(den.c0, eta)
        if sn == 0.0:
            return 0.0
        logv = logpref(x) + ln - ldn
        if logv < -700.0:
            return 0.0
        return sn * sdn * math.exp(logv)

    return phi


# ---------------------------------------------------------------------------
# Numeric checks
# ---------------------------------------------------------------------------


def check_potential_equivalence(
    spec: DeletionSpec, grid: GridSpec | None = None, tol: float = 1e-8
) -> CheckResult:
    """U^DC(x) - E_{-N-1}(lam) == U^KA(x) pointwise, both sides built
    independently with analytic second log-derivatives."""
    name = "potential_equivalence"
    sys_ = descriptor(spec.system)
    grid = grid or GridSpec.for_system(sys_)
    try:
        u_dc, pd_dc = _u_dc_parts(spec)
        u_ka, pd_ka = _u_ka_parts(spec)
    except NonGenericParameterError as exc:
        return _skip(name, exc)
    admissible = ka_condition(spec.Dbar)
    shift = float(sys_.energy(-(spec.N + 1), spec.lam))
    worst = 0.0
    singular = 0
    for x in grid.points():
        eta = sys_.eta(x)
        if pd_dc.near_zero(eta) or pd_ka.near_zero(eta):
            if admissible:
                return CheckResult(
                    name,
                    "fail",
                    details=f"unexpected polynomial zero near x={x:.6g} despite an "
                    "admissible deletion set",
                )
            singular += 1
            continue
        err = abs(u_dc(x) - shift - u_ka(x)) / (1.0 + abs(u_ka(x)))
        worst = max(worst, err)
    details = "" if admissible else f"KA condition false; skipped {singular} singular points"
    status = "pass" if worst <= tol else "fail"
    return CheckResult(name, status, max_abs_error=worst, details=details)


def _fd5(f: Callable[[float], float], x: float, h: float) -> float:
    return (
        -f(x - 2 * h) + 16 * f(x - h) - 30 * f(x) + 16 * f(x + h) - f(x + 2 * h)
    ) / (12 * h * h)


def _richardson_second(f: Callable[[float], float], x: float, h: float) -> float:
    return (16.0 * _fd5(f, x, h / 2) - _fd5(f, x, h)) / 15.0


def _residual_check(
    name: str,
    spec: DeletionSpec,
    phi: Callable[[float], float],
    energy: float,
    grid: GridSpec | None,
    tol: float,
) -> CheckResult:
    sys_ = descriptor(spec.system)
    grid = grid or GridSpec.for_system(sys_, count=31)
    try:
        u_dc, pd_dc = _u_dc_parts(spec)
    except NonGenericParameterError as exc:
        return _skip(name, exc)
    pts = grid.points()
    span = grid.hi - grid.lo
    residuals, scales = [], []
    for x in pts:
        h = min(0.02, 0.2 * min(x - grid.lo, grid.hi - x) + 1e-6, span / 16)
        if h <= 1e-7:
            continue
        eta = sys_.eta(x)
        if pd_dc.near_zero(eta):
            return CheckResult(name, "fail", details=f"singular point at x={x:.6g}")
        d2 = _richardson_second(phi, x, h)
        rest = (u_dc(x) - energy) * phi(x)
        residuals.append(abs(-d2 + rest))
        scales.append(abs(d2) + abs(rest))
    scale = max(scales) if scales else 0.0
    worst = max(residuals) / scale if scale > 0 else math.inf
    status = "pass" if worst <= tol else "fail"
    return CheckResult(name, status, max_abs_error=worst)


def check_schrodinger_residual(
    spec: DeletionSpec, n: int, grid: GridSpec | None = None, tol: float = 1e-6
) -> CheckResult:
    """Relative residual of -phi'' + (U^DC - E_n) phi for a surviving level,
    with phi'' from 5-point central differences at two steps plus Richardson
    extrapolation (the deliberately independent numeric oracle)."""
    name = f"residual[n={n}]"
    sys_ = descriptor(spec.system)
    nmax = sys_.n_max(spec.lam)
    if nmax is not None and n > nmax:
        return CheckResult(name, "skipped", details=f"n={n} exceeds n_max={nmax}")
    try:
        phi = phi_dc(spec, n)
    except NonGenericParameterError as exc:
        return _skip(name, exc)
    return _residual_check(name, spec, phi, float(sys_.energy(n, spec.lam)), grid, tol)


def check_added_state_residual(
    spec: DeletionSpec, j: int, grid: GridSpec | None = None, tol: float = 1e-6
) -> CheckResult:
    """Same residual oracle for the j-th created state at E_{-d_j-1}(lam)."""
    name = f"added_residual[j={j}]"
    sys_ = descriptor(spec.system)
    try:
        phi = phi_dc_added(spec, j)
    except NonGenericParameterError as exc:
        return _skip(name, exc)
    energy = float(sys_.energy(-spec.D[j - 1] - 1, spec.lam))
    return _residual_check(name, spec, phi, energy, grid, tol)


def check_orthogonality(
    spec: DeletionSpec, n_list: Sequence[int], tol: float = 1e-6
) -> CheckResult:
    """Adaptive-quadrature inner products of the surviving states: diagonals
    must match prod_j (E_n - E_{-d_j-1}) * h_n, off-diagonals must vanish."""
    from scipy.integrate import quad

    name = "orthogonality"
    sys_ = descriptor(spec.system)
    if not ka_condition(spec.Dbar):
        return CheckResult(name, "skipped", details="KA condition fails; system is singular")
    if not sys_.param_range(spec.lam):
        return CheckResult(name, "skipped", details="parameters outside physical range")
    if not all(sys_.pseudo_range(d, spec.lam) for d in spec.D):
        return CheckResult(name, "skipped", details="deletion index outside pseudo-state window")
    nmax = sys_.n_max(spec.lam)
    levels = [n for n in n_list if nmax is None or n <= nmax]
    if not levels:
        return CheckResult(name, "skipped", details="no admissible levels")
    try:
        phis = {n: phi_dc(spec, n) for n in levels}
    except NonGenericParameterError as exc:
        return _skip(name, exc)
    x1, x2 = sys_.x_domain
    expected = {}
    for n in levels:
        prod = 1.0
        for d in spec.D:
            prod *= float(sys_.energy(n, spec.lam) - sys_.energy(-d - 1, spec.lam))
        expected[n] = prod * sys_.norm_h(n, spec.lam)
    worst = 0.0
    details = []
    for i, n in enumerate(levels):
        for m in levels[: i + 1]:
            f, g = phis[n], phis[m]
            val, err = quad(lambda x: f(x) * g(x), x1, x2, limit=300)
            if not math.isfinite(val):
                raise QuadratureFailureError(f"integral ({m},{n}) diverged")
            if m == n:
                rel = abs(val - expected[n]) / abs(expected[n])
                if abs(err) > 1e-3 * abs(expected[n]):
                    raise QuadratureFailureError(f"integral ({n},{n}) did not converge")
                details.append(f"({n},{n})={val:.9g} expected {expected[n]:.9g}")
            else:
                rel = abs(val) / math.sqrt(expected[n] * expected[m])
            worst = max(worst, rel)
    status = "pass" if worst <= tol else "fail"
    return CheckResult(name, status, max_abs_error=worst, details="; ".join(details))


def check_ka_gate(spec: DeletionSpec) -> CheckResult:
    """Nodelessness gate: an admissible complement set means both deletion
    polynomials are root-free on the physical eta-interval; the M=1 odd case
    must instead show at least one node."""
    name = "ka_gate"
    sys_ = descriptor(spec.system)
    admissible = ka_condition(spec.Dbar)
    try:
        xi = xi_capital(spec.system, spec.lam, spec.D)
        xib = xi_bar_capital(spec.system, spec.lam_bar, spec.Dbar)
    except NonGenericParameterError as exc:
        return _skip(name, exc)
    lo, hi = sys_.eta_domain
    roots_xi = real_root_count(xi, lo, hi)
    roots_xib = real_root_count(xib, lo, hi)
    if admissible:
        if roots_xi == 0 and roots_xib == 0:
            return CheckResult(name, "pass", details="admissible and nodeless")
        return CheckResult(
            name,
            "fail",
            details=f"admissible deletion produced nodes: Xi has {roots_xi}, "
            f"Xibar has {roots_xib}",
        )
    if spec.M == 1 and spec.D[0] % 2 == 1:
        if roots_xi >= 1:
            return CheckResult(
                name, "pass", details=f"odd single deletion has {roots_xi} node(s)"
            )
        return CheckResult(name, "fail", details="odd single deletion is unexpectedly nodeless")
    return CheckResult(
        name,
        "skipped",
        details=f"KA condition false (no nodelessness claim); Xi has {roots_xi} node(s)",
    )


def check_F_identity(
    system: str, lam: Params, N: int, grid: GridSpec | None = None, tol: float = 1e-8
) -> CheckResult:
    """Two claims about the prefactor ratio: the potential-shift identity
    U(lam) - 2 (log F)'' - E_{-N-1} = U(lam_bar), and independence of the
    ratio A_D / Abar_Dbar from the choice of D."""
    name = f"F_identity[N={N}]"
    sys_ = descriptor(system)
    grid = grid or GridSpec.for_system(sys_)
    lam_bar = sys_.shift(lam, -(N + 1))
    full = tuple(range(N + 1))
    logF, d2F = _prefactor_pseudo_logs(sys_, lam, full)
    shift = float(sys_.energy(-(N + 1), lam))
    worst = 0.0
    for x in grid.points():
        lhs = sys_.potential(x, lam) - 2.0 * d2F(x) - shift
        rhs = sys_.potential(x, lam_bar)
        worst = max(worst, abs(lhs - rhs) / (1.0 + abs(rhs)))
    choices = [(0,), (N,), full]
    if N >= 2:
        choices.append((0, 1))
    for D in choices:
        logA, _ = _prefactor_pseudo_logs(sys_, lam, D)
        logAbar, _ = _prefactor_bar_logs(sys_, lam_bar, bar_set(D, N))
        for x in grid.points():
            diff = abs(logA(x) - logAbar(x) - logF(x))
            worst = max(worst, diff)
    status = "pass" if worst <= tol else "fail"
    return CheckResult(name, status, max_abs_error=worst,
                       details=f"ratio checked on {len(choices)} deletion sets")


def _log_phi_derivs(
    sys_: System,
    lam_pref: Params,
    num: _PolyData,
    den: _PolyData,
    sd: _SData,
    pseudo_pref: bool,
):
    """First and second x-derivatives of log |pref(x) num(eta)/den(eta)|."""

    def derivs(x: float):
        eta = sys_.eta(x)
        n1, n2 = num.log_ratios(eta)
        d1, d2 = den.log_ratios(eta)
        ep = sys_.deta(x)
        edd = sd.eta_dd(eta)
        esq = sd.eta_d_sq(eta)
        r1 = n1 - d1
        r2 = (n2 - n1 * n1) - (d2 - d1 * d1)
        if pseudo_pref:
            w1, w2 = sys_.dwt(x, lam_pref), sys_.d2wt(x, lam_pref)
        else:
            w1, w2 = sys_.dw(x, lam_pref), sys_.d2w(x, lam_pref)
        return w1 + ep * r1, w2 + edd * r1 + esq * r2

    return derivs


def check_enlarged_si(
    system: str,
    lam: Params,
    D: Sequence[int],
    grid: GridSpec | None = None,
    tol: float = 1e-8,
) -> CheckResult:
    """Riccati-form shift relations satisfied by the log-ratios of the
    deformed ground levels, on both the pseudo-state and eigenstate sides."""
    name = "enlarged_shape_invariance"
    sys_ = descriptor(system)
    grid = grid or GridSpec.for_system(sys_)
    ds = tuple(D)
    m = len(ds)
    e1 = float(sys_.energy(1, lam))
    lam_up = sys_.shift(lam, 1)
    sd = _SData(sys_)

    def pseudo_side_derivs(lam_: Params, D_: tuple):
        num = _PolyData(numerator_poly(system, lam_, D_, 0))
        den = _PolyData(xi_capital(system, lam_, D_))
        pref = sys_.shift(lam_, -len(D_)) if sys_.group == "A" else dict(lam_)
        return _log_phi_derivs(sys_, pref, num, den, sd, pseudo_pref=False), num, den

    def eigen_side_derivs(lam_: Params, D_: tuple):
        num = _PolyData(xi_bar_capital(system, lam_, D_ + (0,)))
        den = _PolyData(xi_bar_capital(system, lam_, D_))
        pref = sys_.shift(lam_, len(D_)) if sys_.group == "A" else dict(lam_)
        return _log_phi_derivs(sys_, pref, num, den, sd, pseudo_pref=False), num, den

    try:
        f_now, num_a, den_a = pseudo_side_derivs(lam, ds)
        f_up, num_b, den_b = pseudo_side_derivs(lam_up, tuple(d + 1 for d in ds))
        variants = [("pseudo", f_now, f_up, (num_a, den_a, num_b, den_b))]
        if m and min(ds) >= 2:
            g_now, num_c, den_c = eigen_side_derivs(lam, ds)
            g_up, num_d, den_d = eigen_side_derivs(lam_up, tuple(d - 1 for d in ds))
            variants.append(("eigen", g_now, g_up, (num_c, den_c, num_d, den_d)))
    except NonGenericParameterError as exc:
        return _skip(name, exc)

    worst = 0.0
    for label, derivs_now, derivs_up, polys in variants:
        for x in grid.points():
            eta = sys_.eta(x)
            if any(p.near_zero(eta) for p in polys):
                continue
            p1, p2 = derivs_now(x)
            q1, q2 = derivs_up(x)
            lhs = p1 * p1 - p2
            rhs = q1 * q1 + q2 + e1
            worst = max(worst, abs(lhs - rhs) / (1.0 + abs(rhs)))
    status = "pass" if worst <= tol else "fail"
    details = "pseudo side" + ("" if len(variants) == 1 else " and eigen side")
    return CheckResult(name, status, max_abs_error=worst, details=details)


# ---------------------------------------------------------------------------
# Parameter sampling for the randomized campaigns
# ---------------------------------------------------------------------------


def _rand_frac(rng: random.Random, lo: float, hi: float) -> Fraction:
    """Small-denominator rational strictly inside (lo, hi), never an integer
    or a half-odd-integer."""
    for _ in range(200):
        den = rng.randint(3, 16)
        num = rng.randint(math.floor(lo * den) + 1, math.ceil(hi * den) - 1)
        q = Fraction(num, den)
        if q.denominator > 2 and lo < q < hi:
            return q
    raise RuntimeError("rational sampling window too tight")


def sample_params(
    system: str, rng: random.Random, N: int = 0, levels: int = 0, max_entry: int = 7
) -> dict:
    """Generic rational parameters wide enough for a deletion campaign with
    cap N: both lam and lam_bar stay inside the physical windows and finite
    systems keep at least ``levels`` eigenstates."""
    sys_ = descriptor(system)
    sid = sys_.id
    for _ in range(500):
        if sid == "H":
            return {}
        if sid == "L":
            lam = {"g": _rand_frac(rng, N + 1.6, N + 8.0)}
        elif sid == "J":
            lam = {
                "g": _rand_frac(rng, N + 2.6, N + 8.0),
                "h": _rand_frac(rng, N + 2.6, N + 8.0),
            }
            if (lam["g"] + lam["h"]).denominator == 1:
                continue
        elif sid == "C":
            lam = {"g": _rand_frac(rng, max(max_entry + 1, N + 1.6), max_entry + N + 8.0)}
        elif sid == "K":
            lam = {
                "g": _rand_frac(rng, max(N + 2.6, (max_entry + 1) / 2), N + max_entry + 8.0),
                "mu": _rand_frac(rng, 0.3, 5.0),
            }
        elif sid == "M":
            lam = {
                "h": _rand_frac(rng, levels + 1.2, levels + 9.0),
                "mu": _rand_frac(rng, 0.3, 4.0),
            }
        elif sid == "s":
            lam = {"h": _rand_frac(rng, levels + 1.2, levels + 9.0)}
        elif sid == "RM":
            h = _rand_frac(rng, levels + 2.2, levels + 9.0)
            lam = {"h": h, "mu": _rand_frac(rng, 0.25, min(2.0, float(h - levels - 1) ** 2))}
        elif sid == "hst":
            lam = {
                "h": _rand_frac(rng, levels + 1.2, levels + 9.0),
                "mu": _rand_frac(rng, 0.3, 3.0),
            }
        elif sid == "Kh":
            g = _rand_frac(rng, N + 1.6, N + 5.0)
            lam = {"g": g, "mu": g**2 + _rand_frac(rng, 2 * float(g) * (levels + 1) + 1,
                                                   2 * float(g) * (levels + 3) + 25)}
        elif sid == "hDPT":
            g = _rand_frac(rng, N + 1.6, N + 5.0)
            h = g + _rand_frac(rng, 2 * levels + 1.2, 2 * levels + 8.0)
            if (h - g).denominator == 1:
                continue
            lam = {"g": g, "h": h}
        else:  # pragma: no cover
            raise ValueError(sid)
        if all(v.denominator > 2 for v in lam.values()) and sys_.param_range(lam):
            return lam
    raise RuntimeError(f"could not sample parameters for {system}")


def sample_spec(
    system: str,
    rng: random.Random,
    max_M: int = 4,
    max_entry: int = 7,
    extra_N: int = 3,
    nodeless: bool = False,
    levels: int = 0,
) -> DeletionSpec:
    """Random deletion configuration; with nodeless=True the complement set is
    resampled until it satisfies the Krein-Adler admissibility condition."""
    for _ in range(500):
        m = rng.randint(1, max_M)
        D = tuple(rng.sample(range(0, max_entry + 1), m))
        N = max(D) + rng.randint(0, extra_N)
        if nodeless and not ka_condition(bar_set(D, N)):
            continue
        lam = sample_params(system, rng, N=N, levels=levels, max_entry=max_entry)
        spec = DeletionSpec(system, lam, D, N)
        if nodeless:
            sys_ = descriptor(system)
            if not all(sys_.pseudo_range(d, lam) for d in D):
                continue
        return spec
    raise RuntimeError(f"could not sample a deletion spec for {system}")


# ---------------------------------------------------------------------------
# Full battery
# ---------------------------------------------------------------------------


def full_report(
    spec: DeletionSpec,
    grid: GridSpec | None = None,
    tol_exact_potential: float = 1e-8,
    tol_residual: float = 1e-6,
    tol_orth: float = 1e-6,
    levels: Sequence[int] = (0, 1, 2),
) -> VerificationReport:
    """Run every check that applies to one deletion configuration."""
    t0 = time.perf_counter()
    report = VerificationReport(spec=spec.describe())
    report.add(check_identity(spec))
    for n in levels[:2]:
        report.add(check_numerator_identity(spec, n))
    for j in range(1, spec.M + 1):
        report.add(check_deleted_identity(spec, j))
    report.add(check_shift_up(spec.system, spec.lam, spec.D))
    if spec.D and min(spec.D) >= 1:
        report.add(check_shift_down(spec.system, spec.lam, spec.D))
    report.add(check_xi_const(spec.system, spec.lam, spec.N))
    report.add(
        check_energy_formulas(spec.system, spec.lam, spec.N, range(0, 6), range(0, 6))
    )
    report.add(check_ka_gate(spec))
    report.add(check_potential_equivalence(spec, grid, tol_exact_potential))
    report.add(check_F_identity(spec.system, spec.lam, spec.N, grid, tol_exact_potential))
    for n in levels:
        report.add(check_schrodinger_residual(spec, n, grid, tol_residual))
    for j in range(1, spec.M + 1):
        report.add(check_added_state_residual(spec, j, grid, tol_residual))
    if ka_condition(spec.Dbar):
        report.add(check_orthogonality(spec, list(levels), tol_orth))
        report.add(check_enlarged_si(spec.system, spec.lam, spec.D, grid, tol_exact_potential))
    report.wall_time = time.perf_counter() - t0
    return report
