"""Deletion data and the two deformation polynomials.

Given a system, parameters lam, an ordered index set D and a level cap N,
this module constructs

* the complementary deletion set Dbar = {0..N} minus {N - d_j} together with
  the negatively shifted parameters lam_bar = lam - (N+1)*delta,
* the twisted-side polynomial Xi_D(eta; lam) built from the pseudo-state
  polynomials xi_v (a Wronskian for Group A, a shifted-parameter determinant
  for Group B),
* the eigenstate-side polynomial Xibar_D(eta; lam) built from the P_n, and
* the numerator polynomial P_{D,n} carrying one appended eigenstate column.

Index sets are ordered; swapping entries can flip determinant signs, so every
identity downstream is compared only up to a nonzero constant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .algebra import Poly, PolyMatrix, determinant, wronskian
from .systems import NonGenericParameterError, Params, System, descriptor

IndexSet = tuple[int, ...]


class NTooSmallError(ValueError):
    """N must dominate every deleted index."""


class NegativeIndexError(ValueError):
    """Downward index shift would produce a negative level."""


def as_index_set(ds: Sequence[int]) -> IndexSet:
    out = tuple(int(d) for d in ds)
    if any(d < 0 for d in out):
        raise NegativeIndexError(f"indices must be nonnegative: {out}")
    if len(set(out)) != len(out):
        raise ValueError(f"indices must be distinct: {out}")
    return out


def bar_set(D: Sequence[int], N: int) -> IndexSet:
    """Ascending complement of {N - d_j : d_j in D} inside {0, ..., N}."""
    ds = as_index_set(D)
    if ds and N < max(ds):
        raise NTooSmallError(f"N={N} is smaller than max(D)={max(ds)}")
    if N < 0:
        raise NTooSmallError("N must be nonnegative")
    removed = {N - d for d in ds}
    return tuple(k for k in range(N + 1) if k not in removed)


def ell(D: Sequence[int]) -> int:
    """Generic degree of the deletion polynomials: sum(D) - M(M-1)/2."""
    ds = as_index_set(D)
    m = len(ds)
    return sum(ds) - m * (m - 1) // 2


def shifted_sets(D: Sequence[int]) -> tuple[IndexSet, IndexSet]:
    """(D_minus, D_plus): all indices shifted down / up by one."""
    ds = as_index_set(D)
    if ds and min(ds) < 1:
        raise NegativeIndexError("D_minus needs min(D) >= 1")
    return tuple(d - 1 for d in ds), tuple(d + 1 for d in ds)


def ka_condition(E: Sequence[int]) -> bool:
    """Krein-Adler admissibility: prod_j (m - e_j) >= 0 for every integer
    m >= 0.  Scanning m up to max(E)+1 is sufficient since the product is
    positive beyond max(E)."""
    es = as_index_set(E)
    if not es:
        return True
    for m in range(max(es) + 2):
        prod = 1
        for e in es:
            prod *= m - e
        if prod < 0:
            return False
    return True


@dataclass(frozen=True)
class DeletionSpec:
    """A deletion choice (system, lam, D, N) with the induced complement."""

    system: str
    lam: dict
    D: IndexSet
    N: int
    Dbar: IndexSet = field(init=False)
    lam_bar: dict = field(init=False)

    def __post_init__(self):
        sys_ = descriptor(self.system)
        sys_.check_params(self.lam)
        ds = as_index_set(self.D)
        object.__setattr__(self, "D", ds)
        object.__setattr__(self, "Dbar", bar_set(ds, self.N))
        object.__setattr__(self, "lam_bar", sys_.shift(self.lam, -(self.N + 1)))

    @property
    def M(self) -> int:
        return len(self.D)

    def describe(self) -> dict:
        return {
            "system": self.system,
            "params": {k: str(v) for k, v in self.lam.items()},
            "D": list(self.D),
            "N": self.N,
            "Dbar": list(self.Dbar),
            "params_bar": {k: str(v) for k, v in self.lam_bar.items()},
        }


def _nonzero_coef(value: Fraction, what: str) -> Fraction:
    if value == 0:
        raise NonGenericParameterError(f"vanishing {what} makes the determinant degenerate")
    return value


def _shifted_determinant(sys_: System, lam: Params, D: IndexSet, twisted: bool) -> Poly:
    """det over rows j, columns k of

        prod_{i=0..j-2} f_{d_k - i}(base + i*delta) * Q_{d_k-j+1}(eta; lam_j)

    where for the eigenstate side (twisted=False) base = lam, lam_j = lam +
    (j-1)*delta and Q = P, and for the pseudo side base = t(lam), lam_j =
    lam - (j-1)*delta and Q = xi.  Entries with a negative polynomial index
    vanish identically (repeated forward shifts annihilate the respective
    ground state)."""
    m = len(D)
    if m == 0:
        return Poly.one()
    f_base = sys_.twist(lam) if twisted else dict(lam)
    rows = []
    for j in range(1, m + 1):
        lam_j = sys_.shift(lam, -(j - 1)) if twisted else sys_.shift(lam, j - 1)
        row = []
        for d in D:
            idx = d - j + 1
            if idx < 0:
                row.append(Poly.zero())
                continue
            coef = Fraction(1)
            for i in range(j - 1):
                coef *= _nonzero_coef(
                    sys_.f_coef(d - i, sys_.shift(f_base, i)), f"f_{d - i}"
                )
            poly = sys_.pseudo_poly(idx, lam_j) if twisted else sys_.eigen_poly(idx, lam_j)
            row.append(coef * poly)
        rows.append(row)
    return determinant(PolyMatrix.from_rows(rows))


def xi_capital(system: str, lam: Params, D: Sequence[int]) -> Poly:
    """Pseudo-virtual-state side polynomial Xi_D(eta; lam)."""
    sys_ = descriptor(system)
    sys_.check_params(lam)
    ds = as_index_set(D)
    m = len(ds)
    if m == 0:
        return Poly.one()
    if sys_.group == "A":
        w = wronskian([sys_.pseudo_poly(d, lam) for d in ds])
        return sys_.cF ** (m * (m - 1) // 2) * w
    return _shifted_determinant(sys_, lam, ds, twisted=True)


def xi_bar_capital(system: str, lam: Params, D: Sequence[int]) -> Poly:
    """Eigenstate side polynomial Xibar_D(eta; lam)."""
    sys_ = descriptor(system)
    sys_.check_params(lam)
    ds = as_index_set(D)
    m = len(ds)
    if m == 0:
        return Poly.one()
    if sys_.group == "A":
        w = wronskian([sys_.eigen_poly(d, lam) for d in ds])
        return sys_.cF ** (m * (m - 1) // 2) * w
    return _shifted_determinant(sys_, lam, ds, twisted=False)


def numerator_poly(system: str, lam: Params, D: Sequence[int], n: int) -> Poly:
    """Polynomial factor P_{D,n} of the numerator Wronskian
    W[pseudo_{d_1}, ..., pseudo_{d_M}, phi_n].

    Built as one mixed determinant: the pseudo columns climb with the twisted
    forward-shift coefficients -eps * b_v(-lam), the appended eigenstate
    column descends with the forward-shift coefficients f_n, and for Group A
    the eigen column additionally carries powers of (eta'/cF)^2 (a polynomial
    in eta) whose surplus is divided out exactly at the end.
    """
    if n < 0:
        raise ValueError("eigenstate index must be nonnegative")
    sys_ = descriptor(system)
    sys_.check_params(lam)
    ds = as_index_set(D)
    m = len(ds)
    if m == 0:
        return sys_.eigen_poly(n, lam)
    group_a = sys_.group == "A"
    t_poly = Fraction(1) / sys_.cF**2 * sys_.S if group_a else Poly.one()
    rows = []
    for j in range(1, m + 2):
        lam_j = sys_.shift(lam, j - 1)
        row = []
        for d in ds:
            coef = Fraction(1)
            for i in range(j - 1):
                lam_i = sys_.shift(lam, i)
                coef *= _nonzero_coef(
                    -sys_.eps * sys_.b_coef(d + i, sys_.neg(lam_i)), f"b_{d + i}"
                )
            row.append(coef * sys_.pseudo_poly(d + j - 1, lam_j))
        idx = n - j + 1
        if idx < 0:
            row.append(Poly.zero())
        else:
            coef = Fraction(1)
            for i in range(j - 1):
                coef *= _nonzero_coef(
                    sys_.f_coef(n - i, sys_.shift(lam, i)), f"f_{n - i}"
                )
            entry = coef * sys_.eigen_poly(idx, lam_j)
            if group_a and j > 1:
                entry = entry * t_poly ** (j - 1)
            row.append(entry)
        rows.append(row)
    det = determinant(PolyMatrix.from_rows(rows))
    if group_a and m > 1:
        det = det.divexact(t_poly ** (m * (m - 1) // 2))
    return det
