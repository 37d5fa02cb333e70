"""Explicit main terms, per-orbit cone terms, residual series and exponent fits."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .arith import dirichlet_D, nu2, square_root_of_discriminant
from .count import count_q, fast_count_w_grid
from .errors import DomainError
from .forms import (
    GAMMA1,
    GAMMA2,
    INFINITY,
    PLAIN,
    TILDE,
    cone_radius,
    gamma1_width_pair,
    gamma2_cusp_pair,
    gamma2_width_pair,
    normalize_lattice,
)
from .special import constant_C, kronecker_gamma2_at_i, kronecker_sl2z

SQRT128 = math.sqrt(128.0)
SQRT72 = math.sqrt(72.0)
LOG2 = math.log(2.0)


def main_term_w(d: int, T: float) -> float:
    """(sqrt(128) T/pi)(log T + C - D(n) + log 2 (1/3 - 1/2^{nu+2}))."""
    n = square_root_of_discriminant(d)
    if not T > 0:
        raise DomainError("T must be positive")
    two_adic = LOG2 * (1.0 / 3.0 - 0.5 ** (nu2(n) + 2))
    return SQRT128 * T / math.pi * (math.log(T) + constant_C() - dirichlet_D(n) + two_adic)


def main_term_q(d: int, T: float) -> float:
    """(sqrt(72) T/pi)(log T + C - D(n))."""
    n = square_root_of_discriminant(d)
    if not T > 0:
        raise DomainError("T must be positive")
    return SQRT72 * T / math.pi * (math.log(T) + constant_C() - dirichlet_D(n))


def orbit_cone_data(n: int, j: int, lattice=GAMMA1, kind=PLAIN) -> tuple[float, int, int, float]:
    """(v_Gamma, omega, omega', K_a(i) + K_b(i)) for one orbit class."""
    lattice = normalize_lattice(lattice)
    if lattice == GAMMA1:
        if not 0 <= j < n:
            raise DomainError(f"index {j} outside [0, {n})")
        w, w2 = gamma1_width_pair(n, j)
        return math.pi / 3.0, w, w2, 2.0 * kronecker_sl2z(1j)
    w, w2 = gamma2_width_pair(n, j, kind)
    ca, cb = gamma2_cusp_pair(n, j, kind)
    return math.pi, w, w2, kronecker_gamma2_at_i(ca) + kronecker_gamma2_at_i(cb)


def cone_main_term(n: int, j: int, T: float, lattice=GAMMA1, kind=PLAIN) -> float:
    """(2 T_n / v)(log(T_n^2 w w') - 2 + v (K_a(i) + K_b(i))), T_n the cone radius."""
    tn = cone_radius(n, T)
    if tn == 0.0:
        return 0.0
    v, w, w2, ksum = orbit_cone_data(n, j, lattice, kind)
    return 2.0 * tn / v * (math.log(tn * tn * w * w2) - 2.0 + v * ksum)


def cone_main_terms(n: int, T: float, lattice=GAMMA1) -> dict:
    """cone_main_term for every orbit class, keyed by (kind, j)."""
    lattice = normalize_lattice(lattice)
    if lattice == GAMMA1:
        return {(PLAIN, j): cone_main_term(n, j, T, GAMMA1) for j in range(n)}
    return {
        (kind, j): cone_main_term(n, j, T, GAMMA2, kind)
        for kind in (PLAIN, TILDE)
        for j in range(2 * n)
    }


@dataclass(frozen=True)
class ExponentParams:
    theta: Fraction
    eta_max: Fraction
    beta_min: Fraction
    thm2_exponent: Fraction


def admissible_exponents(theta) -> ExponentParams:
    """eta < 3/(40 + 72 theta), beta > 3/2 + 2 theta, and (3 + 4 theta)/(4 + 8 theta), exactly."""
    th = Fraction(theta)
    if not 0 <= th <= Fraction(1, 2):
        raise DomainError(f"theta must lie in [0, 1/2], got {theta}")
    return ExponentParams(
        theta=th,
        eta_max=Fraction(3) / (40 + 72 * th),
        beta_min=Fraction(3, 2) + 2 * th,
        thm2_exponent=(3 + 4 * th) / (4 + 8 * th),
    )


@dataclass(frozen=True)
class CountSeries:
    d: int
    target: str
    T: tuple[float, ...]
    count: tuple[int, ...]
    main: tuple[float, ...]
    residual: tuple[float, ...]

    def rows(self):
        return list(zip(self.T, self.count, self.main, self.residual))

    def __len__(self):
        return len(self.T)


def make_series(d, target, Ts, counts, mains) -> CountSeries:
    res = tuple(float(c) - float(m) for c, m in zip(counts, mains))
    return CountSeries(int(d), target, tuple(map(float, Ts)), tuple(map(int, counts)), tuple(map(float, mains)), res)


def parse_grid(spec: str) -> list[float]:
    """'log:a:b:k' or 'lin:a:b:k': k points from a to b inclusive."""
    try:
        kind, a, b, k = spec.split(":")
        a, b, k = float(a), float(b), int(k)
    except ValueError as exc:
        raise DomainError(f"bad grid spec {spec!r}; expected log:a:b:k or lin:a:b:k") from exc
    if k < 1 or not (0 < a) or (k > 1 and not a < b):
        raise DomainError(f"bad grid spec {spec!r}")
    if kind == "log":
        pts = np.geomspace(a, b, k) if k > 1 else np.array([a])
    elif kind == "lin":
        pts = np.linspace(a, b, k) if k > 1 else np.array([a])
    else:
        raise DomainError(f"unknown grid kind {kind!r}")
    return [float(x) for x in pts]


def residual_series(d: int, T_grid, target: str = "W", threads=None, backend=None) -> CountSeries:
    Ts = [float(t) for t in T_grid]
    if any(b <= a for a, b in zip(Ts, Ts[1:])):
        raise DomainError("T grid must be strictly increasing")
    target = target.upper()
    if target == "W":
        counts = [r.total for r in fast_count_w_grid(d, Ts, threads, backend)]
        mains = [main_term_w(d, t) for t in Ts]
    elif target == "Q":
        counts = [count_q(d, t, threads, backend).total for t in Ts]
        mains = [main_term_q(d, t) for t in Ts]
    else:
        raise DomainError(f"target must be W or Q, got {target!r}")
    return make_series(d, target, Ts, counts, mains)


def fit_exponent(series) -> float:
    """Least-squares slope of log|residual| against log T, over rows with |residual| >= 1."""
    if isinstance(series, CountSeries):
        Ts, res = series.T, series.residual
    else:
        Ts, res = zip(*[(r[0], r[-1]) for r in series]) if series else ((), ())
    pts = [(math.log(t), math.log(abs(r))) for t, r in zip(Ts, res) if abs(r) >= 1.0]
    if len(pts) < 5:
        raise DomainError(f"need at least 5 rows with |residual| >= 1, have {len(pts)}")
    x, y = np.array(pts).T
    slope, _ = np.polyfit(x, y, 1)
    return float(slope)
