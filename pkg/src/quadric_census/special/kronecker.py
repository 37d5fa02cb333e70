"""Kronecker limits: constant terms of Eisenstein series at s = 1."""

from __future__ import annotations

import math

from ..arith import is_prime
from ..errors import DomainError
from .constants import EULER_GAMMA, zeta_ratio_2
from .eta import as_complex, log_abs_eta

INFINITY = "infinity"
ZERO = "zero"
ONE = "one"

_CUSP_ALIASES = {
    "infinity": INFINITY,
    "inf": INFINITY,
    "oo": INFINITY,
    "zero": ZERO,
    "0": ZERO,
    "one": ONE,
    "1": ONE,
}


def normalize_cusp(cusp) -> str:
    key = str(cusp).strip().lower()
    if key not in _CUSP_ALIASES:
        raise DomainError(f"unknown cusp {cusp!r}")
    return _CUSP_ALIASES[key]


def check_prime(p) -> int:
    if int(p) != p or not is_prime(int(p)):
        raise DomainError(f"p must be prime, got {p}")
    return int(p)


def _base():
    return 2.0 * EULER_GAMMA - 2.0 * zeta_ratio_2()


def kronecker_sl2z(z) -> float:
    """(3/pi)(2g - 2 zeta'/zeta(2) - log(4 y |eta(z)|^4))."""
    z = as_complex(z)
    log_term = math.log(4.0 * z.imag) + 4.0 * log_abs_eta(z)
    return 3.0 / math.pi * (_base() - log_term)


def cusp_zero_shift(p: int) -> float:
    """Additive constant in the cusp-0 limit for Gamma_0(p).

    Forced by K_1 = K_inf + p K_0 + 3p log p / ((p+1) pi); at p = 2 it is
    (1/3) log 2.
    """
    return math.log(p) * (1 + 2 * p - p * p) / (p * p - 1)


def kronecker_gamma0p(z, p: int, cusp=INFINITY) -> float:
    z = as_complex(z)
    p = check_prime(p)
    cusp = normalize_cusp(cusp)
    y = z.imag
    lz = log_abs_eta(z)
    lpz = log_abs_eta(p * z)
    pre = 3.0 / ((p + 1) * math.pi)
    if cusp == INFINITY:
        log_term = math.log(4.0 * y) + (4.0 * p * lpz - 4.0 * lz) / (p - 1)
        shift = -2.0 * math.log(p) * p * p / (p * p - 1)
    elif cusp == ZERO:
        log_term = math.log(4.0 * y) + (4.0 * p * lz - 4.0 * lpz) / (p - 1)
        shift = cusp_zero_shift(p)
    else:
        raise DomainError("Gamma_0(p) has cusps infinity and zero")
    return pre * (_base() - log_term + shift)


def kronecker_gamma2_at_i(cusp) -> float:
    """K_{Gamma_2, cusp}(i) for the theta group Gamma_2 = tau^{-1} Gamma_0(2) tau, tau = (1,0;1,1).

    tau sends i to (1+i)/2, the cusp infinity to 1 (~ 0 for Gamma_0(2)) and
    the cusp 1 to 1/2 (~ infinity).
    """
    cusp = normalize_cusp(cusp)
    w = complex(0.5, 0.5)
    if cusp == INFINITY:
        return kronecker_gamma0p(w, 2, ZERO)
    if cusp == ONE:
        return kronecker_gamma0p(w, 2, INFINITY)
    raise DomainError("Gamma_2 cusps are infinity and one")


def kronecker_value(group: str, cusp, z=1j) -> float:
    """Dispatch by group name: 'gamma1', 'gamma0(p)' or 'gamma2' (the last only at z = i)."""
    g = group.strip().lower().replace(" ", "")
    if g in ("gamma1", "sl2z", "1"):
        return kronecker_sl2z(z)
    if g == "gamma2":
        if as_complex(z) != 1j:
            raise DomainError("Gamma_2 limits are tabulated at z = i only")
        return kronecker_gamma2_at_i(cusp)
    if g.startswith("gamma0(") and g.endswith(")"):
        return kronecker_gamma0p(z, int(g[7:-1]), cusp)
    raise DomainError(f"unknown group {group!r}")
