"""Fourier (scattering) coefficients of Eisenstein series for SL2(Z) and Gamma_0(p)."""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..errors import DomainError
from .kronecker import check_prime
from .zeta import completed_zeta, divisor_tau


def _check_s(s):
    s = float(s)
    if not s > 1.0:
        raise DomainError(f"need s > 1, got {s}")
    return s


def scattering_sl2z(s: float) -> float:
    """phi(s) = zeta*(2s-1)/zeta*(2s), the y^{1-s} coefficient."""
    s = _check_s(s)
    return completed_zeta(2 * s - 1) / completed_zeta(2 * s)


def scattering_sl2z_m(s: float, m: int) -> float:
    """phi(s, m) = tau_{s-1/2}(m)/zeta*(2s)."""
    s = _check_s(s)
    if int(m) != m or m == 0:
        raise DomainError("m must be a nonzero integer")
    return divisor_tau(s - 0.5, int(m)) / completed_zeta(2 * s)


@dataclass(frozen=True)
class ScatteringEntry:
    p: int
    s: float
    m: int
    phi_inf_inf: float
    phi_inf_0: float
    phi_0_inf: float
    phi_0_0: float


def scattering_gamma0p(s: float, m: int, p: int) -> ScatteringEntry:
    """Coefficients of e(mx) 2 sqrt(y) K_{s-1/2}(2 pi |m| y) between the cusps of Gamma_0(p).

    Solves (1, p^s; p^s, 1)(phi_00, phi_0inf) = (phi(s;m), sqrt(p) phi(s;m/p)).
    """
    s = _check_s(s)
    p = check_prime(p)
    if int(m) != m or m == 0:
        raise DomainError("m must be a nonzero integer")
    m = int(m)
    full = scattering_sl2z_m(s, m)
    sub = scattering_sl2z_m(s, m // p) if m % p == 0 else 0.0
    ps = p**s
    den = p ** (2 * s) - 1.0
    diag = (ps * math.sqrt(p) * sub - full) / den
    off = (ps * full - math.sqrt(p) * sub) / den
    return ScatteringEntry(p, s, m, diag, off, off, diag)


def scattering_gamma0p_constant(s: float, p: int) -> ScatteringEntry:
    """The y^{1-s} coefficients (m = 0) between the cusps of Gamma_0(p)."""
    s = _check_s(s)
    p = check_prime(p)
    phi = scattering_sl2z(s)
    den = p ** (2 * s) - 1.0
    diag = (p - 1) * phi / den
    off = phi * (p**s - p ** (1 - s)) / den
    return ScatteringEntry(p, s, 0, diag, off, off, diag)
