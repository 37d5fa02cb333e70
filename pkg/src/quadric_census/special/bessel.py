"""Modified Bessel function K_nu(y) of real order by quadrature of the cosh integral."""

from __future__ import annotations

import math

import numpy as np

from ..errors import DomainError, NumericError

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(24)
_DROP = 46.0  # e^-46 ~ 1e-20 relative to the peak


def _log_integrand(t, nu, y):
    # log of e^{-y(cosh t - 1)} e^{nu t}, the scaled integrand's envelope
    return -y * (math.cosh(t) - 1.0) + nu * t


def _cutoff(nu, y):
    peak = math.asinh(nu / y) if nu > 0 else 0.0
    top = _log_integrand(peak, nu, y)
    lo, hi = peak, peak + 1.0
    while _log_integrand(hi, nu, y) > top - _DROP:
        lo, hi = hi, 2.0 * hi + 1.0
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if _log_integrand(mid, nu, y) > top - _DROP:
            lo = mid
        else:
            hi = mid
    return hi


def _panels(nu, y, t_max, n):
    edges = np.linspace(0.0, t_max, n + 1)
    half = 0.5 * np.diff(edges)
    mids = 0.5 * (edges[1:] + edges[:-1])
    t = (mids[:, None] + half[:, None] * _GL_NODES[None, :]).ravel()
    w = (half[:, None] * _GL_WEIGHTS[None, :]).ravel()
    f = np.exp(-y * (np.cosh(t) - 1.0)) * np.cosh(nu * t)
    return float(np.dot(w, f))


def kbessel_scaled(nu: float, y: float, rtol: float = 1e-14) -> float:
    """e^y K_nu(y); panel count doubles until two passes agree to rtol."""
    nu = abs(float(nu))
    y = float(y)
    if not y > 0:
        raise DomainError(f"kbessel needs y > 0, got {y}")
    t_max = _cutoff(nu, y)
    n = max(4, int(math.ceil(t_max * max(1.0, math.sqrt(y)) * 2)))
    prev = _panels(nu, y, t_max, n)
    for _ in range(12):
        n *= 2
        cur = _panels(nu, y, t_max, n)
        if abs(cur - prev) <= rtol * abs(cur):
            return cur
        prev = cur
    raise NumericError(f"K_{nu}({y}) quadrature did not settle: {prev!r} vs {cur!r}")


def kbessel(nu: float, y: float) -> float:
    """K_nu(y) = int_0^inf e^{-y cosh t} cosh(nu t) dt, for real nu and y > 0."""
    return math.exp(-float(y)) * kbessel_scaled(nu, y)
