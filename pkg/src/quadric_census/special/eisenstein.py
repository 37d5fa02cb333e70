"""Direct lattice sums for Eisenstein series of SL2(Z) and Gamma_0(p), and a
numerical Fourier coefficient for periodic functions."""

from __future__ import annotations

import math
from typing import Callable, NamedTuple

import numpy as np

from .. import _jit
from .._jit import njit
from ..errors import DomainError
from .kronecker import INFINITY, ZERO, check_prime, normalize_cusp

MIN_S = 1.5
DEFAULT_RADIUS = 1500


class EisensteinSum(NamedTuple):
    value: float
    tail: float


@njit(cache=True)
def _gcd(a, b):
    a = abs(a)
    b = abs(b)
    while b:
        a, b = b, a % b
    return a


@njit(cache=True)
def _lattice_sum_numba(xs, y, s, p, want_multiple, radius):
    # sum over c > 0, gcd(c, d) = 1, (c % p == 0) == want_multiple,
    # of ((cx+d)^2 + (cy)^2)^{-s}, restricted to the ellipse |cz+d| <= radius
    k = xs.shape[0]
    out = np.zeros(k)
    xmin = xs.min()
    xmax = xs.max()
    r2 = radius * radius
    cmax = int(radius / y)
    whole = s == math.floor(s) and s <= 8.0
    si = int(s)
    for c in range(1, cmax + 1):
        if (c % p == 0) != want_multiple:
            continue
        cy2 = (c * y) * (c * y)
        room = r2 - cy2
        if room < 0.0:
            continue
        w = math.sqrt(room)
        dlo = int(math.floor(-c * xmax - w))
        dhi = int(math.ceil(-c * xmin + w))
        for d in range(dlo, dhi + 1):
            if _gcd(c, d) != 1:
                continue
            for i in range(k):
                u = c * xs[i] + d
                q = u * u + cy2
                if q <= r2:
                    if whole:
                        inv = 1.0 / q
                        term = inv
                        for _ in range(si - 1):
                            term *= inv
                        out[i] += term
                    else:
                        out[i] += math.exp(-s * math.log(q))
    return out


def _lattice_sum_numpy(xs, y, s, p, want_multiple, radius):
    out = np.zeros(xs.shape[0])
    r2 = radius * radius
    xmin, xmax = xs.min(), xs.max()
    for c in range(1, int(radius / y) + 1):
        if (c % p == 0) != want_multiple:
            continue
        cy2 = (c * y) ** 2
        room = r2 - cy2
        if room < 0.0:
            continue
        w = math.sqrt(room)
        d = np.arange(math.floor(-c * xmax - w), math.ceil(-c * xmin + w) + 1, dtype=np.int64)
        d = d[np.gcd(d, c) == 1]
        u = c * xs[None, :] + d[:, None]
        q = u * u + cy2
        contrib = np.where(q <= r2, q ** (-s), 0.0)
        out += contrib.sum(axis=0)
    return out


def lattice_sum(xs, y, s, p, want_multiple, radius, backend=None):
    backend = backend or _jit.backend_name()
    xs = np.ascontiguousarray(xs, dtype=np.float64)
    if backend == "numba":
        return _lattice_sum_numba(xs, float(y), float(s), int(p), bool(want_multiple), float(radius))
    return _lattice_sum_numpy(xs, float(y), float(s), int(p), bool(want_multiple), float(radius))


def _tail_estimate(y, s, p, cusp, radius):
    # coprime pairs with c > 0 have density 3/pi^2; a fraction 1/(p+1) has p | c
    if p == 1:
        frac = 1.0
    elif cusp == INFINITY:
        frac = 1.0 / (p + 1)
    else:
        frac = p / (p + 1) * p**-s
    dens = 3.0 / math.pi**2 * frac
    return dens * (math.pi / y) * y**s * radius ** (2 - 2 * s) / (s - 1)


def _check_args(y, s, p, cusp, radius):
    if not y > 0:
        raise DomainError(f"point must lie in the upper half plane, got im = {y}")
    if not s >= MIN_S:
        raise DomainError(f"direct summation needs s >= {MIN_S}; got {s}")
    p = int(p)
    if p != 1:
        p = check_prime(p)
    cusp = normalize_cusp(cusp)
    if cusp not in (INFINITY, ZERO) or (p == 1 and cusp == ZERO):
        raise DomainError(f"cusp {cusp!r} not available for p = {p}")
    if int(radius) != radius or radius < 1:
        raise DomainError("radius must be a positive integer")
    return p, cusp


def eisenstein_direct_many(
    xs, y, s, p=1, cusp=INFINITY, radius=DEFAULT_RADIUS, add_tail=False, backend=None
) -> np.ndarray:
    """E_{Gamma_0(p), cusp}(x + iy, s) for each x, truncated to |cz+d| <= radius.

    The ellipse cut keeps the truncated sum exactly 1-periodic in x. With
    ``add_tail`` the smooth tail estimate is added back.
    """
    y, s = float(y), float(s)
    p, cusp = _check_args(y, s, p, cusp, radius)
    xs = np.atleast_1d(np.asarray(xs, dtype=np.float64))
    if cusp == INFINITY:
        out = y**s + y**s * lattice_sum(xs, y, s, p, True, radius, backend)
    else:
        out = p**-s * y**s * lattice_sum(xs, y, s, p, False, radius, backend)
    if add_tail:
        out = out + _tail_estimate(y, s, p, cusp, radius)
    return out


def eisenstein_direct(z, s: float, p: int = 1, cusp=INFINITY, radius: int = DEFAULT_RADIUS) -> EisensteinSum:
    z = complex(z)
    value = eisenstein_direct_many([z.real], z.imag, s, p, cusp, radius)[0]
    p, cusp = _check_args(z.imag, float(s), p, cusp, radius)
    return EisensteinSum(float(value), _tail_estimate(z.imag, float(s), p, cusp, radius))


def fourier_coeff_numeric(
    evaluator: Callable[[np.ndarray, float], np.ndarray],
    m: int,
    y: float,
    panels: int = 64,
    period: float = 1.0,
) -> float:
    """Trapezoidal (1/w) int_0^w f(x+iy) e(-mx/w) dx, real part.

    ``evaluator(xs, y)`` receives the whole node array at once. For the even
    functions used here the imaginary part vanishes.
    """
    if panels < 64:
        raise DomainError("use at least 64 panels")
    xs = period * np.arange(panels) / panels
    vals = np.asarray(evaluator(xs, y), dtype=np.float64)
    phase = np.cos(2.0 * math.pi * m * xs / period)
    return float(np.dot(vals, phase) / panels)
