"""Periodised spherical bumps on Gamma_0(p) \\ H and their integrals along
sheared cuspidal rays y -> y(T + i).

The bump is psi(z) = c * profile(d(z, i) / delta) with d the hyperbolic
distance, normalised to total mass 1 against dx dy / y^2, and
Psi(z) = sum over gamma in Gamma_0(p) / {+-1} of psi(gamma z).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import _jit
from ._jit import njit
from .errors import DomainError, NumericError
from .forms import GroupElement
from .special import covolume, kronecker_gamma0p, kronecker_sl2z
from .special.eta import as_complex
from .special.kronecker import check_prime

_GL_X, _GL_W = np.polynomial.legendre.leggauss(48)


def standard_profile(u):
    """exp(1 - 1/(1 - u^2)) on [0, 1), zero beyond."""
    u = np.asarray(u, dtype=np.float64)
    inside = np.abs(u) < 1.0
    safe = np.where(inside, u, 0.0)
    return np.where(inside, np.exp(1.0 - 1.0 / (1.0 - safe * safe)), 0.0)


def bump_normalization(delta: float, profile: Callable = standard_profile, panels: int = 64) -> float:
    """c with 2 pi c int_0^delta profile(rho/delta) sinh(rho) d rho = 1."""
    if not 0.0 < delta < 0.5:
        raise DomainError(f"delta must lie in (0, 0.5), got {delta}")
    edges = np.linspace(0.0, delta, panels + 1)
    half = 0.5 * np.diff(edges)
    rho = (0.5 * (edges[1:] + edges[:-1]))[:, None] + half[:, None] * _GL_X[None, :]
    w = half[:, None] * _GL_W[None, :]
    mass = 2.0 * math.pi * float(np.sum(w * np.asarray(profile(rho / delta)) * np.sinh(rho)))
    if not mass > 0.0 or not math.isfinite(mass):
        raise DomainError("profile has no positive mass on [0, 1)")
    return 1.0 / mass


@dataclass(frozen=True)
class BumpSpec:
    delta: float
    profile: Callable = standard_profile
    normalization: float = 0.0

    def __post_init__(self):
        if not 0.0 < self.delta < 0.5:
            raise DomainError(f"delta must lie in (0, 0.5), got {self.delta}")
        if self.normalization == 0.0:
            object.__setattr__(self, "normalization", bump_normalization(self.delta, self.profile))

    @property
    def standard(self) -> bool:
        return self.profile is standard_profile

    def psi_of_cosh(self, ch):
        """psi as a function of cosh d(z, i)."""
        rho = np.arccosh(np.maximum(np.asarray(ch, dtype=np.float64), 1.0))
        return self.normalization * np.asarray(self.profile(rho / self.delta))


def make_bump(delta: float, profile: Callable = standard_profile) -> BumpSpec:
    return BumpSpec(float(delta), profile)


def _group(p):
    p = int(p)
    return 1 if p == 1 else check_prime(p)


def _egcd(a, b):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def cosh_dist_to_i(w: complex) -> float:
    return 1.0 + abs(w - 1j) ** 2 / (2.0 * w.imag)


def nearby_group_elements(z, delta: float, p: int = 1) -> list[GroupElement]:
    """Every gamma in Gamma_0(p) (one of each +-pair) with d(gamma z, i) <= delta.

    Im(gamma z) = y/|cz + d|^2 must lie in [e^-delta, e^delta]; for each such
    bottom row the translates T^k gamma are scanned over the admissible
    horizontal window.
    """
    z = as_complex(z)
    p = _group(p)
    if not 0.0 < delta < 0.5:
        raise DomainError(f"delta must lie in (0, 0.5), got {delta}")
    x, y = z.real, z.imag
    ch = math.cosh(delta)
    lo, hi = y * math.exp(-delta), y * math.exp(delta)
    out = []
    cmax = int(math.floor(math.sqrt(hi) / y)) + 1
    for c in range(0, cmax + 1, p):
        if c == 0:
            rows = [(0, 1)] if lo <= 1.0 <= hi else []
        else:
            w = math.sqrt(max(hi - (c * y) ** 2, 0.0))
            rows = [
                (c, d)
                for d in range(math.floor(-c * x - w) - 1, math.ceil(-c * x + w) + 2)
                if math.gcd(c, d) == 1 and lo <= (c * x + d) ** 2 + (c * y) ** 2 <= hi
            ]
        for c_, d_ in rows:
            if c_ == 0:
                a, b = 1, 0
            else:
                g0, u, v = _egcd(c_, d_)
                if g0 < 0:
                    u, v = -u, -v
                a, b = v, -u
            g = GroupElement.of(a, b, c_, d_)
            w0 = g.mobius(z)
            reach = math.sqrt(2.0 * w0.imag * (ch - 1.0)) + 1e-9
            for k in range(math.ceil(-reach - w0.real), math.floor(reach - w0.real) + 1):
                if cosh_dist_to_i(w0 + k) <= ch:
                    out.append(GroupElement.of(a + k * c_, b + k * d_, c_, d_))
    return out


def periodized_bump_eval(z, spec: BumpSpec, p: int = 1) -> float:
    """Psi(z) as a finite sum over nearby_group_elements."""
    z = as_complex(z)
    total = [float(spec.psi_of_cosh(cosh_dist_to_i(g.mobius(z)))) for g in nearby_group_elements(z, spec.delta, p)]
    return math.fsum(total)


@njit(cache=True, nogil=True)
def _psi_many_numba(xs, ys, delta, p, cnorm):
    # standard profile only
    out = np.zeros(xs.shape[0])
    ch = math.cosh(delta)
    ed = math.exp(delta)
    for i in range(xs.shape[0]):
        x = xs[i]
        y = ys[i]
        lo = y / ed
        hi = y * ed
        cmax = int(math.sqrt(hi) / y) + 1
        acc = 0.0
        for c in range(0, cmax + 1, p):
            if c == 0:
                dlo, dhi = 1, 1
            else:
                w = math.sqrt(max(hi - (c * y) * (c * y), 0.0))
                dlo = int(math.floor(-c * x - w)) - 1
                dhi = int(math.ceil(-c * x + w)) + 1
            for d in range(dlo, dhi + 1):
                q = (c * x + d) * (c * x + d) + (c * y) * (c * y)
                if q < lo or q > hi:
                    continue
                g0, g1 = c, abs(d)
                while g1:
                    g0, g1 = g1, g0 % g1
                if g0 != 1:
                    continue
                # Im(gamma z) = y/q; Re(gamma z) = a/c - Re(1/(c (cz+d))) up to integers
                im = y / q
                if c == 0:
                    re0 = x
                else:
                    # a c = 1 mod c-multiples: a = inverse of d mod c works with b = (a d - 1)/c
                    re0 = -((c * x + d) / q) / c
                    a = 0
                    for t in range(c):
                        if (t * d) % c == 1 % c:
                            a = t
                            break
                    re0 += a / c
                reach = math.sqrt(2.0 * im * (ch - 1.0)) + 1e-9
                k0 = int(math.ceil(-reach - re0))
                k1 = int(math.floor(reach - re0))
                for k in range(k0, k1 + 1):
                    re = re0 + k
                    cd = 1.0 + (re * re + (im - 1.0) * (im - 1.0)) / (2.0 * im)
                    if cd < ch:
                        u = math.acosh(cd) / delta
                        acc += math.exp(1.0 - 1.0 / (1.0 - u * u))
        out[i] = cnorm * acc
    return out


def periodized_bump_many(zs, spec: BumpSpec, p: int = 1, backend=None) -> np.ndarray:
    """Psi at many points; the numba path covers the standard profile."""
    p = _group(p)
    zs = np.atleast_1d(np.asarray(zs, dtype=np.complex128))
    if np.any(zs.imag <= 0):
        raise DomainError("points must lie in the upper half plane")
    backend = backend or _jit.backend_name()
    if backend == "numba" and spec.standard:
        return _psi_many_numba(np.ascontiguousarray(zs.real), np.ascontiguousarray(zs.imag), spec.delta, p, spec.normalization)
    return np.array([periodized_bump_eval(complex(z), spec, p) for z in zs])


def _orbit_rows(p: int, cusp: str, bound: float) -> np.ndarray:
    """Elements (a, b, c, d), one per translation class, whose images of i
    have Im = 1/(c^2 + d^2) >= 1/bound.

    cusp 'infinity': gamma in Gamma_0(p), translation width 1.
    cusp 'zero': sigma^{-1} gamma with sigma = (0, 1; -1, 0), width p.
    """
    rows = []
    m = math.isqrt(int(math.floor(bound)))
    for c in range(0, m + 1):
        if cusp == "infinity" and c % p:
            continue
        if cusp == "zero" and p > 1 and c % p == 0:
            continue
        if c == 0:
            if 1 <= bound:
                rows.append((1, 0, 0, 1))
            continue
        dm = math.isqrt(max(int(math.floor(bound)) - c * c, 0))
        for d in range(-dm, dm + 1):
            if math.gcd(c, d) != 1:
                continue
            g, u, v = _egcd(c, d)
            if g < 0:
                u, v = -u, -v
            # v d + u c = 1, so (a, b) = (v, -u)
            a, b = v, -u
            if cusp == "zero" and p > 1:
                # need the top row (a, b) = -(c', d') with p | c'; shift a by multiples of c
                for k in range(p):
                    if (a + k * c) % p == 0:
                        a, b = a + k * c, b + k * d
                        break
            rows.append((a, b, c, d))
    return np.array(rows, dtype=np.int64).reshape(-1, 4)


@njit(cache=True, nogil=True)
def _chords_numba(rows, width, T, y0, delta):
    # each orbit point w + k*width carries a Euclidean disk; intersect with the ray y(T + i)
    n = rows.shape[0]
    cap = 16
    out = np.empty((cap, 4))
    m = 0
    ch = math.cosh(delta)
    sh = math.sinh(delta)
    s2 = T * T + 1.0
    for r in range(n):
        a, b, c, d = rows[r, 0], rows[r, 1], rows[r, 2], rows[r, 3]
        q = float(c * c + d * d)
        re0 = (a * c + b * d) / q
        im = 1.0 / q
        v = im * ch
        rad = im * sh
        if v + rad < y0:
            continue
        span = rad * math.sqrt(s2)
        k0 = int(math.ceil((T * v - span - re0) / width))
        k1 = int(math.floor((T * v + span - re0) / width))
        for k in range(k0, k1 + 1):
            u = re0 + k * width
            # (s2) y^2 - 2 (T u + v) y + u^2 + v^2 - rad^2 <= 0
            bq = T * u + v
            disc = bq * bq - s2 * (u * u + v * v - rad * rad)
            if disc <= 0.0:
                continue
            sq = math.sqrt(disc)
            y1 = (bq - sq) / s2
            y2 = (bq + sq) / s2
            if y2 <= y0:
                continue
            if y1 < y0:
                y1 = y0
            if m == cap:
                cap *= 2
                grown = np.empty((cap, 4))
                grown[:m] = out[:m]
                out = grown
            out[m, 0] = y1
            out[m, 1] = y2
            out[m, 2] = u
            out[m, 3] = im
            m += 1
    return out[:m]


def _chords_numpy(rows, width, T, y0, delta):
    ch, sh, s2 = math.cosh(delta), math.sinh(delta), T * T + 1.0
    out = []
    for a, b, c, d in rows.tolist():
        q = float(c * c + d * d)
        re0, im = (a * c + b * d) / q, 1.0 / q
        v, rad = im * ch, im * sh
        if v + rad < y0:
            continue
        span = rad * math.sqrt(s2)
        ks = np.arange(math.ceil((T * v - span - re0) / width), math.floor((T * v + span - re0) / width) + 1)
        u = re0 + ks * width
        bq = T * u + v
        disc = bq * bq - s2 * (u * u + v * v - rad * rad)
        ok = disc > 0
        u, bq, sq = u[ok], bq[ok], np.sqrt(disc[ok])
        y1, y2 = (bq - sq) / s2, (bq + sq) / s2
        keep = y2 > y0
        for lo, hi, uu in zip(np.maximum(y1[keep], y0), y2[keep], u[keep]):
            out.append((lo, hi, uu, im))
    return np.array(out, dtype=np.float64).reshape(-1, 4)


def ray_chords(T: float, y0: float, delta: float, p: int = 1, cusp: str = "infinity", backend=None) -> np.ndarray:
    """Pieces (y_lo, y_hi, Re w, Im w) of the ray {y(T + i): y >= y0} inside the balls B(w, delta)."""
    bound = math.exp(delta) / y0
    rows = _orbit_rows(p, cusp, bound)
    width = float(p) if (cusp == "zero" and p > 1) else 1.0
    backend = backend or _jit.backend_name()
    if backend == "numba":
        return _chords_numba(rows, width, float(T), float(y0), float(delta))
    return _chords_numpy(rows, width, float(T), float(y0), float(delta))


def _integrate_chords(chords, T, spec, panels=4):
    if chords.shape[0] == 0:
        return 0.0
    t1, t2 = np.log(chords[:, 0]), np.log(chords[:, 1])
    u, s = chords[:, 2], chords[:, 3]
    total = []
    edges = np.linspace(0.0, 1.0, panels + 1)
    for e0, e1 in zip(edges[:-1], edges[1:]):
        lo = t1 + (t2 - t1) * e0
        hi = t1 + (t2 - t1) * e1
        half = 0.5 * (hi - lo)
        tt = 0.5 * (hi + lo)[:, None] + half[:, None] * _GL_X[None, :]
        y = np.exp(tt)
        X = T * y
        cd = 1.0 + ((X - u[:, None]) ** 2 + (y - s[:, None]) ** 2) / (2.0 * y * s[:, None])
        vals = spec.psi_of_cosh(cd)
        total.append(np.sum(half[:, None] * _GL_W[None, :] * vals, axis=1))
    # fixed-order reduction: chords are generated in a deterministic order
    return math.fsum(np.sum(np.array(total), axis=0).tolist())


def _one_sided(T, spec, p, cusp, backend=None):
    y0 = 1.0 / math.sqrt(T * T + 1.0)
    chords = ray_chords(T, y0, spec.delta, p, cusp, backend)
    return _integrate_chords(chords, T, spec)


def shear_integral(T: float, spec: BumpSpec, p: int = 1, backend=None) -> float:
    """int over y >= 1/sqrt(T^2+1) of Psi(Ty + iy) dy/y.

    Psi vanishes above height e^delta (every orbit point of i has Im <= 1), so
    the ray is finite; it is cut into chords through the bump balls and each
    chord is integrated in log y by Gauss-Legendre.
    """
    if not T >= 2:
        raise DomainError("T must be at least 2")
    p = _group(p)
    val = _one_sided(float(T), spec, p, "infinity", backend)
    if not math.isfinite(val):
        raise NumericError(f"shear integral not finite at T = {T}")
    return val


def shear_integral_dense(T: float, spec: BumpSpec, p: int = 1, points: int = 1 << 16, lower=None) -> float:
    """Composite Simpson in log y over [log y0, delta] with Psi evaluated pointwise."""
    p = _group(p)
    y0 = 1.0 / math.sqrt(T * T + 1.0) if lower is None else lower
    if points % 2:
        points += 1
    t = np.linspace(math.log(y0), spec.delta, points + 1)
    y = np.exp(t)
    vals = periodized_bump_many(T * y + 1j * y, spec, p)
    h = t[1] - t[0]
    w = np.ones(points + 1)
    w[1:-1:2] = 4.0
    w[2:-1:2] = 2.0
    return float(h / 3.0 * np.dot(w, vals))


def predicted_shear(T: float, spec: BumpSpec, p: int = 1) -> float:
    """(1/v) log(T omega) + K_{infinity}(i), omega = 1 at the cusp infinity."""
    p = _group(p)
    k = kronecker_sl2z(1j) if p == 1 else kronecker_gamma0p(1j, p, "infinity")
    return math.log(T) / covolume(p) + k


def two_sided_shear(T: float, spec: BumpSpec, p: int = 1, backend=None) -> float:
    """int_0^inf Psi(Ty + iy) dy/y, as the upper ray plus the inverted lower ray.

    Under z -> -1/z the piece y < 1/sqrt(T^2+1) becomes the same ray for the
    bump periodised around the cusp 0 (identical to the upper piece when p = 1).
    """
    if not T >= 2:
        raise DomainError("T must be at least 2")
    p = _group(p)
    upper = _one_sided(float(T), spec, p, "infinity", backend)
    if p == 1:
        return 2.0 * upper
    return upper + _one_sided(float(T), spec, p, "zero", backend)


def predicted_two_sided(T: float, spec: BumpSpec, p: int = 1) -> float:
    """2 (1/v) log(T omega) + K_inf(i) + K_0(i) with omega = sqrt(omega_inf omega_0) = sqrt(p)."""
    p = _group(p)
    if p == 1:
        return 2.0 * math.log(T) / covolume(1) + 2.0 * kronecker_sl2z(1j)
    k = kronecker_gamma0p(1j, p, "infinity") + kronecker_gamma0p(1j, p, "zero")
    return 2.0 * math.log(T * math.sqrt(p)) / covolume(p) + k
