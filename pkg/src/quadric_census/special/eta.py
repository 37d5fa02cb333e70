"""Points of the upper half plane and the Dedekind eta function."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from ..errors import DomainError


@dataclass(frozen=True)
class HalfPlanePoint:
    re: float
    im: float

    def __post_init__(self):
        if not self.im > 0:
            raise DomainError(f"point must lie in the upper half plane, got im = {self.im}")

    @property
    def z(self) -> complex:
        return complex(self.re, self.im)


def as_complex(z) -> complex:
    """Accept a HalfPlanePoint, complex, or (re, im) pair; reject im <= 0."""
    if isinstance(z, HalfPlanePoint):
        return z.z
    if isinstance(z, tuple):
        z = complex(*z)
    z = complex(z)
    if not z.imag > 0:
        raise DomainError(f"point must lie in the upper half plane, got im = {z.imag}")
    return z


def eta_terms(y: float) -> int:
    return math.ceil(30.0 / y) + 20


def dedekind_eta(z) -> complex:
    """eta(z) = e^{pi i z/12} prod_{m>=1} (1 - q^m), q = e^{2 pi i z}.

    The product is cut after ceil(30/y) + 20 factors, where |q|^M is far
    below double precision.
    """
    z = as_complex(z)
    q = cmath.exp(2j * math.pi * z)
    out = cmath.exp(1j * math.pi * z / 12)
    qm = 1.0 + 0j
    for _ in range(eta_terms(z.imag)):
        qm *= q
        out *= 1.0 - qm
    return out


def log_abs_eta(z) -> float:
    """log |eta(z)|, summed as logs to stay accurate for small Im z."""
    z = as_complex(z)
    q = cmath.exp(2j * math.pi * z)
    acc = [-math.pi * z.imag / 12]
    qm = 1.0 + 0j
    for _ in range(eta_terms(z.imag)):
        qm *= q
        acc.append(math.log(abs(1.0 - qm)))
    return math.fsum(acc)
