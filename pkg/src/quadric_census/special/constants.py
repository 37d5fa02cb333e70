"""The analytic constants entering the main terms."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .zeta import zeta, zeta_prime

EULER_GAMMA = float(np.euler_gamma)
LOG2 = math.log(2.0)


@dataclass(frozen=True)
class SpecialConstants:
    euler_gamma: float
    zeta_prime_2: float
    zeta_2: float
    gamma_quarter: float
    C: float
    v_gamma1: float

    @property
    def zeta_ratio_2(self) -> float:
        return self.zeta_prime_2 / self.zeta_2


def c_from_parts(euler_gamma: float, zeta_ratio_2: float, gamma_quarter: float) -> float:
    """2g - 1 - 2 zeta'/zeta(2) - log(2)/2 - log(Gamma(1/4)^4 / 4 pi^3)."""
    return math.fsum(
        [
            2.0 * euler_gamma,
            -1.0,
            -2.0 * zeta_ratio_2,
            -0.5 * LOG2,
            -(4.0 * math.log(gamma_quarter) - math.log(4.0) - 3.0 * math.log(math.pi)),
        ]
    )


# lru_cache makes first access idempotent; a racing duplicate computes the same value
@lru_cache(maxsize=1)
def special_constants() -> SpecialConstants:
    z2 = zeta(2.0)
    zp2 = zeta_prime(2.0)
    g4 = math.gamma(0.25)
    return SpecialConstants(
        euler_gamma=EULER_GAMMA,
        zeta_prime_2=zp2,
        zeta_2=z2,
        gamma_quarter=g4,
        C=c_from_parts(EULER_GAMMA, zp2 / z2, g4),
        v_gamma1=math.pi / 3.0,
    )


def constant_C() -> float:
    return special_constants().C


def zeta_ratio_2() -> float:
    return special_constants().zeta_ratio_2


def covolume(p: int = 1) -> float:
    """Hyperbolic area of Gamma_0(p) \\ H for p = 1 or prime p."""
    return (p + 1) * math.pi / 3.0 if p > 1 else math.pi / 3.0
