"""Riemann zeta and friends for real s > 1, in double precision."""

from __future__ import annotations

import math
from fractions import Fraction

from ..arith import divisors
from ..errors import DomainError

# B_2, B_4, ..., B_24
_BERNOULLI = (
    Fraction(1, 6),
    Fraction(-1, 30),
    Fraction(1, 42),
    Fraction(-1, 30),
    Fraction(5, 66),
    Fraction(-691, 2730),
    Fraction(7, 6),
    Fraction(-3617, 510),
    Fraction(43867, 798),
    Fraction(-174611, 330),
    Fraction(854513, 138),
    Fraction(-236364091, 2730),
)
_EM_COEFFS = tuple(float(b / math.factorial(2 * k + 2)) for k, b in enumerate(_BERNOULLI))

_EM_N = 20
_EM_TERMS = 10


def _check_s(s):
    s = float(s)
    if not s > 1.0:
        raise DomainError(f"need s > 1, got {s}")
    return s


def _em_parts(s, n_head=_EM_N, terms=_EM_TERMS):
    """Euler-Maclaurin pieces of zeta(s) and d/ds zeta(s) with cutoff N."""
    N = n_head
    logN = math.log(N)
    head = [n**-s for n in range(1, N)]
    dhead = [-math.log(n) * n**-s for n in range(2, N)]

    Ns1 = N ** (1.0 - s)
    tail = [Ns1 / (s - 1.0), 0.5 * N**-s]
    dtail = [-logN * Ns1 / (s - 1.0) - Ns1 / (s - 1.0) ** 2, -0.5 * logN * N**-s]

    # B_{2k}/(2k)! * s(s+1)...(s+2k-2) * N^{-s-2k+1}
    poly = s
    dlog_poly = 1.0 / s
    for k in range(terms):
        if k > 0:
            a, b = s + 2 * k - 1, s + 2 * k
            poly *= a * b
            dlog_poly += 1.0 / a + 1.0 / b
        power = N ** (-s - 2 * k - 1)
        term = _EM_COEFFS[k] * poly * power
        tail.append(term)
        dtail.append(term * (dlog_poly - logN))
    return head + tail, dhead + dtail


def zeta(s: float) -> float:
    s = _check_s(s)
    parts, _ = _em_parts(s)
    return math.fsum(parts)


def zeta_prime(s: float) -> float:
    s = _check_s(s)
    _, dparts = _em_parts(s)
    return math.fsum(dparts)


def gamma_fn(s: float) -> float:
    s = float(s)
    if not s > 0.0:
        raise DomainError(f"gamma_fn needs s > 0, got {s}")
    return math.gamma(s)


def completed_zeta(s: float) -> float:
    """zeta*(s) = pi^{-s/2} zeta(s) Gamma(s/2)."""
    s = _check_s(s)
    return math.pi ** (-s / 2) * zeta(s) * math.gamma(s / 2)


def divisor_tau(s: float, m: int) -> float:
    """tau_s(m) = sum over ab = |m| of (a/b)^s."""
    if int(m) != m or m == 0:
        raise DomainError("divisor_tau needs a nonzero integer m")
    m = abs(int(m))
    return math.fsum((a / (m // a)) ** s for a in divisors(m))
