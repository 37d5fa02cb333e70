"""Exact integer arithmetic: factorisation, totient and the divisor-log factor."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DomainError

PRIME_LIMIT = 100_000


def prime_sieve(limit: int) -> np.ndarray:
    """All primes <= limit as an int64 array."""
    if limit < 2:
        return np.zeros(0, dtype=np.int64)
    is_p = np.ones(limit + 1, dtype=bool)
    is_p[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if is_p[p]:
            is_p[p * p :: p] = False
    return np.flatnonzero(is_p).astype(np.int64)


# built once, read-only afterwards
PRIMES = prime_sieve(PRIME_LIMIT)
PRIMES.setflags(write=False)
_PRIMES_LIST = PRIMES.tolist()


@dataclass(frozen=True)
class Factorization:
    value: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        prod = 1
        last = 1
        for p, e in self.factors:
            if p <= last or e < 1:
                raise ValueError(f"malformed factor list {self.factors}")
            last = p
            prod *= p**e
        if prod != self.value:
            raise ValueError(f"factors of {self.value} multiply to {prod}")

    def divisors(self) -> list[int]:
        divs = [1]
        for p, e in self.factors:
            divs = [d * p**k for d in divs for k in range(e + 1)]
        return sorted(divs)

    def __iter__(self):
        return iter(self.factors)


def _check_positive(n):
    if isinstance(n, bool) or int(n) != n:
        raise DomainError(f"expected a positive integer, got {n!r}")
    n = int(n)
    if n < 1:
        raise DomainError(f"expected a positive integer, got {n}")
    return n


@lru_cache(maxsize=4096)
def factorize(n: int) -> Factorization:
    """Trial division by the precomputed prime table (continuing past it if needed)."""
    n = _check_positive(n)
    m = n
    out = []
    for p in _PRIMES_LIST:
        if p * p > m:
            break
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out.append((p, e))
    else:
        # cofactor may still be composite beyond the table
        p = PRIME_LIMIT + 1 if PRIME_LIMIT % 2 == 0 else PRIME_LIMIT + 2
        while p * p <= m:
            if m % p == 0:
                e = 0
                while m % p == 0:
                    m //= p
                    e += 1
                out.append((p, e))
            p += 2
    if m > 1:
        out.append((m, 1))
    return Factorization(n, tuple(out))


def is_prime(n: int) -> bool:
    if int(n) != n or n < 2:
        return False
    f = factorize(int(n)).factors
    return len(f) == 1 and f[0][1] == 1


def divisors(n: int) -> list[int]:
    return factorize(n).divisors()


def euler_phi(n: int) -> int:
    n = _check_positive(n)
    out = n
    for p, _ in factorize(n):
        out = out // p * (p - 1)
    return out


def nu2(n: int) -> int:
    """2-adic valuation."""
    n = _check_positive(n)
    return (n & -n).bit_length() - 1


def gcd_log_sum(n: int) -> float:
    """sum_{j=1}^{n} log gcd(n, j), evaluated as sum_{a|n} phi(n/a) log a.

    The range includes j = n, which contributes log n; this is the range for
    which the divisor-sum identity holds exactly.
    """
    n = _check_positive(n)
    return math.fsum(euler_phi(n // a) * math.log(a) for a in divisors(n) if a > 1)


def dirichlet_D(n: int) -> float:
    """D(n) = (1/n) sum_{a|n} phi(n/a) log a, the n-th coefficient of (zeta^2 zeta')(s-1) up to sign."""
    n = _check_positive(n)
    return gcd_log_sum(n) / n


def isqrt_exact(m: int) -> int | None:
    """Integer square root of m if m is a perfect square, else None."""
    if m < 0:
        return None
    r = math.isqrt(m)
    return r if r * r == m else None


def square_root_of_discriminant(d) -> int:
    """n with d = n^2, n >= 1; raises DomainError otherwise."""
    if isinstance(d, bool) or int(d) != d:
        raise DomainError("square discriminant required")
    n = isqrt_exact(int(d))
    if n is None or n < 1:
        raise DomainError("square discriminant required")
    return n
