"""Hot loops for the counting engines, each in a numba and a numpy flavour.

All kernels take an exact integer bound B = floor(T^2) and work on a
half-open slice of the outer loop so callers can split the work.
"""

import math

import numpy as np

from .._jit import njit


@njit(cache=True, nogil=True)
def r2_numba(m, primes):
    """Representations of m >= 1 as x^2 + y^2; needs primes up to sqrt(m)."""
    out = 4
    for i in range(primes.shape[0]):
        p = primes[i]
        if p * p > m:
            break
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            r = p % 4
            if r == 3 and e % 2 == 1:
                return 0
            if r == 1:
                out *= e + 1
    if m > 1:
        r = m % 4
        if r == 3:
            return 0
        if r == 1:
            out *= 2
    return out


@njit(cache=True, nogil=True)
def w_slices_numba(z0, z1, d, primes):
    """r2(z^2 + d) for z in [z0, z1)."""
    out = np.empty(z1 - z0, dtype=np.int64)
    for z in range(z0, z1):
        out[z - z0] = r2_numba(z * z + d, primes)
    return out


def w_slices_numpy(z0, z1, d, primes):
    m = np.arange(z0, z1, dtype=np.int64)
    m = m * m + d
    out = np.full(m.shape, 4, dtype=np.int64)
    alive = np.ones(m.shape, dtype=bool)
    rest = m.copy()
    top = math.isqrt(int(m.max())) if m.size else 0
    for p in primes:
        p = int(p)
        if p > top:
            break
        e = np.zeros(m.shape, dtype=np.int64)
        hit = rest % p == 0
        while hit.any():
            e += hit
            rest = np.where(hit, rest // p, rest)
            hit = rest % p == 0
        if p % 4 == 3:
            alive &= e % 2 == 0
        elif p % 4 == 1:
            out *= e + 1
    # leftover cofactor is 1 or a prime
    out = np.where(rest % 4 == 1, out * np.where(rest > 1, 2, 1), out)
    alive &= rest % 4 != 3
    return np.where(alive, out, 0)


@njit(cache=True, nogil=True)
def _isqrt(m):
    r = int(math.sqrt(m))
    while r * r > m:
        r -= 1
    while (r + 1) * (r + 1) <= m:
        r += 1
    return r


@njit(cache=True, nogil=True)
def brute_w_numba(z0, z1, d, bound):
    """Points of x^2 + y^2 - z^2 = d, x^2 + y^2 + z^2 <= bound, with z in [z0, z1).

    For each (x, z) the value y^2 = z^2 + d - x^2 is tested for squareness.
    """
    total = 0
    for z in range(z0, z1):
        s = z * z + d
        if s + z * z > bound:
            continue
        xm = _isqrt(s)
        for x in range(-xm, xm + 1):
            y2 = s - x * x
            y = _isqrt(y2)
            if y * y == y2:
                total += 1 if y == 0 else 2
    return total


def brute_w_numpy(z0, z1, d, bound):
    total = 0
    for z in range(z0, z1):
        s = z * z + d
        if s + z * z > bound:
            continue
        xm = math.isqrt(s)
        y2 = s - np.arange(-xm, xm + 1, dtype=np.int64) ** 2
        y = np.floor(np.sqrt(y2.astype(np.float64))).astype(np.int64)
        y -= (y * y > y2).astype(np.int64)
        y += ((y + 1) * (y + 1) <= y2).astype(np.int64)
        sq = y * y == y2
        total += int(np.where(y[sq] == 0, 1, 2).sum())
    return total


@njit(cache=True, nogil=True)
def _divisor_hits(mm, room, primes, divs):
    # number of a | mm with 2a^2 + 2(mm/a)^2 <= room
    nd = 1
    divs[0] = 1
    rest = mm
    for i in range(primes.shape[0]):
        p = primes[i]
        if p * p > rest:
            break
        if rest % p == 0:
            e = 0
            while rest % p == 0:
                rest //= p
                e += 1
            base = nd
            pk = 1
            for _ in range(e):
                pk *= p
                for t in range(base):
                    divs[nd] = divs[t] * pk
                    nd += 1
    if rest > 1:
        for t in range(nd):
            divs[nd + t] = divs[t] * rest
        nd *= 2
    hits = 0
    for t in range(nd):
        a = divs[t]
        c = mm // a
        if 2 * a * a + 2 * c * c <= room:
            hits += 1
    return hits


@njit(cache=True, nogil=True)
def q_slices_numba(b0, b1, n, bound, primes):
    """Points of V_{n^2} in the ball with |b| in [b0, b1), b = n mod 2."""
    total = 0
    divs = np.empty(4096, dtype=np.int64)
    for b in range(b0, b1):
        if (b - n) % 2 != 0:
            continue
        room = bound - b * b
        if room < 0:
            break
        mult = 1 if b == 0 else 2
        m = (b * b - n * n) // 4
        if m == 0:
            k = _isqrt(room // 2)
            total += mult * (4 * k + 1)
        else:
            total += mult * 2 * _divisor_hits(abs(m), room, primes, divs)
    return total


def q_slices_numpy(b0, b1, n, bound, primes):
    bs = np.arange(b0, b1, dtype=np.int64)
    bs = bs[((bs - n) % 2 == 0) & (bs * bs <= bound)]
    if bs.size == 0:
        return 0
    room = bound - bs * bs
    mult = np.where(bs == 0, 1, 2)
    m = np.abs((bs * bs - n * n) // 4)
    total = 0
    zero = m == 0
    for r, w in zip(room[zero], mult[zero]):
        total += int(w) * (4 * math.isqrt(int(r) // 2) + 1)
    nz = ~zero
    m, room, mult = m[nz], room[nz], mult[nz]
    hits = np.zeros(m.shape, dtype=np.int64)
    amax = math.isqrt(int(room.max()) // 2) if room.size else 0
    for a in range(1, amax + 1):
        ok = (m % a == 0) & (2 * a * a + 2 * (m // a) ** 2 <= room)
        hits += ok
    total += int((mult * 2 * hits).sum())
    return total


@njit(cache=True, nogil=True)
def brute_q_numba(a0, a1, n, bound):
    """Exhaustive (a, c) loop with a in [a0, a1); b from b^2 = n^2 + 4ac."""
    total = 0
    d = n * n
    for a in range(a0, a1):
        ra = bound - 2 * a * a
        if ra < 0:
            continue
        cm = _isqrt(ra // 2)
        for c in range(-cm, cm + 1):
            b2 = d + 4 * a * c
            if b2 < 0 or b2 + 2 * a * a + 2 * c * c > bound:
                continue
            b = _isqrt(b2)
            if b * b == b2:
                total += 1 if b == 0 else 2
    return total


def brute_q_numpy(a0, a1, n, bound):
    total = 0
    d = n * n
    for a in range(a0, a1):
        ra = bound - 2 * a * a
        if ra < 0:
            continue
        cm = math.isqrt(ra // 2)
        c = np.arange(-cm, cm + 1, dtype=np.int64)
        b2 = d + 4 * a * c
        keep = (b2 >= 0) & (b2 + 2 * a * a + 2 * c * c <= bound)
        b2 = b2[keep]
        b = np.floor(np.sqrt(b2.astype(np.float64))).astype(np.int64)
        b -= (b * b > b2).astype(np.int64)
        b += ((b + 1) * (b + 1) <= b2).astype(np.int64)
        sq = b * b == b2
        total += int(np.where(b[sq] == 0, 1, 2).sum())
    return total


NUMBA_KERNELS = {
    "w_slices": w_slices_numba,
    "brute_w": brute_w_numba,
    "q_slices": q_slices_numba,
    "brute_q": brute_q_numba,
}

NUMPY_KERNELS = {
    "w_slices": w_slices_numpy,
    "brute_w": brute_w_numpy,
    "q_slices": q_slices_numpy,
    "brute_q": brute_q_numpy,
}
