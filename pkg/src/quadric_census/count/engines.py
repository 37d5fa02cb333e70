"""Exact counting engines for W_d and V_d, their brute-force oracles, and orbit tallies."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .. import _jit
from ..arith import PRIME_LIMIT, PRIMES, square_root_of_discriminant
from ..errors import DomainError
from ..forms import GAMMA1, GAMMA2, OrbitClass, classify_index, normalize_lattice
from . import kernels

MAX_BOUND = PRIME_LIMIT * PRIME_LIMIT


@dataclass(frozen=True)
class CountResult:
    d: int
    T: float
    total: int
    per_orbit: dict[OrbitClass, int] | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.per_orbit is not None and sum(self.per_orbit.values()) != self.total:
            raise AssertionError("orbit tallies do not add up to the total")


def ball_bound(T) -> int:
    """floor(T^2) computed exactly; T may be int, float, Fraction or a decimal string."""
    t = Fraction(T)
    if t <= 0:
        raise DomainError(f"T must be positive, got {T}")
    return math.floor(t * t)


def _kernels(backend):
    backend = backend or _jit.backend_name()
    if backend == "numba":
        return kernels.NUMBA_KERNELS
    if backend == "numpy":
        return kernels.NUMPY_KERNELS
    raise ValueError(f"unknown backend {backend!r}")


def _chunks(lo, hi, parts):
    parts = max(1, min(parts, hi - lo))
    edges = [lo + (hi - lo) * k // parts for k in range(parts + 1)]
    return list(zip(edges[:-1], edges[1:]))


def _run_chunks(fn, lo, hi, threads):
    """Apply fn to contiguous slices of [lo, hi); results come back in slice order."""
    pieces = _chunks(lo, hi, threads)
    if threads <= 1 or len(pieces) <= 1:
        return [fn(a, b) for a, b in pieces]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(lambda ab: fn(*ab), pieces))


def r2(m: int) -> int:
    """#{(x, y) in Z^2 : x^2 + y^2 = m}."""
    if int(m) != m or m < 1:
        raise DomainError("r2 needs m >= 1")
    if m > MAX_BOUND:
        raise DomainError(f"m = {m} exceeds the prime table's reach")
    return int(kernels.r2_numba(int(m), PRIMES)) if _jit.USE_NUMBA else int(
        kernels.w_slices_numpy(0, 1, int(m), PRIMES)[0]
    )


def _setup(d, T):
    n = square_root_of_discriminant(d)
    bound = ball_bound(T)
    if bound + n * n > MAX_BOUND:
        raise DomainError("T too large for the prime table")
    return n, bound


def w_slice_table(d: int, zmax: int, threads=None, backend=None) -> np.ndarray:
    """r2(z^2 + d) for 0 <= z <= zmax."""
    threads = _jit.resolve_threads(threads)
    fn = _kernels(backend)["w_slices"]
    parts = _run_chunks(lambda a, b: fn(a, b, int(d), PRIMES), 0, zmax + 1, threads)
    return np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64)


def _zmax(d, bound):
    # largest z with 2 z^2 + d <= bound
    if bound < d:
        return -1
    return math.isqrt((bound - d) // 2)


def fast_count_w(d: int, T, threads=None, backend=None) -> CountResult:
    """N_d(T) = sum over z with 2z^2 + d <= T^2 of r2(z^2 + d)."""
    n, bound = _setup(d, T)
    zmax = _zmax(n * n, bound)
    if zmax < 0:
        return CountResult(n * n, float(T), 0)
    table = w_slice_table(n * n, zmax, threads, backend)
    total = int(table[0]) + 2 * int(table[1:].sum())
    return CountResult(n * n, float(T), total)


def fast_count_w_grid(d: int, Ts, threads=None, backend=None) -> list[CountResult]:
    """fast_count_w at every T of a grid, sharing one slice table."""
    n = square_root_of_discriminant(d)
    bounds = [ball_bound(T) for T in Ts]
    if not bounds:
        return []
    top = max(bounds)
    if top + n * n > MAX_BOUND:
        raise DomainError("T too large for the prime table")
    zmax = _zmax(n * n, top)
    if zmax < 0:
        return [CountResult(n * n, float(T), 0) for T in Ts]
    table = w_slice_table(n * n, zmax, threads, backend)
    weights = np.full(table.shape, 2, dtype=np.int64)
    weights[0] = 1
    cum = np.cumsum(table * weights)
    out = []
    for T, bound in zip(Ts, bounds):
        z = _zmax(n * n, bound)
        out.append(CountResult(n * n, float(T), int(cum[z]) if z >= 0 else 0))
    return out


def brute_count_w(d: int, T, threads=None, backend=None) -> CountResult:
    """Exhaustive (x, z) scan with an exact square test for y."""
    n, bound = _setup(d, T)
    zmax = _zmax(n * n, bound)
    if zmax < 0:
        return CountResult(n * n, float(T), 0)
    threads = _jit.resolve_threads(threads)
    fn = _kernels(backend)["brute_w"]
    parts = _run_chunks(lambda a, b: fn(a, b, n * n, bound), -zmax, zmax + 1, threads)
    return CountResult(n * n, float(T), int(sum(parts)))


def count_q(d: int, T, threads=None, backend=None) -> CountResult:
    """N_{Q,d}(T): loop over b = n mod 2 and the divisor pairs of ac = (b^2 - n^2)/4."""
    n, bound = _setup(d, T)
    threads = _jit.resolve_threads(threads)
    fn = _kernels(backend)["q_slices"]
    bmax = math.isqrt(bound)
    parts = _run_chunks(lambda a, b: fn(a, b, n, bound, PRIMES), 0, bmax + 1, threads)
    return CountResult(n * n, float(T), int(sum(parts)))


def brute_count_q(d: int, T, threads=None, backend=None) -> CountResult:
    n, bound = _setup(d, T)
    threads = _jit.resolve_threads(threads)
    fn = _kernels(backend)["brute_q"]
    amax = math.isqrt(bound // 2)
    parts = _run_chunks(lambda a, b: fn(a, b, n, bound), -amax, amax + 1, threads)
    return CountResult(n * n, float(T), int(sum(parts)))


def enumerate_w_points(d: int, T) -> np.ndarray:
    """All (x, y, z) on W_d with x^2 + y^2 + z^2 <= T^2, as an (N, 3) int64 array."""
    n, bound = _setup(d, T)
    zmax = _zmax(n * n, bound)
    rows = []
    for z in range(-zmax, zmax + 1):
        s = z * z + n * n
        xm = math.isqrt(s)
        xs = np.arange(-xm, xm + 1, dtype=np.int64)
        y2 = s - xs * xs
        y = np.array([math.isqrt(int(v)) for v in y2], dtype=np.int64)
        sq = y * y == y2
        for x, yy in zip(xs[sq], y[sq]):
            rows.append((int(x), int(yy), z))
            if yy:
                rows.append((int(x), -int(yy), z))
    return np.array(rows, dtype=np.int64).reshape(-1, 3)


def enumerate_v_points(d: int, T) -> np.ndarray:
    """All integral (a, b, c) with b^2 - 4ac = d and 2a^2 + b^2 + 2c^2 <= T^2."""
    n, bound = _setup(d, T)
    rows = []
    for b in range(-math.isqrt(bound), math.isqrt(bound) + 1):
        if (b - n) % 2:
            continue
        room = bound - b * b
        m = (b * b - n * n) // 4
        if m == 0:
            k = math.isqrt(room // 2)
            rows.append((0, b, 0))
            for t in range(1, k + 1):
                rows += [(t, b, 0), (-t, b, 0), (0, b, t), (0, b, -t)]
            continue
        mm = abs(m)
        for a in range(1, math.isqrt(mm) + 1):
            if mm % a:
                continue
            for aa in {a, mm // a}:
                c = m // aa
                if 2 * aa * aa + 2 * c * c <= room:
                    rows += [(aa, b, c), (-aa, b, -c)]
    return np.array(rows, dtype=np.int64).reshape(-1, 3)


def orbit_tally(d: int, T, lattice=GAMMA1) -> CountResult:
    """Classify every point of the ball and count per orbit class.

    Gamma1 tallies V_d(Z); Gamma2 tallies the tilde-integral points, which are
    the images of W_d(Z).
    """
    lattice = normalize_lattice(lattice)
    n = square_root_of_discriminant(d)
    tally: dict[OrbitClass, int] = {}
    if lattice == GAMMA1:
        pts = enumerate_v_points(d, T)
        doubled = 2 * pts
    else:
        pts = enumerate_w_points(d, T)
        x, y, z = pts[:, 0], pts[:, 1], pts[:, 2]
        doubled = np.stack([z + y, 2 * x, z - y], axis=1)
    for a2, b2, c2 in doubled.tolist():
        kind, j = classify_index(a2, b2, c2, n, lattice)
        key = OrbitClass(lattice, kind, j)
        tally[key] = tally.get(key, 0) + 1
    return CountResult(n * n, float(T), int(len(doubled)), dict(sorted(tally.items())))
