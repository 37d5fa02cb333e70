"""Binary quadratic forms of square discriminant and their orbits.

A triple (a, b, c) stands for Q(x, y) = a x^2 + b x y + c y^2. Matrices act
on the right, (a, b, c)^g = (a, b, c) spin(g), which is Q^g(x, y) =
Q(alpha x + beta y, gamma x + delta y) for g = (alpha, beta; gamma, delta).
Everything here is exact: entries are Fractions, internals use Python ints.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .arith import square_root_of_discriminant
from .errors import DomainError

GAMMA1 = "Gamma1"
GAMMA2 = "Gamma2"
PLAIN = "plain"
TILDE = "tilde"
INFINITY = "infinity"
ONE = "one"

_HALF = Fraction(1, 2)


def _q(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def normalize_lattice(lattice) -> str:
    key = str(lattice).strip().lower().replace("_", "")
    if key in ("gamma1", "g1", "1", "sl2z"):
        return GAMMA1
    if key in ("gamma2", "g2", "2", "theta"):
        return GAMMA2
    raise DomainError(f"unknown lattice {lattice!r}")


@dataclass(frozen=True)
class FormTriple:
    a: Fraction
    b: Fraction
    c: Fraction

    def __post_init__(self):
        for name in ("a", "b", "c"):
            val = _q(getattr(self, name))
            if (2 * val).denominator != 1:
                raise DomainError(f"entries must lie in (1/2)Z, got {name} = {val}")
            object.__setattr__(self, name, val)

    @classmethod
    def of(cls, a, b, c) -> "FormTriple":
        return cls(_q(a), _q(b), _q(c))

    def disc(self) -> Fraction:
        return self.b * self.b - 4 * self.a * self.c

    def norm2(self) -> Fraction:
        """2a^2 + b^2 + 2c^2, the squared norm matching x^2 + y^2 + z^2 on W_d."""
        return 2 * self.a * self.a + self.b * self.b + 2 * self.c * self.c

    def is_integral(self) -> bool:
        return all(v.denominator == 1 for v in (self.a, self.b, self.c))

    def is_tilde_integral(self) -> bool:
        return self.b.denominator == 1 and (self.a + self.c).denominator == 1

    def doubled(self) -> tuple[int, int, int]:
        return int(2 * self.a), int(2 * self.b), int(2 * self.c)

    def as_tuple(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.a, self.b, self.c)

    def __str__(self):
        return f"({self.a}, {self.b}, {self.c})"


@dataclass(frozen=True)
class GroupElement:
    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction

    def __post_init__(self):
        for name in ("a", "b", "c", "d"):
            object.__setattr__(self, name, _q(getattr(self, name)))
        if self.det == 0:
            raise DomainError("singular matrix")

    @classmethod
    def of(cls, a, b, c, d) -> "GroupElement":
        return cls(_q(a), _q(b), _q(c), _q(d))

    @property
    def det(self) -> Fraction:
        return self.a * self.d - self.b * self.c

    def __matmul__(self, other: "GroupElement") -> "GroupElement":
        return GroupElement(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> "GroupElement":
        det = self.det
        return GroupElement(self.d / det, -self.b / det, -self.c / det, self.a / det)

    def is_integral(self) -> bool:
        return all(v.denominator == 1 for v in self.entries())

    def is_sl2z(self) -> bool:
        return self.det == 1 and self.is_integral()

    def in_gamma2(self) -> bool:
        """Reduction mod 2 is I or (0,1;1,0)."""
        if not self.is_sl2z():
            return False
        a, b, c, d = (int(v) % 2 for v in self.entries())
        return (a, b, c, d) in ((1, 0, 0, 1), (0, 1, 1, 0))

    def in_gamma0(self, p: int) -> bool:
        return self.is_sl2z() and int(self.c) % p == 0

    def entries(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.a, self.b, self.c, self.d)

    def mobius(self, z: complex) -> complex:
        return (float(self.a) * z + float(self.b)) / (float(self.c) * z + float(self.d))

    def __str__(self):
        return f"({self.a}, {self.b}; {self.c}, {self.d})"


IDENTITY = GroupElement.of(1, 0, 0, 1)
S = GroupElement.of(0, 1, -1, 0)
T = GroupElement.of(1, 1, 0, 1)
L = GroupElement.of(1, 0, 1, 1)


@dataclass(frozen=True, order=True)
class OrbitClass:
    lattice: str
    kind: str
    j: int

    def __str__(self):
        if self.lattice == GAMMA1:
            return f"{GAMMA1}[{self.j}]"
        return f"{GAMMA2}:{self.kind}[{self.j}]"


def spin(g: GroupElement) -> tuple[tuple[Fraction, ...], ...]:
    if g.det != 1:
        raise DomainError("spin is defined on determinant-one matrices")
    a, b, c, d = g.entries()
    return (
        (a * a, 2 * a * b, b * b),
        (a * c, a * d + b * c, b * d),
        (c * c, 2 * c * d, d * d),
    )


def act(v: FormTriple, g: GroupElement) -> FormTriple:
    """Row vector times spin(g)."""
    rows = spin(g)
    vec = v.as_tuple()
    return FormTriple(*(sum(vec[i] * rows[i][k] for i in range(3)) for k in range(3)))


def w_to_v(x: int, y: int, z: int) -> FormTriple:
    return FormTriple(Fraction(z + y, 2), _q(x), Fraction(z - y, 2))


def v_to_w(v: FormTriple) -> tuple[int, int, int]:
    if not v.is_tilde_integral():
        raise DomainError(f"{v} is not tilde-integral")
    return int(v.b), int(v.a - v.c), int(v.a + v.c)


def tau(n: int, j) -> GroupElement:
    """(1, j/n; 0, 1), sending (0, n, 0) to (0, n, j)."""
    return GroupElement(Fraction(1), Fraction(j) / n, Fraction(0), Fraction(1))


def tilde_tau(n: int, j) -> GroupElement:
    """(1 + j/2n, j/2n; 1, 1), sending (0, n, 0) to (n + j/2, n + j, j/2)."""
    r = Fraction(j, 2 * n)
    return GroupElement(1 + r, r, Fraction(1), Fraction(1))


def orbit_reps(n: int, lattice=GAMMA1) -> list[tuple[OrbitClass, FormTriple]]:
    if int(n) != n or n < 1:
        raise DomainError("n must be a positive integer")
    lattice = normalize_lattice(lattice)
    if lattice == GAMMA1:
        return [(OrbitClass(GAMMA1, PLAIN, j), FormTriple.of(0, n, j)) for j in range(n)]
    out = [(OrbitClass(GAMMA2, PLAIN, j), FormTriple.of(0, n, j)) for j in range(2 * n)]
    out += [
        (OrbitClass(GAMMA2, TILDE, j), FormTriple.of(n + Fraction(j, 2), n + j, Fraction(j, 2)))
        for j in range(2 * n)
    ]
    return out


def rep_element(cls: OrbitClass, n: int) -> GroupElement:
    """tau_j or tilde_tau_j, the conjugator taking (0, n, 0) to the class representative."""
    if cls.kind == TILDE:
        return tilde_tau(n, cls.j)
    return tau(n, cls.j)


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def _primitive(u: int, v: int) -> tuple[int, int, int]:
    """(u, v) = k (u', v') with (u', v') primitive and first nonzero entry positive."""
    g = math.gcd(u, v)
    u, v = u // g, v // g
    if u < 0 or (u == 0 and v < 0):
        return -g, -u, -v
    return g, u, v


def _split_int(a: int, b: int, c: int, n: int) -> tuple[int, int, int, int]:
    """Integer (A, B, C, D), det = +n, with (Ax + By)(Cx + Dy) = Q and (A, B) primitive."""
    if a == 0:
        l1 = (0, 1)
        k, u, v = _primitive(b, c)
        l2 = (u, v)
    else:
        # Q = a (x - t1 y)(x - t2 y), t = (-b +- n) / 2a
        f1 = _primitive(2 * a, b + n)
        f2 = _primitive(2 * a, b - n)
        l1, l2 = (f1[1], f1[2]), (f2[1], f2[2])
        # a x^2 coefficient: k * l1[0] * l2[0] = a
        k = a // (l1[0] * l2[0])
    det12 = l1[0] * l2[1] - l1[1] * l2[0]
    if k * det12 == n:
        M = (l1[0], l1[1], k * l2[0], k * l2[1])
    else:
        M = (l2[0], l2[1], k * l1[0], k * l1[1])
    if M[0] * M[3] - M[1] * M[2] != n:
        raise AssertionError(f"factorisation of {(a, b, c)} failed: {M}")
    A, B, C, D = M
    if (A * C, A * D + B * C, B * D) != (a, b, c):
        raise AssertionError(f"factorisation of {(a, b, c)} failed: {M}")
    return M


def split_form(v: FormTriple) -> GroupElement:
    """M = (A, B; C, D) with det n and Q_M(x, y) = (Ax + By)(Cx + Dy) equal to v.

    The first row is primitive with its first nonzero entry positive; the
    content of the form sits on the second row.
    """
    if not v.is_integral():
        raise DomainError("split_form needs integral entries")
    n = square_root_of_discriminant(v.disc())
    return GroupElement.of(*_split_int(int(v.a), int(v.b), int(v.c), n))


def _mul(g, h):
    return (
        g[0] * h[0] + g[1] * h[2],
        g[0] * h[1] + g[1] * h[3],
        g[2] * h[0] + g[3] * h[2],
        g[2] * h[1] + g[3] * h[3],
    )


def _inv(g):
    return (g[3], -g[1], -g[2], g[0])


def _reduce_int(a: int, b: int, c: int, n: int) -> tuple[int, tuple[int, int, int, int]]:
    """Residue C in [0, n) and gamma in SL2(Z) with (a, b, c)^gamma = (C, n, 0)."""
    A, B, C, D = _split_int(a, b, c, n)
    _, u, w = _egcd(A, B)
    g1 = (u, -B, w, A)
    # M g1 = (1, 0; C', n)
    c1 = C * u + D * w
    t = -(c1 // n)
    return c1 + n * t, _mul(g1, (1, 0, t, 1))


@lru_cache(maxsize=256)
def _gamma1_table(n: int) -> dict[int, tuple[int, tuple[int, int, int, int]]]:
    table = {}
    for j in range(n):
        res, g = _reduce_int(0, n, j, n)
        table[res] = (j, g)
    if len(table) != n:
        raise AssertionError(f"representatives for n = {n} are not separated")
    return table


def _classify_gamma1_int(a: int, b: int, c: int, n: int) -> tuple[int, tuple[int, int, int, int]]:
    """(j, gamma) with (a, b, c) = (0, n, j)^gamma."""
    res, g = _reduce_int(a, b, c, n)
    j, gj = _gamma1_table(n)[res]
    return j, _mul(gj, _inv(g))


_SIGMAS = (
    ((1, 0, 0, 1), 0),
    ((1, 1, 0, 1), 1),
    ((1, 0, 1, 1), 2),
)


def _in_gamma2_int(g) -> bool:
    return tuple(x % 2 for x in g) in ((1, 0, 0, 1), (0, 1, 1, 0))


def _classify_gamma2_int(a2: int, b2: int, c2: int, n: int) -> tuple[str, int, tuple[int, int, int, int]]:
    """Classify v = (a2, b2, c2)/2 under Gamma_2; returns (kind, j, g) with v = rep^g."""
    jj, g = _classify_gamma1_int(a2, b2, c2, 2 * n)
    # v = (0, n, jj/2)^g, split g = sigma h with h in Gamma_2
    for sigma, which in _SIGMAS:
        h = _mul(_inv(sigma), g)
        if _in_gamma2_int(h):
            break
    else:  # pragma: no cover - the three cosets exhaust SL2(Z)
        raise AssertionError("coset decomposition failed")
    if which == 2:
        return TILDE, jj, h
    if jj % 2:
        raise AssertionError(f"odd index {jj} in a plain coset")
    return PLAIN, jj // 2 + (n if which == 1 else 0), h


def _check_input(v: FormTriple, lattice: str) -> int:
    n = square_root_of_discriminant(v.disc()) if v.disc().denominator == 1 else None
    if n is None:
        raise DomainError("square discriminant required")
    if lattice == GAMMA1 and not v.is_integral():
        raise DomainError(f"{v} is not integral")
    if lattice == GAMMA2 and not v.is_tilde_integral():
        raise DomainError(f"{v} is not tilde-integral")
    return n


def classify_with_element(v: FormTriple, lattice=GAMMA1) -> tuple[OrbitClass, GroupElement]:
    """The orbit class of v and an element g of the lattice with v = rep^g."""
    lattice = normalize_lattice(lattice)
    n = _check_input(v, lattice)
    if lattice == GAMMA1:
        j, g = _classify_gamma1_int(int(v.a), int(v.b), int(v.c), n)
        return OrbitClass(GAMMA1, PLAIN, j), GroupElement.of(*g)
    kind, j, g = _classify_gamma2_int(*v.doubled(), n)
    return OrbitClass(GAMMA2, kind, j), GroupElement.of(*g)


def classify(v: FormTriple, lattice=GAMMA1) -> OrbitClass:
    return classify_with_element(v, lattice)[0]


def classify_index(a2: int, b2: int, c2: int, n: int, lattice: str) -> tuple[str, int]:
    """Fast path on doubled integer coordinates (2a, 2b, 2c); no validation."""
    if lattice == GAMMA1:
        return PLAIN, _classify_gamma1_int(a2 // 2, b2 // 2, c2 // 2, n)[0]
    kind, j, _ = _classify_gamma2_int(a2, b2, c2, n)
    return kind, j


def cone_radius(n: int, T: float) -> float:
    """T_n = sqrt(T^2 / 2n^2 - 1/2); raises when the ball misses the quadric."""
    if T < n:
        raise DomainError(f"T = {T} < n = {n}: the ball contains no points")
    return math.sqrt(max(T * T / (2.0 * n * n) - 0.5, 0.0))


def gamma1_width_pair(n: int, j: int) -> tuple[int, int]:
    g = math.gcd(n, j)
    return 1, n * n // (g * g)


def gamma2_cusp_pair(n: int, j: int, kind=PLAIN) -> tuple[str, str]:
    if not 0 <= j < 2 * n:
        raise DomainError(f"index {j} outside [0, {2 * n})")
    if kind == PLAIN:
        g = math.gcd(n, j)
        return INFINITY, (INFINITY if (n * j // (g * g)) % 2 == 0 else ONE)
    if kind == TILDE:
        g = math.gcd(2 * n, j)
        return ONE, (INFINITY if (j * (j + 2 * n) // (g * g)) % 2 == 0 else ONE)
    raise DomainError(f"unknown kind {kind!r}")


def gamma2_width_pair(n: int, j: int, kind=PLAIN) -> tuple[int, int]:
    if not 0 <= j < 2 * n:
        raise DomainError(f"index {j} outside [0, {2 * n})")
    if kind == PLAIN:
        g = math.gcd(n, j)
        base = n * n // (g * g)
        return 2, (base if (n * j // (g * g)) % 2 else 2 * base)
    if kind == TILDE:
        g = math.gcd(2 * n, j)
        odd_j = (j // g) % 2 == 1
        even_2n = (2 * n // g) % 2 == 0
        return 1, (4 * n * n // (g * g) if odd_j and even_2n else 8 * n * n // (g * g))
    raise DomainError(f"unknown kind {kind!r}")
