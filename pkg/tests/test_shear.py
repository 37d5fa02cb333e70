import math
import random

import numpy as np
import pytest
from scipy import integrate

from quadric_census.errors import DomainError
from quadric_census.forms import GroupElement
from quadric_census.shear import (
    BumpSpec,
    bump_normalization,
    cosh_dist_to_i,
    make_bump,
    nearby_group_elements,
    periodized_bump_eval,
    periodized_bump_many,
    predicted_shear,
    predicted_two_sided,
    shear_integral,
    shear_integral_dense,
    standard_profile,
    two_sided_shear,
)
from quadric_census.special import kronecker_sl2z


def test_profile():
    assert standard_profile(0.0) == 1.0
    assert standard_profile(1.0) == 0.0
    assert standard_profile(-1.2) == 0.0
    assert 0 < standard_profile(0.9) < standard_profile(0.5)


@pytest.mark.parametrize("delta", [0.02, 0.05, 0.1, 0.2])
def test_bump_mass_by_2d_quadrature(delta):
    spec = make_bump(delta)

    def f(x, y):
        return float(spec.psi_of_cosh(cosh_dist_to_i(complex(x, y)))) / (y * y)

    # the ball B(i, delta) is the Euclidean disk centred at i cosh(delta), radius sinh(delta)
    ch, sh = math.cosh(delta), math.sinh(delta)
    mass, err = integrate.dblquad(
        f,
        ch - sh,
        ch + sh,
        lambda y: -math.sqrt(max(sh * sh - (y - ch) ** 2, 0.0)),
        lambda y: math.sqrt(max(sh * sh - (y - ch) ** 2, 0.0)),
        epsabs=1e-13,
        epsrel=1e-12,
    )
    assert abs(mass - 1.0) <= 1e-10


def test_normalization_linearity_and_limit():
    c1 = bump_normalization(0.1)
    c2 = bump_normalization(0.1, lambda u: 2 * standard_profile(u))
    assert c2 == pytest.approx(c1 / 2, rel=1e-14)
    # flat profile: c * area(B_delta) = 1 exactly, area = 2 pi (cosh delta - 1)
    flat = lambda u: np.where(np.abs(u) < 1, 1.0, 0.0)
    for delta in (0.01, 0.1):
        c = bump_normalization(delta, flat)
        assert c * 2 * math.pi * (math.cosh(delta) - 1) == pytest.approx(1.0, rel=1e-10)
    with pytest.raises(DomainError):
        bump_normalization(0.6)
    with pytest.raises(DomainError):
        bump_normalization(0.1, lambda u: 0.0 * u)


def _brute_nearby(z, delta, p, bound=50):
    ch = math.cosh(delta)
    found = set()
    for c in range(-bound, bound + 1):
        if c % p:
            continue
        for d in range(-bound, bound + 1):
            if math.gcd(c, d) != 1:
                continue
            if abs(c * z + d) ** 2 > z.imag * math.exp(delta) or abs(c * z + d) ** 2 < z.imag * math.exp(-delta):
                continue
            # all a, b with ad - bc = 1 and |a|, |b| <= bound
            for a in range(-bound, bound + 1):
                if c == 0:
                    if a * d != 1:
                        continue
                    bs = range(-bound, bound + 1)
                else:
                    if (a * d - 1) % c:
                        continue
                    bs = [(a * d - 1) // c]
                for b in bs:
                    if abs(b) > bound:
                        continue
                    w = (a * z + b) / (c * z + d)
                    if cosh_dist_to_i(w) <= ch:
                        key = (a, b, c, d) if (c, d) > (0, 0) or (c == 0 and d > 0) else (-a, -b, -c, -d)
                        if c < 0 or (c == 0 and d < 0):
                            key = (-a, -b, -c, -d)
                        found.add(key)
    return found


def _canon(g: GroupElement):
    a, b, c, d = (int(v) for v in g.entries())
    if c < 0 or (c == 0 and d < 0):
        a, b, c, d = -a, -b, -c, -d
    return (a, b, c, d)


def test_nearby_examples():
    assert GroupElement.of(1, 0, 0, 1) in nearby_group_elements(1j, 0.1)
    assert nearby_group_elements(0.5 + 10j, 0.1) == []


@pytest.mark.parametrize("p", [1, 2, 3])
def test_nearby_against_brute_force(p):
    rng = random.Random(40 + p)
    delta = 0.3
    for _ in range(20):
        # pick a point near some orbit image of i so the lists are nonempty
        g = GroupElement.of(1, 0, 0, 1)
        for _ in range(3):
            g = g @ rng.choice([GroupElement.of(1, 1, 0, 1), GroupElement.of(1, -1, 0, 1), GroupElement.of(1, 0, p, 1)])
        w = g.mobius(complex(rng.uniform(-0.2, 0.2), rng.uniform(0.85, 1.2)))
        got = {_canon(h) for h in nearby_group_elements(w, delta, p)}
        assert len(got) == len(nearby_group_elements(w, delta, p))
        assert got == _brute_nearby(w, delta, p)


def test_psi_examples():
    spec = make_bump(0.1)
    z = 0.2 + 0.9j
    assert abs(periodized_bump_eval(z + 1, spec) - periodized_bump_eval(z, spec)) <= 1e-12
    assert periodized_bump_eval(1j, spec) > 0
    assert periodized_bump_eval(0.5 + 10j, spec) == 0.0


@pytest.mark.parametrize("p", [1, 2, 5])
def test_psi_invariance(p):
    spec = make_bump(0.3)
    rng = random.Random(p)
    gens = [GroupElement.of(1, 1, 0, 1), GroupElement.of(1, 0, p, 1), GroupElement.of(1, -1, 0, 1)]
    for _ in range(10):
        z = complex(rng.uniform(-0.5, 0.5), rng.uniform(0.6, 1.3))
        g = GroupElement.of(1, 0, 0, 1)
        for _ in range(4):
            g = g @ rng.choice(gens)
        assert abs(periodized_bump_eval(g.mobius(z), spec, p) - periodized_bump_eval(z, spec, p)) <= 1e-10


def test_psi_vectorised_matches_scalar():
    spec = make_bump(0.2)
    rng = np.random.default_rng(0)
    zs = rng.uniform(-0.6, 0.6, 50) + 1j * rng.uniform(0.05, 1.4, 50)
    for p in (1, 3):
        many = periodized_bump_many(zs, spec, p)
        for z, v in zip(zs, many):
            assert v == pytest.approx(periodized_bump_eval(z, spec, p), rel=1e-12, abs=1e-14)


@pytest.mark.parametrize("p", [1, 2, 3])
def test_shear_integral_against_dense(p):
    spec = make_bump(0.2)
    fast = shear_integral(5, spec, p)
    dense = shear_integral_dense(5, spec, p, points=1 << 16)
    assert fast >= 0
    assert abs(fast - dense) <= 1e-6


def test_shear_domain():
    with pytest.raises(DomainError):
        shear_integral(1.5, make_bump(0.1))
    with pytest.raises(DomainError):
        shear_integral(5, make_bump(0.1), 4)
    with pytest.raises(DomainError):
        BumpSpec(0.0)


def test_predicted_shear():
    spec = make_bump(0.05)
    assert predicted_shear(1, spec) == pytest.approx(kronecker_sl2z(1j), abs=1e-15)
    assert predicted_shear(math.e * 7, spec) - predicted_shear(7, spec) == pytest.approx(3 / math.pi, rel=1e-13)
    g4 = math.gamma(0.25) ** 4
    from quadric_census.special import zeta, zeta_prime

    k = 3 / math.pi * (2 * np.euler_gamma - 2 * zeta_prime(2) / zeta(2) - math.log(g4 / (4 * math.pi**3)))
    assert predicted_shear(100, spec) == pytest.approx(3 / math.pi * math.log(100) + k, abs=1e-12)


def test_shear_residual_shrinks_gamma1():
    spec = make_bump(0.05)
    r25 = abs(shear_integral(25, spec) - predicted_shear(25, spec))
    r400 = abs(shear_integral(400, spec) - predicted_shear(400, spec))
    assert r400 <= 0.2
    assert r400 < r25


def test_two_sided_is_sum_of_rays():
    spec = make_bump(0.2)
    assert two_sided_shear(5, spec, 1) == pytest.approx(2 * shear_integral(5, spec, 1), rel=1e-15)
    # direct integral over (0, inf): below 1e-4 the integrand vanishes at T = 5
    direct = shear_integral_dense(5, spec, 2, points=1 << 18, lower=1e-4)
    assert abs(two_sided_shear(5, spec, 2) - direct) <= 1e-6


def test_two_sided_scale_invariance():
    spec = make_bump(0.2)
    T, t = 5.0, 0.3
    n = 1 << 17
    logy = np.linspace(math.log(1e-4) - 1, spec.delta + 1, n + 1)
    y = np.exp(logy)
    w = np.ones(n + 1)
    w[1:-1:2], w[2:-1:2] = 4.0, 2.0
    h = logy[1] - logy[0]
    plain = h / 3 * np.dot(w, periodized_bump_many(T * y + 1j * y, spec, 2))
    scaled = h / 3 * np.dot(w, periodized_bump_many(math.exp(t) * (T * y + 1j * y), spec, 2))
    assert abs(plain - scaled) <= 1e-6
    assert abs(plain - two_sided_shear(T, spec, 2)) <= 1e-6


def test_two_sided_residual_trend():
    spec = make_bump(0.05)
    res = [abs(two_sided_shear(T, spec, 2) - predicted_two_sided(T, spec, 2)) for T in (25, 100, 400)]
    assert res[0] > res[1] > res[2]
