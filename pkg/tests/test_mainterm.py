import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from quadric_census.count import count_q, fast_count_w, orbit_tally
from quadric_census.errors import DomainError
from quadric_census.forms import GAMMA1, GAMMA2, PLAIN, cone_radius
from quadric_census.mainterm import (
    CountSeries,
    admissible_exponents,
    cone_main_term,
    cone_main_terms,
    fit_exponent,
    main_term_q,
    main_term_w,
    make_series,
    parse_grid,
    residual_series,
)
from quadric_census.special import constant_C, kronecker_sl2z

mpmath.mp.dps = 30


def mp_C():
    zr = mpmath.zeta(2, derivative=1) / mpmath.zeta(2)
    g4 = mpmath.gamma(mpmath.mpf(1) / 4) ** 4
    return 2 * mpmath.euler - 1 - 2 * zr - mpmath.log(2) / 2 - mpmath.log(g4 / (4 * mpmath.pi**3))


def mp_D(n):
    return mpmath.fsum(mpmath.log(math.gcd(n, j)) for j in range(1, n + 1)) / n


def mp_main_w(n, T):
    nu = (n & -n).bit_length() - 1
    T = mpmath.mpf(T)
    return mpmath.sqrt(128) * T / mpmath.pi * (
        mpmath.log(T) + mp_C() - mp_D(n) + mpmath.log(2) * (mpmath.mpf(1) / 3 - mpmath.mpf(1) / 2 ** (nu + 2))
    )


def mp_main_q(n, T):
    T = mpmath.mpf(T)
    return mpmath.sqrt(72) * T / mpmath.pi * (mpmath.log(T) + mp_C() - mp_D(n))


def test_main_term_structure():
    for T in (3.0, 100.0, 1e5):
        diff = main_term_w(144, math.e * T) / math.e - main_term_w(144, T)
        assert diff == pytest.approx(math.sqrt(128) / math.pi * T, rel=1e-12)
    T = 77.0
    d1 = math.sqrt(128) * T / math.pi * (math.log(T) + constant_C() + math.log(2) * (1 / 3 - 1 / 4))
    assert main_term_w(1, T) == pytest.approx(d1, rel=1e-14)
    assert main_term_q(1, T) == pytest.approx(math.sqrt(72) * T / math.pi * (math.log(T) + constant_C()), rel=1e-14)
    assert math.sqrt(128) / math.sqrt(72) == pytest.approx(4 / 3, rel=1e-15)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 12, 30])
def test_main_terms_against_high_precision(n):
    for T in (50.0, 1e4, 1e7):
        assert main_term_w(n * n, T) == pytest.approx(float(mp_main_w(n, T)), rel=1e-10)
        assert main_term_q(n * n, T) == pytest.approx(float(mp_main_q(n, T)), rel=1e-10)


def test_main_term_affine_in_log():
    Ts = np.array([10.0, 1e3, 1e6])
    y = np.array([main_term_w(36, t) / t for t in Ts])
    slopes = np.diff(y) / np.diff(np.log(Ts))
    assert np.allclose(slopes, math.sqrt(128) / math.pi, rtol=1e-12, atol=0)


def test_main_term_domain():
    with pytest.raises(DomainError):
        main_term_w(145, 10.0)
    with pytest.raises(DomainError):
        main_term_q(144, 0.0)


def test_cone_term_gamma1_n1():
    T = 500.0
    t1 = cone_radius(1, T)
    v = math.pi / 3
    expected = 2 * t1 / v * (2 * math.log(t1) - 2 + 2 * v * kronecker_sl2z(1j))
    assert cone_main_term(1, 0, T, GAMMA1) == pytest.approx(expected, rel=1e-14)
    with pytest.raises(DomainError):
        cone_main_term(5, 0, 4.0, GAMMA1)


@pytest.mark.parametrize("n", [1, 2, 5, 12])
def test_gamma1_orbit_sum_reconstruction(n):
    gaps = []
    for T in (1e3, 1e4, 1e5, 1e6):
        total = sum(cone_main_terms(n, T, GAMMA1).values())
        gaps.append(abs(total - main_term_q(n * n, T)) / T)
    assert all(b < a for a, b in zip(gaps, gaps[1:]))
    assert gaps[-1] * 1e6 <= 20 * n * n


@pytest.mark.parametrize("n", [1, 2, 3, 4, 6, 12])
def test_gamma2_orbit_sum_reconstruction(n):
    T = 1e6
    total = sum(cone_main_terms(n, T, GAMMA2).values())
    assert len(cone_main_terms(n, T, GAMMA2)) == 4 * n
    assert total == pytest.approx(main_term_w(n * n, T), rel=1e-8)


@pytest.mark.parametrize("n,lattice", [(2, GAMMA1), (3, GAMMA1), (1, GAMMA2), (2, GAMMA2)])
def test_per_orbit_counts_follow_cone_terms(n, lattice):
    worst = []
    for T in (300.0, 1200.0):
        tally = orbit_tally(n * n, T, lattice).per_orbit
        terms = cone_main_terms(n, T, lattice)
        tn = cone_radius(n, T)
        worst.append(max(abs(c - terms[(cls.kind, cls.j)]) / tn for cls, c in tally.items()))
    assert worst[-1] <= 0.25
    assert worst[-1] <= worst[0] + 0.05


def test_admissible_exponents():
    e = admissible_exponents(0)
    assert (e.eta_max, e.beta_min, e.thm2_exponent) == (Fraction(3, 40), Fraction(3, 2), Fraction(3, 4))
    assert admissible_exponents(Fraction(7, 64)).eta_max == Fraction(3) / Fraction(383, 8)
    assert float(admissible_exponents(Fraction(7, 64)).eta_max) == pytest.approx(3 / 47.875, rel=1e-15)
    assert admissible_exponents(Fraction(1, 2)).eta_max == Fraction(3, 76)
    for bad in (-0.1, 0.6):
        with pytest.raises(DomainError):
            admissible_exponents(bad)


def test_eta_max_decreasing():
    grid = [Fraction(k, 40) for k in range(21)]
    vals = [admissible_exponents(t).eta_max for t in grid]
    assert all(b < a for a, b in zip(vals, vals[1:]))


def test_parse_grid():
    assert parse_grid("lin:1:3:3") == [1.0, 2.0, 3.0]
    g = parse_grid("log:10:1000:3")
    assert g == pytest.approx([10.0, 100.0, 1000.0], rel=1e-14)
    for bad in ("log:10:1", "cube:1:2:3", "lin:5:1:4", "log:0:1:3"):
        with pytest.raises(DomainError):
            parse_grid(bad)


def test_residual_series_rows():
    s = residual_series(144, parse_grid("log:200:3000:12"), "W")
    assert list(s.count) == sorted(s.count)
    for T, c, m, r in s.rows():
        assert r == c - m
        assert c == fast_count_w(144, T).total
    q = residual_series(144, [200.0, 900.0], "q")
    assert q.count == (count_q(144, 200.0).total, count_q(144, 900.0).total)
    with pytest.raises(DomainError):
        residual_series(144, [5.0, 4.0])
    with pytest.raises(DomainError):
        residual_series(144, [5.0], "Z")


@pytest.mark.parametrize("alpha", [0.5, 0.94])
def test_fit_exponent_synthetic(alpha):
    Ts = np.geomspace(100, 1e4, 12)
    s = make_series(1, "W", Ts, [0] * 12, [-(3.7 * t**alpha) for t in Ts])
    assert abs(fit_exponent(s) - alpha) <= 0.01


@given(st.floats(0.1, 1.5), st.floats(0.5, 50))
def test_fit_exponent_power_law(alpha, c):
    Ts = np.geomspace(100, 1e5, 8)
    rows = [(t, 0, 0.0, c * t**alpha) for t in Ts]
    assert fit_exponent(rows) == pytest.approx(alpha, abs=1e-9)


def test_fit_exponent_needs_rows():
    with pytest.raises(DomainError):
        fit_exponent([(10.0, 0, 0.0, 5.0)] * 4)
    assert isinstance(make_series(1, "W", [1.0], [2], [0.5]), CountSeries)
