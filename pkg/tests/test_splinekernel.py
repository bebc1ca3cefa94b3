import math
import random
from fractions import Fraction as F

import mpmath
import numpy as np
import numpy.polynomial.polynomial as npoly
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from shiftcis.errors import DegenerateError, ZeroBaseError
from shiftcis.splinekernel import (
    PolyR,
    bernoulli,
    bspline_eval,
    cot_poly,
    euler_frobenius,
    euler_poly,
    exp_spline_eval,
    exp_spline_sum,
    fm_eval,
    fm_trig,
    gm_coeffs,
    gm_poly,
    modified_euler_frobenius,
    sturm_count,
    zero_split,
)
from shiftcis.splinekernel import gram_symbol, stability_bounds

BETAS = (F(1, 7), F(1, 3), F(2, 5), F(5, 8), F(9, 10))
t = PolyR.x()


def sign(x):
    return (x > 0) - (x < 0)


# --- B-splines -------------------------------------------------------------


@pytest.mark.parametrize("m, x, expected", [(1, F(1, 2), 1), (2, 1, 1), (3, F(3, 2), F(3, 4))])
def test_bspline_values(m, x, expected):
    assert bspline_eval(m, x) == expected


def test_bspline_support_and_partition_of_unity():
    for m in range(1, 9):
        assert bspline_eval(m, -F(1, 3)) == 0 == bspline_eval(m, m)
        for x in (F(0), F(2, 7), F(1, 2)):
            assert sum(bspline_eval(m, x + k) for k in range(m)) == 1


def test_bspline_vectorised_matches_exact():
    xs = np.linspace(-1, 6, 57)
    got = bspline_eval(5, xs)
    want = [float(bspline_eval(5, F(x).limit_denominator(10**6))) for x in xs]
    assert np.allclose(got, want, atol=1e-12)


def test_bspline_is_the_convolution_of_lower_orders():
    # Q_m(x) = int_0^1 Q_{m-1}(x - s) ds, by a fine midpoint rule
    s = (np.arange(4000) + 0.5) / 4000
    for m in (2, 3, 4):
        for x in (0.3, 1.7, 2.5):
            conv = np.mean(bspline_eval(m - 1, x - s))
            assert conv == pytest.approx(float(bspline_eval(m, x)), abs=1e-6)


# --- Bernoulli and Euler -----------------------------------------------------


def test_bernoulli_values_and_signs():
    assert bernoulli(0) == 1 and bernoulli(4) == F(-1, 30) and bernoulli(7) == 0
    assert bernoulli(1) == F(-1, 2)
    for n in range(2, 30):
        if n % 2:
            assert bernoulli(n) == 0
        else:
            assert sign(bernoulli(n)) == (1 if n % 4 == 2 else -1)


def test_bernoulli_against_mpmath():
    for n in range(0, 24, 2):
        assert float(bernoulli(n)) == pytest.approx(float(mpmath.bernoulli(n)), rel=1e-14)


def test_euler_polynomials_low_order():
    assert euler_poly(1) == PolyR([F(-1, 2), 1])
    assert euler_poly(2) == t * t - t
    assert euler_poly(3) == PolyR([F(1, 4), 0, F(-3, 2), 1])
    assert euler_poly(4) == PolyR([0, 1, 0, -2, 1])


def test_euler_value_at_zero():
    assert euler_poly(5)(0) == F(2, 6) * (1 - 2**6) * bernoulli(6) == F(-1, 2)
    for n in range(12):
        assert euler_poly(n)(0) == F(2, n + 1) * (1 - 2 ** (n + 1)) * bernoulli(n + 1)


def test_euler_derivative_and_reflection():
    for n in range(1, 13):
        E = euler_poly(n)
        assert E.deriv() == n * euler_poly(n - 1)
        assert E.compose(1 - t) == (-1) ** n * E


def test_euler_sign_table():
    left = {0: 1, 3: 1, 1: -1, 2: -1}
    right = {0: 1, 1: 1, 2: -1, 3: -1}
    for n in range(1, 13):
        E = euler_poly(n)
        for x in (F(1, 17), F(1, 5), F(3, 7), F(12, 25)):
            assert sign(E(x)) == left[n % 4], (n, x)
            assert sign(E(1 - x)) == right[n % 4], (n, x)


# --- cot derivative polynomials ---------------------------------------------


def test_cot_polynomials_low_order():
    assert cot_poly(0) == t
    assert cot_poly(1) == PolyR([-1])
    assert cot_poly(2) == 2 * t


def test_cot_polynomials_against_numeric_derivatives():
    rng = random.Random(3)
    mpmath.mp.dps = 30
    try:
        for j in range(7):
            P = cot_poly(j).to_float()
            for _ in range(20):
                x = rng.uniform(0.05, 0.95)
                d = mpmath.diff(lambda y: mpmath.cot(mpmath.pi * y), x, j)
                rhs = float(mpmath.pi ** (-j) * mpmath.sin(mpmath.pi * x) ** (j + 1) * d)
                lhs = float(npoly.polyval(math.cos(math.pi * x), P))
                assert abs(lhs - rhs) <= 1e-6 * max(1.0, abs(rhs))
    finally:
        mpmath.mp.dps = 15


# --- G_m and F_m -------------------------------------------------------------


@pytest.mark.parametrize("b", BETAS + (F(0), F(1, 2)))
def test_low_order_G_match_displayed_coefficients(b):
    assert gm_poly(1, b) == PolyR([-1])
    assert gm_poly(2, b) == PolyR([b, 1 - b])
    assert gm_poly(3, b) == PolyR([-(b**2), -(1 + 2 * b - 2 * b**2), -((1 - b) ** 2)])
    assert gm_poly(4, b) == PolyR(
        [b**3, 1 + 3 * b + 3 * b**2 - 3 * b**3, 3 * b**3 - 6 * b**2 + 4, (1 - b) ** 3]
    )


def test_G4_at_one_third():
    assert gm_poly(4, F(1, 3)).coeffs == (F(1, 27), F(20, 9), F(31, 9), F(8, 27))


def test_G_at_one_is_signed_factorial():
    assert gm_poly(7, F(1, 3))(1) == -720
    for m in range(1, 13):
        for b in BETAS:
            assert gm_poly(m, b)(1) == (-1) ** m * math.factorial(m - 1)


def test_inversion_symmetry():
    for m in range(1, 13):
        for b in (F(1, 7), F(1, 3), F(2, 5)):
            G = gm_poly(m, b)
            assert G.degree == m - 1
            assert gm_poly(m, 1 - b).reversed_(m - 1) == G


def test_G_sign_tables():
    for m in range(1, 13):
        for b in BETAS:
            G = gm_poly(m, b)
            assert sign(G(0)) == (1 if m % 2 == 0 else -1)
            if b < F(1, 2):
                assert sign(G(-1)) == (-1 if m % 4 in (1, 2) else 1), (m, b)
            else:
                assert sign(G(-1)) == (-1 if m % 4 in (0, 1) else 1), (m, b)


def test_G_at_minus_one_is_an_euler_value():
    # the exact form of F_m(i, beta) = 2^{m-1} i^m e^{i m pi/2} E_{m-1}(beta)
    for m in range(1, 13):
        for b in BETAS:
            assert gm_poly(m, b)(-1) == (-1) ** m * 2 ** (m - 1) * euler_poly(m - 1)(b)


def test_euler_frobenius_links():
    for m in range(2, 13):
        assert gm_poly(m, 0) == (-1) ** m * t * euler_frobenius(m - 1)
        assert gm_poly(m, F(1, 2)) == F((-1) ** m, 2 ** (m - 1)) * modified_euler_frobenius(m - 1)


def test_euler_frobenius_low_order():
    assert euler_frobenius(0) == 1 == modified_euler_frobenius(0)
    assert euler_frobenius(2) == 1 + t
    assert euler_frobenius(3) == t * t + 4 * t + 1
    assert euler_frobenius(4) == PolyR([1, 11, 11, 1])
    assert modified_euler_frobenius(1) == 1 + t
    assert modified_euler_frobenius(2) == PolyR([1, 6, 1])


def test_float_twin_matches_exact():
    for m in range(1, 11):
        for b in BETAS:
            assert np.allclose(gm_coeffs(m, float(b)), gm_poly(m, b).to_float(), rtol=1e-12, atol=1e-9)


def test_F1_and_F2():
    assert fm_eval(1, 0.3 + 2j, 0.4) == -1
    assert fm_eval(2, 1, 0.4) == pytest.approx(1)


def test_F_at_i_matches_euler_closed_form():
    assert fm_eval(3, 1j, 0.25) == pytest.approx(4 * 1j**3 * np.exp(1.5j * np.pi) * -0.1875, abs=1e-14)
    rng = random.Random(11)
    for m in range(1, 11):
        for _ in range(20):
            b = rng.random()
            want = 2 ** (m - 1) * 1j**m * np.exp(m * np.pi * 0.5j) * float(npoly.polyval(b, euler_poly(m - 1).to_float()))
            assert abs(fm_eval(m, 1j, b) - want) < 1e-9


def test_F_recurrence_in_u():
    rng = np.random.default_rng(5)
    for m in range(2, 11):
        for _ in range(10):
            u = complex(rng.normal(), rng.normal())
            b = float(rng.random())
            prev = gm_coeffs(m - 1, b)
            dprev = 2 * u * npoly.polyval(u * u, npoly.polyder(prev)) if len(prev) > 1 else 0
            rhs = (b * (u * u - 1) - (m - 1) * u * u) * npoly.polyval(u * u, prev) + u * (u * u - 1) / 2 * dprev
            lhs = fm_eval(m, u, b)
            assert abs(lhs - rhs) <= 1e-10 * max(1.0, abs(lhs))


def test_F_on_the_circle_matches_cot_expansion():
    xs = np.linspace(0.05, 0.95, 19)
    for m in range(1, 9):
        for b in (0.1, 0.5, 0.77):
            assert np.allclose(fm_eval(m, np.exp(1j * np.pi * xs), b), fm_trig(m, xs, b), atol=1e-10)


# --- exponential splines ----------------------------------------------------


def test_exp_spline_examples():
    assert exp_spline_sum(2, F(1, 2), 2) == F(3, 4) == exp_spline_eval(2, F(1, 2), 2)
    for m in range(2, 10):
        assert exp_spline_eval(m, F(2, 9), 1) == 1
    assert exp_spline_eval(3, 0.3, -1).real < 0


def test_exp_spline_routes_agree():
    for m in range(2, 9):
        for b in BETAS:
            for base in (F(2), F(-1), F(1, 3), F(-5, 4)):
                assert exp_spline_sum(m, b, base) == exp_spline_eval(m, b, base)
    z = np.exp(2j * np.pi * np.linspace(0, 1, 33))
    assert np.allclose(exp_spline_sum(6, 0.37, z), exp_spline_eval(6, 0.37, z), atol=1e-13)


def test_exp_spline_zero_base():
    with pytest.raises(ZeroBaseError):
        exp_spline_eval(3, 0.2, 0)
    with pytest.raises(ZeroBaseError):
        exp_spline_sum(3, 0.2, 0)


def test_exp_spline_recurrence_in_t():
    h = 1e-5
    for m in range(3, 9):
        for b in (0.15, 0.6):
            for base in (0.7 + 0.2j, -1.3, 2.0 - 1j):
                d = (exp_spline_eval(m - 1, b, base + h) - exp_spline_eval(m - 1, b, base - h)) / (2 * h)
                lhs = base * (m - 1) * exp_spline_eval(m, b, base)
                rhs = (m - 1 + b * (base - 1)) * exp_spline_eval(m - 1, b, base) + base * (1 - base) * d
                assert abs(lhs - rhs) < 1e-7 * max(1.0, abs(lhs))


# --- zeros -------------------------------------------------------------------


def test_zero_split_examples():
    s = zero_split(gm_poly(4, F(3, 10)))
    assert (s.inside, s.on_circle, s.outside) == (2, 0, 1) and s.certified
    s = zero_split(gm_poly(4, F(7, 10)))
    assert (s.inside, s.on_circle, s.outside) == (1, 0, 2)
    s = zero_split(euler_frobenius(3))
    assert (s.inside, s.outside) == (1, 1)
    assert sorted(r.real for r in s.roots) == pytest.approx([-2 - math.sqrt(3), -2 + math.sqrt(3)])


def test_zero_split_counts_circle_roots():
    s = zero_split(PolyR([1, 0, 1]))  # t^2 + 1
    assert (s.inside, s.on_circle, s.outside) == (0, 2, 0) and not s.certified
    s = zero_split(euler_frobenius(2))  # root at -1
    assert s.on_circle == 1 and s.certified


def test_zero_split_refuses_degenerate_input():
    with pytest.raises(DegenerateError):
        zero_split(PolyR([0]))
    with pytest.raises(DegenerateError):
        zero_split([3.0])


def test_zero_split_json_shape():
    js = zero_split(gm_poly(3, F(1, 3))).to_json()
    assert set(js) == {"inside", "on_circle", "outside", "roots", "certified"}
    assert all(len(r) == 2 for r in js["roots"])


@settings(max_examples=40, deadline=None)
@given(
    m=st.integers(min_value=2, max_value=10),
    b=st.fractions(min_value=F(1, 100), max_value=F(99, 100), max_denominator=100),
)
def test_G_roots_are_real_simple_negative(m, b):
    G = gm_poly(m, b)
    assert sturm_count(G, None, 0) == m - 1
    assert G(0) != 0
    roots = npoly.polyroots(G.to_float())
    assert np.all(np.abs(roots.imag) < 1e-8)
    assert np.all(roots.real < 0)
    gaps = np.diff(np.sort(roots.real))
    assert np.all(gaps > 1e-8)


# --- Riesz bounds -------------------------------------------------------------


def test_stability_bounds():
    A, B = stability_bounds(1)
    assert abs(A - 1) < 1e-9 and abs(B - 1) < 1e-9
    A, B = stability_bounds(2)
    assert abs(A - 1 / 3) < 1e-6 and abs(B - 1) < 1e-6


def test_upper_bound_is_attained_at_integers():
    for m in range(1, 8):
        grid = 512
        vals = gram_symbol(m, np.arange(grid) / grid)
        assert int(np.argmax(vals)) == 0
        assert stability_bounds(m, grid)[1] == pytest.approx(1.0, abs=1e-12)


def test_stability_bounds_need_a_real_grid():
    with pytest.raises(ValueError):
        stability_bounds(2, grid=16)
