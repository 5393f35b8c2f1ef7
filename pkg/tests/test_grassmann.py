import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from superhyp import grassmann as gr
from superhyp.jets import Jet, jet_exp, jet_log, jet_pow
from superhyp.profiles import bump

G = gr.GrassmannElement


def _unit_jet(order):
    c = np.array([Fraction(1), Fraction(1)] + [Fraction(0)] * (order - 1), dtype=object)
    return Jet(c, 1)


def test_symplectic_square_examples():
    assert gr.symplectic_square(0).is_zero()
    assert gr.symplectic_square(1) == G.monomial(2, [1, 2], 2)
    assert gr.symplectic_square(2) == G.monomial(4, [1, 2], 2) + G.monomial(4, [3, 4], 2)


def test_berezin_examples():
    assert gr.berezin_integral(G.scalar(2, 1) + G.monomial(2, [1, 2], 1)) == 1
    assert gr.berezin_integral(G.scalar(2, 5)) == 0
    sq = gr.symplectic_square(2) ** 2
    assert sq == G.monomial(4, [1, 2, 3, 4], 8)
    assert gr.berezin_integral(sq) == 8


def test_monomial_reordering_sign():
    assert G.monomial(3, [2, 1], 1) == G.monomial(3, [1, 2], -1)
    assert G.monomial(3, [3, 1, 2], 1) == G.monomial(3, [1, 2, 3], 1)
    assert G.monomial(3, [1, 1], 1).is_zero()


@given(st.integers(0, 4), st.data())
def test_anticommutativity(q, data):
    n = 2 * q
    if n == 0:
        return
    i = data.draw(st.integers(1, n))
    j = data.draw(st.integers(1, n))
    xi, xj = G.generator(n, i), G.generator(n, j)
    assert (xi * xj + xj * xi).is_zero()
    assert (xi * xi).is_zero()


@given(st.integers(1, 3), st.data())
def test_product_associative(q, data):
    n = 2 * q
    coeffs = st.lists(st.integers(-5, 5), min_size=2 ** n, max_size=2 ** n)
    a, b, c = (G(n, [Fraction(v) for v in data.draw(coeffs)]) for _ in range(3))
    assert (a * b) * c == a * (b * c)


def test_apply_scalar_function_examples():
    n = gr.symplectic_square(1) * Fraction(-1)
    out = gr.apply_scalar_function(jet_pow(_unit_jet(1), Fraction(-1, 2)), n)
    assert out == G.scalar(2, 1) + G.monomial(2, [1, 2], 1)
    out = gr.apply_scalar_function(jet_log(_unit_jet(1)), n)
    assert out == G.monomial(2, [1, 2], -2)
    const = Jet(np.array([Fraction(7), Fraction(3)], dtype=object), 1)
    assert gr.apply_scalar_function(const, G(2)) == G.scalar(2, 7)


def test_apply_scalar_function_errors():
    j = _unit_jet(2)
    with pytest.raises(gr.GrassmannError, match="not an even nilpotent"):
        gr.apply_scalar_function(j, G.generator(2, 1))
    with pytest.raises(gr.GrassmannError, match="not an even nilpotent"):
        gr.apply_scalar_function(j, G.scalar(2, 1))


def test_functional_calculus_exp_is_multiplicative():
    # exp(a) exp(b) = exp(a+b) for commuting even nilpotents
    a = G.monomial(4, [1, 2], Fraction(3))
    b = G.monomial(4, [3, 4], Fraction(-2))
    e = Jet(np.array([Fraction(1), Fraction(1), Fraction(1, 2)], dtype=object), 0)
    lhs = gr.apply_scalar_function(e, a) * gr.apply_scalar_function(e, b)
    assert lhs == gr.apply_scalar_function(e, a + b)


@pytest.mark.parametrize("q,u,ref", [(1, 0, 1.0), (0, 0, 1.0), (2, 0, 3.0)])
def test_fermionic_weight_examples(q, u, ref):
    assert abs(gr.fermionic_weight_integral(q, u) - ref) < 1e-14
    assert abs(gr.fermionic_weight_closed(q, u) - ref) < 1e-13


@pytest.mark.parametrize("q", range(5))
@pytest.mark.parametrize("u", [Fraction(0), Fraction(1, 2)])
def test_fermionic_weight_exact(q, u):
    assert gr.fermionic_weight_factor(q, u) == gr.fermionic_weight_closed_factor(q, u)


@pytest.mark.parametrize("q", range(5))
def test_fermionic_weight_float_closed_form(q):
    u = 0.3
    assert abs(gr.fermionic_weight_integral(q, u) / gr.fermionic_weight_closed(q, u) - 1) < 1e-12


@pytest.mark.parametrize("p,q,ref", [(1, 1, -2), (1, 2, -4), (3, 2, 4)])
def test_log_weight_examples(p, q, ref):
    assert gr.log_weight_integral(p, q) == ref
    assert gr.log_weight_closed(p, q) == ref


@pytest.mark.parametrize("p,q", [(p, q) for q in range(1, 5) for p in range(1, 2 * q, 2)])
def test_log_weight_exact_and_sum_form(p, q):
    v = gr.log_weight_integral(p, q)
    assert v == gr.log_weight_closed(p, q)
    assert v == gr.log_weight_sum_form(p, q)


@pytest.mark.parametrize("p,q", [(2, 1), (1, 0), (3, 1)])
def test_log_weight_regime_error(p, q):
    with pytest.raises(gr.GrassmannError, match="parity/sign regime error"):
        gr.log_weight_integral(p, q)


@pytest.mark.parametrize("q", range(1, 9))
def test_alternating_binomial_identity(q):
    for n in range(q):
        lhs, rhs = gr.alternating_binomial_sum(n, q)
        assert lhs == rhs


@pytest.mark.parametrize("p,q", [(2, 1), (1, 1), (1, 2), (3, 3)])
def test_ball_volume_times_normalization(p, q):
    lhs = gr.ball_volume(p, q) * gr.km_normalization(p, q)
    rhs = gr.km_volume(gr.two_rho(p, q))
    assert abs(lhs - rhs) <= 1e-12 * max(1.0, abs(rhs))


def test_ball_volume_vanishes_on_negative_half_integers():
    assert gr.ball_volume(1, 1) == 0.0
    assert gr.ball_volume(1, 2) == 0.0
    assert gr.ball_volume(2, 1) != 0.0


@pytest.mark.parametrize("p", [1, 2, 3, 5])
def test_cosine_power_product(p):
    ref = math.pi ** ((p - 1) / 2) / math.gamma((p + 1) / 2)
    assert abs(gr.cosine_power_product(p) - ref) < 1e-13


@pytest.mark.parametrize("p,q", [(1, 1), (1, 2), (3, 2), (3, 3)])
def test_log_moment_two_routes(p, q):
    r2 = gr.two_rho(p, q)
    assert abs(gr.log_moment_from_ball(p, q) - gr.log_moment(r2)) < 1e-12 * abs(gr.log_moment(r2))


def _exp_jet(x, order):
    return jet_exp(Jet.variable(np.asarray(x, complex), order) * -1.0)


def test_super_integral_gaussian_example():
    v = gr.full_super_integral_radial(2, 1, _exp_jet, 12.0)
    assert abs(v - (-2 * math.pi ** 1.5)) < 1e-10


def test_super_integral_bump_p1_q1():
    b = bump(0.64, 1.0)
    v = gr.full_super_integral_radial(1, 1, b.jet, 0.8)
    assert abs(v - (-2 * math.pi * b(0.0))) < 1e-10


@pytest.mark.parametrize("p", [1, 2, 3])
def test_super_integral_q0_is_polar(p):
    b = bump(0.5, 2.0)
    from superhyp.quadrature import integrate_finite
    ref, _ = integrate_finite(lambda r: b(r * r) * r ** p, 0.0, math.sqrt(0.5))
    v = gr.full_super_integral_radial(p, 0, b.jet, 0.8)
    assert abs(v - gr.sphere_area(p) * ref) < 1e-12 * abs(v)


@pytest.mark.parametrize("p,q", [(1, 1), (2, 1), (3, 1), (3, 3), (1, 2), (3, 2)])
def test_super_integral_matches_flat_reduction(p, q):
    b = bump(0.64, 1.0)
    full = gr.full_super_integral_radial(p, q, b.jet, 0.8)
    flat = gr.flat_reduction_integral(p, q, b.jet, 0.8)
    assert abs(full - flat) <= 1e-8 * abs(flat)


def test_flat_reduction_odd_negative_dimension():
    with pytest.raises(gr.GrassmannError):
        gr.flat_reduction_integral(2, 2, bump(0.64).jet, 0.8)


def test_float_mode_matches_exact():
    a = gr.symplectic_square(2, exact=False) ** 2
    assert gr.berezin_integral(a) == 8.0
