import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from superhyp.jets import (Jet, JetError, jet_compose, jet_exp, jet_log, jet_pow,
                           jet_sinh_cosh, polynomial_jet)


def J(*c):
    return Jet(np.array(c, dtype=complex))


def test_ring_examples():
    assert np.allclose((1 / J(1, -1, 0)).c, [1, 1, 1])
    assert np.allclose((J(1, -2, 0) * J(1, 2, 0)).c, [1, 0, -4])
    assert np.allclose((J(1, 1) * J(1, -1)).c, [1, 0])


def test_not_invertible():
    with pytest.raises(JetError, match="jet not invertible"):
        J(0, 1, 0).reciprocal()


def test_order_mismatch():
    with pytest.raises(JetError):
        J(1, 2) + J(1, 2, 3)


def test_pow_log_examples():
    assert np.allclose(jet_pow(J(1, 2, 0), 0.5).c, [1, 1, -0.5])
    assert np.allclose(jet_log(J(1, -2, 0)).c, [0, -2, -2])
    with pytest.raises(JetError, match="jet domain error"):
        jet_pow(J(0, 1, 0), 0.5)


@pytest.mark.parametrize("t", [0.0, 1.0, 2.7])
def test_wavepacket_generating_derivative(t):
    # d/ds [(1 - 2 s^2 cosh t + s^4)(1-s)^-2] at s=0 is 2
    s = Jet.variable(np.array(0j), 4)
    f = (1.0 - s * s * (2 * math.cosh(t)) + s * s * s * s) * jet_pow(1.0 - s, -2)
    assert abs(f.derivative_at(1) - 2) < 1e-14


def test_derivative_at_examples():
    s = Jet.variable(np.array(0j), 3)
    assert (s * s).derivative_at(2) == 2
    assert jet_pow(1.0 - s, -2).derivative_at(3) == 24
    with pytest.raises(JetError, match="jet order exceeded"):
        s.derivative_at(4)


def test_exact_mode():
    a = Jet(np.array([Fraction(1), Fraction(1, 3), Fraction(-2, 5)], dtype=object))
    b = jet_pow(a, Fraction(1, 2)) * jet_pow(a, Fraction(1, 2))
    assert all(x == y for x, y in zip(b.c, a.c))
    assert all(isinstance(x, Fraction) for x in b.c)


def test_compose_and_trig():
    x0 = 0.4
    sh, ch = jet_sinh_cosh(np.array(x0), 4)
    inner = Jet.variable(np.array(x0 + 0j), 4)
    outer = jet_exp(Jet.variable(np.array(x0 + 0j), 4))
    d = inner - x0  # zero constant term
    comp = jet_compose(outer, d)
    assert np.allclose(comp.c, outer.c)
    one = ch * ch - sh * sh
    assert np.allclose(one.c, [1, 0, 0, 0, 0])


def test_polynomial_jet_exact():
    p = polynomial_jet([Fraction(1), Fraction(2)], 3)
    assert list(p.c) == [1, 2, 0, 0]


def test_batch_broadcast_with_scalars():
    x = Jet.variable(np.array([0.1, 0.2, 0.3], dtype=complex), 2)
    y = 1.0 - x
    assert y.c.shape == (3, 3)
    assert np.allclose(y.c[0], [0.9, 0.8, 0.7])


coeffs = st.lists(st.floats(-3, 3), min_size=5, max_size=5)


@given(coeffs, coeffs)
def test_matches_polynomial_arithmetic(p, q):
    P, Q = Jet(np.array(p)), Jet(np.array(q))
    ref = np.polynomial.polynomial.polymul(p, q)[:5]
    ref = np.pad(ref, (0, 5 - len(ref)))
    assert np.allclose((P * Q).c, ref, rtol=1e-13, atol=1e-12)
    assert np.allclose((P - Q).c, np.subtract(p, q))


@given(coeffs)
def test_exp_log_roundtrip(a):
    a = list(a)
    a[0] = 0.5 + abs(a[0])
    A = Jet(np.array(a))
    assert np.allclose(jet_exp(jet_log(A)).c, a, rtol=1e-12, atol=1e-12)


@given(coeffs, st.floats(0.5, 3))
def test_divide_roundtrip(p, c0):
    q = [c0, 0.3, -0.2, 0.1, 0.05]
    P, Q = Jet(np.array(p)), Jet(np.array(q))
    assert np.allclose(((P / Q) * Q).c, p, rtol=1e-12, atol=1e-12)


def test_derivative_matches_finite_differences():
    f = lambda x: np.sqrt(1 + x) * np.exp(x)
    x0 = 0.3
    jet = jet_pow(1.0 + Jet.variable(np.array(x0 + 0j), 2), 0.5) * jet_exp(Jet.variable(np.array(x0 + 0j), 2))
    errs = []
    for h in (1e-2, 5e-3):
        fd = (f(x0 - 2 * h) - 8 * f(x0 - h) + 8 * f(x0 + h) - f(x0 + 2 * h)) / (12 * h)
        errs.append(abs(jet.derivative_at(1) - fd))
    # fourth order: halving h divides the error by about 16
    assert errs[1] < errs[0] / 10
