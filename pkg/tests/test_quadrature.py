import math

import numpy as np
import pytest

from superhyp.quadrature import (QuadratureBudgetError, QuadratureSpec, integrate_finite,
                                 integrate_spectral, panel_rule, tanh_sinh)
from superhyp.spherical import plancherel_density


def test_finite_examples():
    v, e = integrate_finite(lambda x: x * x, 0, 1)
    assert abs(v - 1 / 3) < 1e-14
    v, e = integrate_finite(lambda x: np.ones_like(x), 0, 1, left_exponent=-0.5)
    assert abs(v - 2) < 1e-10 and e <= 1e-10


@pytest.mark.parametrize("rho", [0.0, 0.5, 1.0, 2.0, 2.5])
def test_beta_weight_bump_stable(rho):
    # x^(rho-1/2)(1-x)^(-1-rho) times a bump, endpoint exponent declared, vs tanh-sinh
    bump = lambda x: np.where(x < 0.8, np.exp(-8 * x / (0.8 - np.minimum(x, 0.7999))), 0.0)
    g = lambda x: (1 - x) ** (-1 - rho) * bump(x)
    a = integrate_finite(g, 0, 0.8, left_exponent=rho - 0.5)
    b = tanh_sinh(lambda x: x ** (rho - 0.5) * g(x), 0.0, 0.8, tol=1e-13)
    assert abs(a.value - b.value) <= 1e-10 * abs(b.value)


def test_budget_error():
    with pytest.raises(QuadratureBudgetError):
        integrate_finite(lambda x: np.abs(x - 0.3123) ** 0.1, 0, 1,
                         QuadratureSpec(panels=2, nodes_per_panel=4, tol=1e-15, max_refinements=1))


def test_panel_rule_sums():
    x, w = panel_rule(0.0, 2.0, 5, 8)
    assert abs(w.sum() - 2) < 1e-14
    assert np.all(np.diff(x) > 0)


def test_tanh_sinh_endpoint_singular():
    r = tanh_sinh(lambda x: 1 / np.sqrt(x), 0.0, 1.0, tol=1e-12)
    assert abs(r.value - 2) < 1e-10


def test_spectral_examples():
    r = integrate_spectral(lambda s: np.exp(-s * s), QuadratureSpec(s_max=8, tail_model="none"))
    assert abs(r.value - math.sqrt(math.pi)) < 1e-12
    r = integrate_spectral(lambda s: np.cos(s) / (1 + s * s), QuadratureSpec(s_max=80))
    assert abs(r.value - math.pi / math.e) < 1e-6 and not r.flags
    r = integrate_spectral(lambda s: plancherel_density(0, s), QuadratureSpec(s_max=10))
    assert "non_integrable" in r.flags


def test_spectral_deterministic():
    f = lambda s: np.sin(3 * s) * np.exp(-0.1 * s)
    a = integrate_spectral(f, QuadratureSpec(s_max=40))
    b = integrate_spectral(f, QuadratureSpec(s_max=40))
    assert a.value == b.value


def test_spec_validation():
    with pytest.raises(ValueError):
        QuadratureSpec(panels=0)
    with pytest.raises(ValueError):
        QuadratureSpec(tol=0)
