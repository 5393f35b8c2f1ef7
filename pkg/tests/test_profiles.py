import math

import mpmath as mp
import numpy as np
import pytest

from superhyp.profiles import ProfileError, bump, parse_profile


def test_bump_values_and_support():
    b = bump(0.64, 2.0)
    assert b(0.0) == 2.0
    assert b(0.64) == 0 and b(0.9) == 0
    assert np.all(b(np.linspace(0, 0.63, 50)) > 0)


@pytest.mark.parametrize("x0", [0.0, 0.3, 0.55])
def test_jet_vs_mpmath_derivatives(x0):
    b = parse_profile("polybump:1,-2,0.5:0.6")
    mp.mp.dps = 40
    f = lambda x: (1 - 2 * x + x * x / 2) * mp.exp(-8 * x / (mp.mpf("0.6") - x))
    J = b.jet(np.array([x0]), 4)
    for k in range(5):
        ref = float(mp.diff(f, mp.mpf(x0), k)) / math.factorial(k)
        assert abs(J.c[k, 0] - ref) <= 1e-12 * max(1.0, abs(ref))


def test_jet_vs_finite_differences():
    b = bump(0.64)
    x0 = 0.2
    J = b.jet(np.array([x0]), 1)
    errs = []
    for h in (2e-3, 1e-3):
        fd = (b(x0 - 2 * h) - 8 * b(x0 - h) + 8 * b(x0 + h) - b(x0 + 2 * h)) / (12 * h)
        errs.append(abs(J.c[1, 0] - fd))
    assert errs[1] < errs[0] / 10  # O(h^4)


def test_jet_zero_outside_support():
    b = bump(0.5)
    assert np.all(b.jet(np.array([0.6, 0.7]), 3).c == 0)


@pytest.mark.parametrize("text", ["bump:0.99:1", "bump:0.5", "wave:1", "polybump:a:0.5", "bump:0:1"])
def test_parse_errors(text):
    with pytest.raises(ProfileError):
        parse_profile(text)


def test_parse_grammar():
    assert parse_profile("bump:0.64:1").x_c == 0.64
    assert parse_profile("bump:0.64:1:5").steepness == 5
    assert parse_profile("polybump:1,1/2:0.5").poly == (1.0, 0.5)
    assert parse_profile("zero").is_zero
