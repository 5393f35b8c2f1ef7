"""Exterior algebra on 2q odd generators and Berezin integration.

Monomials are bitmasks over generators ``xi^1 .. xi^{2q}`` (bit i-1 for
xi^i), always stored in increasing generator order.  Storage is dense, one
slot per subset, with either ``Fraction`` (exact mode) or float coefficients.

Conventions:

* the symplectic pairing is ``xi* xi = 2 sum_j xi^{2j-1} xi^{2j}``, from the
  row rule ``xi*^j = xi^{j-1}`` for even j and ``-xi^{j+1}`` for odd j;
* the Berezin integral picks the coefficient of ``xi^1 xi^2 ... xi^{2q}``,
  so ``int D(xi) xi^1 ... xi^{2q} = +1``.

The module also collects the constants that follow from these conventions:
fermionic weight integrals, the log-weight integral, the volume of the ball
and the normalization of the K/M integral, plus the radial reduction of the
full super integral over the flat superspace of dimension 1+p|2q.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable

import numpy as np

from .jets import Jet, jet_log, jet_pow
from .quadrature import QuadratureSpec, integrate_finite, QuadratureBudgetError
from .specfun import gen_binomial, recip_gamma


class GrassmannError(ValueError):
    pass


def _reorder_sign(a: int, b: int) -> int:
    """Sign picked up when the product of sorted monomials a, b is re-sorted.

    Each generator of b moves left past every larger generator of a.
    """
    swaps = 0
    bb = b
    while bb:
        low = bb & -bb
        j = low.bit_length() - 1
        swaps += bin(a >> (j + 1)).count("1")
        bb ^= low
    return -1 if swaps & 1 else 1


class GrassmannElement:
    """Element of the exterior algebra on ``num_generators`` generators."""

    def __init__(self, num_generators: int, coeffs=None, exact: bool = True):
        if num_generators < 0 or num_generators > 16:
            raise GrassmannError("supported generator counts are 0..16")
        self.n = num_generators
        self.exact = exact
        zero = Fraction(0) if exact else 0.0
        if coeffs is None:
            coeffs = [zero] * (1 << num_generators)
        if len(coeffs) != 1 << num_generators:
            raise GrassmannError("coefficient vector has wrong length")
        self.coeffs = list(coeffs)

    # construction -------------------------------------------------------
    @classmethod
    def scalar(cls, n: int, value, exact: bool = True):
        g = cls(n, exact=exact)
        g.coeffs[0] = Fraction(value) if exact else float(value)
        return g

    @classmethod
    def generator(cls, n: int, i: int, exact: bool = True):
        """The generator xi^i, 1-based."""
        if not 1 <= i <= n:
            raise GrassmannError("generator index out of range")
        g = cls(n, exact=exact)
        g.coeffs[1 << (i - 1)] = Fraction(1) if exact else 1.0
        return g

    @classmethod
    def monomial(cls, n: int, indices, coeff=1, exact: bool = True):
        """coeff * xi^{i1} xi^{i2} ... in the given (possibly unsorted) order."""
        out = cls.scalar(n, coeff, exact)
        for i in indices:
            out = out * cls.generator(n, i, exact)
        return out

    def _zero(self):
        return Fraction(0) if self.exact else 0.0

    def _like(self, coeffs):
        return GrassmannElement(self.n, coeffs, self.exact)

    def _check(self, other):
        if other.n != self.n:
            raise GrassmannError("generator count mismatch")

    # ring ---------------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, GrassmannElement):
            other = GrassmannElement.scalar(self.n, other, self.exact)
        self._check(other)
        return self._like([a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return self._like([-a for a in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, GrassmannElement):
            c = Fraction(other) if self.exact and not isinstance(other, float) else other
            return self._like([a * c for a in self.coeffs])
        self._check(other)
        out = [self._zero()] * len(self.coeffs)
        nz_a = [(m, c) for m, c in enumerate(self.coeffs) if c != 0]
        nz_b = [(m, c) for m, c in enumerate(other.coeffs) if c != 0]
        for ma, ca in nz_a:
            for mb, cb in nz_b:
                if ma & mb:
                    continue
                out[ma | mb] += _reorder_sign(ma, mb) * ca * cb
        return self._like(out)

    def __rmul__(self, other):
        return self * other

    def __pow__(self, k: int):
        out = GrassmannElement.scalar(self.n, 1, self.exact)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, GrassmannElement):
            other = GrassmannElement.scalar(self.n, other, self.exact)
        return self.n == other.n and all(a == b for a, b in zip(self.coeffs, other.coeffs))

    # structure ----------------------------------------------------------
    @property
    def body(self):
        return self.coeffs[0]

    def is_even(self) -> bool:
        return all(c == 0 for m, c in enumerate(self.coeffs) if bin(m).count("1") % 2)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def terms(self) -> dict:
        """Nonzero coefficients keyed by tuples of 1-based generator indices."""
        out = {}
        for m, c in enumerate(self.coeffs):
            if c != 0:
                out[tuple(i + 1 for i in range(self.n) if m >> i & 1)] = c
        return out

    def __repr__(self):
        parts = []
        for idx, c in self.terms().items():
            mono = "".join(f"x{i}" for i in idx) or "1"
            parts.append(f"{c}*{mono}")
        return "GrassmannElement(" + (" + ".join(parts) or "0") + ")"


def symplectic_square(q: int, exact: bool = True) -> GrassmannElement:
    """xi* xi on 2q generators, built from the row convention for xi*."""
    n = 2 * q
    out = GrassmannElement(n, exact=exact)
    for j in range(1, n + 1):
        # xi*^j xi^j
        if j % 2 == 0:
            term = GrassmannElement.monomial(n, [j - 1, j], 1, exact)
        else:
            term = GrassmannElement.monomial(n, [j + 1, j], -1, exact)
        out = out + term
    return out


def berezin_integral(f: GrassmannElement):
    """Top coefficient, normalized by int D(xi) xi^1 ... xi^{2q} = 1."""
    return f.coeffs[-1]


def apply_scalar_function(f_jet: Jet, n: GrassmannElement) -> GrassmannElement:
    """f(a + n) = sum_k f^(k)(a)/k! n^k for an even nilpotent ``n``.

    ``f_jet`` holds the Taylor coefficients of f at a; its order must reach
    the nilpotency degree of ``n`` (half the generator count suffices).
    """
    if n.body != 0 or not n.is_even():
        raise GrassmannError("not an even nilpotent")
    top = n.n // 2
    if f_jet.order < top:
        raise GrassmannError("jet order below nilpotency degree")
    out = GrassmannElement.scalar(n.n, 0, n.exact)
    power = GrassmannElement.scalar(n.n, 1, n.exact)
    for k in range(top + 1):
        ck = f_jet.c[k]
        if not n.exact:
            ck = complex(ck).real
        out = out + power * ck
        power = power * n
    return out


def _unit_jet(order: int) -> Jet:
    """Jet of the identity at 1 in exact arithmetic."""
    c = np.array([Fraction(1), Fraction(1)] + [Fraction(0)] * (order - 1), dtype=object)
    return Jet(c[: order + 1], 1)


def fermionic_weight_factor(q: int, u) -> Fraction:
    """int D(xi) (1 - xi*xi/(1-u^2))^(-1/2): the rational part of the weight integral.

    The full integral is this factor times (1-u^2)^(-1/2).
    """
    a = 1 - Fraction(u) ** 2
    if a <= 0:
        raise GrassmannError("need |u| < 1")
    n = symplectic_square(q) * Fraction(-1) * (1 / a)
    f = jet_pow(_unit_jet(max(q, 1)), Fraction(-1, 2))
    return berezin_integral(apply_scalar_function(f, n))


def fermionic_weight_integral(q: int, u) -> float:
    """int D(xi) (1 - u^2 - xi*xi)^(-1/2), by functional calculus."""
    a = 1 - float(u) ** 2
    return float(fermionic_weight_factor(q, Fraction(u).limit_denominator(10 ** 12)
                                         if isinstance(u, float) else u)) * a ** -0.5


def fermionic_weight_closed_factor(q: int, u) -> Fraction:
    """(-2)^q q! binom(-1/2, q) (1-u^2)^(-q), the rational part of the closed form.

    Equals (-2)^q sqrt(pi)/Gamma(1/2-q) (1-u^2)^(-q).
    """
    a = 1 - Fraction(u) ** 2
    return (-2) ** q * math.factorial(q) * gen_binomial(Fraction(-1, 2), q) / a ** q


def fermionic_weight_closed(q: int, u: float) -> float:
    return ((-2.0) ** q * math.sqrt(math.pi) * recip_gamma(0.5 - q).real
            * (1 - u * u) ** (-0.5 - q))


def _check_log_regime(p: int, q: int):
    if p % 2 != 1 or p < 1 or 2 * q < p + 1:
        raise GrassmannError("parity/sign regime error")


def log_weight_integral(p: int, q: int) -> Fraction:
    """int D(eta) (1 - eta*eta)^((p-1)/2) log(1 - eta*eta), exactly."""
    _check_log_regime(p, q)
    order = max(q, 1)
    x = _unit_jet(order)
    f = jet_pow(x, (p - 1) // 2) * jet_log(x)
    n = symplectic_square(q) * Fraction(-1)
    return berezin_integral(apply_scalar_function(f, n))


def log_weight_closed(p: int, q: int) -> Fraction:
    """(-1)^((p+1)/2) 2^q Gamma((p+1)/2) Gamma(1/2-rho), all integers here."""
    _check_log_regime(p, q)
    m = (p + 1) // 2
    g2 = q - m  # 1/2 - rho - 1 = q - (p+1)/2
    return Fraction((-1) ** m * 2 ** q * math.factorial(m - 1) * math.factorial(g2))


def alternating_binomial_sum(n: int, q: int) -> tuple[Fraction, Fraction]:
    """Both sides of sum_k binom(n,k)(-1)^k/(q-k) = (-1)^n/((q-n) binom(q,n))."""
    if not 0 <= n < q:
        raise GrassmannError("need 0 <= n < q")
    lhs = sum(Fraction(math.comb(n, k) * (-1) ** k, q - k) for k in range(n + 1))
    rhs = Fraction((-1) ** n, (q - n) * math.comb(q, n))
    return lhs, rhs


# constants --------------------------------------------------------------

def two_rho(p: int, q: int) -> int:
    return p - 2 * q


def ball_volume(p: int, q: int) -> float:
    """vol(B) = (-1)^q 2^(q+1) pi^((p+1)/2) / Gamma(rho + 1/2); zero for rho in -N-1/2."""
    rho = two_rho(p, q) / 2
    return float(((-1) ** q * 2.0 ** (q + 1) * math.pi ** ((p + 1) / 2)
                  * recip_gamma(rho + 0.5)).real)


def km_normalization(p: int, q: int) -> float:
    """c_{K/M} = (-1)^q / (sqrt(2) (2 pi)^((p+1)/2))."""
    return (-1) ** q / (math.sqrt(2.0) * (2 * math.pi) ** ((p + 1) / 2))


def km_volume(two_r: int) -> float:
    """2^(-rho)/Gamma(rho+1/2), the total mass of the K/M integral."""
    rho = two_r / 2
    return float((2.0 ** (-rho) * recip_gamma(rho + 0.5)).real)


def log_moment(two_r: int) -> float:
    """L(rho) = (-1)^(rho+1/2) 2^(-rho-1) Gamma(1/2-rho) for rho in -N-1/2."""
    if two_r % 2 == 0 or two_r > 0:
        raise GrassmannError("parity/sign regime error")
    rho = two_r / 2
    sign = -1 if ((two_r + 1) // 2) % 2 else 1  # (-1)^(rho+1/2)
    return sign * 2.0 ** (-rho - 1) * math.gamma(0.5 - rho)


def log_moment_from_ball(p: int, q: int) -> float:
    """2^q (-pi)^((p+1)/2) Gamma(1/2-rho) c_{K/M}: the log moment via the ball integral."""
    rho = two_rho(p, q) / 2
    m = (p + 1) // 2
    return (2.0 ** q * (-1) ** m * math.pi ** m * math.gamma(0.5 - rho)
            * km_normalization(p, q))


def sphere_area(p: int) -> float:
    """Area of the unit sphere in R^(p+1)."""
    return 2 * math.pi ** ((p + 1) / 2) / math.gamma((p + 1) / 2)


def full_super_integral_radial(p: int, q: int, h_jet: Callable, r_max: float,
                               spec: QuadratureSpec | None = None) -> float:
    """Integral of h(|x|^2) over flat superspace of dimension 1+p|2q.

    The odd variables are integrated exactly: h(c + xi*xi) is expanded by
    functional calculus and the Berezin integral taken, which leaves
    2^q h^(q)(c).  The remaining radial integral A_p int_0^r_max 2^q
    h^(q)(r^2) r^p dr is done by quadrature.  ``h_jet(x, order)`` returns a
    Jet of h at the points ``x``; ``r_max`` bounds the support (or the
    effective decay range).
    """
    spec = spec or QuadratureSpec(panels=32, nodes_per_panel=16, tol=1e-12)
    n = symplectic_square(q, exact=True)
    # Berezin image of sum_k c_k n^k is linear in the c_k: record weights
    weights = [berezin_integral(n ** k) for k in range(q + 1)]

    def radial(r):
        jet = h_jet(r * r, max(q, 1))
        reduced = sum(float(weights[k]) * jet.c[k] for k in range(q + 1))
        return np.real(reduced) * r ** p

    try:
        val, _ = integrate_finite(radial, 0.0, r_max, spec)
    except QuadratureBudgetError as exc:
        raise QuadratureBudgetError("integral budget exceeded") from exc
    return float(sphere_area(p) * val)


def flat_reduction_integral(p: int, q: int, h_jet: Callable, r_max: float,
                            spec: QuadratureSpec | None = None) -> float:
    """The same super integral as a bosonic integral in dimension n = 1+p-2q.

    Each fermion pair contributes a factor -2 pi and removes two bosonic
    dimensions, so the integral equals (-2 pi)^q int_{R^n} h(|u|^2) du.  For
    n = -2k <= 0 the bosonic factor is read off Gaussians, giving
    (-1/pi)^k h^(k)(0); odd negative n is not covered.
    """
    n = 1 + p - 2 * q
    pref = (-2 * math.pi) ** q
    if n >= 1:
        spec = spec or QuadratureSpec(panels=32, nodes_per_panel=16, tol=1e-12)
        radial = lambda r: np.real(h_jet(r * r, 0).c[0]) * r ** (n - 1)
        val, _ = integrate_finite(radial, 0.0, r_max, spec)
        return float(pref * sphere_area(n - 1) * val)
    if n % 2:
        raise GrassmannError("parity/sign regime error")
    k = -n // 2
    hk = float(np.real(h_jet(np.zeros(1), k).c[k][0])) * math.factorial(k)
    return float(pref * (-1 / math.pi) ** k * hk)


def cosine_power_product(p: int) -> float:
    """prod_{j=1}^{p-1} int_{-pi/2}^{pi/2} cos^j v dv, by Gauss-Legendre.

    Equals pi^((p-1)/2) / Gamma((p+1)/2) (a beta-function identity).
    """
    x, w = np.polynomial.legendre.leggauss(120)
    v = 0.5 * math.pi * x
    out = 1.0
    for j in range(1, p):
        out *= 0.5 * math.pi * float(np.sum(w * np.cos(v) ** j))
    return out


def log_weight_sum_form(p: int, q: int) -> Fraction:
    """2^q q! sum_{l=0}^{(p-1)/2} (-1)^(l+1)/(q-l) binom((p-1)/2, l)."""
    _check_log_regime(p, q)
    m = (p - 1) // 2
    return 2 ** q * math.factorial(q) * sum(
        Fraction((-1) ** (l + 1) * math.comb(m, l), q - l) for l in range(m + 1))


def ball_log_integral(p: int, q: int) -> float:
    """int_B |Db| log|b|_ev assembled from its one-dimensional pieces.

    Angular cosine integrals, the exact fermionic log integral, 2 pi from the
    remaining angle and 1/2 from the square root inside the logarithm.
    """
    return (cosine_power_product(p) * float(log_weight_integral(p, q))
            * 2 * math.pi * 0.5)
