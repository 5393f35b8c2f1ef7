"""Spherical functions phi_lambda^rho(t), the c-function and the Harish-Chandra series.

Conventions
-----------
rho = p/2 - q is stored exactly as the integer ``two_rho``.  The spherical
function is the even eigenfunction of

    Lambda_rho = d^2/dt^2 + 2 rho coth(t) d/dt,   eigenvalue lambda^2 - rho^2,

normalized by phi(0) = 2^(-rho) / Gamma(rho + 1/2).  Raising rho is done by
the shift operator (1/sinh t) d/dt:

    (1/sinh t) d/dt phi^rho = (lambda^2 - rho^2) phi^(rho+1).

Three evaluators are provided:

* ``HypergeometricPfaff``: 2^(-rho) cosh(t)^(-(rho+lambda)) times the
  regularized 2F1((rho+lambda)/2, (rho+lambda+1)/2; rho+1/2; tanh^2 t).
* ``DownwardRecursion``: three-term recursion in rho from closed-form bases at
  rho in {0, 1} (elementary) or {1/2, 3/2} (Legendre functions).  Above the
  base pair the same recursion is run upward, which is only done for t >= 0.5.
* ``HarishChandraSeries``: Phi_lambda + Phi_-lambda.

``Auto`` uses closed forms at rho in {0, 1}, otherwise Pfaff where its series
is free of heavy cancellation (|Im lambda| tanh t <= 6, tanh^2 t <= 0.95) and
the Harish-Chandra series elsewhere.
"""
from __future__ import annotations

import enum
import functools
import logging
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .jets import Jet, jet_pow, jet_sinh_cosh
from .specfun import (gamma, gamma_ratio_shifted, gauss_2f1_regularized, gen_binomial,
                      legendre_p, legendre_p_deriv, recip_gamma, SeriesBudgetError)

log = logging.getLogger(__name__)

SQRT_PI = math.sqrt(math.pi)
PFAFF_CANCEL_LIMIT = 6.0
PFAFF_MARGIN = 0.05
HC_T_MIN = 0.3
UPWARD_T_MIN = 0.5
HALF_INT_GUARD = 1e-6


class MethodRangeError(ValueError):
    def __init__(self, msg="evaluation out of method range"):
        super().__init__(msg)


class HCRangeError(ValueError):
    def __init__(self, msg="HC series out of range"):
        super().__init__(msg)


# ---------------------------------------------------------------------------
# parameter records

@dataclass(frozen=True)
class RhoParam:
    """rho stored as the exact integer 2*rho, optionally with its (p, q)."""

    two_rho: int
    origin: tuple | None = None

    def __post_init__(self):
        if not isinstance(self.two_rho, (int, np.integer)):
            raise TypeError("two_rho must be an integer")
        if self.origin is not None:
            p, q = self.origin
            if p < 1 or q < 0 or p - 2 * q != self.two_rho:
                raise ValueError("origin (p, q) inconsistent with two_rho")

    @classmethod
    def from_pq(cls, p: int, q: int) -> "RhoParam":
        return cls(p - 2 * q, (p, q))

    @classmethod
    def parse(cls, text) -> "RhoParam":
        """Parse '-3/2', '1', 2, Fraction(1, 2) or an existing RhoParam.

        Decimal strings and floats other than exact integers are rejected so
        that parity never depends on a floating comparison.
        """
        if isinstance(text, RhoParam):
            return text
        if isinstance(text, (int, np.integer)):
            return cls(2 * int(text))
        if isinstance(text, Fraction):
            f = text
        elif isinstance(text, float):
            if 2 * text != round(2 * text):
                raise ValueError(f"rho must be a half-integer, got {text}")
            f = Fraction(round(2 * text), 2)
        else:
            s = str(text).strip()
            if "." in s or "e" in s.lower():
                raise ValueError(f"rho must be given exactly as n/2, got {s!r}")
            f = Fraction(s)
        if (2 * f).denominator != 1:
            raise ValueError(f"rho must be a half-integer, got {text}")
        return cls(int(2 * f))

    @property
    def frac(self) -> Fraction:
        return Fraction(self.two_rho, 2)

    @property
    def value(self) -> float:
        return self.two_rho / 2.0

    @property
    def is_integral(self) -> bool:
        return self.two_rho % 2 == 0

    def parity(self) -> str:
        return "integral" if self.is_integral else "half-integral"

    def shifted(self, k: int) -> "RhoParam":
        return RhoParam(self.two_rho + 2 * k)

    def __str__(self):
        return str(self.frac)


def as_rho(rho) -> RhoParam:
    return RhoParam.parse(rho)


@dataclass(frozen=True)
class SpectralParam:
    """lambda in a*, identified with lambda(h0); lambda = i s on the tempered axis."""

    lam: complex

    @classmethod
    def from_s(cls, s: float) -> "SpectralParam":
        return cls(1j * s)

    def weyl(self) -> "SpectralParam":
        return SpectralParam(-self.lam)

    def __complex__(self):
        return complex(self.lam)


@dataclass(frozen=True)
class RadialPoint:
    """Point a_r = exp(t h0) of A, with r = tanh t."""

    t: float

    def __post_init__(self):
        if self.t < 0:
            raise ValueError("t must be non-negative")

    @classmethod
    def from_r(cls, r: float) -> "RadialPoint":
        if not 0 <= r < 1:
            raise ValueError("r must lie in [0, 1)")
        return cls(math.atanh(r))

    @classmethod
    def from_x(cls, x: float) -> "RadialPoint":
        return cls.from_r(math.sqrt(x))

    @property
    def r(self) -> float:
        return math.tanh(self.t)

    @property
    def x(self) -> float:
        return self.r ** 2


class EvalMethod(enum.Enum):
    AUTO = "auto"
    PFAFF = "pfaff"
    RECURSION = "recursion"
    HC = "hc"

    @classmethod
    def parse(cls, m) -> "EvalMethod":
        if isinstance(m, cls):
            return m
        return cls(str(m).lower())


def _lam(lam):
    if isinstance(lam, SpectralParam):
        lam = lam.lam
    return np.asarray(lam, dtype=complex)


def _t(t):
    if isinstance(t, RadialPoint):
        t = t.t
    return np.asarray(t, dtype=float)


def _out(a):
    return a[()] if a.ndim == 0 else a


# ---------------------------------------------------------------------------
# c-function and Plancherel density

def c_function(rho, lam):
    """c_rho(lambda) = 2^(rho-1) Gamma(lambda) / (sqrt(pi) Gamma(lambda+rho)).

    Genuine poles (Gamma(lambda) singular, not cancelled) return complex
    infinity; see ``is_pole``.
    """
    rho = as_rho(rho)
    lam = _lam(lam)
    g = np.asarray(gamma_ratio_shifted(lam, rho.value))
    with np.errstate(invalid="ignore"):
        out = np.asarray(2.0 ** (rho.value - 1) / SQRT_PI * g)
    return _out(np.where(np.isfinite(g), out, complex(np.inf, 0.0)))


def c_function_duplication(rho, lam):
    """2^(-lambda) Gamma(lambda) / (Gamma((lambda+rho)/2) Gamma((lambda+rho+1)/2))."""
    rho = as_rho(rho)
    lam = _lam(lam)
    z = (lam + rho.value) / 2
    out = 2.0 ** (-lam) * gamma(lam) * recip_gamma(z) * recip_gamma(z + 0.5)
    return _out(np.asarray(out))


def is_pole(value) -> np.ndarray:
    return ~np.isfinite(np.asarray(value))


def _inv_g(rho: RhoParam, lam):
    # Gamma(lambda + rho) / Gamma(lambda), entire unless rho < 0
    return gamma_ratio_shifted(lam + rho.value, -rho.value)


def inv_cc(rho, lam):
    """[c(lambda) c(-lambda)]^-1 = pi 4^(1-rho) / (g(lambda) g(-lambda)), g = Gamma(lambda)/Gamma(lambda+rho)."""
    rho = as_rho(rho)
    lam = _lam(lam)
    out = math.pi * 4.0 ** (1 - rho.value) * _inv_g(rho, lam) * _inv_g(rho, -lam)
    return _out(np.asarray(out))


def plancherel_density(rho, s):
    """1 / (c(is) c(-is)), real and even in s."""
    s = np.asarray(s, dtype=float)
    return _out(np.asarray(np.real(inv_cc(rho, 1j * s))))


# ---------------------------------------------------------------------------
# Harish-Chandra series

def hc_coefficient(rho, lam, ell: int):
    """gamma_ell(lambda) = -c(l) c(-l) (-1)^ell binom(-rho, ell) l / ((ell-l) c(ell-l))."""
    rho = as_rho(rho)
    lam = _lam(lam)
    b = float(gen_binomial(-rho.frac, ell))
    mu = ell - lam
    c_mu = np.asarray(c_function(rho, mu))
    if b == 0:
        return _out(np.zeros(np.broadcast(lam).shape, complex))
    with np.errstate(divide="ignore", invalid="ignore"):
        out = -np.asarray(c_function(rho, lam)) * np.asarray(c_function(rho, -lam)) \
            * (-1) ** ell * b * lam / (mu * c_mu)
    return _out(np.asarray(out))


def hc_coefficient_weighted(rho, lam, ell: int):
    """gamma_ell / (c(l) c(-l)) = sqrt(pi) 2^(1-rho) (-1)^(ell+1) binom(-rho, ell) l Gamma(ell+rho-l)/Gamma(ell+1-l)."""
    rho = as_rho(rho)
    lam = _lam(lam)
    b = float(gen_binomial(-rho.frac, ell))
    ratio = gamma_ratio_shifted(ell + rho.value - lam, 1 - rho.value)
    out = SQRT_PI * 2.0 ** (1 - rho.value) * (-1) ** (ell + 1) * b * lam * ratio
    return _out(np.asarray(out))


def _near_half_integer(lam, guard=HALF_INT_GUARD):
    two = 2 * lam
    return np.abs(two - np.round(two.real)) < guard


def _terminates(rho: RhoParam) -> bool:
    return rho.is_integral and rho.two_rho <= 0


def hc_series_eval(rho, lam, t, tol: float = 1e-16, t_min: float = HC_T_MIN,
                   max_terms: int = 50000, weighted: bool = False):
    """Phi_lambda(e^{t h0}) = e^{(lambda-rho) t} sum_ell gamma_ell(lambda) e^{-2 ell t}.

    Coefficients are generated by their term ratio
    (rho+ell)(rho-lambda+ell) / ((ell+1)(ell+1-lambda)); the tail after the
    current term is bounded geometrically once ell + 1 > Re lambda.  With
    ``weighted`` the series of Phi_lambda / (c(lambda) c(-lambda)) is summed
    instead, which stays finite at lambda = 0.
    """
    rho = as_rho(rho)
    lam, t = np.broadcast_arrays(_lam(lam), _t(t))
    shape = lam.shape
    lam = lam.astype(complex).ravel()
    t = t.astype(float).ravel()
    if np.any(t < t_min) or np.any(t <= 0):
        raise HCRangeError()
    term_lim = None
    if _terminates(rho):
        term_lim = -rho.two_rho // 2
    elif np.any(_near_half_integer(lam)):
        raise HCRangeError()
    r = rho.value
    q = np.exp(-2.0 * t)
    first = hc_coefficient_weighted(rho, lam, 0) if weighted else c_function(rho, lam)
    c0 = np.asarray(first, dtype=complex).reshape(-1)
    term = c0.copy()
    total = term.copy()
    scale = np.abs(total)
    ell = 0
    a1 = abs(r - 1)
    while True:
        if term_lim is not None and ell >= term_lim:
            break
        term = term * ((r + ell) / (ell + 1)) * (r - lam + ell) / (ell + 1 - lam) * q
        total = total + term
        ell += 1
        if term_lim is None and ell % 4 == 0:
            scale = np.maximum(scale, np.abs(total))
            dn = ell + 1 - lam.real
            with np.errstate(divide="ignore", invalid="ignore"):
                bound = q * (1 + a1 / (ell + 1)) * (1 + a1 / np.where(dn > 0, dn, np.nan))
            ok = (dn > 0) & (bound < 1)
            tail = np.where(ok, np.abs(term) * bound / np.where(ok, 1 - bound, 1), np.inf)
            if np.all(tail <= tol * np.maximum(scale, 1e-300)):
                break
        if ell > max_terms:
            raise HCRangeError()
    out = np.exp((lam - r) * t) * total
    return _out(out.reshape(shape))


def _phi_hc(rho, lam, t, t_min=HC_T_MIN):
    if np.all(lam.real == 0):
        # on the tempered axis Phi_-lambda is the complex conjugate of Phi_lambda
        return 2.0 * hc_series_eval(rho, lam, t, t_min=t_min).real + 0j
    return hc_series_eval(rho, lam, t, t_min=t_min) + hc_series_eval(rho, -lam, t, t_min=t_min)


# ---------------------------------------------------------------------------
# closed forms and evaluators

def _sinhc(z):
    z = np.asarray(z, dtype=complex)
    small = np.abs(z) < 1e-6
    zs = np.where(small, 1.0, z)
    return np.where(small, 1 + z * z / 6, np.sinh(zs) / zs)


def _phi0(lam, t):
    return np.cosh(lam * t) / SQRT_PI


def _phi1(lam, t):
    # sinh(lambda t) / (sqrt(pi) lambda sinh t) = t sinhc(lambda t) / (sqrt(pi) sinh t)
    tt = np.where(t == 0, 1.0, t)
    ratio = np.where(t == 0, 1.0, tt / np.sinh(tt))
    return _sinhc(lam * t) * ratio / SQRT_PI


def _legendre_bases(lam, t):
    """phi^(1/2) and phi^(3/2) from P_{lambda-1/2}(cosh t) and its derivative."""
    lam = np.where(lam.real < 0, -lam, lam)  # Weyl fold keeps nu + 1 away from 0
    nu = lam - 0.5
    p_half = np.empty(lam.shape, complex)
    p_three = np.empty(lam.shape, complex)
    for tv in np.unique(t):
        sel = t == tv
        x = math.cosh(float(tv))
        p_half[sel] = legendre_p(nu[sel], x)
        # P'_nu / (lambda^2 - 1/4) = (P'_nu / nu) / (nu + 1)
        p_three[sel] = legendre_p_deriv(nu[sel], x, divide_nu=True) / (nu[sel] + 1)
    s2 = math.sqrt(2.0)
    return p_half / s2, p_three / s2


def _phi_pfaff(rho: RhoParam, lam, t, margin=PFAFF_MARGIN, max_terms=20000):
    r = rho.value
    w = np.tanh(t) ** 2
    a = (r + lam) / 2
    f = gauss_2f1_regularized(a, a + 0.5, r + 0.5, w, margin=margin, max_terms=max_terms)
    return 2.0 ** (-r) * np.cosh(t) ** (-(r + lam)) * f


def _phi_recursion(rho: RhoParam, lam, t):
    if rho.is_integral:
        base = 0
        lo, hi = _phi0(lam, t), _phi1(lam, t)
    else:
        base = 1
        lo, hi = _legendre_bases(lam, t)
    # lo = phi^(b/2), hi = phi^(b/2 + 1)
    target = rho.two_rho
    two = base
    if target < two:
        ch, sh2 = np.cosh(t), np.sinh(t) ** 2
        while two > target:
            r = (two - 2) / 2.0  # new rho
            new = (2 * r + 1) * ch * lo + (lam * lam - (r + 1) ** 2) * sh2 * hi
            lo, hi = new, lo
            two -= 2
        return lo
    if target == two:
        return lo
    if target == two + 2:
        return hi
    if np.any(t < UPWARD_T_MIN):
        raise MethodRangeError()
    ch, sh2 = np.cosh(t), np.sinh(t) ** 2
    while two + 2 < target:
        r = two / 2.0
        new = (lo - (2 * r + 1) * ch * hi) / ((lam * lam - (r + 1) ** 2) * sh2)
        lo, hi = hi, new
        two += 2
    return hi


def _auto(rho: RhoParam, lam, t):
    out = np.empty(lam.shape, complex)
    w = np.tanh(t) ** 2
    pf = (np.abs(lam.imag) * np.sqrt(w) <= PFAFF_CANCEL_LIMIT) & (w <= 1 - PFAFF_MARGIN)
    if np.any(pf):
        out[pf] = _phi_pfaff(rho, lam[pf], t[pf])
    rest = ~pf
    if np.any(rest):
        hc_ok = rest & (t > 0)
        if not _terminates(rho):
            hc_ok &= ~_near_half_integer(lam)
        if np.any(hc_ok):
            out[hc_ok] = _phi_hc(rho, lam[hc_ok], t[hc_ok], t_min=0.0)
        left = rest & ~hc_ok
        if np.any(left):
            if rho.two_rho < 2:
                out[left] = _phi_recursion(rho, lam[left], t[left])
            elif np.all(w[left] <= 1 - 1e-4):
                out[left] = _phi_pfaff(rho, lam[left], t[left], margin=1e-4, max_terms=2_000_000)
            else:
                raise MethodRangeError()
        _check_dispatch_boundary(rho.two_rho)
    return out


@functools.cache
def _check_dispatch_boundary(two_rho: int) -> float:
    """Compare Pfaff and HC once per process at a point on the dispatch boundary."""
    rho = RhoParam(two_rho)
    t = np.array([1.0])
    lam = np.array([1j * PFAFF_CANCEL_LIMIT / math.tanh(1.0)])
    a = _phi_pfaff(rho, lam, t)
    b = _phi_hc(rho, lam, t)
    diff = float(np.max(np.abs(a - b) / np.maximum(np.abs(a), 1e-300)))
    if not diff <= 1e-9:
        log.warning("dispatch boundary mismatch at rho=%s: rel diff %.3g", rho, diff)
    return diff


def phi(rho, lam, t, method=EvalMethod.AUTO):
    """Normalized spherical function phi_lambda^rho at t (broadcasting lam and t)."""
    rho = as_rho(rho)
    method = EvalMethod.parse(method)
    lam, t = np.broadcast_arrays(_lam(lam), _t(t))
    shape = lam.shape
    lam = lam.astype(complex).ravel()
    t = t.astype(float).ravel()
    if np.any(t < 0):
        raise ValueError("t must be non-negative")
    if method is EvalMethod.AUTO:
        if rho.two_rho == 0:
            out = _phi0(lam, t)
        elif rho.two_rho == 2:
            out = _phi1(lam, t)
        else:
            out = _auto(rho, lam, t)
    elif method is EvalMethod.PFAFF:
        if np.any(np.tanh(t) ** 2 > 1 - PFAFF_MARGIN):
            raise MethodRangeError()
        out = _phi_pfaff(rho, lam, t)
    elif method is EvalMethod.RECURSION:
        out = _phi_recursion(rho, lam, t)
    else:
        try:
            out = _phi_hc(rho, lam, t)
        except HCRangeError as exc:
            raise MethodRangeError() from exc
    return _out(np.asarray(out).reshape(shape))


# ---------------------------------------------------------------------------
# jets

def _chain_jet(values, coefs, step: Jet):
    """Jet of f_0 from values f_j(x0) and f_j' = coefs[j] * step * f_{j+1}.

    ``values`` has K+1 entries (j = 0..K); ``step`` is a jet of order K-1.
    Each level is obtained by integrating the level above, so the order grows
    by one per level and f_0 comes out at order K.
    """
    K = len(values) - 1
    jet = Jet(np.asarray(values[K])[None])
    for j in range(K - 1, -1, -1):
        order = K - 1 - j
        d = step.truncate(order) * jet * coefs[j]
        jet = d.integrate(values[j])
    return jet


def phi_jet(rho, lam, t0, K: int, method=EvalMethod.AUTO) -> Jet:
    """Taylor jet in t of phi_lambda^rho about t0, built from the shift identity."""
    rho = as_rho(rho)
    lam, t0 = np.broadcast_arrays(_lam(lam), _t(t0))
    lam = lam.astype(complex)
    t0 = t0.astype(float)
    vals = [np.asarray(phi(rho.shifted(j), lam, t0, method), complex) for j in range(K + 1)]
    coefs = [lam * lam - (rho.value + j) ** 2 for j in range(K + 1)]
    if K == 0:
        return Jet(vals[0][None], t0)
    sh, _ = jet_sinh_cosh(t0, K - 1)
    jet = _chain_jet(vals, coefs, sh)
    jet.base = t0
    return jet


def x_step_jet(x0, order: int) -> Jet:
    """Jet of (1 - x)^(-3/2) about x0."""
    x0 = np.asarray(x0, dtype=float)
    one_minus = 1.0 - Jet.variable(x0.astype(complex), order)
    return jet_pow(one_minus, -1.5)


def phi_x_jet(rho, lam, x0, K: int, method=EvalMethod.AUTO) -> Jet:
    """Taylor jet in x = tanh^2 t of phi_lambda^rho about x0.

    Uses d/dx phi^rho = (lambda^2 - rho^2) phi^(rho+1) / (2 (1-x)^(3/2)).
    """
    rho = as_rho(rho)
    lam, x0 = np.broadcast_arrays(_lam(lam), np.asarray(x0, dtype=float))
    t0 = np.arctanh(np.sqrt(x0))
    vals = [np.asarray(phi(rho.shifted(j), lam, t0, method), complex) for j in range(K + 1)]
    coefs = [(lam * lam - (rho.value + j) ** 2) / 2 for j in range(K + 1)]
    if K == 0:
        return Jet(vals[0][None], x0)
    jet = _chain_jet(vals, coefs, x_step_jet(x0, K - 1))
    jet.base = x0
    return jet


# ---------------------------------------------------------------------------
# asymptotics

@dataclass
class LimitReport:
    t: np.ndarray
    values: np.ndarray
    limit: complex
    c_value: complex
    spread: float
    error: float


def cfn_limit_check(rho, lam, t_grid, method=EvalMethod.RECURSION) -> LimitReport:
    """Tabulate e^{-(lambda-rho) t} phi(t) and compare its limit with c(lambda).

    The default method avoids the Harish-Chandra series, whose leading term is
    c(lambda) by construction.  The limit estimate removes the leading
    correction A e^{-2 kappa t}, kappa = min(1, Re lambda), from the last two
    grid points.
    """
    rho = as_rho(rho)
    lam = complex(_lam(lam))
    if lam.real <= 0:
        raise ValueError("cfn_limit_check needs Re lambda > 0")
    tg = np.asarray(t_grid, dtype=float)
    vals = np.array([complex(phi(rho, lam, tv, method)) for tv in tg]) * np.exp(-(lam - rho.value) * tg)
    kappa = min(1.0, lam.real)
    if tg.size >= 2:
        e1, e2 = np.exp(-2 * kappa * tg[-2]), np.exp(-2 * kappa * tg[-1])
        A = (vals[-2] - vals[-1]) / (e1 - e2)
        limit = vals[-1] - A * e2
        spread = float(abs(vals[-1] - vals[-2]))
    else:
        limit, spread = vals[-1], float("inf")
    c = complex(c_function(rho, lam))
    return LimitReport(tg, vals, complex(limit), c, spread, float(abs(limit - c)))


__all__ = [
    "RhoParam", "SpectralParam", "RadialPoint", "EvalMethod", "MethodRangeError",
    "HCRangeError", "SeriesBudgetError", "as_rho", "c_function", "c_function_duplication",
    "is_pole", "inv_cc", "plancherel_density", "hc_coefficient", "hc_coefficient_weighted",
    "hc_series_eval", "phi", "phi_jet", "phi_x_jet", "x_step_jet", "cfn_limit_check",
    "LimitReport",
]
