"""Spherical transform, wave packets, J(1) and the inversion identities at the origin.

Radial data live on [0, 1) in the squared-radius variable x = r^2 = tanh^2 t.
Abbreviations used throughout::

    vol(rho) = 2^(-rho) / Gamma(rho + 1/2)            volume of K/M
    psi_lambda^rho(x) = phi_lambda^rho(a_sqrt(x)) / (c(lambda) c(-lambda))
    Psi^rho(x) = J(1)(a_sqrt(x))                       (rho < 0)

Integration over G/K of K-invariant data reduces to one-dimensional integrals
whose form depends on the regime of rho:

* rho >= 0: vol * int_0^1 dr r^(2 rho) (1-r^2)^(-1-rho) f(r^2) (...)
* rho < 0 integral: K * int_0^1 dx x^(-1/2) d_x^(-rho) [(1-x)^(-1-rho) vol f (...)],
  K = (-1)^rho Gamma(rho+1/2) / (2 sqrt(pi))
* rho < 0 half-integral, data (h1, h2):
  2 int_0^1 dx x^(rho+1) (1-x)^(-1-rho) h1 (...)
  + d_x^m / m! [(1-x)^(-1-rho) h2 (...)] at x = 0,   m = -rho - 1/2

All derivatives at points are taken with jets.  The spectral measure is
d lambda on the imaginary axis, so int d lambda = 2 int_0^inf ds for even
integrands.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, asdict
from typing import Callable

import numpy as np

from .jets import Jet, jet_pow
from .profiles import RadialProfile
from .quadrature import (QuadratureSpec, QuadResult, integrate_finite,
                         integrate_spectral)
from .specfun import gen_binomial, recip_gamma, gamma
from .spherical import (EvalMethod, _chain_jet, RhoParam, as_rho, hc_series_eval, inv_cc,
                        phi, phi_x_jet, plancherel_density, x_step_jet)

SQRT_PI = math.sqrt(math.pi)
POINTWISE_ST = 200.0  # spectral cutoff times t for pointwise wave packets


class RegimeError(ValueError):
    pass


def _regime(rho: RhoParam) -> str:
    if rho.two_rho >= 0:
        return "nonneg"
    return "integral" if rho.is_integral else "halfint"


# ---------------------------------------------------------------------------
# constants

def vol_km(rho) -> float:
    """2^(-rho) / Gamma(rho + 1/2); zero for rho in -N - 1/2."""
    rho = as_rho(rho)
    return float((2.0 ** (-rho.value) * recip_gamma(rho.value + 0.5)).real)


def log_km_constant(rho) -> float:
    """L(rho) = (-1)^(rho+1/2) 2^(-rho-1) Gamma(1/2 - rho) for half-integral rho < 0."""
    rho = as_rho(rho)
    if _regime(rho) != "halfint":
        raise RegimeError("constant undefined in this regime")
    sign = -1.0 if ((rho.two_rho + 1) // 2) % 2 else 1.0
    return sign * 2.0 ** (-rho.value - 1) * float(gamma(0.5 - rho.value).real)


def integral_regime_constant(rho) -> float:
    """(-1)^rho Gamma(rho + 1/2) / (2 sqrt(pi)) for integral rho < 0."""
    rho = as_rho(rho)
    if _regime(rho) != "integral":
        raise RegimeError("constant undefined in this regime")
    sign = -1.0 if (rho.two_rho // 2) % 2 else 1.0
    return sign * float(gamma(rho.value + 0.5).real) / (2 * SQRT_PI)


def psi_topder_constant(rho) -> float:
    """(-1)^(rho-1/2) 2^(3-rho) pi, the top x-derivative of Psi^rho at 0."""
    rho = as_rho(rho)
    if _regime(rho) != "halfint":
        raise RegimeError("constant undefined in this regime")
    sign = -1.0 if ((rho.two_rho - 1) // 2) % 2 else 1.0
    return sign * 2.0 ** (3 - rho.value) * math.pi


def inversion_constant(rho) -> float:
    """2^(2(1-rho)) pi."""
    return 2.0 ** (2 * (1 - as_rho(rho).value)) * math.pi


# ---------------------------------------------------------------------------
# psi kernels

def _t_of_x(x):
    return np.arctanh(np.sqrt(np.asarray(x, dtype=float)))


def psi(rho, lam, x, method=EvalMethod.AUTO):
    """psi_lambda^rho(x) = phi_lambda^rho(artanh sqrt x) / (c(lambda) c(-lambda))."""
    rho = as_rho(rho)
    return inv_cc(rho, lam) * phi(rho, lam, _t_of_x(x), method)


def psi_jet(rho, lam, x0, K: int, method=EvalMethod.AUTO) -> Jet:
    """Jet in x of psi^rho about x0 from d/dx psi^rho = -2 (1-x)^(-3/2) psi^(rho+1)."""
    rho = as_rho(rho)
    lam, x0 = np.broadcast_arrays(np.asarray(lam, complex), np.asarray(x0, float))
    vals = [np.asarray(psi(rho.shifted(j), lam, x0, method), complex) for j in range(K + 1)]
    if K == 0:
        return Jet(vals[0][None], x0)
    jet = _chain_jet(vals, [-2.0] * (K + 1), x_step_jet(x0, K - 1))
    jet.base = x0
    return jet


# ---------------------------------------------------------------------------
# J(1), Psi and residues

def _require_negative(rho: RhoParam):
    if rho.two_rho >= 0:
        raise RegimeError("J(1) defined only for rho<0")


def _j_one_jet_form(rho: RhoParam, t):
    # -pi^(3/2) 2^(2-rho) / (Gamma(1-rho) Gamma(-2 rho)) d_s^N [(1-2 s^2 C + s^4)^(-rho) / (1-s)^2]
    t = np.asarray(t, dtype=float)
    N = -rho.two_rho - 1
    C = np.cosh(t).astype(complex)
    order = max(N, 4)
    c = np.zeros((order + 1,) + t.shape, complex)
    c[0] = 1.0
    c[2] = -2.0 * C
    c[4] = 1.0
    poly = Jet(c)
    base = jet_pow(poly, -rho.frac if rho.is_integral else -rho.value)
    one_minus_s = Jet.constant(np.ones(t.shape, complex), order) - Jet.variable(np.zeros(t.shape, complex), order)
    prod = base * jet_pow(one_minus_s, -2)
    cN = prod.c[N]  # = d^N / N! and N! = Gamma(-2 rho)
    pref = -math.pi ** 1.5 * 2.0 ** (2 - rho.value) * float(recip_gamma(1 - rho.value).real)
    return (pref * cN).real


def _j_one_halfint_form(rho: RhoParam, t):
    t = np.asarray(t, dtype=float)
    m = (-rho.two_rho - 1) // 2
    pref = -math.pi * 2.0 ** (3 - 2 * rho.value) / (math.sqrt(2.0) * float(gamma(0.5 - rho.value).real))
    return pref * (1.0 - np.cosh(t)) ** m


def j_one(rho, t, form: str = "jet"):
    """J(1)(e^{t h0}) for rho < 0.

    ``form`` selects the jet closed form, the half-integral closed form
    ('halfint') or 4 pi times the residue sum ('residue').
    """
    rho = as_rho(rho)
    _require_negative(rho)
    if form == "jet":
        out = _j_one_jet_form(rho, t)
    elif form == "halfint":
        if rho.is_integral:
            raise RegimeError("constant undefined in this regime")
        out = _j_one_halfint_form(rho, t)
    elif form == "residue":
        n = (-rho.two_rho + 1) // 2  # number of k with 0 <= k < -rho
        out = 4 * math.pi * sum(residue_at(rho, k, t) for k in range(n))
    else:
        raise ValueError(f"unknown form {form!r}")
    out = np.asarray(out, dtype=float)
    return out[()] if out.ndim == 0 else out


def big_psi(rho, x, form: str = "jet"):
    """Psi^rho(x) = J(1)(a_sqrt(x))."""
    return j_one(rho, _t_of_x(x), form)


def big_psi_jet(rho, x0, K: int, form: str = "chain") -> Jet:
    """Jet in x of Psi^rho about x0.

    'chain' iterates d/dx Psi^rho = -2 (1-x)^(-3/2) Psi^(rho+1), with Psi^rho = 0
    for rho >= 0 (the chain tops Psi^-1 and Psi^-1/2 are constant).  'closed'
    differentiates the half-integral closed form in C = (1-x)^(-1/2) directly.
    """
    rho = as_rho(rho)
    _require_negative(rho)
    x0 = np.asarray(x0, dtype=float)
    if form == "closed":
        if rho.is_integral:
            raise RegimeError("constant undefined in this regime")
        m = (-rho.two_rho - 1) // 2
        one_minus = 1.0 - Jet.variable(x0.astype(complex), K)
        ch = jet_pow(one_minus, -0.5)
        base = jet_pow(1.0 - ch, m)
        pref = -math.pi * 2.0 ** (3 - 2 * rho.value) / (math.sqrt(2.0) * float(gamma(0.5 - rho.value).real))
        out = base * pref
        out.base = x0
        return out
    vals = []
    for j in range(K + 1):
        r = rho.shifted(j)
        vals.append(np.asarray(big_psi(r, x0), complex) if r.two_rho < 0 else np.zeros(x0.shape, complex))
    if K == 0:
        return Jet(vals[0][None], x0)
    jet = _chain_jet(vals, [-2.0] * (K + 1), x_step_jet(x0, K - 1))
    jet.base = x0
    return jet


def residue_at(rho, k: int, t, form: str = "sum"):
    """res_{lambda = rho + k} [Phi_lambda / (c(lambda) c(-lambda))] at e^{t h0}."""
    rho = as_rho(rho)
    _require_negative(rho)
    if not (0 <= k and 2 * k < -rho.two_rho):
        raise ValueError("no pole at requested index")
    t = np.asarray(t, dtype=float)
    r = rho.value
    pref = SQRT_PI * 2.0 ** (1 - r) * (r + k) * float(recip_gamma(1 - r).real)
    if form == "sum":
        acc = np.zeros(t.shape)
        for ell in range(k + 1):
            b = float(gen_binomial(-rho.frac, ell)) * float(gen_binomial(-rho.frac, k - ell))
            acc = acc + b * np.exp((k - 2 * ell) * t)
        out = (-1) ** k * pref * acc
    elif form == "jet":
        order = max(k, 2)
        c = np.zeros((order + 1,) + t.shape, complex)
        c[0] = 1.0
        c[1] = -2.0 * np.cosh(t)
        c[2] = 1.0
        j = jet_pow(Jet(c), -rho.frac if rho.is_integral else -r)
        out = pref * j.c[k].real  # d^k / k!
    else:
        raise ValueError(f"unknown form {form!r}")
    out = np.asarray(out, dtype=float)
    return out[()] if out.ndim == 0 else out


# ---------------------------------------------------------------------------
# K-invariant data

@dataclass(frozen=True)
class KInvariantData:
    """Radial data for the transforms.

    For half-integral rho < 0 the data is the pair (h1, h2) of K/M-averages
    of f and of log||k e1|| f; a plain ``f`` then means h1 = vol f = 0 and
    h2 = L(rho) f.  Otherwise only ``f`` is used.
    """

    f: RadialProfile | None = None
    h1: RadialProfile | None = None
    h2: RadialProfile | None = None

    def resolve(self, rho: RhoParam):
        if _regime(rho) == "halfint":
            if self.h1 is None and self.h2 is None:
                if self.f is None:
                    raise ValueError("profile data missing")
                return None, self.f, log_km_constant(rho)
            if self.h1 is None or self.h2 is None:
                raise ValueError("half-integral rho < 0 needs both h1 and h2")
            return self.h1, self.h2, 1.0
        if self.f is None:
            raise ValueError("profile f required in this regime")
        if self.h1 is not None or self.h2 is not None:
            raise ValueError("h1/h2 are only meaningful for half-integral rho < 0")
        return self.f, None, None

    def value_at_origin(self, rho: RhoParam) -> float:
        """f(0); for half-integral rho < 0 this is h2(0) / L(rho)."""
        h1, h2, scale = self.resolve(rho)
        if _regime(rho) == "halfint":
            return float(h2(0.0)) * scale / log_km_constant(rho)
        return float(h1(0.0))

    def support_bound(self) -> float:
        return max(p.x_c for p in (self.f, self.h1, self.h2) if p is not None)


def as_data(data) -> KInvariantData:
    if isinstance(data, KInvariantData):
        return data
    if isinstance(data, RadialProfile):
        return KInvariantData(f=data)
    if isinstance(data, (tuple, list)) and len(data) == 2:
        return KInvariantData(h1=data[0], h2=data[1])
    raise TypeError("unsupported profile data")


def _pow_one_minus(x, beta, order: int) -> Jet:
    return jet_pow(1.0 - Jet.variable(np.asarray(x, dtype=float).astype(complex), order), beta)


def _amp_jet(profile: RadialProfile, x, order: int, beta, scale: float = 1.0) -> Jet:
    """Jet of scale * (1-x)^beta * profile(x)."""
    return _pow_one_minus(x, beta, order) * profile.jet(x, order) * scale


class _Counter:
    def __init__(self):
        self.n = 0


def _x_lambda_integrand(rho: RhoParam, lam, amp: Callable, m: int, kernel: str,
                        counter: _Counter, method=EvalMethod.AUTO):
    """Integrand factory x -> d_x^m [A(x) K_lambda(x)] with K = phi or psi.

    Returns a callable on node arrays that yields shape (n_lambda, n_x).
    """
    lam = np.atleast_1d(np.asarray(lam, complex))
    w = inv_cc(rho, lam) if kernel == "psi" else 1.0

    def g(xs):
        xs = np.asarray(xs, dtype=float)
        A = amp(xs, m)  # jet batch (n_x,)
        out = np.zeros((lam.size, xs.size), complex)
        live = np.any(A.c != 0, axis=0)
        fact = math.factorial(m)
        for i in np.nonzero(live)[0]:
            if m == 0:
                val = phi(rho, lam, _t_of_x(xs[i]), method) * A.c[0, i]
            else:
                P = phi_x_jet(rho, lam, xs[i], m, method)
                val = fact * sum(A.c[j, i] * P.c[m - j] for j in range(m + 1))
            counter.n += lam.size * (m + 1)
            out[:, i] = val
        return out * (w[:, None] if np.ndim(w) else w)
    return g


def _x_integral(g, a: float, b: float, spec: QuadratureSpec, left_exponent=None, grading=None):
    return integrate_finite(g, a, b, spec, left_exponent=left_exponent, grading=grading)


def _inner_spec(quad: QuadratureSpec) -> QuadratureSpec:
    return QuadratureSpec(panels=8, nodes_per_panel=16, s_max=quad.s_max,
                          tol=min(quad.tol, 1e-10), max_refinements=quad.max_refinements)


def _weight_exponent(rho: RhoParam):
    """Left endpoint exponent for the half-integral bulk weight x^(rho+1)."""
    a = rho.value + 1
    return (a, None) if a > -1 else (None, 0.5)


# ---------------------------------------------------------------------------
# spherical transform

def spherical_transform(rho, data, lam, quad: QuadratureSpec | None = None,
                        method=EvalMethod.AUTO, diagnostics: dict | None = None):
    """f^(lambda) = int_{G/K} f phi_lambda for K-invariant data, vectorized in lambda."""
    rho = as_rho(rho)
    quad = quad or QuadratureSpec()
    data = as_data(data)
    h1, h2, h2_scale = data.resolve(rho)
    lam_in = np.asarray(lam, complex)
    lam = np.atleast_1d(lam_in).ravel()
    counter = _Counter()
    inner = _inner_spec(quad)
    reg = _regime(rho)
    out = np.zeros(lam.shape, complex)
    err = 0.0
    if reg == "nonneg":
        f = h1
        vol = vol_km(rho)
        rc = math.sqrt(f.x_c)
        if not f.is_zero:
            r_ = rho.value

            def g(rs):
                rs = np.asarray(rs, dtype=float)
                amp = vol * rs ** (2 * r_) * (1 - rs * rs) ** (-1 - r_) * f(rs * rs)
                res = np.zeros((lam.size, rs.size), complex)
                for i in np.nonzero(amp)[0]:
                    res[:, i] = amp[i] * phi(rho, lam, math.atanh(rs[i]), method)
                    counter.n += lam.size
                return res
            qr = _x_integral(g, 0.0, rc, inner)
            out, err = qr.value, qr.error
    elif reg == "integral":
        f = h1
        m = -rho.two_rho // 2
        if not f.is_zero:
            vol = vol_km(rho)
            amp = lambda xs, order: _amp_jet(f, xs, order, -1 - rho.value, vol)
            g = _x_lambda_integrand(rho, lam, amp, m, "phi", counter, method)
            qr = _x_integral(g, 0.0, f.x_c, inner, left_exponent=-0.5)
            K = integral_regime_constant(rho)
            out, err = K * qr.value, abs(K) * qr.error
    else:
        m = (-rho.two_rho - 1) // 2
        if h1 is not None and not h1.is_zero:
            amp = lambda xs, order: _amp_jet(h1, xs, order, -1 - rho.value)
            g = _x_lambda_integrand(rho, lam, amp, 0, "phi", counter, method)
            le, grading = _weight_exponent(rho)
            if le is None:
                base = g
                g = lambda xs: base(xs) * np.asarray(xs) ** (rho.value + 1)
            qr = _x_integral(g, 0.0, h1.x_c, inner, left_exponent=le, grading=grading)
            out, err = 2 * qr.value, 2 * qr.error
        # boundary term d_x^m / m! [(1-x)^(-1-rho) h2 phi] at x = 0 (vanishes by the jet zeros of phi)
        A = _amp_jet(h2, np.zeros(1), m, -1 - rho.value, h2_scale)
        P = phi_x_jet(rho, lam[:, None], np.zeros(1), m, method)
        counter.n += lam.size * (m + 1)
        bnd = sum(A.c[j][None, :] * P.c[m - j] for j in range(m + 1))[:, 0]
        out = out + bnd
        if diagnostics is not None:
            diagnostics["boundary_max"] = float(np.max(np.abs(bnd))) if bnd.size else 0.0
    if diagnostics is not None:
        diagnostics["kernel_evaluations"] = diagnostics.get("kernel_evaluations", 0) + counter.n
        diagnostics["x_error"] = max(diagnostics.get("x_error", 0.0), float(err))
    out = np.asarray(out).reshape(lam_in.shape)
    return out[()] if out.ndim == 0 else out


# ---------------------------------------------------------------------------
# wave packets

def pointwise_spec(quad: QuadratureSpec, t: float) -> QuadratureSpec:
    """Spectral cutoff for pointwise wave packets: S t >= 200 keeps the taper smooth."""
    S = quad.s_max if t <= 0 else max(quad.s_max, POINTWISE_ST / t)
    return QuadratureSpec(quad.panels, quad.nodes_per_panel, S, quad.tol, quad.tail_model,
                          quad.max_refinements)


def wave_packet(rho, g: Callable, t: float, quad: QuadratureSpec | None = None,
                form: str = "kinv", method=EvalMethod.AUTO) -> QuadResult:
    """J(g)(e^{t h0}) = int d lambda phi_lambda(t) g(lambda) / (c(lambda) c(-lambda)).

    ``g`` is an even spectral function called on arrays of lambda = i s.
    ``form='hc'`` integrates 2 Phi_lambda / (c c) instead (t > 0), using the
    weighted Harish-Chandra series so that lambda = 0 is regular.
    """
    rho = as_rho(rho)
    quad = pointwise_spec(quad or QuadratureSpec(), t)
    if form == "kinv":
        def f(s):
            lam = 1j * s
            return plancherel_density(rho, s) * phi(rho, lam, t, method).real * np.real(g(lam))
    elif form == "hc":
        if t <= 0:
            raise ValueError("the Harish-Chandra form needs t > 0")

        def f(s):
            lam = 1j * s
            W = hc_series_eval(rho, lam, np.full(s.shape, float(t)), weighted=True, t_min=0.0)
            return 2.0 * W.real * np.real(g(lam))
    else:
        raise ValueError(f"unknown form {form!r}")
    return integrate_spectral(f, quad)


def wave_packet_residue_form(rho, g: Callable, t: float) -> float:
    """4 pi sum_{0 <= k < -rho} g(rho+k) res_{rho+k}[Phi_lambda / (c c)]."""
    rho = as_rho(rho)
    _require_negative(rho)
    n = (-rho.two_rho + 1) // 2
    return float(4 * math.pi * sum(complex(g(rho.value + k)).real * residue_at(rho, k, t)
                                   for k in range(n)))


def pointwise_psi_integral(rho, x: float, quad: QuadratureSpec | None = None) -> QuadResult:
    """int d lambda psi_lambda^rho(x), the slowly convergent route to Psi^rho(x)."""
    return wave_packet(rho, lambda lam: np.ones(np.shape(lam)), float(_t_of_x(x)), quad)


# ---------------------------------------------------------------------------
# reports

@dataclass
class InversionReport:
    lhs: float
    rhs: float
    abs_err: float
    rel_err: float
    diagnostics: dict = field(default_factory=dict)

    @classmethod
    def build(cls, lhs, rhs, diagnostics=None, floor: float = 1e-300):
        lhs, rhs = float(np.real(lhs)), float(np.real(rhs))
        ae = abs(lhs - rhs)
        scale = max(abs(lhs), abs(rhs))
        re = 0.0 if ae == 0 else ae / max(scale, floor)
        return cls(lhs, rhs, ae, re, diagnostics or {})

    def to_dict(self) -> dict:
        return _jsonable(asdict(self))


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (complex, np.complexfloating)):
        return {"re": float(obj.real), "im": float(obj.imag)}
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, float) and not math.isfinite(obj):
        return str(obj)
    return obj


def paired_spec(quad: QuadratureSpec | None) -> QuadratureSpec:
    """Spectral rule for profile-integrated quantities: no tail acceleration."""
    quad = quad or QuadratureSpec()
    return QuadratureSpec(quad.panels, quad.nodes_per_panel, quad.s_max, quad.tol, "none",
                          quad.max_refinements)


def _spectral_of_transform(rho: RhoParam, data, quad, diag, extra: Callable | None = None):
    """int d lambda (c c)^-1 f^(lambda) [extra(lambda)], plus the transform tail size."""
    spec = paired_spec(quad)
    peak = {"max": 0.0, "edge": 0.0}

    def f(s):
        fh = spherical_transform(rho, data, 1j * s, quad, diagnostics=diag)
        peak["max"] = max(peak["max"], float(np.max(np.abs(fh))))
        peak["edge"] = float(np.max(np.abs(fh[s > 0.95 * spec.s_max]))) if np.any(s > 0.95 * spec.s_max) else 0.0
        vals = plancherel_density(rho, s) * fh.real
        if extra is not None:
            vals = (vals[:, None] * extra(1j * s)).T  # (n_points, n_s)
        return vals
    res = integrate_spectral(f, spec)
    if _regime(rho) == "halfint" and extra is None:
        tail, terr, p = algebraic_tail(lambda s: plancherel_density(rho, s)
                                       * spherical_transform(rho, data, 1j * s, quad).real, spec.s_max)
        res = QuadResult(res.value + tail, res.error + terr, res.evaluations, res.flags, res.info)
        diag.update(tail=tail, tail_error=terr, tail_exponent=p)
    diag["spectral_error"] = res.error
    diag["transform_tail_ratio"] = peak["edge"] / peak["max"] if peak["max"] else 0.0
    diag["s_max"] = spec.s_max
    return res


def convolve_with_jone_at_origin(rho, data, quad: QuadratureSpec | None = None,
                                 diagnostics: dict | None = None) -> float:
    """(f * J(1))(0) for rho < 0 using the closed-form Psi."""
    rho = as_rho(rho)
    _require_negative(rho)
    quad = quad or QuadratureSpec()
    data = as_data(data)
    h1, h2, h2_scale = data.resolve(rho)
    inner = _inner_spec(quad)
    diag = diagnostics if diagnostics is not None else {}
    if _regime(rho) == "integral":
        f = h1
        if f.is_zero:
            return 0.0
        m = -rho.two_rho // 2
        vol = vol_km(rho)

        def g(xs):
            A = _amp_jet(f, xs, m, -1 - rho.value, vol)
            P = big_psi_jet(rho, xs, m)
            return (math.factorial(m) * sum(A.c[j] * P.c[m - j] for j in range(m + 1))).real
        qr = integrate_finite(g, 0.0, f.x_c, inner, left_exponent=-0.5)
        K = integral_regime_constant(rho)
        diag["psi_x_error"] = abs(K) * qr.error
        return float(K * qr.value)
    m = (-rho.two_rho - 1) // 2
    bulk = 0.0
    if h1 is not None and not h1.is_zero:
        le, grading = _weight_exponent(rho)

        def g(xs):
            xs = np.asarray(xs, dtype=float)
            v = (1 - xs) ** (-1 - rho.value) * h1(xs) * big_psi(rho, xs)
            return v if le is not None else v * xs ** (rho.value + 1)
        qr = integrate_finite(g, 0.0, h1.x_c, inner, left_exponent=le, grading=grading)
        bulk = 2 * float(qr.value)
        diag["psi_x_error"] = 2 * qr.error
    A = _amp_jet(h2, np.zeros(1), m, -1 - rho.value, h2_scale)
    P = big_psi_jet(rho, np.zeros(1), m)
    bnd = float(sum(A.c[j] * P.c[m - j] for j in range(m + 1)).real[0])
    diag["boundary_jet"] = bnd
    diag["boundary_closed"] = psi_topder_constant(rho) * float(h2(0.0)) * h2_scale \
        * float(recip_gamma(0.5 - rho.value).real)
    diag["bulk"] = bulk
    return bulk + bnd


def invert_at_origin(rho, data, quad: QuadratureSpec | None = None) -> InversionReport:
    """Check 2^(2(1-rho)) pi f(0) = J(F f)(0) - (f * J(1))(0)."""
    rho = as_rho(rho)
    quad = quad or QuadratureSpec()
    data = as_data(data)
    diag: dict = {"regime": _regime(rho), "rho": str(rho)}
    f0 = data.value_at_origin(rho)
    lhs = inversion_constant(rho) * f0
    res = _spectral_of_transform(rho, data, quad, diag)
    jff = float(np.real(res.value))
    conv = 0.0
    if rho.two_rho < 0:
        conv = convolve_with_jone_at_origin(rho, data, quad, diag)
    diag["terms"] = {"wave_packet_of_transform": jff, "convolution_with_J1": conv}
    return InversionReport.build(lhs, jff - conv, diag)


def constant_branch_check(rho) -> InversionReport:
    """2^(2(1-rho)) pi = -[(-1)^(rho-1/2) 2^(3-rho) pi / Gamma(1/2-rho)] L(rho)."""
    rho = as_rho(rho)
    lhs = inversion_constant(rho)
    rhs = -psi_topder_constant(rho) * float(recip_gamma(0.5 - rho.value).real) * log_km_constant(rho)
    return InversionReport.build(lhs, rhs, {"rho": str(rho)})


# ---------------------------------------------------------------------------
# identities at the prop level

def _psi_x_inner(rho: RhoParam, h: RadialProfile, m: int, weight: str, quad, counter, kernel="psi"):
    """lambda -> int dx w(x) d^m [kernel_lambda h] for the requested weight."""
    inner = _inner_spec(quad)

    def F(lam):
        amp = lambda xs, order: h.jet(xs, order)
        if weight == "halfint":
            amp = lambda xs, order: _amp_jet(h, xs, order, -1 - rho.value)
        g = _x_lambda_integrand(rho, lam, amp, m, kernel, counter)
        if weight == "halfint":
            le, grading = _weight_exponent(rho)
            if le is None:
                base = g
                g = lambda xs: base(xs) * np.asarray(xs) ** (rho.value + 1)
            return 2 * integrate_finite(g, 0.0, h.x_c, inner, left_exponent=le, grading=grading).value
        return integrate_finite(g, 0.0, h.x_c, inner, left_exponent=-0.5).value
    return F


def _Psi_x_integral(rho: RhoParam, h: RadialProfile, m: int, weight: str, quad) -> float:
    inner = _inner_spec(quad)
    if weight == "halfint":
        le, grading = _weight_exponent(rho)

        def g(xs):
            xs = np.asarray(xs, dtype=float)
            v = (1 - xs) ** (-1 - rho.value) * h(xs) * big_psi(rho, xs)
            return v if le is not None else v * xs ** (rho.value + 1)
        return 2 * float(integrate_finite(g, 0.0, h.x_c, inner, left_exponent=le, grading=grading).value)

    def g(xs):
        A = h.jet(xs, m)
        P = big_psi_jet(rho, xs, m)
        return (math.factorial(m) * sum(A.c[j] * P.c[m - j] for j in range(m + 1))).real
    return float(integrate_finite(g, 0.0, h.x_c, inner, left_exponent=-0.5).value)


def algebraic_tail(v: Callable, S: float, nodes: int = 16, terms: int = 4) -> tuple[float, float, float]:
    """2 int_S^inf v(s) ds for an integrand with an algebraic tail.

    v is sampled on [S, 4S] and fitted by u^p (a_0 + a_1 u + ... ) in u = S/s,
    with the leading exponent p read off the samples and snapped to an integer
    when it is within 0.05 of one.  Returns (tail, error estimate, p); the
    error is the change when the fit is shortened by one term.
    """
    x, w = np.polynomial.legendre.leggauss(nodes)
    u = 0.25 + 0.375 * (x + 1)  # u in [1/4, 1]
    vals = np.real(np.asarray(v(S / u), dtype=complex))
    if not np.any(vals):
        return 0.0, 0.0, float("nan")
    lo, hi = np.argmin(u), np.argmax(u)
    if vals[lo] == 0 or vals[hi] == 0 or np.sign(vals[lo]) != np.sign(vals[hi]):
        p = 2.0
    else:
        p = float(np.log(vals[lo] / vals[hi]) / np.log(u[lo] / u[hi]))
        if abs(p - round(p)) < 0.05:
            p = float(round(p))
    p = max(p, 1.5)

    def fit(J):
        A = np.stack([u ** (p + j) for j in range(J)], axis=1)
        a = np.linalg.lstsq(A, vals, rcond=None)[0]
        return 2 * S * sum(a[j] / (p + j - 1) for j in range(J))
    full, short = fit(terms), fit(terms - 1)
    return float(full), float(abs(full - short)), p


def _spectral_pair(rho: RhoParam, F: Callable, quad, diag: dict | None = None) -> QuadResult:
    spec = paired_spec(quad)
    v = lambda s: np.real(F(1j * s))
    res = integrate_spectral(v, spec)
    if _regime(rho) == "halfint":
        tail, terr, p = algebraic_tail(v, spec.s_max)
        res = QuadResult(res.value + tail, res.error + terr, res.evaluations, res.flags,
                         dict(res.info, tail=tail, tail_error=terr, tail_exponent=p))
        if diag is not None:
            diag.update(tail=tail, tail_error=terr, tail_exponent=p)
    return res


def origin_identity_integral(rho, h: RadialProfile, quad: QuadratureSpec | None = None) -> InversionReport:
    """(-2)^(-rho) 8 pi^(3/2) h(0) + int dx x^(-1/2) d^m (Psi h) = int d lambda int dx x^(-1/2) d^m (psi h)."""
    rho = as_rho(rho)
    if _regime(rho) != "integral":
        raise RegimeError("constant undefined in this regime")
    quad = quad or QuadratureSpec()
    m = -rho.two_rho // 2
    counter = _Counter()
    const = (-2.0) ** m * 8 * math.pi ** 1.5 * float(h(0.0))
    psi_side = _Psi_x_integral(rho, h, m, "integral", quad)
    res = _spectral_pair(rho, _psi_x_inner(rho, h, m, "integral", quad, counter), quad)
    diag = {"rho": str(rho), "constant_term": const, "Psi_term": psi_side,
            "spectral_error": res.error, "kernel_evaluations": counter.n}
    return InversionReport.build(const + psi_side, float(np.real(res.value)), diag)


def origin_identity_nonneg(rho, h: RadialProfile, quad: QuadratureSpec | None = None) -> InversionReport:
    """2^(2(1-rho)) pi h(0) = (vol/2) int d lambda int dx x^(rho-1/2) psi h."""
    rho = as_rho(rho)
    if rho.two_rho < 0:
        raise RegimeError("constant undefined in this regime")
    quad = quad or QuadratureSpec()
    counter = _Counter()
    inner = _inner_spec(quad)
    rc = math.sqrt(h.x_c)
    r_ = rho.value

    def F(lam):
        lam = np.atleast_1d(lam)
        w = inv_cc(rho, lam)

        def g(rs):
            # x^(rho-1/2) dx = 2 r^(2 rho) dr
            amp = 2 * rs ** (2 * r_) * h(rs * rs)
            out = np.zeros((lam.size, rs.size), complex)
            for i in np.nonzero(amp)[0]:
                out[:, i] = amp[i] * phi(rho, lam, math.atanh(rs[i]))
                counter.n += lam.size
            return out * w[:, None]
        return integrate_finite(g, 0.0, rc, inner).value
    res = _spectral_pair(rho, F, quad)
    rhs = 0.5 * vol_km(rho) * float(np.real(res.value))
    diag = {"rho": str(rho), "spectral_error": res.error, "kernel_evaluations": counter.n}
    return InversionReport.build(inversion_constant(rho) * float(h(0.0)), rhs, diag)


def paired_identity(rho, h: RadialProfile, quad: QuadratureSpec | None = None) -> InversionReport:
    """Order exchange int d lambda <psi_lambda, h> = <Psi, h>.

    Half-integral rho: pairing 2 int dx x^(rho+1) (1-x)^(-1-rho) (.) h.
    Integral rho: pairing int dx x^(-1/2) (.) h.
    """
    rho = as_rho(rho)
    _require_negative(rho)
    quad = quad or QuadratureSpec()
    weight = "halfint" if _regime(rho) == "halfint" else "integral"
    counter = _Counter()
    res = _spectral_pair(rho, _psi_x_inner(rho, h, 0, weight, quad, counter), quad)
    Psi_side = _Psi_x_integral(rho, h, 0, weight, quad)
    diag = {"rho": str(rho), "spectral_error": res.error, "kernel_evaluations": counter.n}
    return InversionReport.build(float(np.real(res.value)), Psi_side, diag)


def psi_pointwise_check(rho, x: float, quad: QuadratureSpec | None = None) -> InversionReport:
    """int d lambda psi_lambda(x) against the closed-form Psi(x)."""
    res = pointwise_psi_integral(rho, x, quad)
    diag = {"x": x, "tail_error": res.error, "flags": list(res.flags), "s_max": res.info.get("s_max")}
    return InversionReport.build(float(np.real(res.value)), float(big_psi(rho, x)), diag)


# ---------------------------------------------------------------------------
# reconstruction

def reconstruct(rho, f: RadialProfile, x0_grid, quad: QuadratureSpec | None = None,
                diagnostics: dict | None = None) -> np.ndarray:
    """Recover f(x0) for rho >= 0 from its spherical transform.

    f(x0) = int d lambda (c c)^-1 f^(lambda) phi_lambda(x0) / (phi_lambda(0) 2^(2(1-rho)) pi),
    with phi_lambda(0) = vol(K/M).
    """
    rho = as_rho(rho)
    if rho.two_rho < 0:
        raise RegimeError("reconstruction is only provided for rho >= 0")
    x0 = np.atleast_1d(np.asarray(x0_grid, dtype=float))
    t0 = _t_of_x(x0)
    diag = diagnostics if diagnostics is not None else {}

    def extra(lam):
        lam = np.atleast_1d(lam)
        return np.real(phi(rho, lam[:, None], t0[None, :]))
    res = _spectral_of_transform(rho, KInvariantData(f=f), quad, diag, extra=extra)
    return np.real(res.value) / (inversion_constant(rho) * vol_km(rho))
