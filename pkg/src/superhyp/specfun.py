"""Special functions: log-gamma, reciprocal gamma, regularized 2F1, Legendre.

Everything is vectorized over numpy arrays and works with complex arguments.

``log_gamma`` uses a Lanczos approximation (g = 7, nine coefficients) for
Re z >= 1/2 and the reflection formula otherwise.  The reflection branch is
written so that it continues the principal branch from the positive real
axis into the upper half plane; the lower half plane follows by conjugation.

``legendre_p`` evaluates the Laplace integral

    P_nu(x) = (1/pi) int_0^pi (x + sqrt(x^2-1) cos th)^nu d th,  x >= 1,

with tanh-sinh quadrature (the integrand develops a sharp feature at th = pi
for large x).  ``legendre_p_hypergeometric`` is an independent series route
used for cross-checks.
"""
from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from .quadrature import tanh_sinh


class GammaPoleError(ValueError):
    def __init__(self, z=None):
        super().__init__("gamma pole" + ("" if z is None else f" at {z!r}"))


class SeriesBudgetError(RuntimeError):
    def __init__(self, msg="series budget exceeded"):
        super().__init__(msg)


_LANCZOS_G = 7.0
_LANCZOS = np.array([
    0.99999999999980993, 676.5203681218851, -1259.1392167224028,
    771.32342877765313, -176.61502916214059, 12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7,
])
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)


def is_gamma_pole(z) -> np.ndarray:
    z = np.asarray(z, dtype=complex)
    return (z.imag == 0) & (z.real <= 0) & (z.real == np.round(z.real))


def _lanczos_log_gamma(z):
    # valid for Re z >= 1/2
    zm = z - 1.0
    acc = np.full_like(zm, _LANCZOS[0])
    for i in range(1, len(_LANCZOS)):
        acc = acc + _LANCZOS[i] / (zm + i)
    t = zm + _LANCZOS_G + 0.5
    return _HALF_LOG_2PI + (zm + 0.5) * np.log(t) - t + np.log(acc)


def log_sin_pi(z):
    """Branch of log(sin(pi z)) continuous in the closed upper half plane.

    Real-valued on (0, 1).  Callers use conjugation for Im z < 0.
    """
    z = np.asarray(z, dtype=complex)
    # exp(2 pi i z) only sees the fractional part; reducing first keeps
    # relative accuracy next to the zeros of sin(pi z)
    n = np.round(z.real)
    f = z - n
    return (-1j * np.pi * z + np.log(-np.expm1(2j * np.pi * f))
            + 0.5j * np.pi - math.log(2.0))


def _log_gamma_upper(z):
    # Im z >= 0, no poles
    out = np.empty_like(z)
    right = z.real >= 0.5
    if np.any(right):
        out[right] = _lanczos_log_gamma(z[right])
    left = ~right
    if np.any(left):
        zl = z[left]
        out[left] = (math.log(math.pi) - log_sin_pi(zl)
                     - _lanczos_log_gamma(1.0 - zl))
    return out


def log_gamma(z):
    """Principal branch of log Gamma(z).

    On the negative real axis the value is the limit from above, so
    ``exp(log_gamma(z))`` carries the correct sign.  Raises
    ``GammaPoleError`` at non-positive integers.
    """
    scalar = np.ndim(z) == 0
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    if np.any(is_gamma_pole(z)):
        raise GammaPoleError(z[is_gamma_pole(z)][0])
    out = np.empty_like(z)
    up = z.imag >= 0
    if np.any(up):
        out[up] = _log_gamma_upper(z[up])
    if np.any(~up):
        out[~up] = np.conj(_log_gamma_upper(np.conj(z[~up])))
    return out[0] if scalar else out


def recip_gamma(z):
    """1/Gamma(z), exactly zero at the poles of Gamma."""
    scalar = np.ndim(z) == 0
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    pole = is_gamma_pole(z)
    out = np.zeros_like(z)
    if np.any(~pole):
        out[~pole] = np.exp(-log_gamma(z[~pole]))
    return out[0] if scalar else out


def gamma(z):
    """Gamma(z); complex infinity at poles."""
    scalar = np.ndim(z) == 0
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    pole = is_gamma_pole(z)
    out = np.full(z.shape, complex(np.inf, 0.0))
    if np.any(~pole):
        out[~pole] = np.exp(log_gamma(z[~pole]))
    return out[0] if scalar else out


def gamma_ratio_shifted(z, shift):
    """Gamma(z) / Gamma(z + shift) for integer or half-integer ``shift``.

    When both arguments sit on poles (integer shift) the value is the limit
    along z + eps, i.e. (-1)^(m-n) n!/m! for Gamma(-m)/Gamma(-n).  A pole of
    the numerator alone gives complex infinity.
    """
    scalar = np.ndim(z) == 0
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    zs = z + shift
    pa, pb = is_gamma_pole(z), is_gamma_pole(zs)
    out = np.empty_like(z)
    reg = ~pa & ~pb
    if np.any(reg):
        out[reg] = np.exp(log_gamma(z[reg]) - log_gamma(zs[reg]))
    rb = ~pa & pb
    out[rb] = 0.0
    out[pa & ~pb] = complex(np.inf, 0.0)
    both = np.nonzero(pa & pb)[0]
    for i in both:
        m, n = int(round(-z[i].real)), int(round(-zs[i].real))
        out[i] = (-1) ** (m - n) * math.factorial(n) / math.factorial(m)
    return out[0] if scalar else out


def gen_binomial(alpha, ell: int):
    """Generalized binomial coefficient alpha(alpha-1)...(alpha-ell+1)/ell!.

    Exact for ``Fraction`` or ``int`` alpha; zero for negative ``ell``.
    """
    if ell < 0:
        return 0
    if isinstance(alpha, (int, Fraction)):
        out = Fraction(1)
        for j in range(ell):
            out = out * (alpha - j) / (j + 1)
        return out
    out = 1.0 + 0j if isinstance(alpha, complex) else 1.0
    for j in range(ell):
        out = out * (alpha - j) / (j + 1)
    return out


def pochhammer(a, k: int):
    out = np.ones_like(np.asarray(a, dtype=complex))
    for j in range(k):
        out = out * (a + j)
    return out


def _nonpos_int(c) -> bool:
    c = complex(c)
    return c.imag == 0 and c.real <= 0 and c.real == round(c.real)


def gauss_2f1_regularized(a, b, c, w, tol: float = 1e-16, max_terms: int = 20000,
                          margin: float = 0.05):
    """Regularized Gauss function 2F1(a, b; c; w) / Gamma(c) by its series.

    ``a``, ``b`` and real ``w`` in [0, 1 - margin] broadcast; ``c`` is a
    scalar and may be a non-positive integer, where the first 1 - c terms
    vanish identically.  Summation stops once a geometric bound on the
    remaining terms falls under ``tol`` relative to the largest partial sum
    seen (so cancellation shows up as lost digits, not as a false stop).
    """
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    w = np.asarray(w, dtype=float)
    if np.any(w < 0) or np.any(w > 1.0 - margin):
        raise ValueError("series variable outside [0, 1 - margin]")
    a, b, w = np.broadcast_arrays(a, b, w)
    c = complex(c)
    k0 = int(round(1 - c.real)) if _nonpos_int(c) else 0
    # first nonvanishing term
    term = pochhammer(a, k0) * pochhammer(b, k0) * w ** k0 / math.factorial(k0)
    term = term * recip_gamma(c + k0)
    total = term.copy()
    scale = np.abs(total)
    done = np.zeros(a.shape, dtype=bool)
    k = k0
    ca = np.abs(a - 1.0)
    cbc = np.abs(b - c)
    while True:
        r = (a + k) * (b + k) * w / ((k + 1) * (c + k))
        term = term * r
        total = total + term
        scale = np.maximum(scale, np.abs(total))
        k += 1
        denom = k + c.real
        if denom > 0:
            bound = w * (1.0 + ca / (k + 1)) * (1.0 + cbc / denom)
            with np.errstate(over="ignore"):
                tail = np.where(bound < 1, np.abs(term) * bound / np.maximum(1 - bound, 1e-300), np.inf)
            done = tail <= tol * np.maximum(scale, 1e-300)
            done |= (term == 0) & (bound < 1)
            if np.all(done):
                break
        if k - k0 > max_terms:
            raise SeriesBudgetError()
    return total


def _laplace_base(x, sx, th):
    # x + sx cos(th) written as a sum of nonnegative terms, so no cancellation
    # near th = pi when x is large.
    return 1.0 / (x + sx) + 2.0 * sx * np.cos(0.5 * np.asarray(th)) ** 2


def _legendre_integrand(nu, x):
    sx = math.sqrt(max(x * x - 1.0, 0.0))
    nu = np.asarray(nu, dtype=complex)

    def g(th):
        return np.exp(nu[..., None] * np.log(_laplace_base(x, sx, th)))
    return g


def legendre_p(nu, x: float, tol: float = 1e-14):
    """Legendre function P_nu(x) for real x >= 1 via the Laplace integral."""
    x = float(x)
    if x < 1.0:
        raise ValueError("legendre_p needs x >= 1")
    scalar = np.ndim(nu) == 0
    nu = np.atleast_1d(np.asarray(nu, dtype=complex))
    if x == 1.0:
        out = np.ones_like(nu)
    else:
        res = tanh_sinh(_legendre_integrand(nu, x), 0.0, math.pi, tol=tol)
        out = res.value / math.pi
    return out[0] if scalar else out


def legendre_p_deriv(nu, x: float, tol: float = 1e-14, divide_nu: bool = False):
    """Derivative d/dx P_nu(x) for x >= 1, with P'_nu(1) = nu(nu+1)/2.

    Differentiates the Laplace integral under the integral sign::

        P'_nu(x) = nu/(pi sqrt(x^2-1)) int_0^pi B^(nu-1) (sqrt(x^2-1) + x cos th) d th

    With ``divide_nu`` the explicit factor nu is dropped, giving P'_nu/nu
    without a 0/0 at nu = 0.
    """
    x = float(x)
    if x < 1.0:
        raise ValueError("legendre_p_deriv needs x >= 1")
    scalar = np.ndim(nu) == 0
    nu = np.atleast_1d(np.asarray(nu, dtype=complex))
    if x == 1.0:
        out = (nu + 1) / 2 if divide_nu else nu * (nu + 1) / 2
    else:
        sx = math.sqrt(x * x - 1.0)

        def g(th):
            base = _laplace_base(x, sx, th)
            return np.exp((nu[..., None] - 1) * np.log(base)) * (sx + x * np.cos(th))
        res = tanh_sinh(g, 0.0, math.pi, tol=tol)
        out = res.value / (math.pi * sx)
        if not divide_nu:
            out = nu * out
    return out[0] if scalar else out


def legendre_p_hypergeometric(nu, x: float, cancel_limit: float = 6.0):
    """Series route to P_nu(x), x >= 1, independent of the integral.

    Uses P_nu(x) = x^nu 2F1(-nu/2, (1-nu)/2; 1; 1 - 1/x^2) when that series
    is free of heavy cancellation, and otherwise the expansion in 1/x^2::

        P_nu(x) = G(nu) (2x)^nu 2F1(-nu/2, (1-nu)/2; 1/2-nu; 1/x^2) + (nu -> -nu-1)

    with G(nu) = Gamma(nu+1/2) / (sqrt(pi) Gamma(nu+1)).
    """
    x = float(x)
    scalar = np.ndim(nu) == 0
    nu = np.atleast_1d(np.asarray(nu, dtype=complex))
    out = np.empty_like(nu)
    w = 1.0 - 1.0 / (x * x)
    near = np.abs(nu) * math.sqrt(w) <= cancel_limit
    for i in range(nu.size):
        v = nu[i]
        if near[i]:
            s = gauss_2f1_regularized(-v / 2, (1 - v) / 2, 1.0, w, margin=1e-9,
                                      max_terms=2_000_000)
            out[i] = x ** v * s
        else:
            z = 1.0 / (x * x)
            acc = 0.0
            for u in (v, -v - 1):
                g = np.exp(log_gamma(u + 0.5) - log_gamma(u + 1)) / math.sqrt(math.pi)
                f = gauss_2f1_regularized(-u / 2, (1 - u) / 2, 0.5 - u, z, margin=1e-9)
                acc = acc + g * (2 * x) ** u * f * gamma(0.5 - u)
            out[i] = acc
    return out[0] if scalar else out
