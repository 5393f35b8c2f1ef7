"""Truncated Taylor arithmetic.

A ``Jet`` of order N holds Taylor coefficients ``c[k] = f^(k)(x0)/k!`` for
k = 0..N.  The coefficient array has shape ``(N+1, *batch)`` so that one jet
object can carry many expansion points at once (e.g. all quadrature nodes).
Coefficients may be complex floats or Python objects such as ``Fraction`` for
exact arithmetic.

Elementary operations use the standard power-series recurrences (J.C.P.
Miller for powers), so everything up to order N is exact in exact
arithmetic.
"""
from __future__ import annotations

import math
from fractions import Fraction

import numpy as np


class JetError(ArithmeticError):
    pass


def _coerce(c):
    c = np.asarray(c)
    if c.dtype == object:
        return c
    return c.astype(complex)


class Jet:
    """Truncated power series about a base point.

    Parameters
    ----------
    coeffs : array_like, shape (N+1, ...)
        Taylor coefficients, lowest order first.
    base : optional
        Expansion point, kept for bookkeeping only.
    """

    __array_priority__ = 1000

    def __init__(self, coeffs, base=None):
        c = _coerce(coeffs)
        if c.ndim == 0:
            c = c[None]
        self.c = c
        self.base = base

    @property
    def order(self) -> int:
        return self.c.shape[0] - 1

    @property
    def batch_shape(self):
        return self.c.shape[1:]

    # construction -------------------------------------------------------
    @classmethod
    def constant(cls, value, order: int, base=None):
        value = np.asarray(value)
        dtype = object if value.dtype == object else complex
        c = np.zeros((order + 1,) + value.shape, dtype=dtype)
        c[0] = value
        if dtype == object:
            c[1:] = 0
        return cls(c, base)

    @classmethod
    def variable(cls, x0, order: int):
        """Jet of the identity function at ``x0``."""
        j = cls.constant(x0, order, base=x0)
        if order >= 1:
            j.c[1] = 1
        return j

    @classmethod
    def from_derivatives(cls, derivs, base=None):
        derivs = _coerce(derivs)
        fact = np.array([math.factorial(k) for k in range(derivs.shape[0])], dtype=object)
        fact = fact.reshape((-1,) + (1,) * (derivs.ndim - 1))
        if derivs.dtype == object:
            return cls(derivs / fact, base)
        return cls(derivs / fact.astype(float), base)

    def _like(self, c):
        return Jet(c, self.base)

    def _other(self, other) -> "Jet":
        if isinstance(other, Jet):
            if other.order != self.order:
                raise JetError("jet order mismatch")
            return other
        other = np.asarray(other)
        if other.dtype != object:
            other = other.astype(complex)
        return Jet.constant(np.broadcast_to(other, np.broadcast_shapes(other.shape, self.batch_shape)).copy(),
                            self.order)

    # arithmetic ---------------------------------------------------------
    def __add__(self, other):
        o = self._other(other)
        return self._like(self.c + o.c)

    __radd__ = __add__

    def __neg__(self):
        return self._like(-self.c)

    def __sub__(self, other):
        o = self._other(other)
        return self._like(self.c - o.c)

    def __rsub__(self, other):
        return self._other(other) - self

    def __mul__(self, other):
        if not isinstance(other, Jet):
            return self._like(self.c * np.asarray(other))
        o = self._other(other)
        a, b = self.c, o.c
        n = self.order
        out = [sum(a[j] * b[k - j] for j in range(k + 1)) for k in range(n + 1)]
        return self._like(np.stack(np.broadcast_arrays(*out)))

    __rmul__ = __mul__

    def reciprocal(self) -> "Jet":
        a = self.c
        if np.any(a[0] == 0):
            raise JetError("jet not invertible")
        n = self.order
        b = [None] * (n + 1)
        b[0] = 1 / a[0]
        for k in range(1, n + 1):
            b[k] = -sum(a[j] * b[k - j] for j in range(1, k + 1)) * b[0]
        return self._like(np.stack(np.broadcast_arrays(*b)))

    def __truediv__(self, other):
        if not isinstance(other, Jet):
            return self._like(self.c / np.asarray(other))
        return self * self._other(other).reciprocal()

    def __rtruediv__(self, other):
        return self._other(other) * self.reciprocal()

    def __pow__(self, alpha):
        return jet_pow(self, alpha)

    # calculus -----------------------------------------------------------
    def derivative_at(self, k: int):
        """k-th derivative at the base point."""
        if k > self.order:
            raise JetError("jet order exceeded")
        return self.c[k] * math.factorial(k)

    def deriv(self) -> "Jet":
        """Jet of f' (one order lower)."""
        if self.order == 0:
            raise JetError("jet order exceeded")
        k = np.arange(1, self.order + 1).reshape((-1,) + (1,) * len(self.batch_shape))
        if self.c.dtype == object:
            k = k.astype(object)
        return self._like(self.c[1:] * k)

    def integrate(self, constant=0) -> "Jet":
        """Antiderivative with value ``constant`` at the base (one order higher)."""
        k = np.arange(1, self.order + 2).reshape((-1,) + (1,) * len(self.batch_shape))
        if self.c.dtype == object:
            k = np.vectorize(Fraction, otypes=[object])(k)
        c = np.concatenate([np.broadcast_to(np.asarray(constant, dtype=self.c.dtype),
                                            (1,) + self.batch_shape), self.c / k])
        return self._like(c)

    def truncate(self, order: int) -> "Jet":
        if order > self.order:
            raise JetError("jet order exceeded")
        return self._like(self.c[: order + 1])

    def __getitem__(self, idx):
        """Select part of the batch (the coefficient axis is kept)."""
        if not isinstance(idx, tuple):
            idx = (idx,)
        return Jet(self.c[(slice(None),) + idx], self.base)

    def __repr__(self):
        return f"Jet(order={self.order}, batch={self.batch_shape})"


def _inv(k: int, c):
    return Fraction(1, k) if c.dtype == object else 1.0 / k


def jet_pow(a: Jet, alpha) -> Jet:
    """a**alpha.  Integer alpha allows a zero constant term; otherwise c0 != 0."""
    n = a.order
    if isinstance(alpha, (int, np.integer)) or (isinstance(alpha, Fraction) and alpha.denominator == 1):
        m = int(alpha)
        if m < 0:
            return jet_pow(a.reciprocal(), -m)
        out = Jet.constant(np.ones(a.batch_shape, dtype=a.c.dtype) if a.c.dtype != object
                           else np.full(a.batch_shape, Fraction(1), dtype=object), n, a.base)
        base = a
        while m:
            if m & 1:
                out = out * base
            m >>= 1
            if m:
                base = base * base
        return out
    c = a.c
    if np.any(c[0] == 0):
        raise JetError("jet domain error")
    if c.dtype == object:
        if not np.all(c[0] == 1):
            raise JetError("exact non-integer power needs unit constant term")
        b0 = np.full(a.batch_shape, Fraction(1), dtype=object)
    else:
        alpha = complex(alpha) if isinstance(alpha, complex) else float(alpha)
        b0 = np.exp(alpha * np.log(c[0]))
    b = [None] * (n + 1)
    b[0] = b0
    for k in range(1, n + 1):
        s = sum((alpha * j - (k - j)) * c[j] * b[k - j] for j in range(1, k + 1))
        b[k] = s * _inv(k, c) / c[0]
    return a._like(np.stack(np.broadcast_arrays(*b)))


def jet_exp(a: Jet) -> Jet:
    n = a.order
    c = a.c
    b = [None] * (n + 1)
    b[0] = np.exp(c[0]) if c.dtype != object else _exact_exp0(c[0])
    for k in range(1, n + 1):
        b[k] = sum(j * c[j] * b[k - j] for j in range(1, k + 1)) * _inv(k, c)
    return a._like(np.stack(np.broadcast_arrays(*b)))


def _exact_exp0(c0):
    if not np.all(c0 == 0):
        raise JetError("exact exp needs zero constant term")
    return np.full(np.shape(c0), Fraction(1), dtype=object)


def jet_log(a: Jet) -> Jet:
    n = a.order
    c = a.c
    if np.any(c[0] == 0):
        raise JetError("jet domain error")
    b = [None] * (n + 1)
    if c.dtype == object:
        if not np.all(c[0] == 1):
            raise JetError("exact log needs unit constant term")
        b[0] = np.zeros(a.batch_shape, dtype=object) * Fraction(0)
    else:
        b[0] = np.log(c[0])
    for k in range(1, n + 1):
        s = sum((j * b[j] * c[k - j] for j in range(1, k)), 0 * c[0])
        b[k] = (c[k] - s * _inv(k, c)) / c[0]
    return a._like(np.stack(np.broadcast_arrays(*b)))


def jet_compose(outer: Jet, inner: Jet) -> Jet:
    """outer(inner) where ``outer`` is expanded about inner's constant term.

    Only the non-constant part of ``inner`` enters (Horner in powers of it).
    """
    if outer.order != inner.order:
        raise JetError("jet order mismatch")
    d = inner - Jet(np.concatenate([inner.c[:1], np.zeros_like(inner.c[1:])]))
    n = outer.order
    out = Jet.constant(outer.c[n], n, inner.base)
    for k in range(n - 1, -1, -1):
        out = out * d + Jet.constant(outer.c[k], n)
    return out


def jet_sinh_cosh(t0, order: int):
    """Jets of sinh and cosh at ``t0``."""
    t0 = np.asarray(t0, dtype=complex)
    sh, ch = np.sinh(t0), np.cosh(t0)
    cs = np.empty((order + 1,) + t0.shape, dtype=complex)
    cc = np.empty_like(cs)
    for k in range(order + 1):
        f = 1.0 / math.factorial(k)
        cs[k] = (sh if k % 2 == 0 else ch) * f
        cc[k] = (ch if k % 2 == 0 else sh) * f
    return Jet(cs, t0), Jet(cc, t0)


def polynomial_jet(poly_coeffs, order: int):
    """Jet (about 0) of a polynomial given lowest degree first."""
    pc = list(poly_coeffs)[: order + 1]
    pc += [0] * (order + 1 - len(pc))
    return Jet(np.array(pc, dtype=object if any(isinstance(v, Fraction) for v in pc) else complex), 0)
