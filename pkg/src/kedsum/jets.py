"""Derivative bundles: a value and its first four radial derivatives.

The sixth-order gradient correction needs density derivatives up to
fourth order, and hand-differentiating every density profile four times
is a reliable way to ship sign errors.  Instead, profiles are assembled
from a few primitive factors whose derivatives are known in closed form
(powers, Gaussians, decaying exponentials, the error function) and
combined with the Leibniz product rule.

A jet is an ndarray whose leading axis indexes the derivative order:
``jet[k] = d^k f / dr^k`` for ``k = 0..4``.  Trailing axes broadcast, so
a jet can hold one point (shape ``(5,)``) or a batch (shape ``(5, n)``).
"""

from __future__ import annotations

import numpy as np
from scipy.special import erf

ORDERS = 5  # value plus four derivatives

# Pascal's triangle rows used by the Leibniz rule.
_BINOM = (
    (1.0,),
    (1.0, 1.0),
    (1.0, 2.0, 1.0),
    (1.0, 3.0, 3.0, 1.0),
    (1.0, 4.0, 6.0, 4.0, 1.0),
)


def multiply(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Leibniz product: (fg)^(k) = sum_j C(k,j) f^(j) g^(k-j)."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    shape = np.broadcast_shapes(a.shape, b.shape)
    out = np.zeros(shape)
    for k in range(ORDERS):
        acc = 0.0
        for j in range(k + 1):
            acc = acc + _BINOM[k][j] * a[j] * b[k - j]
        out[k] = acc
    return out


def constant(c: float, r=None) -> np.ndarray:
    shape = (ORDERS,) if r is None else (ORDERS,) + np.shape(r)
    out = np.zeros(shape)
    out[0] = c
    return out


def variable(r) -> np.ndarray:
    out = np.zeros((ORDERS,) + np.shape(r))
    out[0] = r
    out[1] = 1.0
    return out


def power(r, m: int) -> np.ndarray:
    """r**m with integer m, negative allowed (r must stay positive)."""
    r = np.asarray(r, dtype=float)
    out = np.empty((ORDERS,) + r.shape)
    coeff = 1.0
    for k in range(ORDERS):
        if m - k + 1 < 1 and m >= 0 and k > m:
            # Derivative order exceeded a nonnegative integer power.
            out[k] = 0.0
            continue
        out[k] = coeff * r ** (m - k)
        coeff *= m - k
    return out


def polynomial(r, coeffs) -> np.ndarray:
    """sum_m coeffs[m] * r**m, derivatives taken term by term."""
    r = np.asarray(r, dtype=float)
    out = np.zeros((ORDERS,) + r.shape)
    for k in range(ORDERS):
        acc = np.zeros_like(r)
        for m in range(len(coeffs) - 1, -1, -1):
            if m - k < 0:
                continue
            fall = 1.0
            for i in range(k):
                fall *= m - i
            acc = acc + coeffs[m] * fall * r ** (m - k)
        out[k] = acc
    return out


def hermite_values(x, n_max: int) -> np.ndarray:
    """Physicists' Hermite polynomials H_0..H_n_max at x (recursion)."""
    x = np.asarray(x, dtype=float)
    out = np.empty((n_max + 1,) + x.shape)
    out[0] = 1.0
    if n_max >= 1:
        out[1] = 2.0 * x
    for n in range(1, n_max):
        out[n + 1] = 2.0 * x * out[n] - 2.0 * n * out[n - 1]
    return out


def gaussian(r, a: float, center: float = 0.0) -> np.ndarray:
    """exp(-a (r - center)^2); d^k = (-sqrt(a))^k H_k(x) exp(-x^2)."""
    r = np.asarray(r, dtype=float)
    root = np.sqrt(a)
    x = root * (r - center)
    base = np.exp(-x * x)
    herm = hermite_values(x, ORDERS - 1)
    out = np.empty((ORDERS,) + r.shape)
    sign = 1.0
    for k in range(ORDERS):
        out[k] = sign * herm[k] * base
        sign *= -root
    return out


def exponential(r, zeta: float) -> np.ndarray:
    """exp(-zeta r)."""
    r = np.asarray(r, dtype=float)
    base = np.exp(-zeta * r)
    out = np.empty((ORDERS,) + r.shape)
    fac = 1.0
    for k in range(ORDERS):
        out[k] = fac * base
        fac *= -zeta
    return out


def erf_scaled(r, beta: float) -> np.ndarray:
    """erf(beta r); derivatives are Gaussian-Hermite terms."""
    r = np.asarray(r, dtype=float)
    x = beta * r
    base = np.exp(-x * x)
    herm = hermite_values(x, ORDERS - 2)
    out = np.empty((ORDERS,) + r.shape)
    out[0] = erf(x)
    pref = 2.0 * beta / np.sqrt(np.pi)
    for k in range(1, ORDERS):
        out[k] = pref * (-beta) ** (k - 1) * herm[k - 1] * base
    return out
