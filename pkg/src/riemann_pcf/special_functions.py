"""Logarithmic integrals, Gamma(0, x) and the real-axis integrals of the explicit formula."""
from __future__ import annotations

import cmath
import math
from typing import NamedTuple

import numpy as np

from .errors import ConvergenceError, DomainError
from .quadrature import (
    DEFAULT_CONFIG,
    QuadratureConfig,
    adaptive_quad,
    principal_value,
)

EULER_GAMMA = 0.57721566490153286060651209008240243


def _require_finite(*values) -> None:
    for v in values:
        if isinstance(v, complex):
            ok = math.isfinite(v.real) and math.isfinite(v.imag)
        else:
            ok = math.isfinite(v)
        if not ok:
            raise DomainError(f"non-finite argument {v!r}")


def _inv_log(t):
    with np.errstate(divide="ignore"):
        return 1.0 / np.log(t)


def _inv_log_folded(h):
    # 1/log(1+h) + 1/log(1-h) without forming 1 +- h
    with np.errstate(divide="ignore", invalid="ignore"):
        up = np.log1p(h)
        down = np.log1p(-h)
        out = np.log1p(-h * h) / (up * down)
    return np.where(h >= 1.0, 1.0 / np.log1p(h), out)


def li_real(x: float, cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """Logarithmic integral Li(x) = P.V. int_0^x dt / log t for x > 1."""
    _require_finite(x)
    if x <= 1.0:
        raise DomainError(f"li_real needs x > 1, got {x}")
    return float(principal_value(_inv_log, 0.0, x, 1.0, cfg, folded=_inv_log_folded).value)


def li_complex_power(x: float, rho: complex, cfg: QuadratureConfig = DEFAULT_CONFIG) -> complex:
    """Li(x**rho) along the horizontal contour through u + iv = rho * log x.

    The exponential integral is taken from -M + iv to u + iv, with M large
    enough that the dropped piece (bounded by e^-M / |v|) is below abs_tol,
    and the half residue +-pi i of the indented pole is added by the sign of v.
    """
    rho = complex(rho)
    _require_finite(x, rho)
    if x <= 1.0:
        raise DomainError(f"li_complex_power needs x > 1, got {x}")
    if rho.imag == 0.0:
        raise DomainError("rho on the real axis: the contour would cross the pole")
    w = rho * math.log(x)
    u, v = w.real, w.imag
    m = math.log(1.0 / (cfg.abs_tol * abs(v))) + 1.0
    lower = min(-m, u - 1.0)

    def integrand(sigma):
        return np.exp(sigma) / (sigma + 1j * v)

    # breakpoints keep the decaying left part from swamping the error budget
    points = [p for p in (u - 1.0, u - 5.0, u - 15.0) if lower < p < u]
    res = adaptive_quad(integrand, lower, u, cfg, points)
    return complex(cmath.exp(1j * v) * res.value + math.copysign(math.pi, v) * 1j)


def incomplete_gamma_zero(x: float) -> float:
    """Gamma(0, x) = E1(x) = int_x^inf e^-t / t dt for real x > 0."""
    _require_finite(x)
    if x <= 0.0:
        raise DomainError(f"incomplete_gamma_zero needs x > 0, got {x}")
    eps = 1e-16
    if x <= 1.0:
        total = -math.log(x) - EULER_GAMMA
        fact = 1.0
        for k in range(1, 200):
            fact *= -x / k
            term = -fact / k
            total += term
            if abs(term) < abs(total) * eps:
                return total
        raise ConvergenceError(f"E1 series did not converge at x = {x}")
    # modified Lentz evaluation of the continued fraction
    tiny = 1e-300
    b = x + 1.0
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, 10_000):
        an = -float(i * i)
        b += 2.0
        d = 1.0 / (an * d + b)
        c = b + an / c
        delta = c * d
        h *= delta
        if abs(delta - 1.0) < eps:
            return h * math.exp(-x)
    raise ConvergenceError(f"E1 continued fraction did not converge at x = {x}")


class TailSum(NamedTuple):
    value: float
    terms: int
    bound: float


def trivial_zero_tail_detail(x: float, cfg: QuadratureConfig = DEFAULT_CONFIG) -> TailSum:
    """Partial sum of Gamma(0, 2n log x), n >= 2, with a certified remainder bound.

    Gamma(0, y + 2 log x) <= x**-2 Gamma(0, y), so the remainder after the last
    kept term g is at most g x**-2 / (1 - x**-2).
    """
    _require_finite(x)
    if x <= 1.0:
        raise DomainError(f"trivial_zero_tail needs x > 1, got {x}")
    lx = math.log(x)
    ratio = 1.0 / (x * x)
    damp = -math.expm1(-2.0 * lx)
    threshold = cfg.abs_tol * damp
    total = 0.0
    n = 1
    term = math.inf
    while True:
        n += 1
        term = incomplete_gamma_zero(2.0 * n * lx)
        total += term
        if term < threshold or n - 1 >= cfg.tail_terms:
            break
    return TailSum(total, n - 1, term * ratio / damp)


def trivial_zero_tail(x: float, cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """Sum over n >= 2 of Gamma(0, 2n log x)."""
    return trivial_zero_tail_detail(x, cfg).value


def pv_integral(x: float, cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """P.V. int_{-2}^{1} x**s / s ds (real s), defined for x >= 1."""
    _require_finite(x)
    if x < 1.0:
        raise DomainError(f"pv_integral needs x >= 1, got {x}")
    lx = math.log(x)

    def integrand(s):
        return np.exp(s * lx) / s

    return float(principal_value(integrand, -2.0, 1.0, 0.0, cfg).value)


def _tail_integrand(u):
    with np.errstate(over="ignore"):
        return 1.0 / (u * np.expm1(2.0 * u))


def riemann_tail_integral(x: float, cfg: QuadratureConfig = DEFAULT_CONFIG,
                          method: str = "direct") -> float:
    """int_x^inf dt / (t (t^2 - 1) log t).

    ``method="direct"`` integrates in u = log t up to an exponential cutoff;
    ``method="series"`` sums the expansion over t**(-2n-1) / log t with each
    term integrated separately.
    """
    _require_finite(x)
    if x <= 1.0:
        raise DomainError(f"riemann_tail_integral needs x > 1, got {x}")
    lx = math.log(x)
    if method == "direct":
        # remainder past U is below e^-2U / (2 U (1 - e^-2U))
        damp = -math.expm1(-2.0 * lx)
        upper = lx
        while math.exp(-2.0 * upper) / (2.0 * upper * damp) > cfg.abs_tol * 1e-2:
            upper += 1.0
        points = []
        p = lx * 2.0
        while p < min(upper, 1.0):
            points.append(p)
            p *= 2.0
        return float(adaptive_quad(_tail_integrand, lx, upper, cfg, points).value)
    if method == "series":
        damp = -math.expm1(-2.0 * lx)
        total = 0.0
        for n in range(1, cfg.tail_terms + 1):
            term = float(adaptive_quad(lambda u, k=n: np.exp(-2.0 * k * u) / u,
                                       lx, math.inf, cfg).value)
            total += term
            if term < cfg.abs_tol * damp:
                return total
        return total
    raise DomainError(f"unknown method {method!r}")


def log_integral_head(x: float, cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """int_0^{1/x^2} du / log u, integrated directly in u."""
    _require_finite(x)
    if x <= 1.0:
        raise DomainError(f"log_integral_head needs x > 1, got {x}")
    top = 1.0 / (x * x)
    points = [top * 10.0 ** (-k) for k in range(1, 16)]
    return float(adaptive_quad(_inv_log, 0.0, top, cfg, points).value)


def term_integral_identity_check(x: float, n: int,
                                 cfg: QuadratureConfig = DEFAULT_CONFIG) -> tuple[float, float]:
    """Both sides of int_x^inf t^(-2n-1)/log t dt = int_{2n log x}^inf e^-t/t dt.

    Each side is an independent semi-infinite quadrature in its own variable.
    """
    _require_finite(x)
    if x <= 1.0:
        raise DomainError(f"need x > 1, got {x}")
    if int(n) != n or n < 1:
        raise DomainError(f"n must be a positive integer, got {n}")
    n = int(n)
    lhs = adaptive_quad(lambda t: t ** (-2.0 * n - 1.0) / np.log(t), x, math.inf, cfg)
    lower = 2.0 * n * math.log(x)
    rhs = adaptive_quad(lambda t: np.exp(-t) / t, lower, math.inf, cfg)
    return float(lhs.value), float(rhs.value)
