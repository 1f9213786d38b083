"""Adaptive Gauss-Kronrod quadrature, Richardson extrapolation and principal values.

Every numeric integral in the package goes through :func:`adaptive_quad`, which
returns a value together with an error estimate, so callers can both certify
results and re-run with tightened tolerances.
"""
from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, replace
from typing import Callable, NamedTuple, Sequence

import numpy as np

from .errors import ConvergenceError, DomainError

# Kronrod 15-point nodes/weights with the embedded 7-point Gauss rule (QUADPACK qk15).
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
_KWEIGHTS = np.concatenate([_WGK[:-1], _WGK[::-1]])
_GWEIGHTS = np.zeros(15)
# Gauss nodes are the odd-indexed Kronrod nodes (xgk[1], xgk[3], xgk[5], xgk[7]).
for _i, _w in zip((1, 3, 5), _WG[:3]):
    _GWEIGHTS[_i] = _w
    _GWEIGHTS[14 - _i] = _w
_GWEIGHTS[7] = _WG[3]


@dataclass(frozen=True)
class QuadratureConfig:
    """Tolerances and truncation limits used by every numeric evaluation."""

    abs_tol: float = 1e-10
    rel_tol: float = 1e-12
    max_subdivisions: int = 2000
    pv_epsilon_floor: float = 1e-6
    tail_terms: int = 1_000_000

    def __post_init__(self):
        if not (0.0 < self.abs_tol < 1.0):
            raise DomainError(f"abs_tol must lie in (0, 1), got {self.abs_tol}")
        if not (0.0 < self.rel_tol < 1.0):
            raise DomainError(f"rel_tol must lie in (0, 1), got {self.rel_tol}")
        if self.max_subdivisions < 8:
            raise DomainError("max_subdivisions must be at least 8")
        if not self.pv_epsilon_floor > 0.0:
            raise DomainError("pv_epsilon_floor must be positive")
        if self.tail_terms < 1:
            raise DomainError("tail_terms must be a positive integer")

    def tightened(self, factor: float = 10.0) -> "QuadratureConfig":
        return replace(
            self,
            abs_tol=self.abs_tol / factor,
            rel_tol=max(self.rel_tol / factor, 1e-15),
            max_subdivisions=int(self.max_subdivisions * 2),
        )


DEFAULT_CONFIG = QuadratureConfig()


class QuadResult(NamedTuple):
    value: complex | float
    error: float


def _gk15(f, a: float, b: float):
    center = 0.5 * (a + b)
    half = 0.5 * (b - a)
    fx = f(center + half * _NODES)
    kron = half * np.dot(_KWEIGHTS, fx)
    gauss = half * np.dot(_GWEIGHTS, fx)
    return kron, float(abs(kron - gauss))


def _semi_infinite(f, a: float):
    def g(y):
        return f(a + (1.0 - y) / y) / (y * y)
    return g


def adaptive_quad(
    f: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    cfg: QuadratureConfig = DEFAULT_CONFIG,
    points: Sequence[float] = (),
) -> QuadResult:
    """Globally adaptive GK15 integration of a vectorised integrand over [a, b].

    ``b`` may be ``math.inf``; the half line is then mapped onto (0, 1].
    ``points`` are interior break points where the integrand is known to be rough.
    """
    if b == math.inf:
        if points:
            head = adaptive_quad(f, a, max(points), cfg, [p for p in points if p < max(points)])
            tail = adaptive_quad(f, max(points), math.inf, cfg)
            return QuadResult(head.value + tail.value, head.error + tail.error)
        return adaptive_quad(_semi_infinite(f, a), 0.0, 1.0, cfg)
    if not (math.isfinite(a) and math.isfinite(b)):
        raise DomainError("integration limits must be finite or b = inf")
    if a == b:
        return QuadResult(0.0, 0.0)
    sign = 1.0
    if b < a:
        a, b, sign = b, a, -1.0

    edges = [a] + sorted(p for p in points if a < p < b) + [b]
    heap = []
    total = 0.0
    total_err = 0.0
    for lo, hi in zip(edges[:-1], edges[1:]):
        val, err = _gk15(f, lo, hi)
        total += val
        total_err += err
        heapq.heappush(heap, (-err, lo, hi, val))

    n_intervals = len(heap)
    while total_err > max(cfg.abs_tol, cfg.rel_tol * abs(total)):
        if n_intervals >= cfg.max_subdivisions:
            raise ConvergenceError(
                f"adaptive quadrature on [{a}, {b}] exhausted {cfg.max_subdivisions} "
                f"subdivisions (error estimate {total_err:.3e})"
            )
        neg_err, lo, hi, val = heapq.heappop(heap)
        mid = 0.5 * (lo + hi)
        if not (lo < mid < hi):
            raise ConvergenceError(f"interval [{lo}, {hi}] cannot be bisected further")
        v1, e1 = _gk15(f, lo, mid)
        v2, e2 = _gk15(f, mid, hi)
        total += v1 + v2 - val
        total_err += e1 + e2 + neg_err
        heapq.heappush(heap, (-e1, lo, mid, v1))
        heapq.heappush(heap, (-e2, mid, hi, v2))
        n_intervals += 1

    # recompute from the leaves to shed accumulated cancellation in the running sums
    total = sum(item[3] for item in heap)
    total_err = sum(-item[0] for item in heap)
    return QuadResult(sign * total, total_err)


def extrapolate_to_zero(hs: Sequence[float], values: Sequence[complex | float],
                        powers: Sequence[int] = (1, 2, 3)):
    """Value at h = 0 of the model ``v(h) = v0 + sum_j c_j h**powers[j]``.

    Uses the last ``len(powers) + 1`` samples (exact solve) so the caller
    controls which terms are eliminated.
    """
    m = len(powers) + 1
    if len(hs) < m:
        raise DomainError(f"need at least {m} samples to eliminate powers {tuple(powers)}")
    h = np.asarray(hs[-m:], dtype=float)
    v = np.asarray(values[-m:])
    scale = h.max()
    mat = np.column_stack([np.ones(m)] + [(h / scale) ** p for p in powers])
    coef = np.linalg.solve(mat, v.astype(complex) if np.iscomplexobj(v) else v.astype(float))
    return coef[0]


def principal_value(
    f: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    c: float,
    cfg: QuadratureConfig = DEFAULT_CONFIG,
    eps_floor: float | None = None,
    folded: Callable[[np.ndarray], np.ndarray] | None = None,
) -> QuadResult:
    """P.V. integral of ``f`` over [a, b] with a simple pole at interior point c.

    The exclusion (c - eps, c + eps) is realised by folding: on the symmetric
    neighbourhood the integrand f(c + h) + f(c - h) is bounded, the pole's odd
    part having cancelled.  The excluded width is halved down to ``eps_floor``
    and the resulting ladder is extrapolated to eps = 0 in odd powers of eps.

    ``folded(h)`` may be supplied when f(c + h) + f(c - h) has a form that
    avoids rounding c + h; it must equal that sum.
    """
    if not a < c < b:
        raise DomainError(f"singular point {c} must lie strictly inside ({a}, {b})")
    floor = cfg.pv_epsilon_floor if eps_floor is None else eps_floor
    radius = min(c - a, b - c)

    if folded is None:
        def folded(h):
            return f(c + h) + f(c - h)

    outer = QuadResult(0.0, 0.0)
    if c - radius > a:
        outer = adaptive_quad(f, a, c - radius, cfg)
    elif c + radius < b:
        outer = adaptive_quad(f, c + radius, b, cfg)

    eps = min(1e-2, radius / 4.0)
    # very close singular neighbourhoods still get a usable ladder
    floor = min(floor, eps / 32.0)
    base = adaptive_quad(folded, eps, radius, cfg)
    estimates = [outer.value + base.value]
    widths = [eps]
    err = outer.error + base.error
    while eps / 2.0 >= floor:
        piece = adaptive_quad(folded, eps / 2.0, eps, cfg)
        err += piece.error
        eps /= 2.0
        widths.append(eps)
        estimates.append(estimates[-1] + piece.value)

    powers = (1, 3, 5)
    if len(estimates) < len(powers) + 2:
        raise ConvergenceError(
            f"exclusion ladder too short ({len(estimates)} widths above floor {floor})"
        )
    current = extrapolate_to_zero(widths, estimates, powers)
    previous = extrapolate_to_zero(widths[:-1], estimates[:-1], powers)
    drift = abs(current - previous)
    if drift > max(cfg.abs_tol, cfg.rel_tol * abs(current)):
        raise ConvergenceError(
            f"principal value did not stabilise: successive extrapolations differ by {drift:.3e}"
        )
    return QuadResult(current, err + drift)
