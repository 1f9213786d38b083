"""zeta(s), zeta'(s)/zeta(s) and numerical continuation of log zeta along paths.

Re s >= -1/2: Borwein's accelerated alternating (eta) series, with the
derivative taken term by term.  Further left: the functional equation in log
form, whose reflected argument then stays clear of the pole at 1.  Near the removable points 1 + 2 pi i k / log 2 (k != 0), where
eta / (1 - 2**(1-s)) degenerates to 0/0, an Euler-Maclaurin sum is used.

The continuation of log zeta integrates zeta'/zeta step by step but snaps every
accepted point onto log|zeta(s)| + i(Arg zeta(s) + 2 pi k), so only the sheet
index is carried by the quadrature.
"""
from __future__ import annotations

import cmath
import csv
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, TextIO

import numpy as np
from scipy.special import loggamma, psi

from .errors import (
    AccuracyError,
    DomainError,
    InconsistencyError,
    PoleError,
    SingularityError,
    StepCollapseError,
)
from .quadrature import DEFAULT_CONFIG, QuadratureConfig, extrapolate_to_zero

# Validated box for |Im s| and Re s; see the accuracy tests.
MAX_ABS_T = 250.0
MIN_RE, MAX_RE = -12.0, 12.0
EXCLUSION_RADIUS = 1e-3
MIN_STEP = 1e-6
LOG2 = math.log(2.0)
LOG_PI = math.log(math.pi)
LOG_2PI = math.log(2.0 * math.pi)

_EM_SWITCH = 0.05  # |1 - 2**(1-s)| below this (away from s = 1) -> Euler-Maclaurin
_EM_TERMS = 15
_REFLECT_BELOW = -0.5


# ---------------------------------------------------------------------------
# series machinery


@lru_cache(maxsize=64)
def _borwein_weights(n: int) -> np.ndarray:
    # d_k = n sum_{i<=k} (n+i-1)! 4^i / ((n-i)! (2i)!); weight_k = (-1)^k (d_n - d_k) / d_n
    d = np.empty(n + 1)
    term = 1.0 / n
    acc = 0.0
    for i in range(n + 1):
        if i:
            term *= (n + i - 1) * (n - i + 1) * 4.0 / ((2 * i - 1) * (2 * i))
        acc += term
        d[i] = n * acc
    k = np.arange(n)
    signs = np.where(k % 2 == 0, 1.0, -1.0)
    return signs * (1.0 - d[:n] / d[n])


@lru_cache(maxsize=64)
def _log_k(n: int) -> np.ndarray:
    return np.log(np.arange(1, n + 1, dtype=float))


def _borwein_terms(t_max: float) -> int:
    return min(24 + int(math.ceil(0.9 * t_max)), 320)


def _eta_pair(s: np.ndarray):
    """eta(s) and eta'(s) by Borwein's algorithm, vectorised over s."""
    n = _borwein_terms(float(np.max(np.abs(s.imag))) if s.size else 0.0)
    w = _borwein_weights(n)
    lk = _log_k(n)
    powers = np.exp(-np.outer(s, lk))
    eta = powers @ w
    deta = -(powers * lk) @ w
    return eta, deta


@lru_cache(maxsize=1)
def _bernoulli_coefficients() -> np.ndarray:
    # B_{2k} / (2k)! for k = 1..K from the standard recurrence
    m = 2 * _EM_TERMS
    b = [Fraction(0)] * (m + 1)
    b[0] = Fraction(1)
    for j in range(1, m + 1):
        b[j] = -sum(Fraction(math.comb(j + 1, i)) * b[i] for i in range(j)) / (j + 1)
    return np.array([float(b[2 * k] / math.factorial(2 * k)) for k in range(1, _EM_TERMS + 1)])


def _euler_maclaurin_pair(s: np.ndarray):
    """zeta(s) and zeta'(s) by Euler-Maclaurin summation (s != 1)."""
    big_n = 30 + int(math.ceil(float(np.max(np.abs(s))) / 2.0))
    lk = _log_k(big_n - 1)
    powers = np.exp(-np.outer(s, lk))
    head = powers.sum(axis=1)
    dhead = -(powers * lk).sum(axis=1)
    log_n = math.log(big_n)
    n_pow = np.exp(-s * log_n)  # N^-s
    z = head + big_n * n_pow / (s - 1.0) + 0.5 * n_pow
    dz = (dhead + big_n * n_pow * (-log_n / (s - 1.0) - 1.0 / (s - 1.0) ** 2)
          - 0.5 * log_n * n_pow)
    coef = _bernoulli_coefficients()
    poch = s.astype(complex)
    dpoch = np.ones_like(poch)
    scale = n_pow / big_n  # N^{-s-1}
    for k in range(1, _EM_TERMS + 1):
        if k > 1:
            a1 = s + 2 * k - 3
            a2 = s + 2 * k - 2
            dpoch = dpoch * a1 * a2 + poch * (a1 + a2)
            poch = poch * a1 * a2
            scale = scale / (big_n * big_n)
        z = z + coef[k - 1] * poch * scale
        dz = dz + coef[k - 1] * scale * (dpoch - log_n * poch)
    return z, dz


def _log_sin_half_pi(s: np.ndarray) -> np.ndarray:
    """A logarithm of sin(pi s / 2), stable for large |Im s| and near even integers."""
    k = np.round(s.real / 2.0)
    r = s - 2.0 * k
    z = 0.5 * math.pi * r
    out = np.empty(s.shape, dtype=complex)
    big_up = z.imag > 20.0
    big_down = z.imag < -20.0
    mid = ~(big_up | big_down)
    with np.errstate(divide="ignore"):
        out[mid] = np.log(np.sin(z[mid]))
    zu = z[big_up]
    out[big_up] = np.log(0.5j) - 1j * zu + np.log1p(-np.exp(2j * zu))
    zd = z[big_down]
    out[big_down] = np.log(-0.5j) + 1j * zd + np.log1p(-np.exp(-2j * zd))
    return out + 1j * math.pi * k


def _cot_half_pi(s: np.ndarray) -> np.ndarray:
    k = np.round(s.real / 2.0)
    z = 0.5 * math.pi * (s - 2.0 * k)
    out = np.empty(s.shape, dtype=complex)
    small = np.abs(z.imag) <= 1.0
    with np.errstate(divide="ignore", invalid="ignore"):
        out[small] = 1.0 / np.tan(z[small])
    up = z.imag > 1.0
    e = np.exp(2j * z[up])
    out[up] = 1j * (e + 1.0) / (e - 1.0)
    down = z.imag < -1.0
    e = np.exp(-2j * z[down])
    out[down] = 1j * (1.0 + e) / (1.0 - e)
    return out


def _right_half(s: np.ndarray):
    """(zeta, zeta'/zeta) by the eta series; accurate for Re s >= -1."""
    zeta = np.empty(s.shape, dtype=complex)
    logd = np.empty(s.shape, dtype=complex)
    a = -np.expm1((1.0 - s) * LOG2)  # 1 - 2^(1-s)
    use_em = (np.abs(a) < _EM_SWITCH) & (np.abs(s.imag) > 1.0)
    bw = ~use_em
    if bw.any():
        sb = s[bw]
        eta, deta = _eta_pair(sb)
        ab = a[bw]
        da = (1.0 - ab) * LOG2  # d/ds of 1 - 2^(1-s)
        with np.errstate(divide="ignore", invalid="ignore"):
            zeta[bw] = eta / ab
            logd[bw] = deta / eta - da / ab
    if use_em.any():
        z, dz = _euler_maclaurin_pair(s[use_em])
        zeta[use_em] = z
        with np.errstate(divide="ignore", invalid="ignore"):
            logd[use_em] = dz / z
    return zeta, logd


def _zeta_and_logderiv(s) -> tuple[np.ndarray, np.ndarray]:
    """Unchecked vectorised evaluation of zeta(s) and zeta'(s)/zeta(s)."""
    s = np.atleast_1d(np.asarray(s, dtype=complex))
    zeta = np.empty(s.shape, dtype=complex)
    logd = np.empty(s.shape, dtype=complex)
    right = s.real >= _REFLECT_BELOW
    if right.any():
        zeta[right], logd[right] = _right_half(s[right])
    left = ~right
    if left.any():
        sl = s[left]
        zr, lr = _right_half(1.0 - sl)
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            log_factor = sl * LOG2 + (sl - 1.0) * LOG_PI + _log_sin_half_pi(sl) + loggamma(1.0 - sl)
            zeta[left] = np.exp(log_factor) * zr
            logd[left] = LOG_2PI + 0.5 * math.pi * _cot_half_pi(sl) - psi(1.0 - sl) - lr
    return zeta, logd


# ---------------------------------------------------------------------------
# public scalar evaluators


def _check_point(s: complex) -> complex:
    s = complex(s)
    if not (math.isfinite(s.real) and math.isfinite(s.imag)):
        raise DomainError(f"non-finite point {s!r}")
    if s == 1.0:
        raise PoleError("zeta has a pole at s = 1")
    if abs(s.imag) > MAX_ABS_T or not (MIN_RE <= s.real <= MAX_RE):
        raise AccuracyError(
            f"{s} lies outside the validated box |Im s| <= {MAX_ABS_T}, "
            f"{MIN_RE} <= Re s <= {MAX_RE}"
        )
    return s


def zeta(s: complex) -> complex:
    """Riemann zeta function inside the validated box."""
    s = _check_point(s)
    return complex(_zeta_and_logderiv(s)[0][0])


def zeta_log_deriv(s: complex, exclusion_radius: float = EXCLUSION_RADIUS) -> complex:
    """zeta'(s)/zeta(s); refuses points within ``exclusion_radius`` of the pole or a zero.

    Non-trivial zeros are detected locally: near a simple zero at distance d the
    log-derivative has modulus close to 1/d.
    """
    s = _check_point(s)
    if abs(s - 1.0) < exclusion_radius:
        raise SingularityError(f"{s} is within {exclusion_radius} of the pole at 1")
    if s.real < 0 and abs(s.imag) < exclusion_radius:
        nearest = 2.0 * round(s.real / 2.0)
        if nearest <= -2 and abs(s - nearest) < exclusion_radius:
            raise SingularityError(f"{s} is within {exclusion_radius} of the trivial zero {nearest}")
    z, ld = _zeta_and_logderiv(s)
    # a simple zero at distance d makes |zeta'/zeta| about 1/d
    if z[0] == 0 or not np.isfinite(ld[0]) or abs(ld[0]) * exclusion_radius > 1.0:
        raise SingularityError(f"a zero of zeta lies within about {exclusion_radius} of {s}")
    return complex(ld[0])


def residue_limit(center: complex, direction: complex = 1.0, eps0: float = 1e-2,
                  levels: int = 6) -> float | complex:
    """Limit of eps * zeta'/zeta(center + eps * direction) as eps -> 0.

    Sampled at eps0 / 2**j and extrapolated in powers of eps.
    """
    direction = complex(direction) / abs(direction)
    eps = [eps0 / 2.0 ** j for j in range(levels)]
    pts = np.array([center + e * direction for e in eps])
    _, ld = _zeta_and_logderiv(pts)
    vals = ld * np.array(eps) * direction
    return complex(extrapolate_to_zero(eps, list(vals), powers=tuple(range(1, levels))))


# ---------------------------------------------------------------------------
# path continuation


@dataclass(frozen=True)
class PathPolyline:
    vertices: tuple[complex, ...]
    max_step: float = 0.1

    def __post_init__(self):
        verts = tuple(complex(v) for v in self.vertices)
        object.__setattr__(self, "vertices", verts)
        if len(verts) < 2:
            raise DomainError("a path needs at least two vertices")
        if not self.max_step > 0:
            raise DomainError("max_step must be positive")
        for v in verts:
            if not (math.isfinite(v.real) and math.isfinite(v.imag)):
                raise DomainError(f"non-finite vertex {v!r}")

    def check_admissible(self, exclusion_radius: float = EXCLUSION_RADIUS,
                         zeros: Iterable[complex] = ()) -> None:
        """Raise SingularityError if a vertex sits inside an exclusion disc."""
        singular = [1.0 + 0j] + [complex(z) for z in zeros]
        for v in self.vertices:
            for z in singular:
                if abs(v - z) < exclusion_radius:
                    raise SingularityError(f"vertex {v} within {exclusion_radius} of {z}")
            if v.real < -1.0 and abs(v.imag) < exclusion_radius:
                nearest = 2.0 * round(v.real / 2.0)
                if abs(v - nearest) < exclusion_radius:
                    raise SingularityError(f"vertex {v} within {exclusion_radius} of {nearest}")


@dataclass
class BranchTrace:
    points: list[tuple[complex, complex]]
    start_value: complex
    vertex_values: list[complex] = field(default_factory=list)

    @property
    def final(self) -> complex:
        return self.points[-1][1]

    def write_csv(self, out: TextIO) -> None:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["sigma", "t", "re_log", "im_log"])
        for s, lv in self.points:
            writer.writerow([repr(s.real), repr(s.imag), repr(lv.real), repr(lv.imag)])


# Gauss-Legendre 5-point rule on [0, 1]
_GL_X, _GL_W = np.polynomial.legendre.leggauss(5)
_GL_X = 0.5 * (_GL_X + 1.0)
_GL_W = 0.5 * _GL_W


def _evaluate(points: np.ndarray, factors: Sequence[complex]):
    z, ld = _zeta_and_logderiv(points)
    for r in factors:
        z = z * (points - r)
        ld = ld + 1.0 / (points - r)
    return z, ld


def principal_log(s: complex, factors: Sequence[complex] = ()) -> complex:
    """Log of zeta(s) * prod(s - r) on the principal sheet."""
    s = _check_point(s)
    z, _ = _evaluate(np.array([s]), factors)
    return complex(np.log(z[0]))


def continue_log_zeta(path: PathPolyline, start_log: complex | None = None,
                      cfg: QuadratureConfig = DEFAULT_CONFIG,
                      factors: Sequence[complex] = (),
                      exclusion_radius: float = EXCLUSION_RADIUS) -> BranchTrace:
    """Continue log g(s) along ``path`` for g = zeta * prod(s - r), r in ``factors``.

    Steps are halved until the per-step change in Im log g is below pi/4 and
    the quadrature of g'/g agrees with the snapped endpoint value.
    """
    del cfg  # step control is governed by the pi/4 rule, not quadrature tolerances
    path.check_admissible(exclusion_radius, factors)
    for v in path.vertices:
        _check_point(v)
    start = path.vertices[0]
    z0, _ = _evaluate(np.array([start]), factors)
    if start_log is None:
        start_log = complex(np.log(z0[0]))
    start_log = complex(start_log)
    if abs(cmath.exp(start_log) - z0[0]) > 1e-8 * abs(z0[0]):
        raise DomainError("start_log is not a logarithm of the function at the first vertex")

    current = start_log
    points = [(start, current)]
    vertex_values = [current]
    step = path.max_step
    for a, b in zip(path.vertices[:-1], path.vertices[1:]):
        length = abs(b - a)
        if length == 0.0:
            vertex_values.append(current)
            continue
        direction = (b - a) / length
        pos = 0.0
        while pos < length:
            h = min(step, length - pos)
            h_initial = h
            while True:
                if h < min(MIN_STEP, h_initial):
                    raise StepCollapseError(
                        f"continuation step collapsed below {MIN_STEP} near {a + pos * direction}"
                    )
                s0 = a + pos * direction
                s1 = b if pos + h >= length else s0 + h * direction
                nodes = s0 + (s1 - s0) * _GL_X
                vals, ld = _evaluate(np.append(nodes, s1), factors)
                delta = (s1 - s0) * np.dot(_GL_W, ld[:-1])
                z1 = vals[-1]
                if not (np.isfinite(delta) and z1 != 0 and np.isfinite(z1)):
                    h *= 0.5
                    continue
                if abs(delta.imag) >= math.pi / 4:
                    h *= 0.5
                    continue
                predicted = current + delta
                principal = complex(np.log(z1))
                k = round((predicted.imag - principal.imag) / (2.0 * math.pi))
                snapped = complex(principal.real, principal.imag + 2.0 * math.pi * k)
                if abs(snapped - predicted) > 1e-3:
                    h *= 0.5
                    continue
                break
            current = snapped
            pos = length if s1 == b else pos + h
            points.append((s1, current))
            step = min(2.0 * h, path.max_step)
        vertex_values.append(current)
    return BranchTrace(points=points, start_value=start_log, vertex_values=vertex_values)


# ---------------------------------------------------------------------------
# branch geometry measurements


def _probe(height: float, sigmas: Sequence[float], factors: Sequence[complex] = (),
           anchor: float = 2.0, max_step: float = 0.1) -> np.ndarray:
    """Im log g at each sigma + i*height, continued from the anchor on the real axis.

    The path runs up (or down) the line Re s = anchor and then leftwards, so it
    crosses no cut that terminates at or left of Re s = 1.
    """
    sig = sorted(sigmas, reverse=True)
    verts = [complex(anchor, 0.0), complex(anchor, height)] + [complex(x, height) for x in sig]
    trace = continue_log_zeta(PathPolyline(tuple(verts), max_step), factors=factors)
    by_sigma = dict(zip(sig, trace.vertex_values[2:]))
    return np.array([by_sigma[x].imag for x in sigmas])


def _offset_ladder(offset: float, levels: int) -> list[float]:
    return [offset / 2.0 ** j for j in range(levels)]


def contour_limit(sigmas: Sequence[float], height: float = 0.0, side: str = "upper",
                  offset: float = 0.02, levels: int = 4,
                  factors: Sequence[complex] = ()) -> np.ndarray:
    """Limit of Im log zeta on the contour just above (or below) a cut, per sigma."""
    sign = {"upper": 1.0, "lower": -1.0}[side]
    offs = _offset_ladder(offset, levels)
    rows = [_probe(height + sign * r, sigmas, factors) for r in offs]
    rows = np.array(rows)
    return np.array([extrapolate_to_zero(offs, rows[:, j], powers=tuple(range(1, levels)))
                     for j in range(len(sigmas))])


def _jump_profile(sigmas: Sequence[float], height: float, offset: float, levels: int,
                  factors: Sequence[complex] = ()) -> np.ndarray:
    """Extrapolated Im[below] - Im[above] per sigma.

    The difference is odd in the offset (both sides continue one analytic
    function up to a constant), so only odd powers are eliminated.
    """
    offs = _offset_ladder(offset, levels)
    diffs = np.array([_probe(height - r, sigmas, factors) - _probe(height + r, sigmas, factors)
                      for r in offs])
    powers = tuple(2 * j + 1 for j in range(levels - 1))
    return np.array([extrapolate_to_zero(offs, diffs[:, j], powers=powers)
                     for j in range(len(sigmas))])


def measure_cut_jump(sigma_range: tuple[float, float], height: float = 0.0,
                     offset: float = 0.02, cfg: QuadratureConfig = DEFAULT_CONFIG,
                     samples: int = 5, levels: int = 3, tolerance: float = 1e-4) -> float:
    """Jump Im log zeta(below) - Im log zeta(above) across a horizontal cut."""
    lo, hi = sigma_range
    if not lo < hi:
        raise DomainError("sigma_range must be increasing")
    sigmas = list(np.linspace(lo, hi, samples))
    jumps = _jump_profile(sigmas, height, offset, levels)
    spread = float(np.max(jumps) - np.min(jumps))
    if spread > tolerance:
        raise InconsistencyError(f"cut jump varies by {spread:.3e} along the segment")
    return float(np.mean(jumps))


def measure_critical_cut_jump(zeros: Sequence[float], zero_index: int, sigma: float,
                              offset: float = 0.02, cfg: QuadratureConfig = DEFAULT_CONFIG,
                              levels: int = 3) -> float:
    """Im log zeta just below minus just above the cut ending at the zero_index-th zero."""
    if sigma >= 0.5:
        raise DomainError("sigma must lie left of the cut terminus Re s = 1/2")
    gamma = float(zeros[zero_index - 1])
    others = [abs(g - gamma) for i, g in enumerate(zeros) if i != zero_index - 1]
    if others and min(others) < 4.0 * offset:
        raise DomainError("offset too large for the spacing of neighbouring zeros")
    return float(_jump_profile([sigma], gamma, offset, levels)[0])


def rogue_experiment(r1: complex, r2: complex, cfg: QuadratureConfig = DEFAULT_CONFIG,
                     offset: float = 0.02, levels: int = 3,
                     zeros: Sequence[float] = ()) -> tuple[float, float]:
    """Argument drop across the cut of zeta(s)(s - r1)(s - r2) at the artificial zeros.

    Returns (Im above - Im below) left of both artificial zeros and between
    them.  ``zeros`` (ordinates of genuine zeros) lets the height be checked
    against real cuts.
    """
    r1, r2 = complex(r1), complex(r2)
    if r1 == r2:
        raise DomainError("r1 and r2 coincide")
    if r1.imag != r2.imag:
        raise DomainError("artificial zeros must share one ordinate")
    if not (0.0 < r1.real < 0.5 < r2.real < 1.0):
        raise DomainError("need 0 < Re r1 < 1/2 < Re r2 < 1")
    gamma = r1.imag
    if gamma <= 4.0 * offset:
        raise DomainError("artificial ordinate too close to the real-axis cut")
    for g in zeros:
        if abs(g - gamma) < 4.0 * offset:
            raise DomainError(f"ordinate {gamma} sits on the cut of the genuine zero at {g}")
    left = [r1.real - 0.4, r1.real - 0.6, r1.real - 0.8]
    between = [0.5 * (r1.real + r2.real) + d for d in (-0.1, 0.0, 0.1)]
    jumps = -_jump_profile(left + between, gamma, offset, levels, factors=(r1, r2))
    left_j, between_j = jumps[:3], jumps[3:]
    for part in (left_j, between_j):
        if float(np.ptp(part)) > 1e-4:
            raise InconsistencyError(f"jump not constant along segment: {part}")
    return float(np.mean(left_j)), float(np.mean(between_j))


def winding_number(center: complex, radius: float, factors: Sequence[complex] = (),
                   vertices: int = 64) -> float:
    """(1 / 2 pi i) times the change of log g around a counter-clockwise circle."""
    theta = np.linspace(0.0, 2.0 * math.pi, vertices + 1)
    verts = tuple(center + radius * np.exp(1j * theta))
    verts = verts[:-1] + (verts[0],)
    trace = continue_log_zeta(PathPolyline(verts, max_step=radius / 2.0), factors=factors,
                              exclusion_radius=0.0)
    return ((trace.final - trace.start_value) / (2j * math.pi)).real


def argument_principle_count(height: float, sigma_left: float = -1.0,
                             sigma_right: float = 2.0, max_step: float = 0.25) -> int:
    """Number of zeta zeros with 0 < Im s < height (all inside the critical strip).

    The rectangle [sigma_left, sigma_right] x [-height, height] encloses each
    zero and its conjugate plus the pole at 1, so the winding is 2N - 1.
    """
    if height <= 0:
        raise DomainError("height must be positive")
    if sigma_left <= -2.0 or sigma_right <= 1.0:
        raise DomainError("rectangle must contain the pole at 1 and exclude s = -2")
    verts = (complex(sigma_right, 0.0), complex(sigma_right, height), complex(sigma_left, height),
             complex(sigma_left, -height), complex(sigma_right, -height), complex(sigma_right, 0.0))
    trace = continue_log_zeta(PathPolyline(verts, max_step))
    w = ((trace.final - trace.start_value) / (2j * math.pi)).real
    wi = round(w)
    if abs(w - wi) > 1e-6 or wi % 2 == 0:
        raise InconsistencyError(f"winding {w} is not an odd integer")
    return (wi + 1) // 2


def circle_integral(center: complex, radius: float, x: float, nodes: int = 64,
                    theta0: float = math.pi) -> complex:
    """Integral of log zeta(s) x**s / s once around a circle, log zeta continued.

    Starts at angle ``theta0`` on the principal sheet; the single 2 pi i jump of
    the continued branch sits at the start/end point.
    """
    g, w = np.polynomial.legendre.leggauss(nodes)
    theta = theta0 + math.pi * (g + 1.0)
    w = math.pi * w
    pts = center + radius * np.exp(1j * theta)
    start = center + radius * cmath.exp(1j * theta0)
    verts = (start,) + tuple(pts)
    trace = continue_log_zeta(PathPolyline(verts, max_step=radius / 2.0),
                              exclusion_radius=0.0)
    logs = np.array(trace.vertex_values[1:])
    integrand = logs * np.exp(pts * math.log(x)) / pts * 1j * radius * np.exp(1j * theta)
    return complex(np.dot(w, integrand))
