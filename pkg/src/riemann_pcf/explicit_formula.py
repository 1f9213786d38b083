"""Riemann's f(x) assembled from its analytic parts, in two equivalent forms.

``riemann`` form:  Li(x) - sum [Li(x^rho) + Li(x^(1-rho))] + int_x^inf dt/(t(t^2-1)log t) - log 2
``residue`` form:  P.V. int_{-2}^{1} x^s/s ds - (same zero sum) + sum_{n>=2} Gamma(0, 2n log x) - log 2

The prime count F(x) follows by Moebius inversion of f.
"""
from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from typing import Sequence

import numpy as np

from .arithmetic_oracle import big_f_from_small_f
from .errors import DomainError, InconsistencyError
from .quadrature import DEFAULT_CONFIG, QuadratureConfig, adaptive_quad
from .special_functions import (
    li_complex_power,
    li_real,
    log_integral_head,
    pv_integral,
    riemann_tail_integral,
    trivial_zero_tail,
)

FORMS = ("riemann", "residue")
IMAG_RESIDUE_LIMIT = 1e-8


@dataclass(frozen=True)
class FormulaBreakdown:
    x: float
    form: str
    leading: float
    zero_sum: float
    zero_sum_imag: float
    tail: float
    constant: float
    total: float
    zeros_used: int
    est_truncation_error: float

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: dict) -> "FormulaBreakdown":
        return cls(**d)


@dataclass(frozen=True)
class EvalRequest:
    x: float
    zeros: Sequence[float] = ()
    cfg: QuadratureConfig = DEFAULT_CONFIG
    form: str = "riemann"
    ordinates: tuple[float, ...] = field(init=False, repr=False)

    def __post_init__(self):
        x = float(self.x)
        if not (math.isfinite(x) and x > 1.0):
            raise DomainError(f"x must be a finite number > 1, got {self.x}")
        if self.form not in FORMS:
            raise DomainError(f"form must be one of {FORMS}, got {self.form!r}")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "ordinates", tuple(float(g) for g in self.zeros))


def truncation_envelope(x: float, height: float) -> float:
    """Typical size of the zero-sum tail beyond ordinate ``height``: x / (T log x).

    This is the shape of the classical truncation error of the explicit formula
    without its logarithmic factors.  It is an envelope, not a bound: next to a
    prime power the truncated sum overshoots by an amount that does not shrink
    with T.
    """
    if height <= 0:
        return math.inf
    return x / (height * math.log(x))


@lru_cache(maxsize=4096)
def _zero_sum(x: float, ordinates: tuple[float, ...], cfg: QuadratureConfig) -> tuple[float, float]:
    # fixed increasing-ordinate order so the reduction is reproducible
    total = 0j
    for g in sorted(ordinates):
        rho = complex(0.5, g)
        total += li_complex_power(x, rho, cfg) + li_complex_power(x, 1.0 - rho, cfg)
    return -total.real, -total.imag


def _assemble(req: EvalRequest, leading: float, tail: float) -> FormulaBreakdown:
    zero_sum, imag = _zero_sum(req.x, req.ordinates, req.cfg)
    if abs(imag) >= IMAG_RESIDUE_LIMIT:
        raise InconsistencyError(f"conjugate terms left an imaginary residue {imag:.3e}")
    constant = -math.log(2.0)
    n = len(req.ordinates)
    est = truncation_envelope(req.x, max(req.ordinates)) if n else math.inf
    return FormulaBreakdown(
        x=req.x,
        form=req.form,
        leading=leading,
        zero_sum=zero_sum,
        zero_sum_imag=imag,
        tail=tail,
        constant=constant,
        total=leading + zero_sum + tail + constant,
        zeros_used=n,
        est_truncation_error=est,
    )


def f_riemann(req: EvalRequest) -> FormulaBreakdown:
    if req.form != "riemann":
        raise DomainError("f_riemann needs a request with form='riemann'")
    return _assemble(req, li_real(req.x, req.cfg), riemann_tail_integral(req.x, req.cfg))


def f_residue(req: EvalRequest) -> FormulaBreakdown:
    if req.form != "residue":
        raise DomainError("f_residue needs a request with form='residue'")
    return _assemble(req, pv_integral(req.x, req.cfg), trivial_zero_tail(req.x, req.cfg))


def evaluate(x: float, zeros: Sequence[float], form: str = "riemann",
             cfg: QuadratureConfig = DEFAULT_CONFIG) -> FormulaBreakdown:
    req = EvalRequest(x, zeros, cfg, form)
    return f_riemann(req) if form == "riemann" else f_residue(req)


def big_f_analytic(x: float, zeros: Sequence[float], cfg: QuadratureConfig = DEFAULT_CONFIG,
                   form: str = "riemann") -> float:
    """Prime count from the analytic f by Moebius inversion; f is taken as 0 at or below 2."""
    if not x > 2.0:
        raise DomainError(f"big_f_analytic needs x > 2, got {x}")
    ordinates = tuple(float(g) for g in zeros)

    def f_eval(y: float) -> float:
        if y <= 2.0:
            return 0.0
        return evaluate(y, ordinates, form, cfg).total

    return float(big_f_from_small_f(x, f_eval))


@dataclass(frozen=True)
class IdentityReport:
    x: float
    li: float
    riemann_tail: float
    pv: float
    gamma_tail: float
    lhs: float
    rhs: float
    difference: float
    chain_lhs: float
    chain_rhs: float
    chain_difference: float

    def passed(self, tol: float = 1e-7) -> bool:
        return abs(self.difference) <= tol and abs(self.chain_difference) <= tol

    def to_dict(self) -> dict:
        return asdict(self)


def verify_identity(x: float, cfg: QuadratureConfig = DEFAULT_CONFIG) -> IdentityReport:
    """Both sides of Li(x) + int_x^inf ... = P.V. int x^s/s + sum Gamma(0, 2n log x).

    Also compares int_{2 log x}^inf e^-t/t dt with -int_0^{1/x^2} du/log u,
    each by its own quadrature.
    """
    x = float(x)
    if not (math.isfinite(x) and x > 1.0):
        raise DomainError(f"verify_identity needs x > 1, got {x}")
    li = li_real(x, cfg)
    tail = riemann_tail_integral(x, cfg)
    pv = pv_integral(x, cfg)
    gamma_tail = trivial_zero_tail(x, cfg)
    lhs, rhs = li + tail, pv + gamma_tail
    chain_lhs = float(adaptive_quad(lambda t: np.exp(-t) / t, 2.0 * math.log(x), math.inf, cfg).value)
    chain_rhs = -log_integral_head(x, cfg)
    return IdentityReport(x, li, tail, pv, gamma_tail, lhs, rhs, lhs - rhs,
                          chain_lhs, chain_rhs, chain_lhs - chain_rhs)
