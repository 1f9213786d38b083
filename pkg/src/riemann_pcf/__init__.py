"""Riemann's explicit formula for f(x) and F(x), evaluated numerically in two equivalent forms."""
from .errors import (
    AccuracyError,
    CertificationError,
    ConvergenceError,
    DomainError,
    InconsistencyError,
    PoleError,
    RiemannPCFError,
    SingularityError,
    StepCollapseError,
    ZeroTableError,
)
from .quadrature import DEFAULT_CONFIG, QuadratureConfig
from .special_functions import (
    incomplete_gamma_zero,
    li_complex_power,
    li_real,
    pv_integral,
    riemann_tail_integral,
    trivial_zero_tail,
)
from .zeta_engine import continue_log_zeta, zeta, zeta_log_deriv
from .zero_finder import ZeroList, find_first_zeros, find_zeros_up_to, hardy_z, load_zeros
from .arithmetic_oracle import big_f_from_small_f, big_f_step, moebius, sieve, small_f_step
from .explicit_formula import big_f_analytic, f_residue, f_riemann, verify_identity

__version__ = "0.1.0"
