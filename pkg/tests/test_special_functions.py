from __future__ import annotations

import math

import pytest
from hypothesis import given, settings, strategies as st

from riemann_pcf.errors import DomainError
from riemann_pcf.quadrature import QuadratureConfig
from riemann_pcf.special_functions import (
    incomplete_gamma_zero,
    li_complex_power,
    li_real,
    log_integral_head,
    pv_integral,
    riemann_tail_integral,
    term_integral_identity_check,
    trivial_zero_tail,
    trivial_zero_tail_detail,
)

# mpmath oracle values at 30 digits
LI = {1.0001: -8.6330747074913026539, 2.0: 1.0451637801174927848, 3.0: 2.1635885946671919729,
      10.0: 6.1655995047872979375, 200.0: 50.19217116596378381, 10000.0: 1246.1372158993884597}
E1 = {1e-6: 13.238295893062491244, 0.1: 1.8229239584193906661, 1.0: 0.21938393439552027368,
      2.0: 0.048900510708061119567, 5.0: 0.0011482955912753257973,
      50.0: 3.7832640295504590187e-24, 700.0: 1.4065187662340329228e-307}
EI = [(10.0, complex(0.5, 14.134725141734693), complex(0.088004571905964861578, 3.1006318774724550462)),
      (200.0, complex(0.5, -21.022039638771555), complex(-0.12587008601337842462, -3.158086610339621913)),
      (1000.0, complex(0.3, 50.0), complex(-0.0042150765243965231336, 3.1189843711804687441))]
TAILS = {3.0: (0.039883342616871506283, 0.0025521386321878513552, 2.2009197986518756278),
         10.0: (0.0018396869464931643059, 9.943446867648621153e-6, 6.1674292482869234532),
         200.0: (2.1698616644711980547e-6, 2.8215054290544079865e-11, 50.192173335797233227)}


@pytest.mark.parametrize("x", sorted(LI))
def test_li_real_matches_oracle(x):
    assert li_real(x) == pytest.approx(LI[x], abs=1e-10)


def test_li_real_tightens_with_tolerance():
    cfg = QuadratureConfig(abs_tol=1e-13, rel_tol=1e-15)
    assert li_real(10.0, cfg) == pytest.approx(LI[10.0], abs=1e-13)


def test_li_real_domain():
    for bad in (1.0, 0.5, math.inf, math.nan):
        with pytest.raises(DomainError):
            li_real(bad)


@pytest.mark.parametrize("x", sorted(E1))
def test_incomplete_gamma_zero(x):
    assert incomplete_gamma_zero(x) == pytest.approx(E1[x], rel=1e-14)


def test_incomplete_gamma_domain():
    with pytest.raises(DomainError):
        incomplete_gamma_zero(0.0)


@pytest.mark.parametrize("x,rho,expected", EI)
def test_li_complex_power_matches_ei(x, rho, expected):
    assert abs(li_complex_power(x, rho) - expected) < 1e-10


def test_li_complex_power_conjugate_symmetry():
    a = li_complex_power(50.0, complex(0.5, 30.0))
    b = li_complex_power(50.0, complex(0.5, -30.0))
    assert abs(a - b.conjugate()) < 1e-14


def test_li_complex_power_rejects_real_rho():
    with pytest.raises(DomainError):
        li_complex_power(10.0, 0.5)


@pytest.mark.parametrize("x", sorted(TAILS))
def test_real_axis_integrals(x):
    tail, gsum, pv = TAILS[x]
    assert riemann_tail_integral(x) == pytest.approx(tail, abs=1e-11)
    assert riemann_tail_integral(x, method="series") == pytest.approx(tail, abs=1e-10)
    assert trivial_zero_tail(x) == pytest.approx(gsum, abs=1e-11)
    assert pv_integral(x) == pytest.approx(pv, abs=1e-10)


def test_pv_integral_at_one_is_minus_log2():
    assert pv_integral(1.0) == pytest.approx(-math.log(2.0), abs=1e-10)


def test_trivial_zero_tail_bound_is_certified():
    cfg = QuadratureConfig(abs_tol=1e-4)
    rough = trivial_zero_tail_detail(1.5, cfg)
    fine = trivial_zero_tail(1.5, QuadratureConfig(abs_tol=1e-13))
    assert 0.0 <= fine - rough.value <= rough.bound


def test_tail_terms_cap():
    detail = trivial_zero_tail_detail(1.01, QuadratureConfig(tail_terms=3))
    assert detail.terms == 3
    assert detail.bound > 0


def test_log_integral_head_is_negative_gamma():
    assert log_integral_head(5.0) == pytest.approx(-incomplete_gamma_zero(2 * math.log(5.0)), abs=1e-12)


@pytest.mark.parametrize("x", [math.e, 10.0])
@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_term_identity(x, n):
    lhs, rhs = term_integral_identity_check(x, n, QuadratureConfig(abs_tol=1e-13, rel_tol=1e-14))
    assert lhs == pytest.approx(rhs, abs=1e-12)


@settings(max_examples=25, deadline=None)
@given(st.floats(1.01, 1000.0))
def test_identity_between_real_axis_forms(x):
    # Li(x) + int_x^inf ... = P.V. int x^s/s ds + sum Gamma(0, 2n log x)
    lhs = li_real(x) + riemann_tail_integral(x)
    rhs = pv_integral(x) + trivial_zero_tail(x)
    assert lhs == pytest.approx(rhs, abs=1e-8)


@settings(max_examples=25, deadline=None)
@given(st.floats(1.5, 1e6))
def test_li_real_is_increasing(x):
    assert li_real(x * 1.01) > li_real(x)
