"""End-to-end acceptance checks, one test per criterion, each printing a PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -s`` (or ``python3 tests/test_acceptance.py``).
"""
from __future__ import annotations

import math
import random
import sys
import time
from fractions import Fraction

import pytest

from riemann_pcf import explicit_formula as ef
from riemann_pcf import zeta_engine as ze
from riemann_pcf.arithmetic_oracle import (
    big_f_from_small_f,
    big_f_step,
    prime_powers_upto,
    sieve,
    small_f_step,
)
from riemann_pcf.quadrature import DEFAULT_CONFIG
from riemann_pcf.special_functions import (
    li_real,
    pv_integral,
    riemann_tail_integral,
    term_integral_identity_check,
    trivial_zero_tail,
)
from riemann_pcf.zero_finder import find_first_zeros, find_zeros_up_to, zero_count_check


def _report(capsys, number: int, title: str, ok: bool, detail: str) -> None:
    with capsys.disabled():
        print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {number}: {title} :: {detail}")
    assert ok, detail


def test_criterion_1_form_equivalence(capsys):
    ef._zero_sum.cache_clear()
    start = time.perf_counter()
    zeros = find_first_zeros(100)
    worst = 0.0
    for x in (5.0, 10.0, 50.0, 200.0):
        a = ef.evaluate(x, zeros, "riemann").total
        b = ef.evaluate(x, zeros, "residue").total
        worst = max(worst, abs(a - b))
    elapsed = time.perf_counter() - start
    ok = len(zeros) == 100 and worst <= 1e-7 and elapsed <= 30.0
    _report(capsys, 1, "two forms of f(x) agree", ok,
            f"max |diff| = {worst:.2e} (<= 1e-7), {elapsed:.1f} s (<= 30 s)")


def test_criterion_2_real_axis_identity(capsys):
    worst = 0.0
    for x in (3.0, 5.0, 10.0, 50.0, 200.0):
        lhs = li_real(x) + riemann_tail_integral(x)
        rhs = pv_integral(x) + trivial_zero_tail(x)
        worst = max(worst, abs(lhs - rhs))
    worst_term = 0.0
    for x in (math.e, 10.0):
        for n in range(1, 6):
            lhs, rhs = term_integral_identity_check(x, n)
            worst_term = max(worst_term, abs(lhs - rhs))
    ok = worst <= 1e-7 and worst_term <= 1e-10
    _report(capsys, 2, "Li + tail = P.V. + Gamma sum", ok,
            f"identity {worst:.2e} (<= 1e-7), per-term {worst_term:.2e} (<= 1e-10)")


def test_criterion_3_prime_counts(capsys, zeros100):
    ef._zero_sum.cache_clear()
    start = time.perf_counter()
    pt = sieve(1000)
    powers = {q for q, _, _ in prime_powers_upto(1000, pt)}
    ps = [int(p) for p in pt.primes if p < 504]
    mids = [Fraction(a + b, 2) for a, b in zip(ps, ps[1:]) if a > 10 and b < 500]
    mids = [m for m in mids if m not in powers]
    sample = sorted(random.Random(314).sample(mids, 20))
    mismatches, worst = 0, 0.0
    for m in sample:
        value = ef.big_f_analytic(float(m), zeros100)
        exact = big_f_step(m, pt)
        mismatches += round(value) != exact
        worst = max(worst, abs(value - float(exact)))
    elapsed = time.perf_counter() - start
    ok = mismatches == 0 and worst < 0.35 and elapsed <= 120.0
    _report(capsys, 3, "rounded analytic F(x) equals pi(x)", ok,
            f"{20 - mismatches}/20 exact, max raw |diff| = {worst:.3f} (< 0.35), {elapsed:.1f} s")


def test_criterion_4_real_axis_branch_geometry(capsys):
    jump = ze.measure_cut_jump((-1.9, 0.9))
    upper_a = ze.contour_limit([-1.5, -0.5, 0.5])
    upper_b = ze.contour_limit([-3.5, -3.0, -2.5])
    err_jump = abs(jump - 2 * math.pi)
    err_a = max(abs(v + math.pi) for v in upper_a)
    err_b = max(abs(v) for v in upper_b)
    ok = err_jump <= 1e-3 and err_a <= 1e-3 and err_b <= 1e-3
    _report(capsys, 4, "real-axis cut", ok,
            f"jump-2pi {err_jump:.1e}, upper(-2,1)+pi {err_a:.1e}, upper(-4,-2) {err_b:.1e} (all <= 1e-3)")


def test_criterion_5_critical_cuts_and_rogue_pair(capsys, zeros100):
    j1 = ze.measure_critical_cut_jump(zeros100, 1, -1.0)
    j2 = ze.measure_critical_cut_jump(zeros100, 2, -1.0)
    gamma = 0.5 * (zeros100[0] + zeros100[1])
    left, between = ze.rogue_experiment(complex(0.1, gamma), complex(0.9, gamma), zeros=zeros100)
    err_cut = max(abs(j1 + 2 * math.pi), abs(j2 + 2 * math.pi))
    err_rogue = max(abs(left - 4 * math.pi), abs(between - 2 * math.pi))
    ok = err_cut <= 1e-3 and err_rogue <= 1e-2
    _report(capsys, 5, "critical-line cuts and artificial zero pair", ok,
            f"cut jumps +2pi {err_cut:.1e} (<= 1e-3), rogue (4pi, 2pi) error {err_rogue:.1e} (<= 1e-2)")


def test_criterion_6_residues(capsys):
    directions = (1, -1, 1j, -1j)
    err1 = max(abs(ze.residue_limit(1.0, d) + 1.0) for d in directions)
    err2 = max(abs(ze.residue_limit(-2.0, d) - 1.0) for d in directions)
    ok = err1 <= 1e-6 and err2 <= 1e-6
    _report(capsys, 6, "residues of zeta'/zeta", ok,
            f"at 1: {err1:.1e}, at -2: {err2:.1e} (<= 1e-6)")


def test_criterion_7_zero_finding(capsys, zeros100):
    below = find_zeros_up_to(100.0)
    ap = ze.argument_principle_count(100.0)
    g1 = find_zeros_up_to(15.0)[0]
    g1_tight = find_zeros_up_to(15.0, DEFAULT_CONFIG.tightened(100))[0]
    bands = []
    for height in (50.0, 100.0, 200.0):
        count, est = zero_count_check(height, zeros100)
        bands.append(abs(count - est) <= 2 * math.log(height))
    ok = len(below) == 29 and ap == 29 and abs(g1 - g1_tight) <= 1e-9 and all(bands)
    _report(capsys, 7, "zero finding", ok,
            f"{len(below)} zeros below 100 vs argument principle {ap}, "
            f"gamma1 drift {abs(g1 - g1_tight):.1e}, bands {bands}")


def test_criterion_8_exact_inversion(capsys):
    pt = sieve(10_000)
    rng = random.Random(88)
    bad = 0
    for _ in range(200):
        x = Fraction(rng.randint(20_001, 10 ** 8 - 1), 10 ** 4)
        got = big_f_from_small_f(x, lambda r: small_f_step(r, pt), exact_roots=True)
        bad += got != big_f_step(x, pt)
    printed = [small_f_step(v, pt) for v in (2, 3, 4)]
    ok = bad == 0 and printed == [Fraction(1, 2), Fraction(3, 2), Fraction(9, 4)]
    _report(capsys, 8, "exact Moebius round trip", ok,
            f"{200 - bad}/200 exact, f(2), f(3), f(4) = {', '.join(map(str, printed))}")


def test_criterion_9_vanishing_circles(capsys):
    eps = (1e-2, 1e-3, 1e-4)
    x = 10.0
    factors = []
    rho1 = complex(0.5, find_zeros_up_to(15.0)[0])
    for center in (rho1, -2.0, 1.0):
        vals = [abs(ze.circle_integral(center, e, x)) for e in eps]
        for k in range(len(eps) - 1):
            predicted = (eps[k] * math.log(1 / eps[k])) / (eps[k + 1] * math.log(1 / eps[k + 1]))
            factors.append((vals[k] / vals[k + 1]) / predicted)
    ok = all(0.5 <= f <= 2.0 for f in factors)
    _report(capsys, 9, "circle integrals vanish like eps log(1/eps)", ok,
            "observed/predicted ratios " + ", ".join(f"{f:.2f}" for f in factors) + " (within [0.5, 2])")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
