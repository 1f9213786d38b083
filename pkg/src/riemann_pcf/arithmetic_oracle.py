"""Exact prime-counting step functions, Moebius inversion and a sieve.

Step values are :class:`fractions.Fraction`.  Points of the form x**(1/n) are
handled without forming the root: p < x**(1/n) iff p**n < x, so jumps at prime
powers land exactly where they should.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Real
from typing import Callable, Union

import numpy as np

from .errors import DomainError

MAX_SIEVE = 10 ** 8


@dataclass(frozen=True)
class PrimeTable:
    limit: int
    primes: np.ndarray

    def __len__(self) -> int:
        return int(self.primes.size)

    def count_upto(self, y: float) -> int:
        """Number of primes <= y."""
        return int(np.searchsorted(self.primes, y, side="right"))


def sieve(limit: int) -> PrimeTable:
    """All primes <= limit (sieve of Eratosthenes over odd numbers)."""
    if int(limit) != limit or not (2 <= limit <= MAX_SIEVE):
        raise DomainError(f"sieve limit must be an integer in [2, {MAX_SIEVE}], got {limit}")
    limit = int(limit)
    # index i stands for 2i + 1
    odd = np.ones((limit + 1) // 2, dtype=bool)
    odd[0] = False
    for i in range(1, (math.isqrt(limit) - 1) // 2 + 1):
        if odd[i]:
            p = 2 * i + 1
            odd[p * p // 2::p] = False
    primes = np.concatenate(([2], 2 * np.nonzero(odd)[0] + 1)).astype(np.int64)
    return PrimeTable(limit, primes)


@dataclass(frozen=True)
class NthRoot:
    """The real number base**(1/n), kept symbolic for exact comparisons."""

    base: Fraction
    n: int

    def __float__(self) -> float:
        return float(self.base) ** (1.0 / self.n)


Point = Union[Real, Fraction, NthRoot]


def _as_root(x: Point) -> NthRoot:
    if isinstance(x, NthRoot):
        return x
    if isinstance(x, float) and not math.isfinite(x):
        raise DomainError(f"non-finite argument {x!r}")
    return NthRoot(Fraction(x), 1)


def _count_below(root: NthRoot, pt: PrimeTable) -> Fraction:
    """#{p : p**n < base} + 1/2 if some p**n == base."""
    base, n = root.base, root.n
    if base <= 0:
        return Fraction(0)
    approx = float(root)
    if approx > pt.limit + 1:
        raise DomainError(f"argument {approx} exceeds the prime table limit {pt.limit}")
    k = int(np.searchsorted(pt.primes, approx - 1.0, side="left"))
    primes = pt.primes
    half = Fraction(0)
    while k < primes.size:
        pn = int(primes[k]) ** n
        if pn < base:
            k += 1
            continue
        if pn == base:
            half = Fraction(1, 2)
        break
    if k == primes.size and pt.limit < approx:
        raise DomainError(f"argument {approx} exceeds the prime table limit {pt.limit}")
    return Fraction(k) + half


def big_f_step(x: Point, pt: PrimeTable) -> Fraction:
    """Primes strictly below x, counting a prime at x itself as one half."""
    return _count_below(_as_root(x), pt)


def _max_index(root: NthRoot) -> int:
    # largest m with 2**m <= base**(1/n), i.e. 2**(m n) <= base
    base, n = root.base, root.n
    if base < 2 ** n:
        return 0
    m = max(int(math.log2(float(base)) / n) - 1, 0)
    while 2 ** ((m + 1) * n) <= base:
        m += 1
    return m


def small_f_step(x: Point, pt: PrimeTable) -> Fraction:
    """sum_{n <= log x / log 2} F(x**(1/n)) / n, exactly."""
    root = _as_root(x)
    if root.base < 1:
        raise DomainError("small_f_step needs x >= 1")
    total = Fraction(0)
    for k in range(1, _max_index(root) + 1):
        total += _count_below(NthRoot(root.base, root.n * k), pt) / k
    return total


def _small_primes(bound: int) -> np.ndarray:
    return sieve(max(bound, 2)).primes


def moebius(n: int, pt: PrimeTable | None = None) -> int:
    """Moebius function by trial division against a prime table."""
    if int(n) != n or n < 1:
        raise DomainError(f"moebius needs a positive integer, got {n}")
    n = int(n)
    primes = pt.primes if pt is not None else _small_primes(math.isqrt(n) + 1)
    if pt is not None and pt.limit < math.isqrt(n):
        raise DomainError("prime table too small to factor n")
    sign = 1
    for p in primes:
        p = int(p)
        if p * p > n:
            break
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            sign = -sign
    if n > 1:
        sign = -sign
    return sign


def big_f_from_small_f(x: Point, f_eval: Callable, exact_roots: bool = False):
    """sum_{n <= log x / log 2} mu(n)/n f(x**(1/n)).

    With ``exact_roots`` the roots are handed to ``f_eval`` as :class:`NthRoot`
    and the sum is kept in rational arithmetic, which suits the step oracles;
    otherwise ``f_eval`` receives floats.
    """
    root = _as_root(x)
    if root.base <= 1:
        raise DomainError("big_f_from_small_f needs x > 1")
    top = _max_index(root)
    total = Fraction(0) if exact_roots else 0.0
    for k in range(1, top + 1):
        mu = moebius(k)
        if mu == 0:
            continue
        arg = NthRoot(root.base, root.n * k)
        value = f_eval(arg) if exact_roots else f_eval(float(arg))
        total += (Fraction(mu, k) if exact_roots else mu / k) * value
    return total


def prime_powers_upto(limit: int, pt: PrimeTable) -> list[tuple[int, int, int]]:
    """(p**k, p, k) for every prime power <= limit, ascending."""
    out = []
    for p in pt.primes:
        p = int(p)
        if p > limit:
            break
        q, k = p, 1
        while q <= limit:
            out.append((q, p, k))
            q *= p
            k += 1
    return sorted(out)
