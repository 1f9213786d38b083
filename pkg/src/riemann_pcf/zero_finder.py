"""Ordinates of the non-trivial zeros: computed from sign changes of Hardy's Z, or loaded from a table."""
from __future__ import annotations

import io
import math
from dataclasses import dataclass
from typing import BinaryIO, Iterator, Sequence

import numpy as np
from scipy.special import loggamma

from .errors import (
    AccuracyError,
    CertificationError,
    DomainError,
    OrderError,
    ParseError,
    ValidationError,
)
from .quadrature import DEFAULT_CONFIG, QuadratureConfig
from .zeta_engine import MAX_ABS_T, _zeta_and_logderiv, argument_principle_count

SCAN_STEP = 0.05
MAX_BISECTIONS = 60
_THETA_ASYMPTOTIC_FROM = 20.0


@dataclass(frozen=True)
class ZeroList(Sequence[float]):
    ordinates: tuple[float, ...]
    source: str = "computed"
    certified_through: float = 0.0

    def __post_init__(self):
        ords = tuple(float(g) for g in self.ordinates)
        object.__setattr__(self, "ordinates", ords)
        if self.source not in ("computed", "loaded"):
            raise DomainError(f"unknown zero source {self.source!r}")
        if any(g <= 0 or not math.isfinite(g) for g in ords):
            raise DomainError("ordinates must be finite and positive")
        if any(b <= a for a, b in zip(ords, ords[1:])):
            raise DomainError("ordinates must be strictly increasing")

    def __len__(self) -> int:
        return len(self.ordinates)

    def __getitem__(self, i):
        return self.ordinates[i]

    def __iter__(self) -> Iterator[float]:
        return iter(self.ordinates)

    def first(self, n: int) -> "ZeroList":
        """The n lowest zeros; certification carries over up to the last one kept."""
        n = min(n, len(self.ordinates))
        kept = self.ordinates[:n]
        through = self.certified_through
        if n < len(self.ordinates):
            through = min(through, kept[-1] if kept else 0.0)
        return ZeroList(kept, self.source, through)

    def below(self, height: float) -> "ZeroList":
        kept = tuple(g for g in self.ordinates if g <= height)
        return ZeroList(kept, self.source, min(self.certified_through, height))

    def to_text(self) -> str:
        return "".join(f"{g!r}\n" for g in self.ordinates)


def riemann_siegel_theta(t):
    """theta(t) = Im log Gamma(1/4 + it/2) - (t/2) log pi, vectorised.

    For t >= 20 the asymptotic series with two correction terms is used; its
    first omitted term is below 2e-10 there.
    """
    t = np.asarray(t, dtype=float)
    out = np.empty_like(t)
    big = t >= _THETA_ASYMPTOTIC_FROM
    tb = t[big]
    out[big] = (0.5 * tb * np.log(tb / (2.0 * math.pi)) - 0.5 * tb - math.pi / 8.0
                + 1.0 / (48.0 * tb) + 7.0 / (5760.0 * tb ** 3))
    ts = t[~big]
    out[~big] = loggamma(0.25 + 0.5j * ts).imag - 0.5 * ts * math.log(math.pi)
    return out


def _check_heights(t: np.ndarray) -> None:
    if np.any(~np.isfinite(t)) or np.any(t <= 0):
        raise DomainError("hardy_z needs finite t > 0")
    if np.any(t > MAX_ABS_T):
        raise AccuracyError(f"hardy_z is validated only for t <= {MAX_ABS_T}")


def _hardy_z_array(t: np.ndarray) -> np.ndarray:
    z, _ = _zeta_and_logderiv(0.5 + 1j * t)
    rotated = np.exp(1j * riemann_siegel_theta(t)) * z
    bad = np.abs(rotated.imag) > 1e-9 * np.maximum(1.0, np.abs(z))
    if np.any(bad):
        worst = float(t[bad][0])
        raise AccuracyError(f"Z({worst}) has imaginary residue {rotated[bad][0].imag:.3e}")
    return rotated.real


def hardy_z(t: float) -> float:
    """Hardy's Z(t) = exp(i theta(t)) zeta(1/2 + it), real for real t."""
    arr = np.array([float(t)])
    _check_heights(arr)
    return float(_hardy_z_array(arr)[0])


def _bisect(lo: float, hi: float, zlo: float, tol: float) -> float:
    for _ in range(MAX_BISECTIONS):
        if hi - lo < tol:
            break
        mid = 0.5 * (lo + hi)
        zm = _hardy_z_array(np.array([mid]))[0]
        if zm == 0.0:
            return mid
        if (zm > 0) == (zlo > 0):
            lo, zlo = mid, zm
        else:
            hi = mid
    else:
        raise CertificationError(f"bisection on [{lo}, {hi}] did not contract below {tol}")
    return 0.5 * (lo + hi)


def find_zeros_up_to(height: float, cfg: QuadratureConfig = DEFAULT_CONFIG,
                     step: float = SCAN_STEP) -> ZeroList:
    """All zeros with 0 < gamma <= height, certified against the argument principle."""
    if not (0.0 < height <= MAX_ABS_T):
        raise DomainError(f"height must lie in (0, {MAX_ABS_T}], got {height}")
    tol = min(1e-10, cfg.abs_tol)
    grid = np.arange(step, height + step, step)
    grid = grid[grid <= height]
    if grid.size == 0 or grid[-1] < height:
        grid = np.append(grid, height)
    values = _hardy_z_array(grid)
    found = []
    for i in range(grid.size - 1):
        a, b = values[i], values[i + 1]
        if a == 0.0:
            found.append(float(grid[i]))
        elif a * b < 0:
            found.append(_bisect(float(grid[i]), float(grid[i + 1]), float(a), tol))
    for g in found:
        z, _ = _zeta_and_logderiv(0.5 + 1j * g)
        if abs(z[0]) >= 1e-8:
            raise CertificationError(f"refined ordinate {g} has |zeta| = {abs(z[0]):.3e}")
    expected = argument_principle_count(height)
    if expected != len(found):
        raise CertificationError(
            f"scan found {len(found)} zeros below {height} but the argument principle "
            f"counts {expected}; retry with a finer step"
        )
    return ZeroList(tuple(found), "computed", float(height))


def find_first_zeros(n: int, cfg: QuadratureConfig = DEFAULT_CONFIG) -> ZeroList:
    """The n lowest zeros (n <= 100 stays inside the validated range)."""
    if n < 1:
        raise DomainError("n must be positive")
    # the n-th zero lies near the solution of the main counting term = n - 1/2
    height = 2.0 * math.pi * math.e
    while height < MAX_ABS_T and counting_main_term(height) + 7.0 / 8.0 < n + 1.5:
        height += 0.5
    height = min(height, MAX_ABS_T)
    zl = find_zeros_up_to(height, cfg)
    while len(zl) < n and height < MAX_ABS_T:
        height = min(height + 5.0, MAX_ABS_T)
        zl = find_zeros_up_to(height, cfg)
    if len(zl) < n:
        raise AccuracyError(f"fewer than {n} zeros below t = {MAX_ABS_T}")
    return zl.first(n)


def load_zeros(source: BinaryIO | bytes | str, certify: bool = False,
               sample_size: int = 10, seed: int = 0) -> ZeroList:
    """Parse a zero table: one ascending positive ordinate per line, '#' comments.

    A random sample of ``sample_size`` ordinates is checked for |zeta(1/2+i g)| < 1e-6.
    With ``certify`` the count is also checked against the argument principle up
    to the last ordinate, which then becomes ``certified_through``.
    """
    if isinstance(source, str):
        data = source.encode()
    elif isinstance(source, (bytes, bytearray)):
        data = bytes(source)
    else:
        data = source.read()
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise ParseError(0, f"not UTF-8: {exc}") from exc

    values: list[float] = []
    for line_no, raw in enumerate(io.StringIO(text), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            g = float(line)
        except ValueError:
            raise ParseError(line_no, line) from None
        if not (math.isfinite(g) and g > 0):
            raise ParseError(line_no, line)
        if values and g <= values[-1]:
            raise OrderError(line_no, g, values[-1])
        values.append(g)

    if values:
        rng = np.random.default_rng(seed)
        idx = rng.choice(len(values), size=min(sample_size, len(values)), replace=False)
        sample = np.array([values[i] for i in sorted(idx)])
        if np.any(sample > MAX_ABS_T):
            raise AccuracyError(f"ordinates above {MAX_ABS_T} cannot be validated")
        z, _ = _zeta_and_logderiv(0.5 + 1j * sample)
        for g, zg in zip(sample, z):
            if abs(zg) >= 1e-6:
                raise ValidationError(float(g), float(abs(zg)))

    through = 0.0
    if certify and values:
        top = values[-1]
        if top > MAX_ABS_T - 0.01:
            raise AccuracyError(f"cannot certify beyond t = {MAX_ABS_T}")
        count = argument_principle_count(top + 0.01)
        if count != len(values):
            raise CertificationError(
                f"table lists {len(values)} zeros up to {top} but the argument principle counts {count}"
            )
        through = top
    return ZeroList(tuple(values), "loaded", through)


def counting_main_term(height: float) -> float:
    """(T/2 pi) log(T/2 pi) - T/2 pi."""
    u = height / (2.0 * math.pi)
    return u * math.log(u) - u


def zero_count_check(height: float, zl: ZeroList) -> tuple[int, float]:
    """Count of ordinates <= height and the main-term estimate of that count."""
    if height > zl.certified_through:
        raise DomainError(f"height {height} exceeds the certified range {zl.certified_through}")
    if height <= 0:
        raise DomainError("height must be positive")
    count = sum(1 for g in zl if g <= height)
    return count, counting_main_term(height)
