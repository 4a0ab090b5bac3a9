"""Window indicator, its Fourier coefficients and smoothed containers.

A container is the indicator of ``[alpha, beta]`` convolved with ``r`` boxes
of width ``delta / r`` each, i.e. a B-spline smoothing of total width
``delta``. It equals 1 on ``[alpha + delta/2, beta - delta/2]``, vanishes
outside ``(alpha - delta/2, beta + delta/2)`` and has Fourier coefficients
decaying like ``|m|**-(r+1)``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DomainError


def parse_rational(text) -> Fraction:
    """``"17/20"``, ``"0.85"`` or a number, as an exact Fraction."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, float):
        return Fraction(str(text))
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise DomainError(f"not a rational: {text!r}") from exc


@dataclass(frozen=True)
class Window:
    a: Fraction
    b: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", parse_rational(self.a))
        object.__setattr__(self, "b", parse_rational(self.b))
        if not (0 <= self.a < self.b <= 1):
            raise DomainError(f"window needs 0 <= a < b <= 1, got ({self.a}, {self.b})")

    @property
    def width(self) -> Fraction:
        return self.b - self.a

    @classmethod
    def parse(cls, text: str) -> "Window":
        """``"1/5,17/20"`` or ``"1/5..17/20"``."""
        sep = ".." if ".." in text else ","
        parts = text.split(sep)
        if len(parts) != 2:
            raise DomainError(f"window must be 'a,b' or 'a..b', got {text!r}")
        return cls(parse_rational(parts[0]), parse_rational(parts[1]))

    def __str__(self) -> str:
        return f"{self.a}..{self.b}"


def _frac(x):
    if isinstance(x, (Fraction, int)):
        return Fraction(x) % 1
    return x - math.floor(x)


def psi0(window: Window, x) -> int:
    """Periodic indicator of the open window: 1 iff ``a < {x} < b``."""
    f = _frac(x)
    return int(window.a < f < window.b)


def box_coeff(window: Window, m: int) -> complex:
    """Fourier coefficient ``int_a^b exp(-2 pi i m x) dx``."""
    width = float(window.width)
    if m == 0:
        return complex(width)
    phase = cmath.exp(-1j * math.pi * m * float(window.a + window.b))
    return phase * math.sin(math.pi * m * width) / (math.pi * m)


@dataclass(frozen=True)
class Container:
    alpha: Fraction
    beta: Fraction
    delta: Fraction
    r: int


def make_container(alpha, beta, delta, r: int) -> Container:
    alpha, beta, delta = (parse_rational(v) for v in (alpha, beta, delta))
    r = int(r)
    if r < 1:
        raise DomainError("r must be >= 1")
    if not 0 < delta < Fraction(1, 2):
        raise DomainError(f"delta must lie in (0, 1/2), got {delta}")
    if not delta <= beta - alpha <= 1 - delta:
        raise DomainError(
            f"need delta <= beta - alpha <= 1 - delta; got beta - alpha = {beta - alpha}"
        )
    return Container(alpha, beta, delta, r)


def _irwin_hall_cdf(s, r: int) -> np.ndarray:
    """CDF of a sum of ``r`` independent uniforms on [0, 1], elementwise."""
    s = np.clip(np.asarray(s, dtype=np.float64), 0.0, float(r))
    # evaluate on the lower half and reflect, keeps the alternating sum short
    upper = s > r / 2
    t = np.where(upper, r - s, s)
    total = np.zeros_like(t)
    for k in range(r // 2 + 1):
        total += (-1) ** k * math.comb(r, k) * np.clip(t - k, 0.0, None) ** r
    total /= math.factorial(r)
    return np.where(upper, 1.0 - total, total)


def container_eval(c: Container, x):
    """Value of the smoothed indicator at ``x`` (periodic with period 1).

    Scalars give a float, arrays an array.
    """
    scalar = np.ndim(x) == 0
    xs = np.asarray(_frac(x) if scalar else np.mod(np.asarray(x, dtype=float), 1.0), dtype=float)
    # measure from the start of each edge ramp so x on a knot gives an exact 0
    rise = float(c.alpha - c.delta / 2)
    fall = float(c.beta - c.delta / 2)
    scale = c.r / float(c.delta)
    total = np.zeros_like(xs)
    # support has length <= 1, shifts -1..1 cover the wraparound
    for k in (-1, 0, 1):
        y = xs + k
        total += _irwin_hall_cdf((y - rise) * scale, c.r)
        total -= _irwin_hall_cdf((y - fall) * scale, c.r)
    out = np.clip(total, 0.0, 1.0)
    return float(out) if scalar else out


def knots(c: Container) -> list[float]:
    """Break points of the piecewise-polynomial container inside [0, 1)."""
    pts = set()
    for edge in (c.alpha, c.beta):
        for j in range(c.r + 1):
            pts.add(float((edge + (Fraction(j, c.r) - Fraction(1, 2)) * c.delta) % 1))
    return sorted(pts)


def container_coeff(c: Container, m: int) -> complex:
    """Closed-form Fourier coefficient: box coefficient times ``sinc**r``."""
    width = float(c.beta - c.alpha)
    if m == 0:
        return complex(width)
    phase = cmath.exp(-1j * math.pi * m * float(c.alpha + c.beta))
    box = phase * math.sin(math.pi * m * width) / (math.pi * m)
    u = math.pi * m * float(c.delta) / c.r
    return box * (math.sin(u) / u) ** c.r


def coeff_bound(c: Container, m: int) -> float:
    """``min(beta - alpha + delta, 1/(pi|m|), (1/(pi|m|)) (r/(pi|m|delta))**r)``."""
    width = float(c.beta - c.alpha + c.delta)
    if m == 0:
        return width
    inv = 1.0 / (math.pi * abs(m))
    decay = inv * (c.r / (math.pi * abs(m) * float(c.delta))) ** c.r
    return min(width, inv, decay)


def tail_bound(c: Container, M: int) -> float:
    """Bound on ``sum_{|m| > M} |c(m)|`` from the ``|m|**-(r+1)`` decay."""
    if c.r < 1 or M < 1:
        raise DomainError("need r >= 1 and M >= 1")
    k = (c.r / (math.pi * float(c.delta))) ** c.r / math.pi
    # 2 * sum_{m > M} k / m**(r+1) <= 2 k / (r M**r)
    return 2.0 * k / (c.r * M**c.r)


def triple_conv(window: Window, x):
    """``(psi0 * psi0 * psi0)(x)`` on the unit circle, exactly.

    The non-periodic triple convolution of the box ``(a, b)`` is
    ``w**2 h((y - 3a)/w)`` with ``h`` the Irwin-Hall(3) density; periodising
    sums its integer shifts. Rational ``x`` gives a Fraction, float ``x`` a
    float.
    """
    exact = isinstance(x, (Fraction, int))
    xf = Fraction(x)
    w = window.width
    lo = 3 * window.a
    total = Fraction(0)
    # support [3a, 3b] has length <= 3
    k_min = math.floor(lo - xf)
    for k in range(k_min, k_min + 5):
        s = (xf + k - lo) / w
        total += w * w * _ih3_density(s)
    return total if exact else float(total)


def _ih3_density(s: Fraction) -> Fraction:
    if s <= 0 or s >= 3:
        return Fraction(0)
    if s <= 1:
        return s * s / 2
    if s <= 2:
        return (-2 * s * s + 6 * s - 3) / 2
    return (3 - s) ** 2 / 2
