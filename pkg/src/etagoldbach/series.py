"""The oscillating window factor, the ternary singular series and main terms."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DomainError, NumericalError
from .quadratic import QuadraticIrrational, frac_eta_p
from .sieve import primes_up_to
from .window import Window


@dataclass(frozen=True)
class SeriesValue:
    value: float
    truncation: int
    tail_bound: float


def sigma_window_terms(eta: QuadraticIrrational, N: int, window: Window, M: int) -> complex:
    """Symmetric partial sum over ``|m| <= M`` of

    ``exp(2 pi i m (eta N - 1.5 (a + b))) sin(pi m (b - a))**3 / (pi m)**3``

    with the ``m = 0`` term equal to ``(b - a)**3``. Returned as a complex
    number so callers can inspect the imaginary residue.
    """
    width = float(window.width)
    shift = float(frac_eta_p(eta, N)) - 1.5 * float(window.a + window.b)
    m = np.arange(1, M + 1, dtype=np.float64)
    mags = np.sin(np.pi * m * width) ** 3 / (np.pi * m) ** 3
    pos = np.exp(2j * np.pi * m * shift) * mags
    # sin**3 and m**3 are both odd in m, so the -m term has the same magnitude
    neg = np.exp(-2j * np.pi * m * shift) * mags
    return complex(width**3 + pos.sum() + neg.sum())


def sigma_window(eta: QuadraticIrrational, N: int, window: Window, tol: float) -> SeriesValue:
    """``sigma(N, a, b)`` truncated so that the tail is at most ``tol``."""
    if tol <= 0:
        raise DomainError("tol must be positive")
    M = max(1, math.ceil(math.sqrt(1.0 / (math.pi**3 * tol))))
    total = sigma_window_terms(eta, N, window, M)
    if abs(total.imag) > 1e-12:
        raise NumericalError(f"imaginary residue {total.imag:.3g} in sigma_window")
    return SeriesValue(total.real, M, 1.0 / (math.pi**3 * M * M))


def factorize(n: int) -> dict[int, int]:
    """Prime factorisation by trial division."""
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@lru_cache(maxsize=16)
def _euler_product(cutoff: int) -> float:
    ps = primes_up_to(cutoff).primes.astype(np.float64)
    return float(np.exp(np.log1p(1.0 / (ps - 1.0) ** 3).sum()))


def euler_cutoff(tol: float) -> int:
    """Smallest ``P`` with ``sum_{n > P} 1/(n-1)**3 <= 1/(2 (P-1)**2) <= tol``."""
    return max(2, 1 + math.ceil(math.sqrt(1.0 / (2.0 * tol))))


def singular_series(N: int, tol: float = 1e-9, plus_sign: bool = False) -> SeriesValue:
    """``prod_p (1 + 1/(p-1)**3) * prod_{p | N} (1 - 1/(p**2 - 3p + 3))``.

    ``plus_sign=True`` uses ``+`` in the second product, which does not
    vanish for even ``N``.
    """
    if N < 2:
        raise DomainError("N must be >= 2")
    if tol <= 0:
        raise DomainError("tol must be positive")
    P = euler_cutoff(tol)
    c0 = _euler_product(P)
    log_tail = 1.0 / (2.0 * (P - 1) ** 2)
    sign = 1 if plus_sign else -1
    local = 1.0
    for p in factorize(N):
        local *= 1 + sign / (p * p - 3 * p + 3)
    value = c0 * local
    return SeriesValue(value, P, abs(value) * math.expm1(log_tail))


def main_term_I(N: int, sigma_n: float) -> float:
    """``sigma(N) N**2 / (2 ln(N)**3)``."""
    if N < 3:
        raise DomainError("N must be >= 3")
    return sigma_n * N * N / (2.0 * math.log(N) ** 3)


def predict_J(I_exact: int, sigma_w: float) -> float:
    if sigma_w < 0:
        raise DomainError("sigma_w must be nonnegative")
    return I_exact * sigma_w
