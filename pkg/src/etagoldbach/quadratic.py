"""Exact arithmetic for quadratic irrationalities ``(p0 + sqrt(d)) / q0``.

Everything on the certified path is integer arithmetic: continued fractions
run the classical surd recurrence on ``(P, Q)`` pairs, and fractional parts
``{eta * p}`` come from an integer square root of ``d * 4**bits``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

import mpmath

from .errors import BudgetExceeded, DomainError, IrrationalityError

DEFAULT_BITS = 128
MAX_BITS = 4096

INSIDE = "Inside"
OUTSIDE = "Outside"


@dataclass(frozen=True)
class QuadraticIrrational:
    """The number ``(p0 + sqrt(d)) / q0`` with ``q0 | d - p0**2``.

    ``q0`` keeps its sign: ``(p0 + sqrt(d)) / q0`` with ``q0 < 0`` cannot be
    rewritten with a positive denominator and ``+sqrt(d)``.
    """

    p0: int
    d: int
    q0: int

    def mpf(self, dps: int = 50):
        with mpmath.workdps(dps):
            return (mpmath.mpf(self.p0) + mpmath.sqrt(self.d)) / self.q0

    def __float__(self) -> float:
        return float(self.mpf(30))

    def __str__(self) -> str:
        return f"{self.p0},{self.d},{self.q0}"


@dataclass(frozen=True)
class ContinuedFraction:
    """Eventually periodic expansion ``[a0; preperiod[1:], (period)*]``."""

    preperiod: tuple[int, ...]
    period: tuple[int, ...]
    eta: QuadraticIrrational | None = None

    def terms(self) -> Iterator[int]:
        yield from self.preperiod
        while True:
            yield from self.period

    def partial_quotients(self, n: int) -> list[int]:
        it = self.terms()
        return [next(it) for _ in range(n)]

    def evaluate(self, n_terms: int) -> Fraction:
        """Value of the convergent built from the first ``n_terms`` quotients."""
        h, h_prev, k, k_prev = 1, 0, 0, 1
        for a in self.partial_quotients(n_terms):
            h, h_prev = a * h + h_prev, h
            k, k_prev = a * k + k_prev, k
        return Fraction(h, k)


@dataclass(frozen=True)
class Convergent:
    D: int
    Q: int
    theta2: float


@dataclass(frozen=True)
class CertifiedFrac:
    """``value / 2**bits`` approximates ``{eta p}`` to within ``radius / 2**bits``."""

    value: int
    radius: int
    bits: int

    def __float__(self) -> float:
        return self.value / (1 << self.bits)

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.value, 1 << self.bits)

    @property
    def error(self) -> Fraction:
        return Fraction(self.radius, 1 << self.bits)


@dataclass(frozen=True)
class RationalApprox:
    d: int
    q: int
    theta1: Fraction
    tau: int


def make_eta(p0: int, d: int, q0: int) -> QuadraticIrrational:
    """Build ``(p0 + sqrt(d)) / q0`` in the form the surd recurrence needs.

    When ``q0`` does not divide ``d - p0**2`` all three entries are scaled by
    ``|q0|``, which leaves the value unchanged.
    """
    p0, d, q0 = int(p0), int(d), int(q0)
    if q0 == 0:
        raise DomainError("q0 must be nonzero")
    if d < 2:
        raise DomainError(f"d must be >= 2, got {d}")
    if math.isqrt(d) ** 2 == d:
        raise IrrationalityError(f"d={d} is a perfect square")
    if (d - p0 * p0) % q0:
        s = abs(q0)
        p0, d, q0 = p0 * s, d * s * s, q0 * s
    return QuadraticIrrational(p0, d, q0)


def _floor_surd(P: int, Q: int, s: int) -> int:
    # floor((P + sqrt(d)) / Q) with s = isqrt(d) and sqrt(d) irrational
    return (P + s) // Q if Q > 0 else (P + s + 1) // Q


def cf_expand(eta: QuadraticIrrational, max_steps: int = 10**6) -> ContinuedFraction:
    """Expand ``eta`` until a complete quotient ``(P + sqrt(d)) / Q`` repeats."""
    if max_steps < 2:
        raise DomainError("max_steps must be >= 2")
    d = eta.d
    s = math.isqrt(d)
    P, Q = eta.p0, eta.q0
    seen: dict[tuple[int, int], int] = {}
    quotients: list[int] = []
    for step in range(max_steps):
        state = (P, Q)
        if state in seen:
            start = seen[state]
            return ContinuedFraction(
                tuple(quotients[:start]), tuple(quotients[start:]), eta
            )
        seen[state] = step
        a = _floor_surd(P, Q, s)
        quotients.append(a)
        P = a * Q - P
        Q = (d - P * P) // Q
    raise BudgetExceeded(f"no period within {max_steps} steps; raise max_steps")


def _theta(eta: QuadraticIrrational, D: int, Q: int) -> float:
    dps = 2 * len(str(Q)) + 30
    with mpmath.workdps(dps):
        return float((eta.mpf(dps) - mpmath.mpf(D) / Q) * Q * Q)


def convergents(cf: ContinuedFraction, count: int) -> list[Convergent]:
    """First ``count`` convergents ``D/Q`` with ``theta2 = (eta - D/Q) Q**2``."""
    if count < 1:
        raise DomainError("count must be >= 1")
    out = []
    h, h_prev, k, k_prev = 1, 0, 0, 1
    for a in cf.partial_quotients(count):
        h, h_prev = a * h + h_prev, h
        k, k_prev = a * k + k_prev, k
        theta = _theta(cf.eta, h, k) if cf.eta is not None else math.nan
        out.append(Convergent(h, k, theta))
    return out


def best_convergent(eta: QuadraticIrrational, tau1: int) -> tuple[Convergent, float]:
    """Convergent with the largest denominator ``Q <= tau1``, and ``Q / tau1``."""
    if tau1 < 1:
        raise DomainError("tau1 must be >= 1")
    cf = cf_expand(eta)
    h, h_prev, k, k_prev = 1, 0, 0, 1
    best = None
    for a in cf.terms():
        h, h_prev = a * h + h_prev, h
        k, k_prev = a * k + k_prev, k
        if k > tau1:
            break
        best = (h, k)
    D, Q = best
    return Convergent(D, Q, _theta(eta, D, Q)), Q / tau1


def _scaled_bounds(eta: QuadraticIrrational, p: int, bits: int) -> tuple[int, int]:
    """Integers ``L <= eta * p * 2**bits <= H`` with ``H - L <= p/|q0| + 2``."""
    s = math.isqrt(eta.d << (2 * bits))
    # p*sqrt(d)*2**bits lies in [p*s, p*s + p)
    A = p * ((eta.p0 << bits) + s)
    q0 = eta.q0
    if q0 > 0:
        return A // q0, -(-(A + p) // q0)
    return (A + p) // q0, -(-A // q0)


def frac_eta_p(eta: QuadraticIrrational, p: int, bits: int = DEFAULT_BITS) -> CertifiedFrac:
    """Certified fixed-point ``{eta * p}`` at ``bits`` fractional bits."""
    if p < 1:
        raise DomainError("p must be >= 1")
    if bits < 64:
        raise DomainError("bits must be >= 64")
    L, H = _scaled_bounds(eta, p, bits)
    mid = (L + H) // 2
    radius = max(mid - L, H - mid)
    return CertifiedFrac(mid & ((1 << bits) - 1), radius, bits)


def classify_point(eta: QuadraticIrrational, p: int, window, bits: int = DEFAULT_BITS) -> str:
    """Decide ``a < {eta p} < b`` exactly.

    ``{x}`` lies in ``(a, b)`` iff ``floor(x - a) != floor(x - b)``; both floors
    are read off the certified enclosure, doubling precision until they are
    unambiguous. ``eta * p`` is irrational, so the loop terminates.
    """
    a, b = Fraction(window.a), Fraction(window.b)
    while bits <= MAX_BITS:
        L, H = _scaled_bounds(eta, p, bits)
        scale = 1 << bits
        fa = (_floor_shift(L, a, scale), _floor_shift(H, a, scale))
        fb = (_floor_shift(L, b, scale), _floor_shift(H, b, scale))
        if fa[0] == fa[1] and fb[0] == fb[1]:
            return INSIDE if fa[0] != fb[0] else OUTSIDE
        bits *= 2
    raise BudgetExceeded(f"classification of p={p} needs more than {MAX_BITS} bits")


def _floor_shift(x: int, r: Fraction, scale: int) -> int:
    # floor(x/scale - r) in exact integer arithmetic
    return (x * r.denominator - r.numerator * scale) // (scale * r.denominator)


def cf_rational(t: Fraction) -> list[int]:
    t = Fraction(t)
    num, den = t.numerator, t.denominator
    out = []
    while den:
        q, rem = divmod(num, den)
        out.append(q)
        num, den = den, rem
    return out


def rational_approx(t, tau: int) -> RationalApprox:
    """Dirichlet approximation ``t = d/q + theta1/(q tau)`` with ``q <= tau``.

    Returns the first convergent of ``t`` meeting ``q tau |t - d/q| < 1``; the
    last convergent with ``q <= tau`` always does, so one exists.
    """
    t = Fraction(t)
    tau = int(tau)
    if tau < 1:
        raise DomainError("tau must be >= 1")
    h, h_prev, k, k_prev = 1, 0, 0, 1
    for a in cf_rational(t):
        h, h_prev = a * h + h_prev, h
        k, k_prev = a * k + k_prev, k
        if k > tau:
            break
        err = t - Fraction(h, k)
        if abs(err) * k * tau < 1:
            return RationalApprox(h, k, err * k * tau, tau)
    raise AssertionError("unreachable: Dirichlet convergent not found")
