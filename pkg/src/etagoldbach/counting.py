"""Exact ternary representation counts, exponential sums and arc diagnostics."""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction

import numpy as np

from .errors import BudgetExceeded, DomainError, NumericalError
from .ntt import convolve_exact
from .quadratic import QuadraticIrrational, best_convergent, frac_eta_p, make_eta, rational_approx
from .sieve import ConstrainedSet, PrimeTable, constrained_set, primes_up_to
from .window import Window, container_eval, make_container

WEIGHT_BITS = 30
ONE = 1 << WEIGHT_BITS
BRUTE_LIMIT = 10**4
DFT_LIMIT = 10**4
# absolute error allowance of container_eval, covers float rounding of {eta p}
EVAL_MARGIN = 2.0**-32


@dataclass(frozen=True, eq=False)
class WeightedIndicator:
    """Fixed-point weights over ``[0, limit]`` scaled by ``2**30``."""

    limit: int
    weights: np.ndarray  # int64

    @classmethod
    def from_set(cls, s: PrimeTable | ConstrainedSet) -> "WeightedIndicator":
        return cls(s.limit, s.membership.astype(np.int64) * ONE)

    @property
    def is_binary(self) -> bool:
        return bool(np.all((self.weights == 0) | (self.weights == ONE)))

    def support(self) -> np.ndarray:
        return self.weights > 0


@dataclass
class CountResult:
    N: int
    J: int
    I: int
    J1: float | None = None
    J2: float | None = None
    delta: float | None = None
    r: int | None = None

    def to_dict(self) -> dict:
        return {k: v for k, v in asdict(self).items() if v is not None}


def _as_indicator(ind) -> WeightedIndicator:
    if isinstance(ind, WeightedIndicator):
        return ind
    if isinstance(ind, (PrimeTable, ConstrainedSet)):
        return WeightedIndicator.from_set(ind)
    raise DomainError(f"expected an indicator or prime set, got {type(ind).__name__}")


def _binary_support(ind, N: int) -> np.ndarray:
    ind = _as_indicator(ind)
    if ind.limit < N:
        raise DomainError(f"indicator limit {ind.limit} < N={N}")
    if not ind.is_binary:
        raise DomainError("ternary_count needs a 0/1 indicator; use sandwich_counts")
    return ind.support()[: N + 1]


class TernaryCounter:
    """Pair-sum counts of a 0/1 indicator, reused for every ``N <= limit``.

    The pair counts come from one exact transform; the triple count at ``N``
    is then the exact dot product ``sum_p 1[p] * pairs[N - p]``.
    """

    def __init__(self, ind, limit: int | None = None):
        ind = _as_indicator(ind)
        limit = ind.limit if limit is None else limit
        self.limit = limit
        self.support = _binary_support(ind, limit)
        x = self.support.astype(np.int64)
        self.pairs = convolve_exact(x, x)[: limit + 1]

    def count(self, N: int) -> int:
        if not 0 <= N <= self.limit:
            raise DomainError(f"N={N} outside [0, {self.limit}]")
        idx = np.flatnonzero(self.support[: N + 1])
        return int(self.pairs[N - idx].sum())


def ternary_count(ind, N: int) -> int:
    """Ordered triples ``(p1, p2, p3)`` in the indicator with ``p1+p2+p3 = N``."""
    return TernaryCounter(ind, N).count(N)


def ternary_count_brute(ind, N: int) -> int:
    """Oracle: loop over ``(p1, p2)``, look up ``N - p1 - p2``."""
    if N > BRUTE_LIMIT:
        raise BudgetExceeded(f"brute force limited to N <= {BRUTE_LIMIT}")
    member = _binary_support(ind, N)
    ps = np.flatnonzero(member)
    total = 0
    for p1 in ps:
        rest = N - p1 - ps
        rest = rest[rest >= 0]
        total += int(np.count_nonzero(member[rest]))
    return total


def _phases(ps: np.ndarray, x) -> np.ndarray:
    if isinstance(x, (Fraction, int)):
        # rational x: reduce p * x mod 1 exactly before exponentiating
        x = Fraction(x)
        num, den = x.numerator % x.denominator, x.denominator
        if den <= 1 << 30:
            red = ps.astype(np.int64) * num % den
        else:
            red = np.array([int(p) * num % den for p in ps], dtype=object)
        return np.exp(2j * np.pi * (red / den).astype(np.float64))
    return np.exp(2j * np.pi * ((ps * float(x)) % 1.0))


def exp_sum(primes: PrimeTable, x) -> complex:
    """``S(x) = sum_{p <= N} exp(2 pi i x p)`` by direct summation."""
    return complex(_phases(primes.primes, x).sum())


def constrained_exp_sum(cset: ConstrainedSet, x) -> complex:
    """``S0(x)``: the same sum restricted to primes inside the window."""
    return complex(_phases(cset.primes, x).sum())


def dft_count_check(s, N: int) -> int:
    """Count triples from ``M = 3N + 1`` samples of the cubed exponential sum.

    ``(1/M) sum_j S0(j/M)**3 exp(-2 pi i j N / M)`` is exact because triple
    sums never exceed ``3N``; the sum is evaluated in floating point and must
    land within ``1e-3`` of an integer.
    """
    if N > DFT_LIMIT:
        raise BudgetExceeded(f"dft_count_check limited to N <= {DFT_LIMIT}")
    member = _binary_support(s, N)
    M = 3 * N + 1
    x = np.zeros(M)
    x[: N + 1] = member
    # S0(j/M) = sum_n x_n exp(+2 pi i j n / M)
    s0 = np.fft.ifft(x) * M
    value = np.fft.fft(s0**3)[N] / M
    rounded = round(value.real)
    residual = abs(value - rounded)
    if residual > 1e-3:
        raise NumericalError(f"DFT count residual {residual:.3g} at N={N}")
    return int(rounded)


def container_weights(
    table: PrimeTable, eta: QuadraticIrrational, container, round_up: bool
) -> np.ndarray:
    """Container values at ``{eta p}`` on the ``2**-30`` grid, rounded outward.

    Rounding down (or up) by at least ``EVAL_MARGIN`` makes the integer
    weights a certified lower (or upper) bound of the true values.
    """
    ps = table.primes
    xs = np.array([float(frac_eta_p(eta, int(p))) for p in ps])
    v = container_eval(container, xs)
    if round_up:
        scaled = np.minimum(ONE, np.ceil((v + EVAL_MARGIN) * ONE))
    else:
        scaled = np.maximum(0, np.floor((v - EVAL_MARGIN) * ONE))
    w = np.zeros(table.limit + 1, dtype=np.int64)
    w[ps] = scaled.astype(np.int64)
    return w


def weighted_ternary(weights: np.ndarray, N: int) -> Fraction:
    """``sum_{p1+p2+p3=N} w(p1) w(p2) w(p3)`` with weights scaled by ``2**30``."""
    w = np.asarray(weights[: N + 1], dtype=np.int64)
    pairs = convolve_exact(w, w)
    idx = np.flatnonzero(w)
    total = sum(int(w[i]) * int(pairs[N - i]) for i in idx)
    return Fraction(total, ONE**3)


def sandwich_counts(
    N: int,
    eta: QuadraticIrrational,
    window: Window,
    delta,
    r: int,
    table: PrimeTable | None = None,
) -> CountResult:
    """Exact ``J``, ``I`` and the container bounds ``J1 <= J <= J2``."""
    delta = Fraction(delta) if not isinstance(delta, float) else Fraction(str(delta))
    if window.b - window.a <= 2 * delta:
        raise DomainError(f"need b - a > 2*delta, got b - a = {window.width}, delta = {delta}")
    psi1 = make_container(window.a + delta / 2, window.b - delta / 2, delta, r)
    psi2 = make_container(window.a - delta / 2, window.b + delta / 2, delta, r)
    if table is None or table.limit < N:
        table = primes_up_to(N)
    table = table.restrict(N)
    cset = constrained_set(N, eta, window, table)
    J = ternary_count(cset, N)
    I = ternary_count(table, N)
    J1 = weighted_ternary(container_weights(table, eta, psi1, round_up=False), N)
    J2 = weighted_ternary(container_weights(table, eta, psi2, round_up=True), N)
    return CountResult(N, J, I, float(J1), float(J2), float(delta), r)


@dataclass
class ArcReport:
    N: int
    A: float
    B: float
    seed: int
    tau: int
    threshold_q: int
    samples: int
    n_major: int
    n_minor: int
    max_S_minor: float
    max_S_shifted: float
    bound_value: float
    ratio: float
    conv_Q: int
    c_measured: float
    points: list = field(default_factory=list)

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)


SQRT2 = make_eta(0, 2, 1)


def minor_arc_scan(
    primes: PrimeTable,
    A: float = 10.0,
    B: float = 10.0,
    samples: int = 1000,
    seed: int = 0,
    eta: QuadraticIrrational = SQRT2,
    shifts: int = 3,
) -> ArcReport:
    """Sample ``t = k/(6N+1)``, split into major/minor arcs, record sup norms.

    ``tau = N / ln(N)**B`` and the arc split ``q <= ln(N)**A`` are both
    clamped to at least 1. Minor-arc points give ``max |S(t)|``; major-arc
    points give ``max |S(t + m eta)|`` over ``1 <= |m| <= shifts``. The ratio
    of the larger of the two to ``sqrt(N tau) ln(N)**4`` is reported.
    """
    if samples < 1:
        raise DomainError("samples must be >= 1")
    N = primes.limit
    if N < 100:
        raise DomainError("minor_arc_scan needs N >= 100")
    logN = math.log(N)
    tau = max(1, math.floor(N / logN**B))
    threshold_q = max(1, math.floor(logN**A))
    denom = 6 * N + 1
    rng = np.random.default_rng(seed)
    ks = rng.integers(0, denom, size=samples)

    ps = primes.primes
    fracs = np.array([float(frac_eta_p(eta, int(p))) for p in ps])
    base = np.array(ps, dtype=np.int64)

    points = []
    max_minor = 0.0
    max_shifted = 0.0
    n_major = n_minor = 0
    for k in ks:
        k = int(k)
        t = Fraction(k, denom)
        approx = rational_approx(t, tau)
        ang = (base * k % denom) / denom
        if approx.q <= threshold_q:
            n_major += 1
            for m in range(-shifts, shifts + 1):
                if m == 0:
                    continue
                val = abs(np.exp(2j * np.pi * ((ang + m * fracs) % 1.0)).sum())
                max_shifted = max(max_shifted, float(val))
            arc = "E1"
        else:
            n_minor += 1
            val = abs(np.exp(2j * np.pi * ang).sum())
            max_minor = max(max_minor, float(val))
            arc = "E2"
        points.append([k, approx.d, approx.q, str(approx.theta1), arc])

    bound = math.sqrt(N) * math.sqrt(tau) * logN**4
    conv, c_measured = best_convergent(eta, max(1, math.isqrt(tau)))
    return ArcReport(
        N=N,
        A=A,
        B=B,
        seed=seed,
        tau=tau,
        threshold_q=threshold_q,
        samples=samples,
        n_major=n_major,
        n_minor=n_minor,
        max_S_minor=max_minor,
        max_S_shifted=max_shifted,
        bound_value=bound,
        ratio=max(max_minor, max_shifted) / bound,
        conv_Q=conv.Q,
        c_measured=c_measured,
        points=points,
    )
