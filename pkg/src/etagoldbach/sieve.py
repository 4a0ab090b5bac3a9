"""Prime tables and window-constrained prime sets."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .quadratic import INSIDE, QuadraticIrrational, classify_point
from .window import Window

MAX_LIMIT = 1 << 26


@dataclass(frozen=True, eq=False)
class PrimeTable:
    limit: int
    membership: np.ndarray  # bool over [0, limit]

    @property
    def count(self) -> int:
        return int(np.count_nonzero(self.membership))

    @property
    def primes(self) -> np.ndarray:
        return np.flatnonzero(self.membership)

    def restrict(self, limit: int) -> "PrimeTable":
        return PrimeTable(limit, self.membership[: limit + 1])


@dataclass(frozen=True, eq=False)
class ConstrainedSet:
    limit: int
    membership: np.ndarray
    eta: QuadraticIrrational
    window: Window

    @property
    def count(self) -> int:
        return int(np.count_nonzero(self.membership))

    @property
    def primes(self) -> np.ndarray:
        return np.flatnonzero(self.membership)

    def restrict(self, limit: int) -> "ConstrainedSet":
        return ConstrainedSet(limit, self.membership[: limit + 1], self.eta, self.window)


def _check_limit(N: int) -> int:
    N = int(N)
    if not 2 <= N <= MAX_LIMIT:
        raise DomainError(f"N must lie in [2, 2**26], got {N}")
    return N


def _base_sieve(n: int) -> np.ndarray:
    is_prime = np.ones(n + 1, dtype=bool)
    is_prime[:2] = False
    for i in range(2, math.isqrt(n) + 1):
        if is_prime[i]:
            is_prime[i * i :: i] = False
    return is_prime


def primes_up_to(N: int, segment: int | None = None) -> PrimeTable:
    """Sieve of Eratosthenes over ``[0, N]``.

    With ``segment`` set, ``[0, N]`` is sieved in blocks of that many integers
    using the base primes up to ``sqrt(N)``; the result is identical.
    """
    N = _check_limit(N)
    if segment is None or segment > N:
        return PrimeTable(N, _base_sieve(N))
    if segment < 1:
        raise DomainError("segment must be positive")
    root = math.isqrt(N)
    base = np.flatnonzero(_base_sieve(max(root, 2)))
    membership = np.zeros(N + 1, dtype=bool)
    for lo in range(0, N + 1, segment):
        hi = min(lo + segment, N + 1)
        block = np.ones(hi - lo, dtype=bool)
        for p in base:
            p = int(p)
            start = max(p * p, -(-lo // p) * p)
            if start >= hi:
                continue
            block[start - lo :: p] = False
        if lo < 2:
            block[: 2 - lo] = False
        membership[lo:hi] = block
    return PrimeTable(N, membership)


def constrained_set(
    N: int, eta: QuadraticIrrational, window: Window, table: PrimeTable | None = None
) -> ConstrainedSet:
    """Primes ``p <= N`` with ``a < {eta p} < b``, decided exactly."""
    N = _check_limit(N)
    if table is None or table.limit < N:
        table = primes_up_to(N)
    membership = np.zeros(N + 1, dtype=bool)
    for p in np.flatnonzero(table.membership[: N + 1]):
        if classify_point(eta, int(p), window) == INSIDE:
            membership[p] = True
    return ConstrainedSet(N, membership, eta, window)


def density(N: int, eta: QuadraticIrrational, window: Window) -> float:
    """Share of primes up to ``N`` that fall in the window."""
    if N < 2:
        raise DomainError("N must be >= 2")
    table = primes_up_to(N)
    cset = constrained_set(N, eta, window, table)
    return cset.count / table.count
