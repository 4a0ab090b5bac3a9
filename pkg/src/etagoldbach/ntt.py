"""Exact integer convolution by number-theoretic transforms.

Each modulus is a prime below ``2**32`` whose multiplicative group has a
subgroup of order ``2**27``, so products of residues fit in ``uint64`` and
transforms up to length ``2**27`` are available. Results larger than one
modulus are rebuilt with the Chinese remainder theorem.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DomainError

# (prime, primitive root, 2-adic order of prime - 1)
MODULI = (
    (3221225473, 5, 30),
    (2013265921, 31, 27),
    (2281701377, 3, 27),
    (3489660929, 3, 28),
)
MAX_LOG_LENGTH = 27


def _bit_reverse(n: int) -> np.ndarray:
    bits = n.bit_length() - 1
    idx = np.arange(n, dtype=np.int64)
    rev = np.zeros(n, dtype=np.int64)
    for _ in range(bits):
        rev = (rev << 1) | (idx & 1)
        idx >>= 1
    return rev


def _twiddles(w: int, half: int, p: int) -> np.ndarray:
    tw = np.ones(1, dtype=np.uint64)
    P = np.uint64(p)
    while len(tw) < half:
        step = np.uint64(pow(w, len(tw), p))
        tw = np.concatenate([tw, tw * step % P])
    return tw[:half]


def ntt(a: np.ndarray, p: int, g: int, inverse: bool = False) -> np.ndarray:
    """In-order radix-2 transform of ``a`` (length a power of two) modulo ``p``."""
    n = len(a)
    if n & (n - 1):
        raise DomainError("transform length must be a power of two")
    P = np.uint64(p)
    a = np.asarray(a, dtype=np.uint64)[_bit_reverse(n)] % P
    if n == 1:
        return a
    w = pow(g, (p - 1) // n, p)
    if inverse:
        w = pow(w, -1, p)
    tw_full = _twiddles(w, n // 2, p)
    h = 1
    while h < n:
        tw = tw_full[:: n // (2 * h)]
        blocks = a.reshape(-1, 2 * h)
        u = blocks[:, :h].copy()
        v = blocks[:, h:] * tw % P
        blocks[:, :h] = (u + v) % P
        blocks[:, h:] = (u + P - v) % P
        h *= 2
    if inverse:
        a = a * np.uint64(pow(n, -1, p)) % P
    return a


def _cyclic_mod(a, b, length: int, p: int, g: int) -> np.ndarray:
    fa = np.zeros(length, dtype=np.uint64)
    fb = np.zeros(length, dtype=np.uint64)
    fa[: len(a)] = a % p
    fb[: len(b)] = b % p
    P = np.uint64(p)
    return ntt(ntt(fa, p, g) * ntt(fb, p, g) % P, p, g, inverse=True)


def convolve_exact(a, b, bound: int | None = None) -> np.ndarray:
    """Linear convolution of two nonnegative integer sequences, exactly.

    ``bound`` must exceed every output coefficient; by default it is
    ``max(a) * max(b) * min(len(a), len(b)) + 1``. The result is ``int64``
    when it fits and an object array of Python ints otherwise.
    """
    a = np.asarray(a, dtype=object) if _needs_object(a) else np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=object) if _needs_object(b) else np.asarray(b, dtype=np.int64)
    if len(a) == 0 or len(b) == 0:
        return np.zeros(0, dtype=np.int64)
    if min(int(a.min()), int(b.min())) < 0:
        raise DomainError("convolve_exact takes nonnegative sequences")
    max_a, max_b = int(a.max()), int(b.max())
    if max(max_a, max_b) >= MODULI[1][0]:
        raise DomainError("input coefficients must be below 2**30")
    if bound is None:
        bound = max_a * max_b * min(len(a), len(b)) + 1
    out_len = len(a) + len(b) - 1
    length = 1 << max(0, (out_len - 1).bit_length())
    if length.bit_length() - 1 > MAX_LOG_LENGTH:
        raise DomainError(f"convolution of length {out_len} exceeds 2**{MAX_LOG_LENGTH}")
    a = np.asarray(a, dtype=np.uint64)
    b = np.asarray(b, dtype=np.uint64)

    moduli, modulus = [], 1
    for p, g, _ in MODULI:
        moduli.append((p, g))
        modulus *= p
        if modulus > bound:
            break
    else:
        raise DomainError("result bound exceeds the product of all moduli")

    residues = [_cyclic_mod(a, b, length, p, g)[:out_len] for p, g in moduli]
    if len(moduli) == 1:
        return residues[0].astype(np.int64)
    result = _crt(residues, [p for p, _ in moduli])
    if bound <= 1 << 63:
        return result.astype(np.int64)
    return result


def _needs_object(x) -> bool:
    return isinstance(x, np.ndarray) and x.dtype == object


def _crt(residues, primes) -> np.ndarray:
    # Garner's mixed-radix reconstruction, digits stay below 2**32
    digits = [residues[0].astype(object)]
    for i in range(1, len(primes)):
        p = primes[i]
        x = residues[i].astype(object)
        prod = 1
        acc = np.zeros(len(x), dtype=object)
        for j in range(i):
            acc = acc + digits[j] * prod
            prod *= primes[j]
        inv = pow(prod % p, -1, p)
        digits.append(((x - acc) % p) * inv % p)
    out = np.zeros(len(residues[0]), dtype=object)
    prod = 1
    for j, dgt in enumerate(digits):
        out = out + dgt * prod
        prod *= primes[j]
    return out


def moduli_product(k: int) -> int:
    return math.prod(p for p, _, _ in MODULI[:k])
