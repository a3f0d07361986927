"""Integer primitives: factorization, Moebius, totient, radical, primality, sieve.

All functions are pure and safe to call concurrently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np

#: Largest ``hi`` accepted by :func:`primes_in` / :func:`iter_primes`.
SIEVE_CAPACITY = 10**12

#: Default segment length (numbers per segment) of the segmented sieve.
SEGMENT_SIZE = 1 << 18

# Deterministic Miller-Rabin: the first 13 primes are a valid witness set for
# every n < 3 317 044 064 679 887 385 961 981.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_MR_LIMIT = 3_317_044_064_679_887_385_961_981


class SieveCapacityError(ValueError):
    """Requested range lies beyond :data:`SIEVE_CAPACITY`."""


@dataclass(frozen=True)
class Factorization:
    n: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        prod = 1
        last = 1
        for p, e in self.factors:
            if p <= last or e < 1:
                raise ValueError(f"malformed factor list {self.factors!r}")
            prod *= p**e
            last = p
        if prod != self.n:
            raise ValueError(f"factors {self.factors!r} do not multiply to {self.n}")

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    @property
    def omega(self) -> int:
        return len(self.factors)

    def is_squarefree(self) -> bool:
        return all(e == 1 for _, e in self.factors)


def simple_sieve(limit: int) -> np.ndarray:
    """Return all primes ``<= limit`` as an int64 array (plain Eratosthenes)."""
    if limit < 2:
        return np.zeros(0, dtype=np.int64)
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    flags[4::2] = False
    for i in range(3, math.isqrt(limit) + 1, 2):
        if flags[i]:
            flags[i * i :: 2 * i] = False
    return np.flatnonzero(flags).astype(np.int64)


# trial-division table; immutable after import
_small_primes: list[int] = [int(p) for p in simple_sieve(1 << 16)]


def is_prime(n: int) -> bool:
    """Deterministic primality test (trial division + Miller-Rabin)."""
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n % p == 0:
            return n == p
    if n < 43 * 43:
        return True
    if n >= _MR_LIMIT:
        raise ValueError(f"{n} exceeds the deterministic primality range")
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_brent(n: int) -> int:
    """A nontrivial factor of the odd composite ``n`` (Brent's cycle variant).

    The polynomial constant runs through 1, 2, ... so results are deterministic.
    """
    for c in range(1, 1000):
        y, r, q, g = 2, 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            i = 0
            while i < r and g == 1:
                ys = y
                for _ in range(min(128, r - i)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                i += 128
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ArithmeticError(f"no factor found for {n}")


def _split(m: int, out: list[int]) -> None:
    if is_prime(m):
        out.append(m)
        return
    d = _pollard_brent(m)
    _split(d, out)
    _split(m // d, out)


def factorize(n: int) -> Factorization:
    """Factor ``n``: trial division by primes below 2**16, then Pollard-Brent rho.

    Cofactors are certified by :func:`is_prime`, so ``n`` must stay below its
    deterministic range once the small primes are removed.
    """
    if n < 1:
        raise ValueError("factorize requires n >= 1")
    m = n
    found: dict[int, int] = {}
    for p in _small_primes:
        if p * p > m:
            break
        while m % p == 0:
            m //= p
            found[p] = found.get(p, 0) + 1
    if m > 1:
        big: list[int] = []
        _split(m, big)
        for p in big:
            found[p] = found.get(p, 0) + 1
    return Factorization(n, tuple(sorted(found.items())))


def mobius(n: int) -> int:
    f = factorize(n)
    if not f.is_squarefree():
        return 0
    return -1 if f.omega % 2 else 1


def euler_phi(n: int) -> int:
    result = n
    for p, _ in factorize(n).factors:
        result -= result // p
    return result


def radical(n: int) -> int:
    return math.prod(factorize(n).primes)


def divisors(n: int) -> list[int]:
    """All positive divisors of ``n`` in ascending order."""
    divs = [1]
    for p, e in factorize(n).factors:
        divs = [d * p**i for d in divs for i in range(e + 1)]
    return sorted(divs)


def squarefree_divisors(primes) -> list[tuple[int, int]]:
    """``(d, mu(d))`` for every divisor of the product of distinct ``primes``."""
    out = [(1, 1)]
    for p in primes:
        out += [(d * p, -mu) for d, mu in out]
    return out


def _check_range(lo: int, hi: int) -> None:
    if lo < 2 or hi < lo:
        raise ValueError(f"need 2 <= lo <= hi, got lo={lo}, hi={hi}")
    if hi > SIEVE_CAPACITY:
        raise SieveCapacityError(f"hi={hi} exceeds sieve capacity {SIEVE_CAPACITY}")


def sieve_segment(lo: int, hi: int, base: np.ndarray | None = None) -> np.ndarray:
    """Primes in ``[lo, hi]`` for one segment; memory is O(hi - lo).

    ``base`` must contain every prime up to sqrt(hi) when given.  Segments are
    independent work items, so callers may sieve them in parallel.
    """
    _check_range(lo, hi)
    if base is None:
        base = simple_sieve(math.isqrt(hi))
    flags = np.ones(hi - lo + 1, dtype=bool)
    for p in base:
        p = int(p)
        if p * p > hi:
            break
        start = max(p * p, (lo + p - 1) // p * p)
        flags[start - lo :: p] = False
    return np.flatnonzero(flags).astype(np.int64) + lo


def iter_primes(lo: int, hi: int, segment: int = SEGMENT_SIZE) -> Iterator[int]:
    """Yield the primes in ``[lo, hi]`` in ascending order, one segment at a time."""
    _check_range(lo, hi)
    base = simple_sieve(math.isqrt(hi))
    start = lo
    while start <= hi:
        stop = min(hi, start + segment - 1)
        for p in sieve_segment(start, stop, base):
            yield int(p)
        start = stop + 1


def primes_in(lo: int, hi: int) -> list[int]:
    """The primes in ``[lo, hi]`` ascending (segmented sieve)."""
    return list(iter_primes(lo, hi))
