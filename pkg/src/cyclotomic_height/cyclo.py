"""Cyclotomic polynomials by two independent constructions, and their heights."""

from __future__ import annotations

import threading
from dataclasses import dataclass
from functools import lru_cache

from .ntheory import euler_phi, factorize, squarefree_divisors
from .polyx import IntPoly, div_binomial, exact_div, inflate, mul_binomial

#: Largest admissible degree phi(n).
DEGREE_CAP = 10**6


class DegreeCapError(ValueError):
    pass


@dataclass(frozen=True)
class CyclotomicRecord:
    n: int
    poly: IntPoly
    height: int
    k: int  # distinct odd primes of the squarefree core

    @property
    def degree(self) -> int:
        return self.poly.degree


def _check(n: int, cap: int | None) -> None:
    if n < 1:
        raise ValueError(f"n must be a positive integer, got {n}")
    cap = DEGREE_CAP if cap is None else cap
    if euler_phi(n) > cap:
        raise DegreeCapError(f"phi({n}) = {euler_phi(n)} exceeds degree cap {cap}")


@lru_cache(maxsize=64)
def _squarefree_mobius(primes: tuple[int, ...]) -> IntPoly:
    """Phi_r for squarefree r from the Moebius product over divisors of r.

    Every factor with mu = +1 is multiplied in before any division, so each
    intermediate quotient is Phi_r times the remaining divisors and stays a
    polynomial; each division checks its own exactness.
    """
    r = 1
    for p in primes:
        r *= p
    divs = squarefree_divisors(primes)
    acc = IntPoly((1,))
    for d, mu in divs:
        if mu == 1:
            acc = mul_binomial(acc, r // d)
    for d, mu in divs:
        if mu == -1:
            acc = div_binomial(acc, r // d)
    return acc


def _record(n: int, primes: tuple[int, ...], core: IntPoly) -> CyclotomicRecord:
    r = 1
    for p in primes:
        r *= p
    poly = inflate(core, n // r)
    return CyclotomicRecord(n, poly, poly.height(), sum(1 for p in primes if p != 2))


def cyclotomic(n: int, cap: int | None = None) -> CyclotomicRecord:
    """Phi_n via the Moebius product on the radical, then inflation."""
    _check(n, cap)
    primes = factorize(n).primes
    return _record(n, primes, _squarefree_mobius(primes))


def cyclotomic_alt(n: int, cap: int | None = None) -> CyclotomicRecord:
    """Phi_n built prime by prime: Phi_{mp}(z) = Phi_m(z^p) / Phi_m(z)."""
    _check(n, cap)
    primes = factorize(n).primes
    acc = IntPoly((-1, 1))
    for p in primes:
        acc = exact_div(inflate(acc, p), acc)
    return _record(n, primes, acc)


_height_lock = threading.Lock()
_heights: dict[int, int] = {}


def height(n: int, cap: int | None = None) -> int:
    """A(n), the largest absolute coefficient of Phi_n (memoized)."""
    try:
        return _heights[n]
    except KeyError:
        pass
    h = cyclotomic(n, cap).height
    with _height_lock:
        _heights[n] = h
    return h


def coefficient(n: int, i: int) -> int:
    return cyclotomic(n).poly[i]


def product_over_divisors(n: int) -> IntPoly:
    """prod_{d | n} Phi_d(z); equals z^n - 1."""
    from .ntheory import divisors

    acc = IntPoly((1,))
    for d in divisors(n):
        acc = acc * cyclotomic(d).poly
    return acc
