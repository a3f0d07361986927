"""Upper bounds on A(n) for n = p_1 ... p_k, and the n**e_k comparison scale.

The bound products and constants are exact (int / Fraction).  Only n**e_k is
irrational; it is carried as an interval from ``mpmath.iv``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import prod

from mpmath import iv

from .ntheory import is_prime
from .polyx import HighPrecisionMagnitude, endpoints, iv_precision

#: Working precision for n**e_k.
POWER_BITS = 128


class MalformedTupleError(ValueError):
    pass


def check_tuple(primes, min_k: int = 1) -> tuple[int, ...]:
    """Validate ascending distinct odd primes; returns them as a tuple of ints."""
    ps = tuple(int(p) for p in primes)
    if len(ps) < min_k:
        raise MalformedTupleError(f"need at least {min_k} primes, got {len(ps)}")
    for p in ps:
        if p == 2:
            raise MalformedTupleError("the even prime 2 is not allowed")
        if not is_prime(p):
            raise MalformedTupleError(f"{p} is not prime")
    if any(a >= b for a, b in zip(ps, ps[1:])):
        raise MalformedTupleError(f"primes must be strictly ascending: {ps}")
    return ps


def ck_constant(k: int) -> Fraction:
    if k < 1:
        raise ValueError("k must be >= 1")
    if k <= 2:
        return Fraction(1)
    if k <= 4:
        return Fraction(3, 4)
    return Fraction(3, 8) ** (2 ** (k - 5))


def exponent(k: int) -> Fraction:
    """e_k = 2**(k-1)/k - 1."""
    return Fraction(2 ** (k - 1), k) - 1


def bateman_bound(primes) -> int:
    ps = check_tuple(primes)
    k = len(ps)
    return prod(ps[l - 1] ** (2 ** (k - 1 - l) - 1) for l in range(1, k - 1))


def refined_bound(primes) -> Fraction:
    ps = check_tuple(primes)
    return ck_constant(len(ps)) * bateman_bound(ps)


def power_interval(n: int, e: Fraction, bits: int = POWER_BITS):
    """``n**e`` as an ``mpmath.iv`` interval at ``bits`` of precision."""
    with iv_precision(bits):
        if e == 0:
            return iv.mpf(1)
        return iv.exp(iv.log(iv.mpf(n)) * (iv.mpf(e.numerator) / e.denominator))


def compare_to_power(x: int, n: int, e: Fraction) -> int:
    """Sign of ``x - n**e`` for integers ``x, n >= 1`` and rational ``e >= 0``, exactly."""
    lhs = x**e.denominator
    rhs = n**e.numerator
    return (lhs > rhs) - (lhs < rhs)


def bridging_holds(primes, bits: int = POWER_BITS) -> bool:
    """bateman <= n**e_k, decided by intervals with widening precision.

    Exact equality (only possible when e_k = 0) is settled by the exact
    comparison; otherwise precision doubles until the enclosure separates.
    """
    ps = check_tuple(primes)
    b = bateman_bound(ps)
    n = prod(ps)
    e = exponent(len(ps))
    exact = compare_to_power(b, n, e)
    if exact == 0:
        return True
    while True:
        lo, hi = endpoints(power_interval(n, e, bits))
        if b < lo:
            result = True
            break
        if b > hi:
            result = False
            break
        bits *= 2
    assert result == (exact < 0), "interval and exact comparisons disagree"
    return result


@dataclass(frozen=True)
class BoundReport:
    n: int
    k: int
    primes: tuple[int, ...]
    bateman: int
    c_k: Fraction
    refined: Fraction
    exponent: Fraction
    power_bound: HighPrecisionMagnitude  # c_k * n**e_k
    lower_target: HighPrecisionMagnitude  # d_k * n**e_k
    bridging: bool  # bateman <= n**e_k
    d_k: str

    def as_row(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "primes": list(self.primes),
            "bateman": self.bateman,
            "c_k": str(self.c_k),
            "refined": str(self.refined),
            "exponent": str(self.exponent),
            "power_bound": self.power_bound.decimal(30),
            "power_bound_error": self.power_bound.error_str(),
            "d_k": self.d_k,
            "lower_target": self.lower_target.decimal(30),
            "lower_target_error": self.lower_target.error_str(),
            "bridging": self.bridging,
        }


def bound_report(primes, d_k=0, bits: int = POWER_BITS) -> BoundReport:
    ps = check_tuple(primes)
    k = len(ps)
    n = prod(ps)
    e = exponent(k)
    ck = ck_constant(k)
    b = bateman_bound(ps)
    d_str = str(d_k)
    with iv_precision(bits + 16):
        d = iv.mpf(d_str)
        if endpoints(d)[0] < 0:
            raise ValueError("d_k must be >= 0")
        scale = power_interval(n, e, bits + 16)
        upper = scale * (iv.mpf(ck.numerator) / ck.denominator)
        target = scale * d
    return BoundReport(
        n=n,
        k=k,
        primes=ps,
        bateman=b,
        c_k=ck,
        refined=ck * b,
        exponent=e,
        power_bound=HighPrecisionMagnitude.from_interval(upper, bits),
        lower_target=HighPrecisionMagnitude.from_interval(target, bits),
        bridging=bridging_holds(ps, bits),
        d_k=d_str,
    )
