"""Lower-bound witness for A(p_1 ... p_k).

For ascending odd primes with half-gaps ``p_l = p_1 + 2 j_l`` the witness
integer is ``a = sum_{l<=k//2} f_l`` with

    f_l = (p_1**(2l-1) + q**(2l-1)) / 4,   q = p_2 if j_2 is odd else p_2 - 2,

and ``|Phi_n(exp(2 pi i a / M))|``, ``M = n / p_k``, is evaluated two ways:
as ``p_k`` times a signed product of ``|sin|`` values over the nonempty
subsets of the first ``k - 1`` primes, and directly from the coefficients.
Since ``|Phi_n(z)| <= (phi(n) + 1) A(n) <= n A(n)`` on the unit circle,
either value divided by ``n`` bounds A(n) from below.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field, replace
from itertools import combinations
from typing import Sequence

import mpmath
from mpmath import iv

from .bounds import check_tuple, exponent
from .cyclo import DEGREE_CAP, cyclotomic, height
from .ntheory import euler_phi
from .polyx import (
    PRECISION_CAP,
    HighPrecisionMagnitude,
    endpoints,
    eval_unit_circle,
    iv_precision,
)

#: eval_product doubles its precision until the relative error is below this.
RELATIVE_TARGET = mpmath.mpf("1e-10")

CASE1 = "Case1"
CASE2 = "Case2"


class DegenerateWitnessError(ValueError):
    """gcd(a, M) > 1: the sine-product formula does not apply."""


@dataclass(frozen=True)
class PrimeTuple:
    primes: tuple[int, ...]
    n: int
    M: int
    half_gaps: tuple[int, ...]
    case_tag: str
    window: int

    @property
    def k(self) -> int:
        return len(self.primes)

    @property
    def k1(self) -> int:
        return self.k // 2

    @property
    def p1(self) -> int:
        return self.primes[0]

    @property
    def pk(self) -> int:
        return self.primes[-1]


@dataclass(frozen=True)
class WitnessPoint:
    a: int
    M: int
    gcd: int

    @property
    def coprime(self) -> bool:
        return self.gcd == 1


@dataclass(frozen=True)
class SineFactor:
    subset: tuple[int, ...]  # 1-based indices into p_1 .. p_{k-1}
    multiplier: int  # 1 or p_k
    exponent: int  # +1 numerator, -1 denominator
    denomprod: int
    residue: int  # a * multiplier mod 2 * denomprod
    magnitude: HighPrecisionMagnitude | None = None


def classify(primes: Sequence[int]) -> PrimeTuple:
    ps = check_tuple(primes, min_k=2)
    p1 = ps[0]
    gaps = tuple((p - p1) // 2 for p in ps)
    n = math.prod(ps)
    return PrimeTuple(
        primes=ps,
        n=n,
        M=n // ps[-1],
        half_gaps=gaps,
        case_tag=CASE1 if gaps[1] % 2 else CASE2,
        window=ps[-1] - p1,
    )


def f_value(l: int, t: PrimeTuple) -> int:
    if not 1 <= l <= t.k1:
        raise ValueError(f"l must lie in 1..{t.k1}, got {l}")
    q = t.primes[1] if t.case_tag == CASE1 else t.primes[1] - 2
    e = 2 * l - 1
    total = t.p1**e + q**e
    if total % 4:
        raise AssertionError(f"f_{l} not integral for {t.primes}: case misclassified")
    return total // 4


def witness_point(t: PrimeTuple) -> WitnessPoint:
    a = sum(f_value(l, t) for l in range(1, t.k1 + 1))
    return WitnessPoint(a=a, M=t.M, gcd=math.gcd(a, t.M))


def enumerate_factors(t: PrimeTuple, point: WitnessPoint) -> list[SineFactor]:
    """All ``2**k - 2`` sine factors; magnitudes are left unset."""
    head = t.primes[:-1]
    out = []
    for size in range(1, t.k):
        for subset in combinations(range(1, t.k), size):
            denom = math.prod(head[i - 1] for i in subset)
            for mult in (1, t.pk):
                odd = size % 2 == 1
                sign = 1 if odd == (mult == 1) else -1
                out.append(
                    SineFactor(
                        subset=subset,
                        multiplier=mult,
                        exponent=sign,
                        denomprod=denom,
                        residue=point.a * mult % (2 * denom),
                    )
                )
    return out


def sine_interval(residue: int, denomprod: int):
    """``|sin(pi * residue / denomprod)|`` as an interval at the current iv precision."""
    r = residue % (2 * denomprod)
    if r % denomprod == 0:
        return iv.mpf(0)
    # fold into (0, 1/2]: |sin(pi x)| is symmetric about x = 1/2 and 2-periodic
    if r > denomprod:
        r -= denomprod
    if 2 * r > denomprod:
        r = denomprod - r
    return iv.sin(iv.pi * (iv.mpf(r) / denomprod))


def factor_magnitudes(
    t: PrimeTuple, point: WitnessPoint, precision_bits: int = 256
) -> list[SineFactor]:
    out = []
    with iv_precision(precision_bits + 32):
        for f in enumerate_factors(t, point):
            mag = HighPrecisionMagnitude.from_interval(
                sine_interval(f.residue, f.denomprod), precision_bits
            )
            out.append(replace(f, magnitude=mag))
    return out


def _product_interval(t: PrimeTuple, factors: list[SineFactor]):
    num = iv.mpf(t.pk)
    den = iv.mpf(1)
    for f in factors:
        s = sine_interval(f.residue, f.denomprod)
        if endpoints(s)[1] == 0:
            raise AssertionError(f"zero sine factor {f.subset} at a coprime point")
        if f.exponent > 0:
            num *= s
        else:
            den *= s
    if endpoints(den)[0] <= 0:
        raise AssertionError("denominator enclosure contains zero; precision too low")
    return num / den


def eval_product(
    t: PrimeTuple, point: WitnessPoint, precision_bits: int = 256
) -> HighPrecisionMagnitude:
    """``|Phi_n(eps**a)|`` from the signed sine product with prefactor p_k."""
    if not point.coprime:
        raise DegenerateWitnessError(
            f"gcd(a, M) = {point.gcd} for {t.primes}; use direct_eval instead"
        )
    factors = enumerate_factors(t, point)
    bits = precision_bits
    while True:
        with iv_precision(bits + 32):
            value = HighPrecisionMagnitude.from_interval(_product_interval(t, factors), bits)
        if value.relative_error <= RELATIVE_TARGET or bits * 2 > PRECISION_CAP:
            return value
        bits *= 2


def direct_eval(
    t: PrimeTuple, point: WitnessPoint, precision_bits: int = 256
) -> HighPrecisionMagnitude:
    """``|Phi_n(exp(2 pi i a / M))|`` from the exact coefficients (any gcd)."""
    poly = cyclotomic(t.n).poly
    return eval_unit_circle(poly, point.a, point.M, precision_bits)


@dataclass
class WitnessCertificate:
    tuple: PrimeTuple
    point: WitnessPoint
    product_value: HighPrecisionMagnitude | None
    direct_value: HighPrecisionMagnitude | None
    a_lower: mpmath.mpf | None  # (value - error) / n <= A(n)
    growth_ratio: mpmath.mpf | None  # value / p_1**(2**(k-1))
    dk_estimate: mpmath.mpf | None  # a_lower / n**e_k
    height: int | None = None
    chain_ok: bool | None = None  # n * A(n) >= value - error
    notes: list[str] = field(default_factory=list)

    @property
    def degenerate(self) -> bool:
        return not self.point.coprime

    @property
    def value(self) -> HighPrecisionMagnitude | None:
        return self.product_value if self.product_value is not None else self.direct_value

    @property
    def status(self) -> str:
        if self.degenerate:
            return f"DEGENERATE(gcd={self.point.gcd})"
        return "OK"


def growth_ratio(t: PrimeTuple, value: HighPrecisionMagnitude) -> mpmath.mpf:
    with mpmath.workprec(value.precision_bits):
        return value.value / mpmath.mpf(t.p1) ** (2 ** (t.k - 1))


def certificate(
    primes_or_tuple,
    precision_bits: int = 256,
    with_height: bool = False,
    cross_check: bool = True,
) -> WitnessCertificate:
    t = primes_or_tuple if isinstance(primes_or_tuple, PrimeTuple) else classify(primes_or_tuple)
    point = witness_point(t)
    notes = []
    product = eval_product(t, point, precision_bits) if point.coprime else None
    direct = None
    within_cap = euler_phi(t.n) <= DEGREE_CAP
    if (cross_check or product is None) and within_cap:
        direct = direct_eval(t, point, precision_bits)
    elif not within_cap:
        notes.append("direct evaluation skipped: degree above cap")
    if product is not None and direct is not None and not product.agrees_with(direct):
        raise AssertionError(
            f"sine product {product} and direct value {direct} disagree for {t.primes}"
        )
    cert = WitnessCertificate(t, point, product, direct, None, None, None, notes=notes)
    value = cert.value
    if value is not None:
        with mpmath.workprec(precision_bits + 32):
            cert.a_lower = value.lower / t.n
            cert.growth_ratio = growth_ratio(t, value)
            e = exponent(t.k)
            scale = mpmath.mpf(t.n) ** (mpmath.mpf(e.numerator) / e.denominator)
            cert.dk_estimate = cert.a_lower / scale
    if with_height and within_cap:
        cert.height = height(t.n)
        if value is not None:
            cert.chain_ok = t.n * cert.height >= value.lower
    return cert


# -- asymptotic experiments ---------------------------------------------------

SELECTOR_KINDS = (
    "odd_factor",
    "even_factor",
    "pk_odd_factor",
    "pk_even_factor",
    "growth_ratio",
    "dk_estimate",
)

_SELECTOR_RE = re.compile(r"^\s*([a-z_]+)\s*(?:[:(]\s*\{?\s*([\d,\s]*)\}?\s*\)?)?\s*$")


@dataclass(frozen=True)
class Selector:
    kind: str
    subset: tuple[int, ...] = ()

    @property
    def multiplier_is_pk(self) -> bool:
        return self.kind.startswith("pk_")

    @property
    def is_factor(self) -> bool:
        return self.kind.endswith("_factor")

    @property
    def numerator(self) -> bool:
        # multiplier 1 with |U| odd, or multiplier p_k with |U| even
        return self.kind in ("odd_factor", "pk_even_factor")

    def __str__(self) -> str:
        if self.is_factor:
            return f"{self.kind}({{{','.join(map(str, self.subset))}}})"
        return self.kind


def parse_selector(text: str) -> Selector:
    """Parse ``growth_ratio``, ``odd_factor:1`` or ``even_factor({1,2})``."""
    m = _SELECTOR_RE.match(text)
    if not m or m.group(1) not in SELECTOR_KINDS:
        raise ValueError(f"unknown selector {text!r}; choose from {', '.join(SELECTOR_KINDS)}")
    kind, raw = m.group(1), m.group(2)
    subset = tuple(sorted({int(x) for x in raw.split(",") if x.strip()})) if raw else ()
    sel = Selector(kind, subset)
    if sel.is_factor:
        if not subset:
            raise ValueError(f"selector {kind} needs a subset, e.g. {kind}:1")
        want_odd = kind in ("odd_factor", "pk_odd_factor")
        if (len(subset) % 2 == 1) != want_odd:
            raise ValueError(f"{kind} needs a subset of {'odd' if want_odd else 'even'} size")
    elif subset:
        raise ValueError(f"selector {kind} takes no subset")
    return sel


@dataclass(frozen=True)
class SeriesRow:
    p1: int
    magnitude: HighPrecisionMagnitude  # factor magnitude, or the observable itself
    observable: mpmath.mpf  # 1 - mag (numerator), p1 * mag (denominator), or the ratio


@dataclass
class SeriesTable:
    pattern: tuple[int, ...]
    selector: Selector
    rows: list[SeriesRow]
    skipped: list[tuple[int, str]]


class InsufficientTuplesError(RuntimeError):
    pass


def observe(t: PrimeTuple, sel: Selector, precision_bits: int = 256) -> SeriesRow:
    point = witness_point(t)
    if sel.is_factor:
        if max(sel.subset) > t.k - 1:
            raise ValueError(f"subset {sel.subset} not within 1..{t.k - 1}")
        denom = math.prod(t.primes[i - 1] for i in sel.subset)
        mult = t.pk if sel.multiplier_is_pk else 1
        with iv_precision(precision_bits + 32):
            s = sine_interval(point.a * mult % (2 * denom), denom)
            mag = HighPrecisionMagnitude.from_interval(s, precision_bits)
        with mpmath.workprec(precision_bits + 32):
            obs = 1 - mag.value if sel.numerator else t.p1 * mag.value
        return SeriesRow(t.p1, mag, obs)
    value = eval_product(t, point, precision_bits)
    with mpmath.workprec(precision_bits + 32):
        if sel.kind == "growth_ratio":
            obs = growth_ratio(t, value)
            err = value.abs_error / mpmath.mpf(t.p1) ** (2 ** (t.k - 1))
        else:
            e = exponent(t.k)
            scale = mpmath.mpf(t.n) ** (mpmath.mpf(e.numerator) / e.denominator)
            obs = value.value / t.n / scale
            err = value.abs_error / t.n / scale
    return SeriesRow(t.p1, HighPrecisionMagnitude(obs, err, precision_bits), obs)


def asymptotic_series(
    pattern: Sequence[int],
    p1_min: int,
    count: int,
    selector: Selector | str,
    precision_bits: int = 256,
    p1_max: int | None = None,
) -> SeriesTable:
    """Scan p_1 upward over solutions of ``pattern`` and tabulate ``selector``.

    Non-coprime tuples are skipped with a reason.  Rows come out in ascending
    p_1.  With ``p1_max`` the scan stops there instead of at sieve capacity
    and no shortfall error is raised.
    """
    from .ntheory import SIEVE_CAPACITY
    from .scan import admissibility_obstruction, find_pattern

    sel = parse_selector(selector) if isinstance(selector, str) else selector
    pattern = tuple(pattern)
    table = SeriesTable(pattern, sel, [], [])
    if count <= 0:
        return table
    limit = SIEVE_CAPACITY - 2 * pattern[-1] if p1_max is None else p1_max
    q = admissibility_obstruction(pattern)
    if q is not None:
        limit = min(limit, q)
    lo = max(3, p1_min)
    chunk = 1 << 16
    while lo <= limit and len(table.rows) < count:
        hi = min(limit, lo + chunk - 1)
        for p1 in find_pattern(pattern, lo, hi, warn=False):
            t = classify([p1] + [p1 + 2 * j for j in pattern])
            point = witness_point(t)
            if not point.coprime:
                table.skipped.append((p1, f"gcd(a, M) = {point.gcd}"))
                continue
            table.rows.append(observe(t, sel, precision_bits))
            if len(table.rows) == count:
                break
        lo = hi + 1
        chunk *= 2
    if len(table.rows) < count and p1_max is None:
        raise InsufficientTuplesError(
            f"only {len(table.rows)} of {count} coprime tuples for pattern {pattern}"
        )
    return table
