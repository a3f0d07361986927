"""Dense integer polynomials and rigorous evaluation on the unit circle.

Coefficients are Python ints stored in ascending order of degree.  Products
and quotients are always exact; large dense operands go through Kronecker
substitution (pack into one big integer, let GMP do the work, unpack), small
or sparse operands through shifted adds.

Evaluation at ``exp(2*pi*i*a/M)`` folds the coefficients modulo ``M`` in
exact integer arithmetic, then runs Horner's rule in fixed point with an
error bound accumulated alongside.
"""

from __future__ import annotations

import math
from contextlib import contextmanager
from dataclasses import dataclass
from itertools import accumulate
from operator import neg
from typing import Iterable, Sequence

import gmpy2
import mpmath
import numpy as np
from mpmath import iv
from mpmath.libmp import from_man_exp

#: Above this length (of the shorter operand) multiplication uses Kronecker
#: substitution instead of shifted adds.
KRONECKER_THRESHOLD = 512

#: Operands with at most this many nonzero terms are treated as sparse.
SPARSE_TERMS = 32

#: Exact division stays schoolbook while quotient length times divisor terms
#: is at most this; beyond it, Kronecker division with a multiply-back check.
SCHOOLBOOK_WORK = 4096

#: Largest ``precision_bits`` accepted by :func:`eval_unit_circle`.
PRECISION_CAP = 16384


class InexactDivisionError(ArithmeticError):
    """The divisor does not divide the dividend over the integers."""


class PrecisionCapError(ValueError):
    pass


@dataclass(frozen=True)
class IntPoly:
    """Polynomial with exact integer coefficients, ``coeffs[i]`` multiplies z**i."""

    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        c = self.coeffs
        if not isinstance(c, tuple):
            c = tuple(c)
        end = len(c)
        while end and c[end - 1] == 0:
            end -= 1
        if end != len(c):
            c = c[:end]
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def from_list(cls, coeffs: Iterable[int]) -> "IntPoly":
        return cls(tuple(coeffs))

    @classmethod
    def monomial(cls, degree: int, c: int = 1) -> "IntPoly":
        return cls((0,) * degree + (c,))

    @classmethod
    def binomial(cls, m: int, t: int = -1) -> "IntPoly":
        """``z**m + t``."""
        if m == 0:
            return cls((1 + t,))
        return cls((t,) + (0,) * (m - 1) + (1,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def height(self) -> int:
        return max(map(abs, self.coeffs), default=0)

    def l1_norm(self) -> int:
        return sum(map(abs, self.coeffs))

    def nonzero_terms(self) -> list[tuple[int, int]]:
        return [(i, c) for i, c in enumerate(self.coeffs) if c]

    def is_palindromic(self) -> bool:
        return self.coeffs == self.coeffs[::-1]

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: "IntPoly") -> "IntPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return IntPoly(tuple(x + y for x, y in zip(a, b)) + a[len(b) :])

    def __neg__(self) -> "IntPoly":
        return IntPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "IntPoly") -> "IntPoly":
        return self + (-other)

    def __mul__(self, other: "IntPoly") -> "IntPoly":
        return mul(self, other)

    def __floordiv__(self, other: "IntPoly") -> "IntPoly":
        return exact_div(self, other)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            body = "z" if i == 1 else f"z^{i}" if i else ""
            coef = str(mag) if (mag != 1 or not body) else ""
            parts.append(f" {sign} {coef}{body}")
        s = "".join(parts).strip()
        return s[2:] if s.startswith("+ ") else "-" + s[2:]


# -- Kronecker substitution -------------------------------------------------


def _pack(coeffs: Sequence[int], nbytes: int) -> int:
    """Value of the polynomial at ``X = 256**nbytes``; needs |c| < X/2."""
    if not coeffs:
        return 0
    half = 1 << (8 * nbytes - 1)
    if nbytes <= 8:
        # uint64 wraparound turns c + half into the unsigned digit exactly
        digits = np.array(coeffs, dtype=np.int64).astype(np.uint64) + np.uint64(half)
        body = digits.astype("<u8").view(np.uint8).reshape(-1, 8)[:, :nbytes].tobytes()
    else:
        body = b"".join((c + half).to_bytes(nbytes, "little") for c in coeffs)
    offset = half.to_bytes(nbytes, "little") * len(coeffs)
    return int.from_bytes(body, "little") - int.from_bytes(offset, "little")


def _unpack(value: int, length: int, nbytes: int) -> list[int] | None:
    """Signed base-``256**nbytes`` digits of ``value``; ``None`` if they do not fit."""
    half = 1 << (8 * nbytes - 1)
    shifted = value + int.from_bytes(half.to_bytes(nbytes, "little") * length, "little")
    if shifted < 0 or shifted.bit_length() > 8 * nbytes * length:
        return None
    raw = shifted.to_bytes(nbytes * length, "little")
    if nbytes <= 8:
        cells = np.zeros((length, 8), dtype=np.uint8)
        cells[:, :nbytes] = np.frombuffer(raw, dtype=np.uint8).reshape(length, nbytes)
        digits = cells.view("<u8").ravel() - np.uint64(half)
        return digits.view(np.int64).tolist()
    frm = int.from_bytes
    return [frm(raw[i : i + nbytes], "little") - half for i in range(0, len(raw), nbytes)]


def _nbytes_for(bound: int) -> int:
    # room for a sign bit: |c| <= bound < 2**(8*nbytes - 1)
    return (bound.bit_length() + 8) // 8 + 1


def _kronecker_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    bound = min(len(a), len(b)) * max(map(abs, a)) * max(map(abs, b))
    nb = _nbytes_for(bound)
    prod = int(gmpy2.mpz(_pack(a, nb)) * gmpy2.mpz(_pack(b, nb)))
    out = _unpack(prod, len(a) + len(b) - 1, nb)
    assert out is not None, "Kronecker coefficient bound violated"
    return out


def _shift_add_mul(dense: Sequence[int], terms: list[tuple[int, int]]) -> list[int]:
    out = [0] * (len(dense) + terms[-1][0])
    n = len(dense)
    for j, c in terms:
        seg = out[j : j + n]
        if c == 1:
            out[j : j + n] = [x + y for x, y in zip(seg, dense)]
        elif c == -1:
            out[j : j + n] = [x - y for x, y in zip(seg, dense)]
        else:
            out[j : j + n] = [x + c * y for x, y in zip(seg, dense)]
    return out


def mul(f: IntPoly, g: IntPoly) -> IntPoly:
    """Exact product."""
    if f.is_zero() or g.is_zero():
        return IntPoly()
    if len(f) < len(g):
        f, g = g, f
    g_terms = g.nonzero_terms()
    if len(g) < KRONECKER_THRESHOLD or len(g_terms) <= SPARSE_TERMS:
        return IntPoly(tuple(_shift_add_mul(f.coeffs, g_terms)))
    f_terms = f.nonzero_terms()
    if len(f_terms) <= SPARSE_TERMS:
        return IntPoly(tuple(_shift_add_mul(g.coeffs, f_terms)))
    return IntPoly(tuple(_kronecker_mul(f.coeffs, g.coeffs)))


def mul_binomial(f: IntPoly, m: int, t: int = -1) -> IntPoly:
    """``f * (z**m + t)`` for ``t`` in {1, -1}."""
    if f.is_zero():
        return f
    a = f.coeffs
    low = list(a) if t == 1 else [-c for c in a]
    out = low + [0] * m
    out[m:] = [x + y for x, y in zip(out[m:], a)]
    return IntPoly(tuple(out))


# -- exact division ---------------------------------------------------------


def _div_binomial(a: Sequence[int], m: int, t: int) -> list[int]:
    """Quotient of ``a`` by ``z**m + t`` (t = +-1), solved bottom-up.

    ``q_i = t * (a_i - q_{i-m})``; the division is exact iff the recurrence
    run over the full length leaves the top ``m`` entries zero.
    """
    n = len(a)
    s = [0] * n
    if m <= 64:
        for r in range(min(m, n)):
            col = a[r::m]
            if t == -1:
                s[r::m] = list(accumulate(map(neg, col)))
            else:
                u = accumulate(c if j % 2 == 0 else -c for j, c in enumerate(col))
                s[r::m] = [v if j % 2 == 0 else -v for j, v in enumerate(u)]
    else:
        s[:m] = [t * c for c in a[:m]]
        for start in range(m, n, m):
            prev = s[start - m : start]
            if t == -1:
                s[start : start + m] = [y - x for x, y in zip(a[start : start + m], prev)]
            else:
                s[start : start + m] = [x - y for x, y in zip(a[start : start + m], prev)]
    if any(s[n - m :]):
        raise InexactDivisionError(f"not divisible by z^{m}{'+' if t > 0 else '-'}1")
    return s[: n - m]


def _schoolbook_div(a: Sequence[int], g: IntPoly) -> list[int]:
    rem = list(a)
    dg = g.degree
    lc = g.coeffs[-1]
    lower = [(i, c) for i, c in g.nonzero_terms() if i < dg]
    q = [0] * (len(a) - dg)
    for i in range(len(q) - 1, -1, -1):
        top = rem[i + dg]
        if not top:
            continue
        qi, r = divmod(top, lc)
        if r:
            raise InexactDivisionError("leading coefficient does not divide remainder")
        q[i] = qi
        for j, c in lower:
            rem[i + j] -= qi * c
    if any(rem[:dg]):
        raise InexactDivisionError("nonzero remainder")
    return q


def _kronecker_div(f: IntPoly, g: IntPoly) -> list[int] | None:
    """Quotient via big-integer division, verified by multiplying back.

    Returns ``None`` when no digit width up to a generous limit reproduces
    ``f``; the caller then falls back to schoolbook division.
    """
    qlen = len(f) - len(g) + 1
    nb = _nbytes_for(max(f.height(), g.height()) << 16)
    for _ in range(4):
        F = gmpy2.mpz(_pack(f.coeffs, nb))
        G = gmpy2.mpz(_pack(g.coeffs, nb))
        Q, R = gmpy2.f_divmod(F, G)
        if R:
            raise InexactDivisionError("nonzero remainder")
        q = _unpack(int(Q), qlen, nb)
        if q is not None and q[-1] != 0 and _kronecker_mul(q, g.coeffs) == list(f.coeffs):
            return q
        nb *= 2
    return None


def exact_div(f: IntPoly, g: IntPoly) -> IntPoly:
    """Quotient ``q`` with ``q * g == f``; raises :class:`InexactDivisionError` otherwise."""
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if f.is_zero():
        return f
    if len(f) < len(g):
        raise InexactDivisionError("divisor has larger degree")
    terms = g.nonzero_terms()
    lc = g.coeffs[-1]
    if len(terms) == 2 and terms[0][0] == 0 and abs(lc) == 1 and abs(terms[0][1]) == 1:
        a = f.coeffs if lc == 1 else tuple(-c for c in f.coeffs)
        return IntPoly(tuple(_div_binomial(a, g.degree, terms[0][1] * lc)))
    if (len(f) - len(g) + 1) * len(terms) <= SCHOOLBOOK_WORK:
        return IntPoly(tuple(_schoolbook_div(f.coeffs, g)))
    q = _kronecker_div(f, g)
    if q is None:
        q = _schoolbook_div(f.coeffs, g)
    return IntPoly(tuple(q))


def div_binomial(f: IntPoly, m: int, t: int = -1) -> IntPoly:
    """``f / (z**m + t)`` exactly, for ``t`` in {1, -1}."""
    return IntPoly(tuple(_div_binomial(f.coeffs, m, t)))


def inflate(f: IntPoly, e: int) -> IntPoly:
    """Substitute ``z -> z**e``."""
    if e < 1:
        raise ValueError("inflation exponent must be >= 1")
    if e == 1 or f.is_zero():
        return f
    out = [0] * (e * f.degree + 1)
    out[::e] = f.coeffs
    return IntPoly(tuple(out))


# -- evaluation on the unit circle ------------------------------------------


@dataclass(frozen=True)
class HighPrecisionMagnitude:
    """A nonnegative real known to lie within ``value +- abs_error``."""

    value: mpmath.mpf
    abs_error: mpmath.mpf
    precision_bits: int

    def _prec(self):
        return mpmath.workprec(self.precision_bits + 64)

    @property
    def lower(self) -> mpmath.mpf:
        return max(mpmath.fsub(self.value, self.abs_error, exact=True), mpmath.mpf(0))

    @property
    def upper(self) -> mpmath.mpf:
        return mpmath.fadd(self.value, self.abs_error, exact=True)

    @property
    def relative_error(self) -> mpmath.mpf:
        if self.value == 0:
            return mpmath.inf if self.abs_error else mpmath.mpf(0)
        with self._prec():
            return self.abs_error / self.value

    def agrees_with(self, other: "HighPrecisionMagnitude") -> bool:
        gap = abs(mpmath.fsub(self.value, other.value, exact=True))
        return gap <= mpmath.fadd(self.abs_error, other.abs_error, exact=True)

    def decimal(self, digits: int | None = None) -> str:
        if digits is None:
            digits = max(15, int(self.precision_bits * 0.30103) - 2)
        with self._prec():
            return mpmath.nstr(self.value, digits, strip_zeros=False, min_fixed=-5, max_fixed=25)

    def error_str(self) -> str:
        return mpmath.nstr(self.abs_error, 3)

    def __str__(self) -> str:
        return f"{self.decimal()} +- {self.error_str()}"

    @classmethod
    def from_interval(cls, x, precision_bits: int) -> "HighPrecisionMagnitude":
        """Convert an ``mpmath.iv`` interval (assumed nonnegative)."""
        lo, hi = endpoints(x)
        with mpmath.workprec(precision_bits + 64):
            mid = (lo + hi) / 2
        value = _exact_mpf(from_man_exp(*_man_exp(mid), precision_bits, "n"))
        # half-width plus the rounding of the midpoint, rounded up
        with mpmath.workprec(precision_bits + 64):
            err = (hi - lo) / 2 + abs(value - mid)
        abs_error = _exact_mpf(from_man_exp(*_man_exp(err), 64, "u"))
        return cls(value, abs_error, precision_bits)


def _exact_mpf(raw) -> mpmath.mpf:
    # mpmath.mpf(raw) would round to the global context precision
    return mpmath.mp.make_mpf(raw)


@contextmanager
def iv_precision(bits: int):
    """Temporarily set the working precision of the interval context."""
    saved = iv.prec
    iv.prec = bits
    try:
        yield
    finally:
        iv.prec = saved


def endpoints(x) -> tuple[mpmath.mpf, mpmath.mpf]:
    """Exact endpoints of an ``mpmath.iv`` interval."""
    lo, hi = x._mpi_
    return _exact_mpf(lo), _exact_mpf(hi)


def _man_exp(x: mpmath.mpf) -> tuple[int, int]:
    man, exp = x.man_exp
    return int(man), int(exp)


def _unit_root_fixed(a: int, M: int, bits: int) -> tuple[int, int]:
    """``(C, S)`` with ``|C - 2**bits cos(2 pi a/M)| <= 1`` and likewise for sin."""
    a %= M
    with iv_precision(bits + 40):
        theta = iv.pi * (iv.mpf(2 * a) / M)
        cs = (iv.cos(theta), iv.sin(theta))
    out = []
    with mpmath.workprec(2 * bits + 80):
        for x in cs:
            lo, hi = (mpmath.ldexp(e, bits) for e in endpoints(x))
            if hi - lo > 0.5:
                raise AssertionError("root of unity enclosure too wide")
            out.append(int(mpmath.nint((lo + hi) / 2)))
    return out[0], out[1]


def fold(f: IntPoly, M: int) -> list[int]:
    """Exact coefficients of ``f mod (z**M - 1)``, length ``min(M, len(f))``."""
    c = f.coeffs
    if M >= len(c):
        return list(c)
    return [sum(c[r::M]) for r in range(M)]


def eval_unit_circle(f: IntPoly, a: int, M: int, precision_bits: int) -> HighPrecisionMagnitude:
    """``|f(exp(2 pi i a / M))|`` with a rigorous absolute error bound."""
    if M < 1:
        raise ValueError("M must be >= 1")
    if precision_bits < 64:
        raise ValueError("precision_bits must be >= 64")
    if precision_bits > PRECISION_CAP:
        raise PrecisionCapError(f"{precision_bits} bits exceeds cap {PRECISION_CAP}")
    a %= M
    bins = fold(f, M)
    while bins and bins[-1] == 0:
        bins.pop()
    zero = mpmath.mpf(0)
    if not bins:
        return HighPrecisionMagnitude(zero, zero, precision_bits)
    steps = len(bins) - 1
    l1 = sum(map(abs, bins))
    W = precision_bits + steps.bit_length() + l1.bit_length() + 8
    if a == 0 or steps == 0:
        re, im, err_units = sum(bins) << W, 0, 0
    else:
        C, S = _unit_root_fixed(a, M, W)
        re, im = bins[-1] << W, 0
        for c in reversed(bins[:-1]):
            re, im = ((re * C - im * S) >> W) + (c << W), (re * S + im * C) >> W
        # per step: 2 units of truncation plus |partial| <= l1 times |w_hat - w| <= 2 units;
        # the factor 2 covers (1 + |w_hat - w|)**steps given the guard bits
        err_units = 2 * steps * (2 * l1 + 2)
    mag = math.isqrt(re * re + im * im)
    err_units += 1 + (mag >> precision_bits) + 1
    value = _exact_mpf(from_man_exp(mag, -W, precision_bits, "n"))
    abs_error = _exact_mpf(from_man_exp(err_units, -W, 64, "u"))
    return HighPrecisionMagnitude(value, abs_error, precision_bits)
