import random

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from cyclotomic_height import polyx
from cyclotomic_height.cyclo import cyclotomic
from cyclotomic_height.polyx import (
    PRECISION_CAP,
    HighPrecisionMagnitude,
    InexactDivisionError,
    IntPoly,
    PrecisionCapError,
    eval_unit_circle,
    exact_div,
    fold,
    inflate,
    mul,
    mul_binomial,
)
from oracles import unit_circle_by_sum

P = IntPoly.from_list


def naive_mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def test_normalization():
    assert P([1, 2, 0, 0]).coeffs == (1, 2)
    assert P([0, 0]).is_zero()
    assert P([0, 0]).degree == -1
    assert str(P([1, -1, 1])) == "z^2 - z + 1"
    assert str(P([-1])) == "-1"


@pytest.mark.parametrize(
    "f, g, prod",
    [([-1, 1], [1, 1], [-1, 0, 1]), ([3, 4], [], []), ([1, 1, 1], [-1, 1], [-1, 0, 0, 1])],
)
def test_mul_examples(f, g, prod):
    assert mul(P(f), P(g)) == P(prod)


@pytest.mark.parametrize(
    "f, g, q",
    [([-1, 0, 0, 1], [-1, 1], [1, 1, 1]), ([-1, 0, 0, 0, 0, 0, 1], [-1, 0, 1], [1, 0, 1, 0, 1])],
)
def test_exact_div_examples(f, g, q):
    assert exact_div(P(f), P(g)) == P(q)


def test_exact_div_rejects_remainder():
    with pytest.raises(InexactDivisionError):
        exact_div(P([1, 0, 1]), P([1, 1]))
    with pytest.raises(InexactDivisionError):
        exact_div(P([1, 1]), P([1, 0, 1]))
    with pytest.raises(ZeroDivisionError):
        exact_div(P([1]), P([]))


coeff = st.integers(min_value=-(2**64), max_value=2**64)
poly = st.lists(coeff, min_size=1, max_size=201).map(P).filter(lambda p: not p.is_zero())


@settings(max_examples=1000)
@given(poly, poly)
def test_div_inverts_mul(f, g):
    fg = mul(f, g)
    assert fg.coeffs == tuple(naive_mul(f.coeffs, g.coeffs))
    assert exact_div(fg, g) == f


@settings(max_examples=200)
@given(poly, poly, st.integers(min_value=-3, max_value=3))
def test_perturbed_product_is_not_divisible(f, g, bump):
    if bump == 0 or g.degree == 0 and abs(g.coeffs[0]) == 1:
        return
    fg = list(mul(f, g).coeffs)
    fg[0] += bump
    h = P(fg)
    # h = f*g + bump is divisible by g only if g divides the constant bump
    if g.degree > 0:
        with pytest.raises(InexactDivisionError):
            exact_div(h, g)


@pytest.mark.parametrize("deg", [600, 1500, 4000])
def test_large_paths(deg):
    rng = random.Random(deg)
    f = P([rng.randrange(-(10**30), 10**30) for _ in range(deg + 1)])
    g = P([rng.randrange(-(10**5), 10**5) for _ in range(deg // 2)] + [1])
    fg = mul(f, g)
    assert fg.coeffs == tuple(polyx._shift_add_mul(f.coeffs, g.nonzero_terms()))
    assert exact_div(fg, g) == f
    with pytest.raises(InexactDivisionError):
        exact_div(fg + P([1]), g)


@given(st.lists(st.integers(-50, 50), min_size=1, max_size=80), st.integers(1, 60),
       st.sampled_from([1, -1]))
def test_binomial_paths(f, m, t):
    f = P(f)
    if f.is_zero():
        return
    h = mul_binomial(f, m, t)
    assert h == mul(f, IntPoly.binomial(m, t))
    assert polyx.div_binomial(h, m, t) == f
    assert exact_div(h, IntPoly.binomial(m, t)) == f


def test_inflate_examples():
    assert inflate(P([1, -1, 1]), 2) == P([1, 0, -1, 0, 1])
    f = P([4, 0, 7])
    assert inflate(f, 1) == f
    assert inflate(P([-1, 1]), 3) == P([-1, 0, 0, 1])
    with pytest.raises(ValueError):
        inflate(f, 0)


@given(st.lists(st.integers(-9, 9), max_size=30), st.integers(1, 7), st.integers(-5, 5))
def test_inflate_evaluates_at_power(f, e, x):
    f = P(f)
    assert inflate(f, e)(x) == f(x**e)


def test_fold_preserves_root_values():
    f = cyclotomic(105).poly
    assert sum(fold(f, 15)) == f(1)
    assert len(fold(f, 15)) == 15


def test_eval_examples():
    z = eval_unit_circle(P([-1, 1]), 0, 1, 128)
    assert z.value == 0 and z.lower == 0
    z = eval_unit_circle(P([1, -1, 1]), 1, 6, 128)
    assert z.lower == 0 and z.upper < mpmath.mpf(2) ** -120
    v = eval_unit_circle(cyclotomic(105).poly, 2, 15, 256)
    assert abs(v.value - mpmath.mpf("5.78963640699641")) < 1e-13
    assert v.relative_error < mpmath.mpf(2) ** -240


def test_eval_reduces_large_a():
    f = cyclotomic(105).poly
    base = eval_unit_circle(f, 2, 15, 256)
    big = eval_unit_circle(f, 2 + 15 * 10**40, 15, 256)
    assert big.value == base.value


def test_eval_rejects_bad_precision():
    with pytest.raises(PrecisionCapError):
        eval_unit_circle(P([1, 1]), 1, 3, PRECISION_CAP * 2)
    with pytest.raises(ValueError):
        eval_unit_circle(P([1, 1]), 1, 3, 32)
    with pytest.raises(ValueError):
        eval_unit_circle(P([1, 1]), 1, 0, 128)


small_poly = st.lists(st.integers(-(10**6), 10**6), min_size=1, max_size=60).map(P)


@settings(max_examples=150)
@given(small_poly, st.integers(0, 10**9), st.integers(1, 500))
def test_eval_encloses_oracle(f, a, M):
    got = eval_unit_circle(f, a, M, 128)
    with mpmath.workdps(80):
        truth = unit_circle_by_sum(f.coeffs, a, M)
        assert got.lower <= truth <= got.upper


@settings(max_examples=100)
@given(small_poly, st.integers(0, 10**6), st.integers(1, 300), st.sampled_from([64, 128, 256]))
def test_doubling_precision_stays_inside_previous_error(f, a, M, bits):
    lo = eval_unit_circle(f, a, M, bits)
    hi = eval_unit_circle(f, a, M, 2 * bits)
    assert abs(mpmath.fsub(hi.value, lo.value, exact=True)) <= lo.abs_error
    assert hi.abs_error <= lo.abs_error


def test_magnitude_helpers():
    m = HighPrecisionMagnitude(mpmath.mpf(2), mpmath.mpf("0.5"), 64)
    assert (m.lower, m.upper) == (1.5, 2.5)
    assert m.agrees_with(HighPrecisionMagnitude(mpmath.mpf(3), mpmath.mpf("0.5"), 64))
    assert not m.agrees_with(HighPrecisionMagnitude(mpmath.mpf(3.1), mpmath.mpf("0.5"), 64))
    assert HighPrecisionMagnitude(mpmath.mpf(0), mpmath.mpf(1), 64).lower == 0
    assert str(m).endswith("+- 0.5")


def test_from_interval_encloses():
    from mpmath import iv

    with polyx.iv_precision(300):
        x = iv.pi / 7
        lo, hi = polyx.endpoints(x)
    m = HighPrecisionMagnitude.from_interval(x, 256)
    assert m.lower <= lo and hi <= m.upper
    assert m.relative_error < mpmath.mpf(2) ** -250
