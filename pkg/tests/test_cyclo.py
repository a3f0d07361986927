import threading

import pytest
from hypothesis import given, strategies as st

from cyclotomic_height.cyclo import (
    DegreeCapError,
    coefficient,
    cyclotomic,
    cyclotomic_alt,
    height,
    product_over_divisors,
)
from cyclotomic_height.ntheory import euler_phi, factorize, primes_in
from cyclotomic_height.polyx import IntPoly
from cyclotomic_height.verify import odd_squarefree
from oracles import cyclotomic_by_roots

P = IntPoly.from_list


@pytest.mark.parametrize(
    "n, coeffs",
    [
        (1, [-1, 1]),
        (3, [1, 1, 1]),
        (6, [1, -1, 1]),
        (12, [1, 0, -1, 0, 1]),
        (15, [1, -1, 0, 1, -1, 1, 0, -1, 1]),
    ],
)
def test_small_examples(n, coeffs):
    assert cyclotomic(n).poly == P(coeffs)
    assert cyclotomic_alt(n).poly == P(coeffs)


def test_phi_105():
    rec = cyclotomic(105)
    assert rec.degree == 48
    assert rec.height == 2
    assert rec.k == 3
    assert rec.poly == cyclotomic_alt(105).poly
    assert list(rec.poly.coeffs) == cyclotomic_by_roots(105)
    # the famous coefficients: -2 at z^7 and z^41
    assert [i for i, c in enumerate(rec.poly.coeffs) if abs(c) == 2] == [7, 41]


@pytest.mark.parametrize("n", [1, 2, 4, 9, 10, 18, 30, 45, 63, 70, 77, 84, 90, 99])
def test_against_root_product_oracle(n):
    assert list(cyclotomic(n).poly.coeffs) == cyclotomic_by_roots(n)


@given(st.integers(min_value=2, max_value=3000))
def test_record_invariants(n):
    rec = cyclotomic(n)
    assert rec.degree == euler_phi(n)
    assert rec.height == max(abs(c) for c in rec.poly.coeffs)
    assert rec.poly.is_palindromic()
    assert rec.poly.coeffs[-1] == 1
    assert rec.k == sum(1 for p in factorize(n).primes if p != 2)


def test_divisor_product_small():
    for n in range(1, 200):
        assert product_over_divisors(n) == IntPoly.binomial(n, -1)


def test_primes_have_height_one():
    for p in primes_in(2, 3000):
        assert height(p) == 1


def test_at_most_two_odd_primes_gives_height_one():
    for n, primes in odd_squarefree(20000):
        if len(primes) <= 2:
            assert height(n) == 1, n


@given(st.integers(min_value=1, max_value=3000))
def test_inflation_preserves_height(n):
    for p in factorize(n).primes:
        if euler_phi(n) * p <= 10**5:
            assert height(n * p) == height(n)


def test_coefficient_access():
    assert coefficient(105, 7) == -2
    assert coefficient(105, 1000) == 0


def test_caps():
    with pytest.raises(DegreeCapError):
        cyclotomic(1000003)
    with pytest.raises(DegreeCapError):
        cyclotomic_alt(105, cap=40)
    with pytest.raises(ValueError):
        cyclotomic(0)


def test_concurrent_heights():
    ns = list(range(3000, 3200))
    expected = {n: cyclotomic(n).height for n in ns}
    got = {}

    def work(chunk):
        for n in chunk:
            got[n] = height(n)

    threads = [threading.Thread(target=work, args=(ns[i::4],)) for i in range(4)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert got == expected
