import json
import random
import threading
import warnings
from dataclasses import replace
from itertools import combinations

import mpmath
import pytest
from hypothesis import given, settings

from cyclotomic_height.ntheory import SIEVE_CAPACITY, SieveCapacityError, is_prime
from cyclotomic_height.scan import (
    InadmissiblePatternWarning,
    ScanRecord,
    StoreFormatError,
    admissibility_obstruction,
    build_record,
    find_pattern,
    find_tuples,
    rank_records,
    read_records,
    record_append,
    record_best,
)
from oracles import plain_sieve, twin_pairs
from strategies import scan_records


def test_twin_examples():
    assert find_tuples(2, 2, 3, 20) == [(3, 5), (5, 7), (11, 13), (17, 19)]


def test_window_takes_all_subsets():
    got = find_tuples(4, 8, 3, 20)
    assert (5, 7, 11, 13) in got
    assert got == [(3, 5, 7, 11), (5, 7, 11, 13), (11, 13, 17, 19)]
    # subsets need not be runs of consecutive primes
    assert (3, 7, 11) in find_tuples(3, 8, 3, 3)


def test_twin_count_against_oracle():
    assert len(find_tuples(2, 2, 3, 10**4)) == twin_pairs(10**4) == 205


def test_tuples_brute_force():
    ps = plain_sieve(3000)[1:]
    for k, L in [(2, 6), (3, 8), (4, 12)]:
        want = []
        for i, p in enumerate(ps):
            if p > 2500:
                break
            window = [q for q in ps[i + 1 :] if q <= p + L]
            want += [(p,) + c for c in combinations(window, k - 1)]
        assert find_tuples(k, L, 3, 2500) == want


def test_tuple_preconditions():
    with pytest.raises(ValueError):
        find_tuples(1, 10, 3, 100)
    with pytest.raises(ValueError):
        find_tuples(3, 3, 3, 100)
    with pytest.raises(SieveCapacityError):
        find_tuples(2, 2, SIEVE_CAPACITY, SIEVE_CAPACITY)


def test_pattern_examples():
    assert find_pattern((1, 3), 1, 50) == [5, 11, 17, 41]
    assert 101 in find_pattern((1, 3), 1, 200)


def test_inadmissible_pattern_warns():
    with pytest.warns(InadmissiblePatternWarning, match="mod 3"):
        got = find_pattern((1, 2), 1, 10**4)
    assert got == [3]
    assert admissibility_obstruction((1, 2)) == 3
    assert admissibility_obstruction((1, 3)) is None
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        find_pattern((1, 3), 1, 100)


def test_pattern_rejects_bad_input():
    with pytest.raises(ValueError):
        find_pattern((3, 1), 1, 100)
    with pytest.raises(ValueError):
        find_pattern((), 1, 100)


@pytest.mark.parametrize("pattern", [(1,), (1, 3), (2, 3), (3, 5, 6)])
def test_pattern_equals_filtered_tuples(pattern):
    span = 2 * pattern[-1]
    sig = tuple(2 * j for j in pattern)
    p1s = [t[0] for t in find_tuples(len(pattern) + 1, span, 3, 10**5)
           if tuple(p - t[0] for p in t[1:]) == sig]
    got = find_pattern(pattern, 3, 10**5, warn=False)
    assert got == p1s
    for p1 in got[:200]:
        assert all(is_prime(p1 + 2 * j) for j in (0,) + pattern)


def test_build_record_fields():
    rec = build_record((3, 5, 7), with_height=True)
    assert (rec.n, rec.k, rec.window, rec.a, rec.coprime, rec.bateman, rec.height) == (
        105, 3, 4, 2, True, 3, 2
    )
    assert rec.product_value.startswith("5.78963640699641")
    deg = build_record((5, 7, 11, 13))
    assert not deg.coprime and deg.product_value is None and deg.growth_ratio is None


def test_append_and_read(tmp_path):
    store = tmp_path / "s.jsonl"
    assert read_records(store) == []
    a, b = build_record((3, 5, 7)), build_record((5, 7, 11))
    record_append(store, a)
    record_append(store, b)
    assert read_records(store) == [a, b]
    assert len(store.read_text().splitlines()) == 2


def test_malformed_line_is_reported(tmp_path):
    store = tmp_path / "s.jsonl"
    record_append(store, build_record((3, 5, 7)))
    with open(store, "a") as fh:
        fh.write("{not json\n")
    with pytest.raises(StoreFormatError, match=r"s\.jsonl:2"):
        read_records(store)


def test_inconsistent_record_rejected():
    d = json.loads(build_record((3, 5, 7)).to_json())
    d["window"] = 99
    with pytest.raises(ValueError):
        ScanRecord.from_dict(d)
    d = json.loads(build_record((3, 5, 7)).to_json())
    d["extra"] = 1
    with pytest.raises(ValueError):
        ScanRecord.from_dict(d)


@settings(max_examples=200)
@given(scan_records())
def test_record_round_trip(rec):
    assert ScanRecord.from_json(rec.to_json()) == rec


def test_concurrent_appends(tmp_path):
    store = tmp_path / "s.jsonl"
    recs = [build_record(t) for t in find_tuples(2, 2, 3, 200)]

    def work(chunk):
        for r in chunk:
            record_append(store, r)

    threads = [threading.Thread(target=work, args=(recs[i::4],)) for i in range(4)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    back = read_records(store)
    assert sorted(back, key=lambda r: r.n) == sorted(recs, key=lambda r: r.n)


def test_record_best(tmp_path):
    store = tmp_path / "s.jsonl"
    assert record_best(store, 3, "growth_ratio", 5) == []
    one = build_record((3, 5, 7))
    record_append(store, one)
    assert record_best(store, 3, "growth_ratio", 5) == [one]
    recs = [build_record(t) for t in find_tuples(3, 8, 3, 400)]
    random.Random(1).shuffle(recs)
    for r in recs:
        record_append(store, r)
    pool = [r for r in recs + [one] if r.coprime]
    for metric in ("growth_ratio", "dk_estimate"):
        with mpmath.workprec(400):
            oracle = sorted(pool, key=lambda r: (-mpmath.mpf(getattr(r, metric)), r.n))[:7]
        assert record_best(store, 3, metric, 7) == oracle
    assert record_best(store, 4, "growth_ratio", 7) == []
    with pytest.raises(ValueError):
        record_best(store, 3, "height", 3)


def test_rank_ties_prefer_smaller_n():
    base = build_record((3, 5, 7))
    twin = replace(base, n=base.n * 1000)
    assert rank_records([twin, base], 3, "growth_ratio", 2) == [base, twin]
