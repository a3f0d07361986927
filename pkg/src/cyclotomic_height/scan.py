"""Prime-constellation search and the append-only record store.

The store is JSON lines: one self-describing object per line.  High-precision
reals are decimal strings with a separate error field.  Appends go through a
process-wide lock; concurrent readers are fine.
"""

from __future__ import annotations

import json
import threading
import warnings
from dataclasses import asdict, dataclass, fields
from datetime import datetime, timezone
from itertools import combinations
from pathlib import Path
from typing import Iterable, Sequence

import mpmath
import numpy as np

from .bounds import bateman_bound, exponent
from .cyclo import DEGREE_CAP, height
from .ntheory import euler_phi, simple_sieve, sieve_segment
from .witness import classify, eval_product, growth_ratio, witness_point

METRICS = ("growth_ratio", "dk_estimate")


class InadmissiblePatternWarning(UserWarning):
    pass


class StoreFormatError(ValueError):
    pass


def _check_pattern(pattern: Sequence[int]) -> tuple[int, ...]:
    pat = tuple(int(j) for j in pattern)
    if not pat or pat[0] < 1 or any(a >= b for a, b in zip(pat, pat[1:])):
        raise ValueError(f"pattern must be strictly increasing positive integers: {pat}")
    return pat


def admissibility_obstruction(pattern: Sequence[int]) -> int | None:
    """Smallest prime q whose residues are all hit by the offsets, else None."""
    offsets = [0] + [2 * j for j in _check_pattern(pattern)]
    for q in simple_sieve(len(offsets)):
        q = int(q)
        if len({o % q for o in offsets}) == q:
            return q
    return None


def _prime_flags(lo: int, hi: int) -> tuple[int, np.ndarray]:
    lo = max(lo, 2)
    flags = np.zeros(hi - lo + 1, dtype=bool)
    if hi >= lo:
        flags[sieve_segment(lo, hi) - lo] = True
    return lo, flags


def find_pattern(
    pattern: Sequence[int], p1_min: int, p1_max: int, warn: bool = True
) -> list[int]:
    """Every odd prime p1 in range with p1 + 2*j prime for each j in ``pattern``."""
    pat = _check_pattern(pattern)
    if warn:
        q = admissibility_obstruction(pat)
        if q is not None:
            warnings.warn(
                f"pattern {pat} is inadmissible mod {q}: no solutions with p1 > {q}",
                InadmissiblePatternWarning,
                stacklevel=2,
            )
    lo = max(3, p1_min)
    if p1_max < lo:
        return []
    base, flags = _prime_flags(lo, p1_max + 2 * pat[-1])
    cand = np.flatnonzero(flags[: p1_max - base + 1])
    for j in pat:
        cand = cand[flags[cand + 2 * j]]
    return [int(i) + base for i in cand]


def find_tuples(k: int, window_L: int, p1_min: int, p1_max: int) -> list[tuple[int, ...]]:
    """All sets of k odd primes with p_k - p_1 <= L and p_1 in range, by ascending p_1."""
    if k < 2:
        raise ValueError("k must be >= 2")
    if window_L < 2 * (k - 1):
        raise ValueError(f"window {window_L} cannot hold {k} odd primes")
    lo = max(3, p1_min)
    if p1_max < lo:
        return []
    primes = sieve_segment(lo, p1_max + window_L).tolist()
    out = []
    j = 0
    for i, p in enumerate(primes):
        if p > p1_max:
            break
        j = max(j, i + 1)
        while j < len(primes) and primes[j] <= p + window_L:
            j += 1
        for rest in combinations(primes[i + 1 : j], k - 1):
            out.append((p,) + rest)
    return out


# -- records ------------------------------------------------------------------


@dataclass(frozen=True)
class ScanRecord:
    timestamp: str | None
    primes: tuple[int, ...]
    n: int
    k: int
    window: int
    case_tag: str
    a: int
    coprime: bool
    bateman: int
    product_value: str | None = None
    product_error: str | None = None
    height: int | None = None
    growth_ratio: str | None = None
    dk_estimate: str | None = None

    def to_json(self) -> str:
        d = asdict(self)
        d["primes"] = list(self.primes)
        return json.dumps(d, separators=(",", ":"))

    @classmethod
    def from_dict(cls, d: dict) -> "ScanRecord":
        names = {f.name for f in fields(cls)}
        unknown = set(d) - names
        if unknown:
            raise ValueError(f"unknown fields {sorted(unknown)}")
        d = dict(d)
        d["primes"] = tuple(d["primes"])
        rec = cls(**d)
        if rec.window != rec.primes[-1] - rec.primes[0] or rec.k != len(rec.primes):
            raise ValueError("window / k inconsistent with primes")
        return rec

    @classmethod
    def from_json(cls, line: str) -> "ScanRecord":
        return cls.from_dict(json.loads(line))


def _dec(x, digits: int) -> str:
    return mpmath.nstr(x, digits, strip_zeros=False)


def build_record(
    primes: Sequence[int],
    precision_bits: int = 256,
    with_height: bool = False,
    timestamp: str | None = None,
) -> ScanRecord:
    t = classify(primes)
    point = witness_point(t)
    extra = {}
    if point.coprime:
        value = eval_product(t, point, precision_bits)
        digits = max(20, int(precision_bits * 0.30103) - 4)
        with mpmath.workprec(precision_bits + 32):
            e = exponent(t.k)
            scale = mpmath.mpf(t.n) ** (mpmath.mpf(e.numerator) / e.denominator)
            extra = {
                "product_value": _dec(value.value, digits),
                "product_error": mpmath.nstr(value.abs_error, 6),
                "growth_ratio": _dec(growth_ratio(t, value), digits),
                "dk_estimate": _dec(value.lower / t.n / scale, digits),
            }
    if with_height and euler_phi(t.n) <= DEGREE_CAP:
        extra["height"] = height(t.n)
    return ScanRecord(
        timestamp=timestamp,
        primes=t.primes,
        n=t.n,
        k=t.k,
        window=t.window,
        case_tag=t.case_tag,
        a=point.a,
        coprime=point.coprime,
        bateman=bateman_bound(t.primes),
        **extra,
    )


def now_stamp() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


_append_lock = threading.Lock()


def record_append(store_path, record: ScanRecord) -> None:
    line = record.to_json() + "\n"
    with _append_lock, open(store_path, "a", encoding="utf-8") as fh:
        fh.write(line)
        fh.flush()


def read_records(store_path) -> list[ScanRecord]:
    path = Path(store_path)
    if not path.exists():
        return []
    out = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                out.append(ScanRecord.from_json(line))
            except (ValueError, TypeError, KeyError, IndexError) as exc:
                raise StoreFormatError(f"{path}:{lineno}: malformed record ({exc})") from exc
    return out


def rank_records(records: Iterable[ScanRecord], k: int, metric: str, top: int) -> list[ScanRecord]:
    if metric not in METRICS:
        raise ValueError(f"metric must be one of {METRICS}")
    pool = [r for r in records if r.k == k and getattr(r, metric) is not None]
    with mpmath.workprec(512):
        pool.sort(key=lambda r: (-mpmath.mpf(getattr(r, metric)), r.n))
    return pool[: max(top, 0)]


def record_best(store_path, k: int, metric: str, top: int) -> list[ScanRecord]:
    return rank_records(read_records(store_path), k, metric, top)

