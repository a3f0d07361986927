"""Certify every k-tuple in a window and summarize into a record store.

Appends one record per tuple to the store, then prints how often the
constructed witness degenerates and the best growth ratios found.

    python scripts/tuple_survey.py --k 4 --window 20 --p1-max 5000 --store k4.jsonl
"""

from collections import Counter
from dataclasses import dataclass, replace

from _config import parse_config
from cyclotomic_height.scan import (
    build_record,
    find_tuples,
    now_stamp,
    record_append,
    record_best,
)


@dataclass
class Config:
    k: int = 4
    window: int = 20
    p1_min: int = 3
    p1_max: int = 2000
    precision: int = 256
    store: str = "survey.jsonl"
    top: int = 10


def main():
    cfg = parse_config(Config, __doc__.splitlines()[0])
    tally = Counter()
    for ps in find_tuples(cfg.k, cfg.window, cfg.p1_min, cfg.p1_max):
        rec = build_record(ps, cfg.precision)
        record_append(cfg.store, replace(rec, timestamp=now_stamp()))
        tally[(rec.case_tag, rec.coprime)] += 1
    total = sum(tally.values())
    print(f"{total} tuples (k={cfg.k}, window {cfg.window}, p1 in [{cfg.p1_min}, {cfg.p1_max}])")
    for (case, coprime), count in sorted(tally.items()):
        label = "coprime" if coprime else "degenerate"
        print(f"  {case} {label}: {count} ({count / total:.1%})")
    print(f"top {cfg.top} by growth ratio in {cfg.store}:")
    for rec in record_best(cfg.store, cfg.k, "growth_ratio", cfg.top):
        print(f"  {','.join(map(str, rec.primes))}  a={rec.a}  ratio={rec.growth_ratio[:14]}")


if __name__ == "__main__":
    main()
