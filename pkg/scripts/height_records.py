"""Record heights A(n) over odd squarefree n, against the upper bounds.

A row is printed each time A(n) exceeds every earlier value for the same
number of prime factors k, with the bound and the ratio A(n) / n^e_k.

    python scripts/height_records.py --max-n 200000 --min-k 3
"""

import csv
import sys
from dataclasses import dataclass

import mpmath

from _config import parse_config
from cyclotomic_height.bounds import bateman_bound, exponent, refined_bound
from cyclotomic_height.cyclo import height
from cyclotomic_height.verify import odd_squarefree


@dataclass
class Config:
    max_n: int = 50000
    min_k: int = 3
    max_k: int = 6


def main():
    cfg = parse_config(Config, __doc__.splitlines()[0])
    out = csv.writer(sys.stdout, lineterminator="\n")
    out.writerow(["n", "k", "primes", "height", "bateman", "refined", "height_over_n_ek"])
    best: dict[int, int] = {}
    for n, primes in odd_squarefree(cfg.max_n, cfg.min_k):
        k = len(primes)
        if k > cfg.max_k:
            continue
        a = height(n)
        if a <= best.get(k, 0):
            continue
        best[k] = a
        e = exponent(k)
        ratio = mpmath.mpf(a) / mpmath.mpf(n) ** (mpmath.mpf(e.numerator) / e.denominator)
        out.writerow([n, k, " ".join(map(str, primes)), a, bateman_bound(primes),
                      refined_bound(primes), mpmath.nstr(ratio, 8)])


if __name__ == "__main__":
    main()
