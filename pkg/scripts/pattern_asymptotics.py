"""Every sine factor and the growth ratio along a fixed gap pattern.

Writes one CSV row per coprime tuple: p1, then each factor rescaled the way
the limits are stated (1 - |sin| for numerator factors, p1 |sin| for
denominator factors), then |Phi_n(eps^a)| / p1^(2^(k-1)).

    python scripts/pattern_asymptotics.py --pattern 1,3 --p1-max 100000 > out.csv
"""

import csv
import sys
from dataclasses import dataclass

import mpmath

from _config import parse_config
from cyclotomic_height.scan import find_pattern
from cyclotomic_height.witness import (
    classify,
    eval_product,
    factor_magnitudes,
    growth_ratio,
    witness_point,
)


@dataclass
class Config:
    pattern: tuple = (1, 3)
    p1_min: int = 100
    p1_max: int = 100000
    precision: int = 256
    digits: int = 20


def factor_label(f, pk):
    mult = "pk*" if f.multiplier == pk else ""
    kind = "num" if f.exponent > 0 else "den"
    return f"{kind}:{mult}U={''.join(map(str, f.subset))}"


def main():
    cfg = parse_config(Config, __doc__.splitlines()[0])
    out = csv.writer(sys.stdout, lineterminator="\n")
    header_done = False
    skipped = 0
    for p1 in find_pattern(cfg.pattern, cfg.p1_min, cfg.p1_max):
        t = classify([p1] + [p1 + 2 * j for j in cfg.pattern])
        point = witness_point(t)
        if not point.coprime:
            skipped += 1
            continue
        facs = factor_magnitudes(t, point, cfg.precision)
        if not header_done:
            out.writerow(["p1"] + [factor_label(f, t.pk) for f in facs] + ["growth_ratio"])
            header_done = True
        with mpmath.workprec(cfg.precision):
            cells = [
                1 - f.magnitude.value if f.exponent > 0 else p1 * f.magnitude.value
                for f in facs
            ]
            ratio = growth_ratio(t, eval_product(t, point, cfg.precision))
        out.writerow([p1] + [mpmath.nstr(c, cfg.digits) for c in cells + [ratio]])
    print(f"skipped {skipped} non-coprime tuples", file=sys.stderr)


if __name__ == "__main__":
    main()
