"""Hypothesis strategies shared across test modules."""

from hypothesis import strategies as st

from cyclotomic_height.scan import ScanRecord

decimal_text = st.builds(
    lambda man, exp: f"{man}e{exp}",
    st.integers(-(10**80), 10**80),
    st.integers(-400, 400),
)


@st.composite
def scan_records(draw):
    p1 = draw(st.integers(3, 10**15))
    gaps = draw(st.lists(st.integers(1, 10**4), min_size=1, max_size=7))
    primes = [p1]
    for g in gaps:
        primes.append(primes[-1] + g)
    return ScanRecord(
        timestamp=draw(st.none() | st.text(max_size=40)),
        primes=tuple(primes),
        n=draw(st.integers(1, 2**400)),
        k=len(primes),
        window=primes[-1] - primes[0],
        case_tag=draw(st.sampled_from(["Case1", "Case2"])),
        a=draw(st.integers(0, 2**300)),
        coprime=draw(st.booleans()),
        bateman=draw(st.integers(1, 2**500)),
        product_value=draw(st.none() | decimal_text),
        product_error=draw(st.none() | decimal_text),
        height=draw(st.none() | st.integers(0, 2**100)),
        growth_ratio=draw(st.none() | decimal_text),
        dk_estimate=draw(st.none() | decimal_text),
    )
