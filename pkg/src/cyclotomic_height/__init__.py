"""Exact cyclotomic polynomials, their heights A(n), and lower-bound witnesses."""

from .bounds import BoundReport, bateman_bound, bound_report, ck_constant, refined_bound
from .cyclo import CyclotomicRecord, cyclotomic, cyclotomic_alt, height
from .ntheory import Factorization, euler_phi, factorize, is_prime, mobius, primes_in, radical
from .polyx import HighPrecisionMagnitude, IntPoly, eval_unit_circle, exact_div, inflate, mul
from .scan import ScanRecord, find_pattern, find_tuples, record_append, record_best
from .witness import (
    PrimeTuple,
    WitnessCertificate,
    WitnessPoint,
    asymptotic_series,
    certificate,
    classify,
    direct_eval,
    enumerate_factors,
    eval_product,
    f_value,
    witness_point,
)

__version__ = "0.1.0"

__all__ = [
    "BoundReport",
    "CyclotomicRecord",
    "Factorization",
    "HighPrecisionMagnitude",
    "IntPoly",
    "PrimeTuple",
    "ScanRecord",
    "WitnessCertificate",
    "WitnessPoint",
    "asymptotic_series",
    "bateman_bound",
    "bound_report",
    "certificate",
    "ck_constant",
    "classify",
    "cyclotomic",
    "cyclotomic_alt",
    "direct_eval",
    "enumerate_factors",
    "euler_phi",
    "eval_product",
    "eval_unit_circle",
    "exact_div",
    "f_value",
    "factorize",
    "find_pattern",
    "find_tuples",
    "height",
    "inflate",
    "is_prime",
    "mobius",
    "mul",
    "primes_in",
    "radical",
    "record_append",
    "record_best",
    "refined_bound",
    "witness_point",
]
