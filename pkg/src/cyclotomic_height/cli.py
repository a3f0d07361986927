"""Command-line interface: ``cyclo-height <command> ...``.

Every command prints text (default), CSV with a header row, or JSON lines
(``--format json``).  High-precision values are always paired with an
explicit error column.  The default working precision in bits comes from the
``CYCLO_PRECISION`` environment variable (256 when unset).
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import warnings
from dataclasses import replace
from typing import Iterable

import mpmath

from . import bounds, cyclo, scan, verify, witness
from .polyx import PRECISION_CAP

PRECISION_ENV = "CYCLO_PRECISION"
DEFAULT_PRECISION = 256


def default_precision() -> int:
    raw = os.environ.get(PRECISION_ENV)
    if not raw:
        return DEFAULT_PRECISION
    try:
        return _precision(raw)
    except argparse.ArgumentTypeError as exc:
        raise SystemExit(f"error: {PRECISION_ENV}: {exc}")


# -- argument types -------------------------------------------------------------


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be a positive integer: {text!r}")
    return v


def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0: {text!r}")
    return v


def _precision(text: str) -> int:
    v = _positive(text)
    if not 64 <= v <= PRECISION_CAP:
        raise argparse.ArgumentTypeError(f"precision must lie in [64, {PRECISION_CAP}]")
    return v


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers: {text!r}")


def _selector(text: str) -> witness.Selector:
    try:
        return witness.parse_selector(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


# -- output -----------------------------------------------------------------------


def emit(rows: list[dict], fmt: str, text_lines: Iterable[str] | None = None, out=None) -> None:
    out = out or sys.stdout
    if fmt == "json":
        for row in rows:
            out.write(json.dumps(row, separators=(",", ":")) + "\n")
    elif fmt == "csv":
        if not rows:
            return
        writer = csv.DictWriter(out, fieldnames=list(rows[0]), lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: _csv_cell(v) for k, v in row.items()})
    else:
        for line in text_lines if text_lines is not None else _kv_lines(rows):
            out.write(line + "\n")


def _csv_cell(v):
    if isinstance(v, (list, tuple)):
        return " ".join(map(str, v))
    if v is None:
        return ""
    return v


def _kv_lines(rows: list[dict]) -> Iterable[str]:
    for row in rows:
        yield " ".join(f"{k}={_csv_cell(v)}" for k, v in row.items())


def _dec(x, digits: int = 30) -> str | None:
    if x is None:
        return None
    return mpmath.nstr(x, digits, strip_zeros=False)


# -- commands -------------------------------------------------------------------


def cmd_poly(args) -> int:
    rec = cyclo.cyclotomic(args.n)
    rows = [{"degree": i, "coefficient": c} for i, c in enumerate(rec.poly.coeffs)]
    emit(rows, args.format, [" ".join(map(str, rec.poly.coeffs))])
    return 0


def cmd_height(args) -> int:
    h = cyclo.height(args.n)
    emit([{"n": args.n, "height": h}], args.format, [str(h)])
    return 0


def cmd_bounds(args) -> int:
    rep = bounds.bound_report(args.primes, args.dk)
    row = rep.as_row()
    lines = [
        f"n={rep.n} k={rep.k} primes={','.join(map(str, rep.primes))}",
        f"bateman={rep.bateman}",
        f"c_k={rep.c_k}",
        f"refined={rep.refined}",
        f"exponent={rep.exponent}",
        f"power_bound={row['power_bound']} +- {row['power_bound_error']}",
        f"lower_target={row['lower_target']} +- {row['lower_target_error']} (d_k={rep.d_k})",
        f"bridging={'holds' if rep.bridging else 'FAILS'}",
    ]
    emit([row], args.format, lines)
    return 0


def certificate_row(cert: witness.WitnessCertificate, digits: int) -> dict:
    t, pt = cert.tuple, cert.point
    pv, dv = cert.product_value, cert.direct_value
    return {
        "primes": list(t.primes),
        "n": t.n,
        "M": t.M,
        "case_tag": t.case_tag,
        "half_gaps": list(t.half_gaps),
        "a": pt.a,
        "gcd": pt.gcd,
        "status": cert.status,
        "product_value": pv.decimal(digits) if pv else None,
        "product_error": pv.error_str() if pv else None,
        "direct_value": dv.decimal(digits) if dv else None,
        "direct_error": dv.error_str() if dv else None,
        "a_lower": _dec(cert.a_lower, 20),
        "growth_ratio": _dec(cert.growth_ratio, 20),
        "dk_estimate": _dec(cert.dk_estimate, 20),
        "height": cert.height,
        "chain_ok": cert.chain_ok,
    }


def cmd_witness(args) -> int:
    cert = witness.certificate(
        args.primes, args.precision, with_height=args.with_height, cross_check=not args.no_cross_check
    )
    digits = max(20, int(args.precision * 0.30103) - 4)
    row = certificate_row(cert, digits)
    lines = [
        f"primes={','.join(map(str, row['primes']))} n={row['n']} M={row['M']} "
        f"{row['case_tag']} half_gaps={','.join(map(str, row['half_gaps']))}",
        f"a={row['a']} gcd={row['gcd']} status={row['status']}",
    ]
    if row["product_value"] is not None:
        lines.append(f"value={row['product_value']} +- {row['product_error']} (sine product)")
    if row["direct_value"] is not None:
        lines.append(f"direct={row['direct_value']} +- {row['direct_error']} (coefficients)")
    if row["a_lower"] is not None:
        lines.append(
            f"A(n)>={row['a_lower']} growth_ratio={row['growth_ratio']} "
            f"dk_estimate={row['dk_estimate']}"
        )
    if row["height"] is not None:
        lines.append(f"height={row['height']} chain={'ok' if row['chain_ok'] else 'VIOLATED'}")
    lines.extend(f"note: {n}" for n in cert.notes)
    emit([row], args.format, lines)
    return 0


def _scan_text(rec: scan.ScanRecord) -> str:
    head = f"{','.join(map(str, rec.primes))} {rec.case_tag} a={rec.a}"
    if not rec.coprime:
        return head + " DEGENERATE"
    tail = (
        f" value={rec.product_value} +- {rec.product_error}"
        f" growth_ratio={rec.growth_ratio} dk_estimate={rec.dk_estimate}"
    )
    if rec.height is not None:
        tail += f" height={rec.height}"
    return head + tail


def cmd_scan(args) -> int:
    lo, hi = args.min, args.max
    if args.pattern is not None:
        if args.k is not None and args.k != len(args.pattern) + 1:
            raise ValueError(f"--k {args.k} does not match pattern length {len(args.pattern)}")
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always", scan.InadmissiblePatternWarning)
            p1s = scan.find_pattern(args.pattern, lo, hi)
        for w in caught:
            print(f"warning: {w.message}", file=sys.stderr)
        tuples = [(p,) + tuple(p + 2 * j for j in args.pattern) for p in p1s]
    else:
        if args.k is None or args.window is None:
            raise ValueError("scan needs --k with --window, or --pattern")
        tuples = scan.find_tuples(args.k, args.window, lo, hi)
    rows, lines = [], []
    for ps in tuples:
        rec = scan.build_record(ps, args.precision, with_height=args.with_height)
        if args.store:
            scan.record_append(args.store, _stamped(rec))
        if args.format == "json":
            sys.stdout.write(rec.to_json() + "\n")
            continue
        rows.append(json.loads(rec.to_json()))
        lines.append(_scan_text(rec))
    if args.format != "json":
        emit(rows, args.format, lines)
    return 0


def _stamped(rec: scan.ScanRecord) -> scan.ScanRecord:
    return replace(rec, timestamp=scan.now_stamp())


def cmd_best(args) -> int:
    recs = scan.record_best(args.store, args.k, args.metric, args.top)
    if args.format == "json":
        for r in recs:
            sys.stdout.write(r.to_json() + "\n")
        return 0
    emit([json.loads(r.to_json()) for r in recs], args.format, [_scan_text(r) for r in recs])
    return 0


def cmd_asympt(args) -> int:
    table = witness.asymptotic_series(
        args.pattern, args.min, args.count, args.selector, args.precision, p1_max=args.max
    )
    rows = [
        {
            "p1": r.p1,
            "magnitude": r.magnitude.decimal(30),
            "error": r.magnitude.error_str(),
            "observable": _dec(r.observable, 30),
        }
        for r in table.rows
    ]
    lines = [f"# pattern={','.join(map(str, table.pattern))} selector={table.selector}"]
    lines += [f"{r['p1']} {r['magnitude']} +- {r['error']} {r['observable']}" for r in rows]
    for p1, why in table.skipped:
        print(f"skipped p1={p1}: {why}", file=sys.stderr)
    emit(rows, args.format, lines)
    return 0


def cmd_verify(args) -> int:
    res = verify.SUITES[args.suite](args.max_n)
    row = {"suite": res.suite, "max_n": args.max_n, "passed": res.passed, "checked": res.checked,
           "status": "PASS" if res.ok else "FAIL"}
    emit([row], args.format, [f"{res.suite}: {res.summary()}"])
    for f in res.failures[:20]:
        print(f"failure: {f}", file=sys.stderr)
    return 0 if res.ok else 1


# -- parser -----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("text", "csv", "json"), default="text")
    prec = argparse.ArgumentParser(add_help=False)
    prec.add_argument("--precision", type=_precision, default=None,
                      help=f"working precision in bits (default ${PRECISION_ENV} or {DEFAULT_PRECISION})")

    p = argparse.ArgumentParser(prog="cyclo-height", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("poly", parents=[fmt], help="coefficients of Phi_n, ascending")
    s.add_argument("n", type=_positive)
    s.set_defaults(func=cmd_poly)

    s = sub.add_parser("height", parents=[fmt], help="A(n)")
    s.add_argument("n", type=_positive)
    s.set_defaults(func=cmd_height)

    s = sub.add_parser("bounds", parents=[fmt], help="upper bounds and n**e_k for a prime tuple")
    s.add_argument("primes", type=_int_list)
    s.add_argument("--dk", default="0", help="constant multiplying n**e_k in lower_target")
    s.set_defaults(func=cmd_bounds)

    s = sub.add_parser("witness", parents=[fmt, prec], help="witness point and certificate")
    s.add_argument("primes", type=_int_list)
    s.add_argument("--with-height", action="store_true")
    s.add_argument("--no-cross-check", action="store_true",
                   help="skip the coefficient-based evaluation for coprime points")
    s.set_defaults(func=cmd_witness)

    s = sub.add_parser("scan", parents=[fmt, prec], help="search prime constellations")
    s.add_argument("--k", type=_positive)
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--window", type=_positive)
    g.add_argument("--pattern", type=_int_list, help="half-gaps j_2,...,j_k")
    s.add_argument("--min", type=_positive, default=3)
    s.add_argument("--max", type=_positive, required=True)
    s.add_argument("--store", help="append records to this JSON-lines file")
    s.add_argument("--with-height", action="store_true")
    s.set_defaults(func=cmd_scan)

    s = sub.add_parser("best", parents=[fmt], help="top records from a store")
    s.add_argument("--store", required=True)
    s.add_argument("--k", type=_positive, required=True)
    s.add_argument("--metric", choices=scan.METRICS, default="growth_ratio")
    s.add_argument("--top", type=_nonneg, default=10)
    s.set_defaults(func=cmd_best)

    s = sub.add_parser("asympt", parents=[fmt, prec], help="observable along a gap pattern")
    s.add_argument("--pattern", type=_int_list, required=True)
    s.add_argument("--selector", type=_selector, required=True,
                   help="growth_ratio, dk_estimate, or e.g. odd_factor:1, even_factor:1,2")
    s.add_argument("--count", type=_nonneg, default=20)
    s.add_argument("--min", type=_positive, default=3)
    s.add_argument("--max", type=_positive, default=None)
    s.set_defaults(func=cmd_asympt)

    s = sub.add_parser("verify", parents=[fmt], help="run an invariant suite")
    s.add_argument("--suite", choices=sorted(verify.SUITES), required=True)
    s.add_argument("--max-n", type=_positive, default=2000)
    s.set_defaults(func=cmd_verify)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "precision", 0) is None:
        args.precision = default_precision()
    try:
        return args.func(args)
    except (ValueError, ArithmeticError, RuntimeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
