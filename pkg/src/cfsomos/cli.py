"""Command-line surface over the expansion engine and sequence tools.

Subcommands:

  expand    print a window of expansion lines for a curve
  certify   express an integral of f/sqrt(D) as a logarithm, when possible
  somos     generate a bilinear-recurrence window, optionally scanning it
  eds       generate a division-ladder window, optionally scanning it
  identify  rebuild a curve and start state from four sequence terms
  verify    run an identity suite and report per-check PASS/FAIL lines

Exit codes: 0 success / all checks pass, 1 verification failure or a
scan that finds a fractional term, 2 malformed input.  Results go to
stdout, one record per line; diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional

from .cf import CFStep, Curve, cf_init, certificate, expand, is_reduced
from .genus1 import (
    g1_denominators,
    g1_e_relation,
    g1_extract,
    g1_identity9,
    g1_identity10,
    g1_remainder,
    g1_somos4_check,
    g1_somos4_to_curve,
    g1_verify_translation,
)
from .genus2 import (
    g2_cpoly,
    g2_d_recursion,
    g2_extract,
    g2_identities,
    g2_remainder,
    g2_t_recursion,
    g2_t_sequence,
)
from .poly import Poly, PolyParseError, format_poly, format_rational, parse_rational
from .somos import (
    EDSSpec,
    Sequence,
    SomosSpec,
    eds_generate,
    eds_window,
    hone_map,
    identity21,
    integrality_scan,
    somos5_split,
    somos_generate,
    swart_vdp_identity,
    ward_identity,
)


class InputError(Exception):
    """Malformed flag value or inconsistent flag combination."""


def _poly(text: str, flag: str) -> Poly:
    try:
        return Poly.parse(text)
    except PolyParseError as ex:
        raise InputError(f"{flag}: {ex}") from None


def _rational(text: str, flag: str) -> Fraction:
    try:
        return parse_rational(text.strip())
    except (PolyParseError, ValueError) as ex:
        raise InputError(f"{flag}: {ex}") from None


def _values(text: str, flag: str) -> list[Fraction]:
    """Comma-separated rationals; `VxN` repeats V a count of N times."""
    out: list[Fraction] = []
    for token in text.split(","):
        token = token.strip()
        if not token:
            raise InputError(f"{flag}: empty entry in value list")
        if "x" in token:
            value, _, count = token.partition("x")
            try:
                n = int(count)
            except ValueError:
                raise InputError(f"{flag}: bad repeat count in {token!r}") from None
            if n < 1:
                raise InputError(f"{flag}: repeat count must be positive in {token!r}")
            out.extend([_rational(value, flag)] * n)
        else:
            out.append(_rational(token, flag))
    return out


def _curve(args: argparse.Namespace) -> Curve:
    if args.D is not None and (args.A is not None or args.R is not None):
        raise InputError("give either --D or --A with --R, not both")
    if args.D is not None:
        return Curve.from_D(_poly(args.D, "--D"))
    if args.A is not None and args.R is not None:
        return Curve(_poly(args.A, "--A"), _poly(args.R, "--R"))
    raise InputError("a curve is required: --D, or --A together with --R")


def _start(curve: Curve, args: argparse.Namespace) -> tuple[Poly, Poly]:
    return cf_init(curve, _poly(args.p0, "--p0"), _poly(args.q0, "--q0"))


def _add_curve_flags(sub: argparse.ArgumentParser, with_start: bool = True) -> None:
    sub.add_argument("--D", metavar="POLY", help="curve as A^2 + 4R, decomposed internally")
    sub.add_argument("--A", metavar="POLY", help="monic polynomial A (with --R)")
    sub.add_argument("--R", metavar="POLY", help="remainder polynomial R (with --A)")
    if with_start:
        sub.add_argument("--p0", metavar="POLY", default="0", help="start numerator shift (default 0)")
        sub.add_argument("--q0", metavar="POLY", default="1", help="start denominator (default 1)")


def _halt_notes(seq: Sequence) -> None:
    if seq.halt_lo is not None:
        print(f"note: backward generation halted at index {seq.halt_lo} (zero term)", file=sys.stderr)
    if seq.halt_hi is not None:
        print(f"note: forward generation halted at index {seq.halt_hi} (zero term)", file=sys.stderr)


def _print_window(seq: Sequence, as_json: bool) -> None:
    if as_json:
        print(json.dumps(seq.to_json()))
    else:
        print(",".join(format_rational(v) for v in seq.values))


def _scan(seq: Sequence) -> int:
    index = integrality_scan(seq)
    if index is None:
        print("all integral")
        return 0
    print(f"first fractional index {index} (value {format_rational(seq[index])})")
    return 1


# ---------------------------------------------------------------- commands


def cmd_expand(args: argparse.Namespace) -> int:
    curve = _curve(args)
    start = _start(curve, args)
    if args.lo > args.hi:
        raise InputError("--from must not exceed --to")
    lines = expand(curve, args.lo, args.hi, start=start, start_index=0)
    for step in lines:
        reduced = is_reduced(curve, step.P, step.Q)
        if args.json:
            record = {
                "h": step.h,
                "P": format_poly(step.P),
                "Q": format_poly(step.Q),
                "a": format_poly(step.a),
                "normal": step.normal,
                "reduced": reduced,
            }
            print(json.dumps(record))
        else:
            tags = [name for name, on in (("normal", step.normal), ("reduced", reduced)) if on]
            print(
                f"h = {step.h}: P = {format_poly(step.P)}, "
                f"Q = {format_poly(step.Q)}, a = {format_poly(step.a)}  [{', '.join(tags)}]"
            )
    return 0


def cmd_certify(args: argparse.Namespace) -> int:
    D = _poly(args.D, "--D")
    if args.max_steps < 1:
        raise InputError("--max-steps must be positive")
    cert = certificate(D, args.max_steps)
    if cert is None:
        print(f"no quasi-period within {args.max_steps} steps")
        return 1
    if args.json:
        record = {
            "f": format_poly(cert.f),
            "a": format_poly(cert.a),
            "b": format_poly(cert.b),
            "m": cert.m,
            "c": format_rational(cert.c),
        }
        print(json.dumps(record))
    else:
        print(f"f = {format_poly(cert.f)}")
        print(f"a = {format_poly(cert.a)}")
        print(f"b = {format_poly(cert.b)}")
        print(f"m = {cert.m}")
        print(f"c = {format_rational(cert.c)}")
    return 0


def cmd_somos(args: argparse.Namespace) -> int:
    coeffs = _values(args.coeffs, "--coeffs") if args.coeffs else None
    seeds = _values(args.seeds, "--seeds") if args.seeds else None
    spec = SomosSpec(args.width, coeffs=coeffs, seeds=seeds)
    if args.lo > args.hi:
        raise InputError("--from must not exceed --to")
    seq = somos_generate(spec, args.lo, args.hi)
    _halt_notes(seq)
    _print_window(seq, args.json)
    if args.scan:
        return _scan(seq)
    return 0


def cmd_eds(args: argparse.Namespace) -> int:
    seeds = _values(args.seeds, "--seeds")
    if len(seeds) != 4:
        raise InputError(f"--seeds: a ladder needs exactly four seeds, got {len(seeds)}")
    spec = EDSSpec(*seeds)
    if args.lo > args.hi:
        raise InputError("--from must not exceed --to")
    terms = max(abs(args.lo), abs(args.hi), 4)
    W = eds_generate(spec, terms)
    _halt_notes(W)
    try:
        window = eds_window(W, args.lo, args.hi)
    except KeyError as ex:
        raise InputError(f"window reaches past the halt: no term at index {ex.args[0]}") from None
    _print_window(window, args.json)
    if args.scan:
        return _scan(window)
    return 0


def cmd_identify(args: argparse.Namespace) -> int:
    alpha = _rational(args.alpha, "--alpha")
    beta = _rational(args.beta, "--beta")
    window = _values(args.window, "--window")
    try:
        rec = g1_somos4_to_curve(alpha, beta, window)
    except ArithmeticError as ex:
        print(f"round trip FAIL: {ex}")
        return 1
    P0, Q0 = rec.state
    print(f"A = {format_poly(rec.curve.A)}")
    print(f"R = {format_poly(rec.curve.R)}")
    print(f"start: h = {rec.start_index}, P = {format_poly(P0)}, Q = {format_poly(Q0)}")
    if rec.twist != 1:
        print(f"twist = {format_rational(rec.twist)}")
    print("round trip PASS")
    return 0


# ------------------------------------------------------------ verify suites

Check = tuple[str, Optional[bool], str]  # label, ok (None = skipped), detail


def _report(checks: list[Check]) -> int:
    failures = 0
    counted = 0
    for label, ok, detail in checks:
        if ok is None:
            print(f"{label}: SKIPPED" + (f" ({detail})" if detail else ""))
            continue
        counted += 1
        failures += 0 if ok else 1
        print(f"{label}: {'PASS' if ok else 'FAIL'}" + (f" ({detail})" if detail else ""))
    print(f"{counted - failures}/{counted} checks passed")
    return 1 if failures else 0


def _coeff_pair(pair: tuple[Fraction, Fraction]) -> str:
    return f"({format_rational(pair[0])}, {format_rational(pair[1])})"


def _suite_g1(args: argparse.Namespace) -> list[Check]:
    curve = _curve(args)
    rem = g1_remainder(curve)
    start = _start(curve, args)
    steps = args.steps if args.steps is not None else 20
    if steps < 8:
        raise InputError("--steps must be at least 8 for this suite")
    lines = expand(curve, 1, steps, start=start, start_index=1)
    exts = [g1_extract(curve, line) for line in lines]
    es = [ext.e for ext in exts]

    id9 = all(g1_identity9(curve, exts[i], exts[i + 1]) for i in range(len(exts) - 1))
    id10 = all(
        g1_identity10(curve, (es[i - 1], es[i], es[i + 1]))
        for i in range(1, len(es) - 1)
    )
    e_rel = g1_e_relation(curve, es)
    chain = g1_denominators(es, 1, 1)
    alpha, beta = rem.v**2, rem.v**2 * curve.A(rem.w)
    ladder = g1_somos4_check(chain, alpha, beta)
    trans = g1_verify_translation(curve, lines)

    return [
        ("consecutive-line relation", id9, f"{len(exts) - 1} pairs"),
        ("e-triple relation", id10, f"{len(es) - 2} triples"),
        (
            "width-4 e-relation",
            bool(e_rel),
            f"coefficients {_coeff_pair(e_rel.coeffs)}" if e_rel.coeffs else "no consistent coefficients",
        ),
        ("denominator ladder", ladder, f"coefficients {_coeff_pair((alpha, beta))}"),
        (
            "translation law",
            bool(trans),
            f"{trans.checked} steps, involution {'on' if trans.involution else 'off'}",
        ),
    ]


def _suite_g2(args: argparse.Namespace) -> list[Check]:
    curve = _curve(args)
    rem = g2_remainder(curve)
    start = _start(curve, args)
    steps = args.steps if args.steps is not None else 20
    if steps < 8:
        raise InputError("--steps must be at least 8 for this suite")
    lines = expand(curve, 0, steps, start=start, start_index=0)
    exts = [g2_extract(curve, line) for line in lines]

    split_ok, split_detail = True, f"{len(lines) - 2} lines"
    for i in range(1, len(lines) - 1):
        try:
            g2_cpoly(curve, lines[i], lines[i + 1], lines[i - 1].Q)
        except ArithmeticError as ex:
            split_ok, split_detail = False, str(ex)
            break

    report = g2_identities(curve, lines)
    eval_ok = report.id13 and report.id14 and report.id15
    checks: list[Check] = [
        ("three-way quotient split", split_ok, split_detail),
        ("evaluation identities", eval_ok, f"{report.checked} lines, {report.skipped} skipped"),
    ]

    if rem.u != 0:
        checks.append(
            (
                "norm product sign",
                bool(report.id16),
                f"sign {report.norm_sign}" if report.norm_sign else "no consistent sign",
            )
        )
        checks.append(("d-recurrence", None, "quadratic remainder"))
        checks.append(("T-recurrence", None, "quadratic remainder"))
        return checks

    checks.append(("norm product sign", None, "linear remainder"))
    d_lo = lines[0].h
    d_seq = [ext.d for ext in exts]
    drec = g2_d_recursion(curve, d_seq)
    checks.append(
        (
            "d-recurrence",
            drec.ok,
            f"form {drec.lhs_form}, coefficients {_coeff_pair(drec.coeffs)}"
            if drec.coeffs
            else "no unique resolution",
        )
    )
    t_lo, t_vals = g2_t_sequence(d_seq, d_lo)
    trec = g2_t_recursion(curve, t_vals)
    checks.append(
        (
            "T-recurrence",
            bool(trec),
            f"coefficients {_coeff_pair(trec.coeffs)}" if trec.coeffs else "no unique resolution",
        )
    )
    return checks


def _suite_ward(args: argparse.Namespace) -> list[Check]:
    seeds = _values(args.seeds, "--seeds") if args.seeds else [Fraction(1), Fraction(1), Fraction(-1), Fraction(1)]
    if len(seeds) != 4:
        raise InputError(f"--seeds: a ladder needs exactly four seeds, got {len(seeds)}")
    if seeds[0] != 1:
        raise InputError("the grid identity needs a normalized ladder with first term 1")
    spec = EDSSpec(*seeds)
    steps = args.steps if args.steps is not None else 12
    if steps < 4:
        raise InputError("--steps must be at least 4 for this suite")

    W = eds_generate(spec, steps + 9)
    if W.halt_hi is not None:
        raise InputError(f"ladder hits a zero at index {W.halt_hi}; shorten --steps")
    h_range = range(1, steps + 1)
    grid = all(ward_identity(W, m, n, h_range) for m in range(2, 5) for n in range(1, m))

    alpha, beta = seeds[1] ** 2, -seeds[0] * seeds[2]
    A = somos_generate(SomosSpec(4, coeffs=(alpha, beta)), -steps - 6, steps + 6)
    if A.halt_lo is not None or A.halt_hi is not None:
        raise InputError("companion chain hits a zero; shorten --steps")
    h_mid = range(-steps // 2, steps // 2 + 1)
    swart = all(
        swart_vdp_identity(A, W, m, n, h_mid) for m in range(2, 5) for n in range(1, m)
    )
    id21 = all(identity21(A, W, m, h_mid) for m in range(1, 5))

    return [
        ("grid identity", grid, f"m, n up to 4 over {len(h_range)} indices"),
        ("chain-ladder identity", swart, f"m, n up to 4 over {len(h_mid)} indices"),
        ("shifted-pair identity", id21, f"m up to 4 over {len(h_mid)} indices"),
    ]


def _suite_somos5(args: argparse.Namespace) -> list[Check]:
    seeds = _values(args.seeds, "--seeds") if args.seeds else [Fraction(1)] * 5
    spec = SomosSpec(5, seeds=seeds)
    steps = args.steps if args.steps is not None else 10
    if steps < 7:
        raise InputError("--steps must be at least 7 for this suite")
    B = somos_generate(spec, -steps, steps + 4)
    if B.halt_lo is not None or B.halt_hi is not None:
        raise InputError("window hits a zero; the halves cannot be fitted")

    try:
        even, odd, (fit_even, fit_odd) = somos5_split(B)
    except ValueError as ex:
        return [("half-window fit", False, str(ex))]
    return [
        ("even half width-4 fit", True, f"coefficients {_coeff_pair(fit_even)}, {len(even.values)} terms"),
        ("odd half width-4 fit", True, f"coefficients {_coeff_pair(fit_odd)}, {len(odd.values)} terms"),
    ]


def _suite_hone(args: argparse.Namespace) -> list[Check]:
    alpha = _rational(args.alpha, "--alpha")
    beta = _rational(args.beta, "--beta")
    e_prev = _rational(args.e0, "--e0")
    e_cur = _rational(args.e1, "--e1")
    steps = args.steps if args.steps is not None else 100
    if steps < 1:
        raise InputError("--steps must be positive")

    e_next, J = hone_map(alpha, beta, e_prev, e_cur)
    ok = True
    for _ in range(steps - 1):
        e_prev, e_cur = e_cur, e_next
        e_next, J_step = hone_map(alpha, beta, e_prev, e_cur)
        ok &= J_step == J
    return [("invariant along the orbit", ok, f"J = {format_rational(J)}, {steps} steps")]


_SUITES = {
    "g1": _suite_g1,
    "g2": _suite_g2,
    "ward": _suite_ward,
    "somos5": _suite_somos5,
    "hone": _suite_hone,
}


def cmd_verify(args: argparse.Namespace) -> int:
    return _report(_SUITES[args.suite](args))


# ------------------------------------------------------------------ parser


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cfsomos",
        description="Exact expansion of quadratic surds over Q[X] and the sequences they drive.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    sub = subs.add_parser("expand", help="print a window of expansion lines")
    _add_curve_flags(sub)
    sub.add_argument("--from", dest="lo", type=int, default=0, help="first line index (default 0)")
    sub.add_argument("--to", dest="hi", type=int, default=10, help="last line index (default 10)")
    sub.add_argument("--json", action="store_true", help="emit one JSON record per line")
    sub.set_defaults(func=cmd_expand)

    sub = subs.add_parser("certify", help="express an integral of f/sqrt(D) as a logarithm")
    sub.add_argument("--D", metavar="POLY", required=True, help="monic even-degree non-square polynomial")
    sub.add_argument("--max-steps", dest="max_steps", type=int, default=64, help="search depth (default 64)")
    sub.add_argument("--json", action="store_true", help="emit the certificate as one JSON record")
    sub.set_defaults(func=cmd_certify)

    sub = subs.add_parser("somos", help="generate a bilinear-recurrence window")
    sub.add_argument("--width", type=int, default=4, help="recurrence width k (default 4)")
    sub.add_argument("--coeffs", metavar="LIST", help="coefficients on gaps 1.. (default all ones)")
    sub.add_argument("--seeds", metavar="LIST", help="k seeds at indices 0..k-1 (default all ones)")
    sub.add_argument("--from", dest="lo", type=int, default=0, help="first index (default 0)")
    sub.add_argument("--to", dest="hi", type=int, default=10, help="last index (default 10)")
    sub.add_argument("--scan", action="store_true", help="report the first fractional term, exit 1 if any")
    sub.add_argument("--json", action="store_true", help="emit the window as one JSON record")
    sub.set_defaults(func=cmd_somos)

    sub = subs.add_parser("eds", help="generate a division-ladder window")
    sub.add_argument("--seeds", metavar="LIST", required=True, help="four seeds W1,W2,W3,W4")
    sub.add_argument("--from", dest="lo", type=int, default=1, help="first index (default 1)")
    sub.add_argument("--to", dest="hi", type=int, default=10, help="last index (default 10)")
    sub.add_argument("--scan", action="store_true", help="report the first fractional term, exit 1 if any")
    sub.add_argument("--json", action="store_true", help="emit the window as one JSON record")
    sub.set_defaults(func=cmd_eds)

    sub = subs.add_parser("identify", help="rebuild a curve from four width-4 sequence terms")
    sub.add_argument("--alpha", required=True, help="coefficient on the outer product")
    sub.add_argument("--beta", required=True, help="coefficient on the square")
    sub.add_argument("--window", metavar="LIST", required=True, help="four consecutive terms")
    sub.set_defaults(func=cmd_identify)

    sub = subs.add_parser("verify", help="run an identity suite")
    sub.add_argument("--suite", required=True, choices=sorted(_SUITES), help="which suite to run")
    _add_curve_flags(sub)
    sub.add_argument("--seeds", metavar="LIST", help="ladder or window seeds (ward, somos5)")
    sub.add_argument("--alpha", default="1", help="map coefficient (hone)")
    sub.add_argument("--beta", default="1", help="map coefficient (hone)")
    sub.add_argument("--e0", default="1", help="orbit start (hone)")
    sub.add_argument("--e1", default="1", help="orbit start (hone)")
    sub.add_argument("--steps", type=int, default=None, help="window length (suite-specific default)")
    sub.set_defaults(func=cmd_verify)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as ex:
        print(f"error: {ex}", file=sys.stderr)
        return 2
    except (PolyParseError, ValueError) as ex:
        print(f"error: {ex}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
