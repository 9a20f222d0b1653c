"""Genus 2 layer: line parameters, the C_h bridge, and the T-sequence.

When deg A = 3 a normal expansion carries linear P_h =: d_h(X + e_h)
and quadratic Q_h with leading coefficient u_h, tied by
u_{h-1} u_h = -d_h.  The most general remainder is
R = u(X^2 - v X + w); the special case u = 0 is written R = -v(X - w).
The quotient polynomial C_h of consecutive lines collapses to the
constant d_h d_{h+1} + u, which drives a family of evaluation identities
at X = -e_h and, for u = 0, a width six recurrence for the d_h.  The
bilinear ladder T_{h-1} T_{h+1} = d_h T_h^2 integrates the d-chain into
a Somos-like sequence.

The displayed forms of the norm identity and of the width six recurrence
do not match the data they summarize; both checkers here resolve the
reading empirically and report which variant the expansion confirms.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .cf import CFStep, Curve
from .poly import Poly, norm_over_roots
from .resolve import ResolvedRelation, resolve_bilinear


def _fr(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class Genus2Remainder:
    """R = u(X^2 - v X + w), or R = -v(X - w) when u = 0 (then v != 0)."""

    u: Fraction
    v: Fraction
    w: Fraction


def g2_remainder(curve: Curve) -> Genus2Remainder:
    if curve.genus != 2:
        raise ValueError("curve must have genus 2")
    R = curve.R
    if R.degree == 2:
        u = R.lc
        return Genus2Remainder(u=u, v=-R.coeff(1) / u, w=R.coeff(0) / u)
    if R.degree == 1:
        v = -R.lc
        return Genus2Remainder(u=Fraction(0), v=v, w=R.coeff(0) / v)
    raise ValueError("constant R carries no (v, w) parameters")


@dataclass(frozen=True)
class Genus2Line:
    """Line h of a normal genus 2 expansion: P_h = d_h(X + e_h), u_h = lc Q_h."""

    h: int
    d: Fraction
    e: Fraction
    u_line: Fraction


def g2_extract(curve: Curve, line: CFStep) -> Genus2Line:
    if curve.genus != 2:
        raise ValueError("curve must have genus 2")
    if line.P.degree != 1:
        raise ValueError(
            f"line {line.h} has P = {line.P}: singular line, d_h would vanish"
        )
    d = line.P.lc
    return Genus2Line(h=line.h, d=d, e=line.P.coeff(0) / d, u_line=line.Q.lc)


def _nu(line: CFStep) -> Fraction:
    # a_h = (X + nu_h) / u_h on a normal line
    if not line.normal:
        raise ValueError(f"line {line.h} is not normal: a = {line.a}")
    return line.Q.lc * line.a.coeff(0)


def g2_cpoly(curve: Curve, line: CFStep, line_next: CFStep, Q_prev: Poly) -> Poly:
    """C_h = (R + P_{h+1} P_h) / (Q_h / u_h), checked against both recasts.

    The same polynomial must equal u_h Q_{h+1} + P_{h+1}(X + nu_h) and
    u_h Q_{h-1} + P_h(X + nu_h); for genus 2 it is the constant
    d_h d_{h+1} + u.
    """
    if curve.genus != 2:
        raise ValueError("curve must have genus 2")
    if line_next.h != line.h + 1:
        raise ValueError("lines must be consecutive")
    u_h = line.Q.lc
    c = (curve.R + line_next.P * line.P).exact_div(line.Q / u_h)
    shift = Poly.x() + Poly.constant(_nu(line))
    alt1 = line.Q.lc * line_next.Q + line_next.P * shift
    alt2 = line.Q.lc * Q_prev + line.P * shift
    if c != alt1 or c != alt2:
        raise ArithmeticError(f"three-way split of C_{line.h} disagrees")
    rem = g2_remainder(curve)
    d_h = g2_extract(curve, line).d
    d_next = g2_extract(curve, line_next).d
    if c != Poly.constant(d_h * d_next + rem.u):
        raise ArithmeticError(f"C_{line.h} is not d_h d_(h+1) + u")
    return c


@dataclass(frozen=True)
class Genus2IdentityReport:
    """Exact verdicts for the evaluation identities over a window.

    norm_sign records which sign of the norm identity the data took
    (the displayed form carries none); None when u = 0, where the norm
    identity degenerates away.  skipped counts indices where
    Q_h(-e_h) = 0 made the evaluated forms undefined.
    """

    checked: int
    skipped: int
    id13: bool
    id14: bool
    id15: bool
    id16: Optional[bool]
    norm_sign: Optional[int]

    def __bool__(self) -> bool:
        core = self.id13 and self.id14 and self.id15
        return core and (self.id16 is None or self.id16)


def g2_identities(curve: Curve, window: Sequence[CFStep]) -> Genus2IdentityReport:
    """Check the X = -e_h evaluation identities on consecutive lines.

    The window must be consecutive; identities needing neighbours are
    checked at every index where their lines exist.  All d_h must be
    nonzero (extraction refuses otherwise).
    """
    if len(window) < 5:
        raise ValueError("need at least five consecutive lines")
    for a, b in zip(window, window[1:]):
        if b.h != a.h + 1:
            raise ValueError("window must be consecutive")
    rem = g2_remainder(curve)
    params = [g2_extract(curve, ln) for ln in window]
    R = curve.R
    id13 = id14 = id15 = True
    checked = skipped = 0
    norm_pairs: list[tuple[Fraction, Fraction]] = []
    for i in range(1, len(window) - 1):
        ln = window[i]
        d_prev, d_h, d_next = params[i - 1].d, params[i].d, params[i + 1].d
        e_h = params[i].e
        u_prev, u_h = params[i - 1].u_line, params[i].u_line
        q_at = ln.Q(-e_h)
        r_at = R(-e_h)
        if q_at == 0:
            skipped += 1
        else:
            checked += 1
            id13 &= d_h * d_next + rem.u == u_h * r_at / q_at
        id14 &= d_prev * d_h + rem.u == u_prev * q_at
        id15 &= (d_prev * d_h + rem.u) * (d_h * d_next + rem.u) == u_prev * u_h * r_at
        if rem.u != 0 and 2 <= i < len(window) - 2:
            lhs = rem.u**3 * norm_over_roots(curve.A + ln.P, R)
            rhs = (
                d_prev
                * d_h**3
                * d_next
                * (params[i - 2].d * d_prev + rem.u)
                * (d_next * params[i + 2].d + rem.u)
            )
            norm_pairs.append((lhs, rhs))
    id16: Optional[bool] = None
    norm_sign: Optional[int] = None
    if norm_pairs:
        if all(lhs == -rhs for lhs, rhs in norm_pairs):
            id16, norm_sign = True, -1
        elif all(lhs == rhs for lhs, rhs in norm_pairs):
            id16, norm_sign = True, 1
        else:
            id16 = False
    return Genus2IdentityReport(
        checked=checked,
        skipped=skipped,
        id13=id13,
        id14=id14,
        id15=id15,
        id16=id16,
        norm_sign=norm_sign,
    )


# the two readings of the width six d-recurrence left side: exponents
# (1,2,3,2,1) match the ladder folding, (1,2,2,1,1) is the flat variant
_LHS_FORMS = {
    "cubed-center": (1, 2, 3, 2, 1),
    "flat-center": (1, 2, 2, 1, 1),
}


@dataclass(frozen=True)
class DRecursionReport:
    """Resolution of the width six recurrence for the d-chain (u = 0).

    ok requires exactly one (lhs form, coefficient pair) reading to hold
    at every window; forms lists every surviving symbolic reading.
    """

    ok: bool
    lhs_form: Optional[str]
    coeffs: Optional[tuple[Fraction, Fraction]]
    forms: tuple[str, ...]

    def __bool__(self) -> bool:
        return self.ok


def _coeff_candidates(rem: Genus2Remainder, A_at_w: Fraction) -> dict[str, tuple[Fraction, Fraction]]:
    v = rem.v
    out: dict[str, tuple[Fraction, Fraction]] = {}
    for name, (c1, c2) in {
        "v2-on-product": (v**2, -(v**3) * A_at_w),
        "v3-on-product": (v**3, -(v**2) * A_at_w),
    }.items():
        for s1, s2 in ((1, 1), (1, -1), (-1, 1), (-1, -1)):
            tag = name if (s1, s2) == (1, 1) else f"{name}:{'+' if s1 > 0 else '-'}{'+' if s2 > 0 else '-'}"
            out[tag] = (s1 * c1, s2 * c2)
    return out


def g2_d_recursion(curve: Curve, d_seq: Sequence[Fraction]) -> DRecursionReport:
    """Resolve d_{h-2} d_{h-1}^2 d_h^? d_{h+1}^? d_{h+2} = c1 d_{h-1} d_h^2 d_{h+1} + c2.

    Every reading of the displayed recurrence (either exponent pattern on
    the left, either coefficient placement and sign on the right) is
    checked on every width five window; ok means exactly one numeric
    reading survives.  Only the u = 0 remainder shape carries this
    recurrence.
    """
    rem = g2_remainder(curve)
    if rem.u != 0:
        raise ValueError("the d-recurrence needs the u = 0 remainder")
    ds = [_fr(d) for d in d_seq]
    if len(ds) < 6:
        raise ValueError("need at least six consecutive d-values")
    if any(d == 0 for d in ds):
        raise ValueError("zero d in the window")
    coeffs = _coeff_candidates(rem, curve.A(rem.w))
    survivors: dict[tuple[str, str], tuple[Fraction, Fraction]] = {}
    for lhs_name, exps in _LHS_FORMS.items():
        windows = []
        for i in range(len(ds) - 4):
            window = ds[i : i + 5]
            lhs = Fraction(1)
            for val, ex in zip(window, exps):
                lhs *= val**ex
            windows.append((lhs, window[1] * window[2] ** 2 * window[3], Fraction(1)))
        for cname, pair in coeffs.items():
            if all(lhs == pair[0] * m + pair[1] * k for lhs, m, k in windows):
                survivors[(lhs_name, cname)] = pair
    distinct = {(lhs, pair) for (lhs, _), pair in survivors.items()}
    if len(distinct) != 1:
        return DRecursionReport(
            ok=False,
            lhs_form=None,
            coeffs=None,
            forms=tuple(sorted(f"{a}/{b}" for a, b in survivors)),
        )
    (lhs_form, pair) = distinct.pop()
    return DRecursionReport(
        ok=True,
        lhs_form=lhs_form,
        coeffs=pair,
        forms=tuple(sorted(f"{a}/{b}" for a, b in survivors)),
    )


def g2_t_sequence(
    d_seq: Sequence[Fraction],
    d_lo: int,
    T0: Fraction = Fraction(1),
    T1: Fraction = Fraction(1),
) -> tuple[int, list[Fraction]]:
    """Integrate T_{h-1} T_{h+1} = d_h T_h^2 across the supplied d-window.

    d_seq[i] is d at index d_lo + i; the seeds sit at T_0 and T_1, so the
    window must contain index 1 (forward) or 0 (backward) to extend.
    Returns (t_lo, values) covering indices d_lo - 1 .. d_hi + 1.
    """
    ds = {d_lo + i: _fr(d) for i, d in enumerate(d_seq)}
    if any(d == 0 for d in ds.values()):
        raise ValueError("zero d: the ladder breaks")
    if not ds:
        raise ValueError("empty d-window")
    d_hi = d_lo + len(d_seq) - 1
    if d_lo > 1 or d_hi < 0:
        raise ValueError("d-window must touch the seed indices 0 and 1")
    T = {0: _fr(T0), 1: _fr(T1)}
    if T[0] == 0 or T[1] == 0:
        raise ValueError("zero seed")
    for h in range(1, d_hi + 1):
        T[h + 1] = ds[h] * T[h] ** 2 / T[h - 1]
    for h in range(0, d_lo - 1, -1):
        T[h - 1] = ds[h] * T[h] ** 2 / T[h + 1]
    lo = d_lo - 1
    values = [T[i] for i in range(lo, d_hi + 2)]
    # the ladder folded once and twice over, as stated alongside it
    for h in range(d_lo + 1, d_hi):
        assert T[h - 2] * T[h + 2] == ds[h - 1] * ds[h] ** 2 * ds[h + 1] * T[h] ** 2
    for h in range(d_lo + 2, d_hi - 1):
        prod = (
            ds[h - 2]
            * ds[h - 1] ** 2
            * ds[h] ** 3
            * ds[h + 1] ** 2
            * ds[h + 2]
        )
        assert T[h - 3] * T[h + 3] == prod * T[h] ** 2
    return lo, values


def g2_t_recursion(
    curve: Curve, t_seq: Sequence[Fraction]
) -> ResolvedRelation:
    """Resolve T_{h-3} T_{h+3} = c1 T_{h-2} T_{h+2} + c2 A(w)-weighted T_h^2.

    Candidate coefficients are the two displayed placements of (v^2, v^3)
    with either sign; the worked curve resolves them to the all-plus
    width six recurrence its T-values satisfy.
    """
    rem = g2_remainder(curve)
    if rem.u != 0:
        raise ValueError("the T-recurrence needs the u = 0 remainder")
    ts = [_fr(t) for t in t_seq]
    if len(ts) < 7:
        raise ValueError("need at least seven consecutive T-values")
    candidates = _coeff_candidates(rem, curve.A(rem.w))
    windows = [
        (ts[i] * ts[i + 6], ts[i + 1] * ts[i + 5], ts[i + 3] ** 2)
        for i in range(len(ts) - 6)
    ]
    return resolve_bilinear(candidates, windows)
