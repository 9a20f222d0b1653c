"""Genus 1 layer: line parameters, the cubic model, and Somos 4 bridges.

When deg A = 2 and R = v(X - w), every reduced tableau line carries a
constant P_h =: e_h and a linear Q_h =: v_h(X - w_h).  The pair
(w_h, -e_h) is a point M_{h+1} on the curve Z^2 = A(X) Z + R(X), and
the substitution U = Z, V = X Z + v moves everything onto a cubic in
long Weierstrass form where the expansion becomes repeated addition of
a fixed point S.  Denominator sequences built from the e_h by
A_{h-1} A_{h+1} = e_h A_h^2 are exactly the Somos 4 sequences, and the
map runs both ways: four consecutive terms of a Somos 4 sequence
recover a curve and a start state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .cf import CFStep, Curve, State, cf_init, expand
from .poly import Poly, X
from .resolve import ResolvedRelation, resolve_bilinear

# an affine point (u, v) or None for the point at infinity
Point = Optional[tuple[Fraction, Fraction]]


def _fr(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def _nth_root(q: Fraction, n: int) -> Optional[Fraction]:
    """Exact rational n-th root of q, or None.  Even n needs q >= 0."""
    q = _fr(q)
    if q < 0:
        if n % 2 == 0:
            return None
        r = _nth_root(-q, n)
        return None if r is None else -r
    num = round(q.numerator ** (1.0 / n))
    den = round(q.denominator ** (1.0 / n))
    # float root-taking only guesses; correct it exactly
    for num_c in (num - 1, num, num + 1):
        for den_c in (den - 1, den, den + 1):
            if den_c > 0 and num_c >= 0 and Fraction(num_c**n, den_c**n) == q:
                return Fraction(num_c, den_c)
    return None


def rational_sqrt(q: Fraction) -> Optional[Fraction]:
    q = _fr(q)
    if q < 0:
        return None
    num = math.isqrt(q.numerator)
    den = math.isqrt(q.denominator)
    if num * num == q.numerator and den * den == q.denominator:
        return Fraction(num, den)
    return None


@dataclass(frozen=True)
class Genus1Remainder:
    """R(X) = v(X - w) with v nonzero."""

    v: Fraction
    w: Fraction


def g1_remainder(curve: Curve) -> Genus1Remainder:
    if curve.genus != 1:
        raise ValueError("curve must have genus 1")
    if curve.R.degree != 1:
        raise ValueError("R must be linear to carry the (v, w) parameters")
    v = curve.R.lc
    return Genus1Remainder(v=v, w=-curve.R.coeff(0) / v)


@dataclass(frozen=True)
class Genus1Line:
    """Line h of a normal genus 1 expansion: P_h = e_h, Q_h = v_h(X - w_h)."""

    h: int
    e: Fraction
    v_line: Fraction
    w_line: Fraction

    @property
    def point(self) -> tuple[Fraction, Fraction]:
        """The point M_{h+1} = (w_h, -e_h) on Z^2 = A Z + R."""
        return (self.w_line, -self.e)


def g1_extract(curve: Curve, line: CFStep) -> Genus1Line:
    if curve.genus != 1:
        raise ValueError("curve must have genus 1")
    if not line.normal:
        raise ValueError(f"line {line.h} is not normal: a = {line.a}")
    if line.Q.degree != 1:
        raise ValueError(f"line {line.h} has non-linear Q = {line.Q}")
    if line.P.degree > 0:
        raise ValueError(f"line {line.h} has non-constant P = {line.P}")
    v_line = line.Q.lc
    return Genus1Line(
        h=line.h,
        e=line.P.coeff(0),
        v_line=v_line,
        w_line=-line.Q.coeff(0) / v_line,
    )


def g1_identity9(curve: Curve, line: Genus1Line, line_next: Genus1Line) -> bool:
    """v(w - w_h) = e_h e_{h+1} and v_h v_{h+1} = -e_{h+1} on consecutive lines."""
    if line_next.h != line.h + 1:
        raise ValueError("lines must be consecutive")
    rem = g1_remainder(curve)
    return (
        rem.v * (rem.w - line.w_line) == line.e * line_next.e
        and line.v_line * line_next.v_line == -line_next.e
    )


def g1_identity10(
    curve: Curve, e_triple: tuple[Fraction, Fraction, Fraction]
) -> bool:
    """e_{h-1} e_h^2 e_{h+1} = v^2 (e_h + A(w))."""
    e0, e1, e2 = (_fr(e) for e in e_triple)
    if 0 in (e0, e1, e2):
        raise ValueError("zero e in the triple: singular line, relation is void")
    rem = g1_remainder(curve)
    return e0 * e1 * e1 * e2 == rem.v**2 * (e1 + curve.A(rem.w))


@dataclass(frozen=True)
class CubicModel:
    """V^2 + a1 U V + a3 V = U^3 + a2 U^2 + a4 U + a6, nonsingular."""

    a1: Fraction
    a2: Fraction
    a3: Fraction
    a4: Fraction
    a6: Fraction

    def __post_init__(self):
        for name in ("a1", "a2", "a3", "a4", "a6"):
            object.__setattr__(self, name, _fr(getattr(self, name)))
        if self.discriminant == 0:
            raise ValueError("singular cubic")

    @property
    def b2(self) -> Fraction:
        return self.a1**2 + 4 * self.a2

    @property
    def b4(self) -> Fraction:
        return 2 * self.a4 + self.a1 * self.a3

    @property
    def b6(self) -> Fraction:
        return self.a3**2 + 4 * self.a6

    @property
    def b8(self) -> Fraction:
        return (
            self.a1**2 * self.a6
            + 4 * self.a2 * self.a6
            - self.a1 * self.a3 * self.a4
            + self.a2 * self.a3**2
            - self.a4**2
        )

    @property
    def c4(self) -> Fraction:
        return self.b2**2 - 24 * self.b4

    @property
    def c6(self) -> Fraction:
        return -self.b2**3 + 36 * self.b2 * self.b4 - 216 * self.b6

    @property
    def discriminant(self) -> Fraction:
        return (
            -self.b2**2 * self.b8
            - 8 * self.b4**3
            - 27 * self.b6**2
            + 9 * self.b2 * self.b4 * self.b6
        )

    def contains(self, p: Point) -> bool:
        if p is None:
            return True
        u, v = p
        return (
            v * v + self.a1 * u * v + self.a3 * v
            == u**3 + self.a2 * u**2 + self.a4 * u + self.a6
        )


def g1_cubic_model(
    curve: Curve,
) -> tuple[CubicModel, Callable[[tuple[Fraction, Fraction]], tuple[Fraction, Fraction]]]:
    """The substitution U = Z, V = X Z + v, and the induced point map.

    Eliminating X from Z^2 = A(X) Z + R(X) with A = X^2 + s X + t and
    R = v(X - w) leaves V^2 + s U V - v V = U^3 - t U^2 + v(s + w) U,
    a cubic with zero constant coefficient.  The point map sends (x, z)
    on the quadratic model to (z, x z + v); the point at infinity that
    the expansion translates by lands on (0, 0) or its negative.
    """
    rem = g1_remainder(curve)
    s = curve.A.coeff(1)
    t = curve.A.coeff(0)
    model = CubicModel(a1=s, a2=-t, a3=-rem.v, a4=rem.v * (s + rem.w), a6=Fraction(0))

    def point_map(p: tuple[Fraction, Fraction]) -> tuple[Fraction, Fraction]:
        x, z = _fr(p[0]), _fr(p[1])
        return (z, x * z + rem.v)

    return model, point_map


def g1_neg(model: CubicModel, p: Point) -> Point:
    if p is None:
        return None
    u, v = p
    return (u, -v - model.a1 * u - model.a3)


def g1_add(model: CubicModel, p: Point, q: Point) -> Point:
    """Chord-tangent addition; None is the point at infinity."""
    if p is None:
        return q
    if q is None:
        return p
    if not (model.contains(p) and model.contains(q)):
        raise ValueError("point not on the cubic")
    x1, y1 = p
    x2, y2 = q
    if x1 == x2:
        if y1 + y2 + model.a1 * x1 + model.a3 == 0:
            return None
        lam = (3 * x1**2 + 2 * model.a2 * x1 + model.a4 - model.a1 * y1) / (
            2 * y1 + model.a1 * x1 + model.a3
        )
    else:
        lam = (y2 - y1) / (x2 - x1)
    x3 = lam**2 + model.a1 * lam - model.a2 - x1 - x2
    y3 = lam * (x1 - x3) - y1 - model.a1 * x3 - model.a3
    return (x3, y3)


def g1_mul(model: CubicModel, n: int, p: Point) -> Point:
    if n < 0:
        return g1_mul(model, -n, g1_neg(model, p))
    acc: Point = None
    for _ in range(n):
        acc = g1_add(model, acc, p)
    return acc


def isomorphism_scale(model: CubicModel, other: CubicModel) -> Optional[Fraction]:
    """Positive lambda with c4' = lambda^4 c4 and c6' = lambda^6 c6, or None.

    Existence of such a rational lambda is equivalent to the two models
    being isomorphic over the rationals up to the (r, s, t) shifts that
    leave c4 and c6 alone.
    """
    c4a, c6a = model.c4, model.c6
    c4b, c6b = other.c4, other.c6
    if (c4a == 0) != (c4b == 0) or (c6a == 0) != (c6b == 0):
        return None
    if c4a == 0:
        lam2 = _nth_root(c6b / c6a, 3)
    elif c6a == 0:
        lam2 = rational_sqrt(c4b / c4a)
    else:
        lam2 = (c6b * c4a) / (c4b * c6a)
    if lam2 is None or lam2 <= 0:
        return None
    lam = rational_sqrt(lam2)
    if lam is None:
        return None
    if other.c4 != lam**4 * c4a or other.c6 != lam**6 * c6a:
        return None
    return lam


@dataclass(frozen=True)
class TranslationReport:
    """Outcome of checking mapped M_{h+1} = mapped M_1 + h S on the model."""

    ok: bool
    involution: bool
    s: Point
    checked: int

    def __bool__(self) -> bool:
        return self.ok


def g1_verify_translation(
    curve: Curve,
    lines: Sequence[CFStep],
    hmax: Optional[int] = None,
) -> TranslationReport:
    """Fix a branch and S once on the first three lines, then hold the window.

    The substitution V = X Z + v does not say which involution branch the
    mapped points take, nor whether S maps to (0, 0) or its negative.
    All four combinations are tried against the first three lines; the
    first that fits is then required to fit every line up to hmax.
    """
    if hmax is not None:
        lines = [ln for ln in lines if ln.h <= lines[0].h + hmax]
    if len(lines) < 3:
        raise ValueError("need at least three consecutive lines")
    model, point_map = g1_cubic_model(curve)
    pts = [point_map(g1_extract(curve, ln).point) for ln in lines]
    origin: Point = (Fraction(0), Fraction(0))
    for involution in (False, True):
        mapped = [g1_neg(model, p) if involution else p for p in pts]
        for s in (origin, g1_neg(model, origin)):
            acc: Point = mapped[0]
            ok = True
            for i, target in enumerate(mapped):
                if acc != target:
                    ok = i >= 3  # conventions are fixed on the first three lines
                    break
                acc = g1_add(model, acc, s)
            else:
                return TranslationReport(ok=True, involution=involution, s=s, checked=len(lines))
            if not ok:
                continue
            return TranslationReport(ok=False, involution=involution, s=s, checked=i)
    return TranslationReport(ok=False, involution=False, s=None, checked=0)


def g1_denominators(
    e_seq: Sequence[Fraction], A0: Fraction, A1: Fraction
) -> list[Fraction]:
    """[A_0 .. A_{n+1}] from e_seq = [e_0 .. e_n] via A_{h-1} A_{h+1} = e_h A_h^2.

    e_0 pairs with A_{-1} and is not consumed; it is accepted so that the
    list can be indexed by the line number h.
    """
    es = [_fr(e) for e in e_seq]
    if any(e == 0 for e in es):
        raise ValueError("zero e: denominator ladder breaks")
    chain = [_fr(A0), _fr(A1)]
    for e in es[1:]:
        chain.append(e * chain[-1] ** 2 / chain[-2])
    # the same ladder three steps wide, as a cross-check
    for h in range(2, len(chain) - 2):
        assert (
            chain[h - 2] * chain[h + 2]
            == es[h - 1] * es[h] ** 2 * es[h + 1] * chain[h] ** 2
        )
    return chain


def g1_somos4_check(
    A_seq: Sequence[Fraction], alpha: Fraction, beta: Fraction
) -> bool:
    """A_{h-2} A_{h+2} = alpha A_{h-1} A_{h+1} + beta A_h^2 across the window."""
    vals = [_fr(a) for a in A_seq]
    if len(vals) < 5:
        raise ValueError("need at least five consecutive terms")
    if any(v == 0 for v in vals):
        raise ValueError("zero term in the window")
    alpha, beta = _fr(alpha), _fr(beta)
    return all(
        vals[h - 2] * vals[h + 2] == alpha * vals[h - 1] * vals[h + 1] + beta * vals[h] ** 2
        for h in range(2, len(vals) - 2)
    )


@dataclass(frozen=True)
class Reconstruction:
    """A curve and start state regenerating a Somos 4 window's e-values.

    twist = 1 when the leading coefficient was a rational square.
    Otherwise the curve realizes the quadratic twist: its expansion
    produces twist * e_h instead of e_h.
    """

    curve: Curve
    state: State
    start_index: int
    twist: Fraction


def g1_somos4_to_curve(
    alpha: Fraction, beta: Fraction, A_window: Sequence[Fraction]
) -> Reconstruction:
    """Identify a curve and start state from four consecutive Somos 4 terms.

    Gauge: w = 0 (shift X), v = sqrt(alpha) when alpha is a square.  For
    non-square alpha the e-values are scaled by alpha, which turns the
    coefficients into (alpha^4, alpha^4 beta) with square leading term;
    the returned curve is that quadratic twist and the scale is recorded.
    """
    alpha, beta = _fr(alpha), _fr(beta)
    if alpha == 0:
        raise ValueError("alpha must be nonzero")
    window = [_fr(a) for a in A_window]
    if len(window) < 4:
        raise ValueError("need four consecutive terms")
    if any(a == 0 for a in window):
        raise ValueError("window terms must be nonzero")
    for h in range(2, len(window) - 2):
        if window[h - 2] * window[h + 2] != alpha * window[h - 1] * window[h + 1] + beta * window[h] ** 2:
            raise ValueError("window fails its own recursion")

    e1 = window[0] * window[2] / window[1] ** 2
    e2 = window[1] * window[3] / window[2] ** 2
    v = rational_sqrt(alpha)
    if v is not None:
        twist = Fraction(1)
        t = beta / alpha
    else:
        twist = alpha
        e1, e2 = alpha * e1, alpha * e2
        v = alpha * alpha
        t = beta
    # w = 0, so A(0) = t and the two line relations pin w_1 and s:
    # v(0 - w_1) = e_1 e_2 and A(w_1) = -(e_1 + e_2)
    w1 = -e1 * e2 / v
    s = (-(e1 + e2) - t - w1 * w1) / w1
    curve = Curve(X * X + s * X + t, v * X)
    state = cf_init(curve, Poly.constant(e1), X - w1)

    # reconstruction must survive a round trip through the expansion
    chain = list(window)
    while len(chain) < 10:
        chain.append((alpha * chain[-1] * chain[-3] + beta * chain[-2] ** 2) / chain[-4])
    lines = expand(curve, 1, len(chain) - 2, start=state, start_index=1)
    for h, line in enumerate(lines, start=1):
        expected = twist * chain[h - 1] * chain[h + 1] / chain[h] ** 2
        if line.P != Poly.constant(expected):
            raise ArithmeticError("reconstructed curve fails the round trip")
    return Reconstruction(curve=curve, state=state, start_index=1, twist=twist)


def g1_eds_of_curve(curve: Curve, n: int) -> list[Fraction]:
    """W_1 .. W_n of the curve's division sequence, from the singular start.

    The expansion of Z / (-R), that is the state (0, -R) at line 1, has
    constant P_h throughout; the ladder W_{h+1} = e_h W_h^2 / W_{h-1}
    seeded by W_1 = 1, W_2 = -v produces the antisymmetric sequence with
    W_{h-2} W_{h+2} = W_2^2 W_{h-1} W_{h+1} - W_1 W_3 W_h^2.
    """
    if n < 1:
        raise ValueError("n must be positive")
    rem = g1_remainder(curve)
    W = [Fraction(1), -rem.v]
    if n > 2:
        lines = expand(curve, 2, n - 1, start=(Poly.zero(), -curve.R), start_index=1)
        for line in lines:
            if line.P.degree > 0:
                raise ArithmeticError(f"non-constant P on line {line.h}")
            e = line.P.coeff(0)
            W.append(e * W[-1] ** 2 / W[-2])
    return W[:n]


def g1_e_relation(curve: Curve, e_seq: Sequence[Fraction]) -> ResolvedRelation:
    """e_{h-1} e_h^2 e_{h+1}^2 e_{h+2} = -v^2 A(w) e_h e_{h+1} + v^4 + 2 w v^3 A(w).

    Both coefficients are tried with either sign and the surviving pair
    is reported; the displayed form is the one the data picks.
    """
    es = [_fr(e) for e in e_seq]
    if len(es) < 4:
        raise ValueError("need at least four consecutive e-values")
    if any(e == 0 for e in es):
        raise ValueError("zero e in the window")
    rem = g1_remainder(curve)
    aw = curve.A(rem.w)
    c1 = -rem.v**2 * aw
    c2 = rem.v**4 + 2 * rem.w * rem.v**3 * aw
    candidates = {
        "as-displayed": (c1, c2),
        "first-flipped": (-c1, c2),
        "second-flipped": (c1, -c2),
        "both-flipped": (-c1, -c2),
    }
    windows = [
        (
            es[i] * es[i + 1] ** 2 * es[i + 2] ** 2 * es[i + 3],
            es[i + 1] * es[i + 2],
            Fraction(1),
        )
        for i in range(len(es) - 3)
    ]
    return resolve_bilinear(candidates, windows)
