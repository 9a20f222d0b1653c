"""Continued fraction tableau of a quadratic irrational over Q[X].

The surd is Z = (Y + A)/2 where Y^2 = D = A^2 + 4R, with A monic of
degree g + 1 and R nonzero of degree at most g.  Z satisfies
Z^2 = A*Z + R; its conjugate is Zbar = A - Z and Z*Zbar = -R.  Under
these degree constraints D is never a perfect square, so no complete
quotient ever collapses and the tableau is doubly infinite.

Line h of the tableau writes the complete quotient (Z + P_h)/Q_h as

    (Z + P_h)/Q_h  =  a_h - (Zbar + P_{h+1})/Q_h

with a_h the polynomial part.  Consecutive lines are linked by

    a_h      = quo(A + P_h, Q_h)
    P_{h+1}  = a_h Q_h - A - P_h          (= -rem(A + P_h, Q_h))
    Q_h Q_{h+1} = R - P_{h+1}(A + P_{h+1})

and the last relation read at h-1 lets the tableau run backwards.  A
state (P, Q) is admissible whenever Q divides P(A + P) - R; both step
directions preserve admissibility.  The backward step inverts the
forward one exactly on reduced states (deg P < deg Q), which is the
situation everywhere in a normal expansion.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .poly import Poly, sqrt_decompose

State = tuple[Poly, Poly]


@dataclass(frozen=True)
class Curve:
    """The data (A, R) defining Z = (Y + A)/2, Y^2 = A^2 + 4R."""

    A: Poly
    R: Poly

    def __post_init__(self):
        if self.A.is_zero or self.A.degree < 1:
            raise ValueError("A must have degree >= 1")
        if not self.A.is_monic:
            raise ValueError("A must be monic")
        if self.R.is_zero:
            raise ValueError("R must be nonzero (D must not be a perfect square)")
        if self.R.degree > self.genus:
            raise ValueError(
                f"deg R = {self.R.degree} exceeds genus {self.genus}"
            )

    @property
    def genus(self) -> int:
        return int(self.A.degree) - 1

    @property
    def D(self) -> Poly:
        return self.A * self.A + 4 * self.R

    @classmethod
    def from_D(cls, D: Poly) -> "Curve":
        A, R = sqrt_decompose(D)
        return cls(A, R)


@dataclass(frozen=True)
class CFStep:
    """One tableau line: (Z + P)/Q = a - (Zbar + P')/Q."""

    h: int
    P: Poly
    Q: Poly
    a: Poly

    @property
    def u(self) -> Fraction:
        """Leading coefficient of Q (the unit of the line)."""
        return self.Q.lc

    @property
    def normal(self) -> bool:
        return self.a.degree == 1


def is_reduced(curve: Curve, P: Poly, Q: Poly) -> bool:
    """deg P < g and deg Q <= g: the box the expansion settles into."""
    g = curve.genus
    return P.degree < g and Q.degree <= g


def cf_init(curve: Curve, P: Poly, Q: Poly) -> State:
    """Validate a tableau state: Q must be nonzero and divide P(A+P) - R."""
    if Q.is_zero:
        raise ValueError("Q must be nonzero")
    if not (P * (curve.A + P) - curve.R) % Q == Poly.zero():
        raise ValueError(f"inadmissible state: {Q} does not divide P(A+P) - R")
    return P, Q


def step_forward(curve: Curve, P: Poly, Q: Poly) -> tuple[Poly, Poly, Poly]:
    """Return (a_h, P_{h+1}, Q_{h+1}) for the line at state (P_h, Q_h)."""
    a, rem = (curve.A + P).divrem(Q)
    P1 = -rem
    Q1 = (curve.R - P1 * (curve.A + P1)).exact_div(Q)
    return a, P1, Q1


def step_backward(curve: Curve, P: Poly, Q: Poly) -> tuple[Poly, Poly, Poly]:
    """Return (a_{h-1}, P_{h-1}, Q_{h-1}) for the state (P_h, Q_h)."""
    Q0 = (curve.R - P * (curve.A + P)).exact_div(Q)
    a0 = (curve.A + P) // Q0
    P0 = a0 * Q0 - curve.A - P
    return a0, P0, Q0


def expand(
    curve: Curve,
    lo: int,
    hi: int,
    start: Optional[State] = None,
    start_index: int = 0,
) -> list[CFStep]:
    """Tableau lines h = lo..hi around the state (P, Q) sitting at start_index.

    start defaults to the principal state (0, 1).  Backward lines require
    the states passed through to be reduced; forward lines never do.
    """
    if lo > hi:
        raise ValueError("empty window: lo > hi")
    P0, Q0 = cf_init(curve, *(start if start is not None else (Poly.zero(), Poly.one())))
    lines: dict[int, CFStep] = {}
    P, Q = P0, Q0
    h = start_index
    while h <= hi:
        a, Pn, Qn = step_forward(curve, P, Q)
        lines[h] = CFStep(h, P, Q, a)
        P, Q = Pn, Qn
        h += 1
    P, Q = P0, Q0
    h = start_index - 1
    while h >= lo:
        a, Pp, Qp = step_backward(curve, P, Q)
        lines[h] = CFStep(h, Pp, Qp, a)
        P, Q = Pp, Qp
        h -= 1
    return [lines[i] for i in range(lo, hi + 1)]


@dataclass(frozen=True)
class PeriodReport:
    """Quasi-period of an expansion: (P_m, Q_m) = (P_0, kappa * Q_0).

    Once a quasi-period occurs the whole tableau repeats up to units:
    P_{m+j} = P_j and Q_{m+j} = kappa^((-1)^j) Q_j, so the multiplier
    accumulated over two quasi-periods is kappa^(1 + (-1)^m).  That is 1
    when m is odd and kappa^2 when m is even; pure_period records the
    first return to Q_0 exactly, or None when the multipliers never
    cancel.
    """

    m_steps: int
    kappa: Fraction
    unit_degree: int
    pure_period: Optional[int]


def detect_quasi_period(
    curve: Curve,
    maxsteps: int = 64,
    start: Optional[State] = None,
) -> Optional[PeriodReport]:
    """Smallest m in 1..maxsteps with (P_m, Q_m) = (P_0, kappa Q_0), else None.

    unit_degree is the total degree of the partial quotients along one
    quasi-period (the degree of the unit a + b*Y the period produces).
    """
    P0, Q0 = cf_init(curve, *(start if start is not None else (Poly.zero(), Poly.one())))
    Q0_monic = Q0.monic()
    P, Q = P0, Q0
    unit_degree = 0
    for m in range(1, maxsteps + 1):
        a, P, Q = step_forward(curve, P, Q)
        unit_degree += int(a.degree) if not a.is_zero else 0
        if P == P0 and Q.monic() == Q0_monic:
            kappa = Q.lc / Q0.lc
            if kappa == 1:
                pure: Optional[int] = m
            elif m % 2 == 1 or kappa == -1:
                pure = 2 * m
            else:
                pure = None
            return PeriodReport(
                m_steps=m, kappa=kappa, unit_degree=unit_degree, pure_period=pure
            )
    return None


def continuants(quotients: Sequence[Poly] | Iterable[Poly]) -> tuple[list[Poly], list[Poly]]:
    """Convergent numerators and denominators of a quotient list.

    p_h = a_h p_{h-1} + p_{h-2} and likewise for q, seeded so that
    p_0/q_0 = a_0.  Satisfies p_h q_{h-1} - p_{h-1} q_h = (-1)^(h+1).
    """
    ps: list[Poly] = []
    qs: list[Poly] = []
    p1, p2 = Poly.one(), Poly.zero()
    q1, q2 = Poly.zero(), Poly.one()
    for a in quotients:
        p = a * p1 + p2
        q = a * q1 + q2
        ps.append(p)
        qs.append(q)
        p1, p2 = p, p1
        q1, q2 = q, q1
    return ps, qs


@dataclass(frozen=True)
class Certificate:
    """Witness that integral of f(X)/Y dX = log(a(X) + b(X) Y).

    a and b are monic, c = a^2 - b^2 D is a nonzero constant, deg f
    equals the genus and lc f = m = deg a.  Differentiating the log and
    clearing Y reproduces f, so the certificate is self-checking.
    """

    f: Poly
    a: Poly
    b: Poly
    m: int
    c: Fraction


def certificate(D: Poly, maxsteps: int = 64) -> Optional[Certificate]:
    """Certify integral of f/sqrt(D) as a logarithm, if the expansion allows.

    The expansion of Z from the principal state (0, 1) either returns to
    it up to a unit within maxsteps (then the convergent before the
    return builds the logarithm) or no certificate is reported.
    """
    A, R = sqrt_decompose(D)
    if R.is_zero:
        raise ValueError("D is a perfect square: the surd is not irrational")
    curve = Curve(A, R)
    report = detect_quasi_period(curve, maxsteps)
    if report is None:
        return None
    steps = expand(curve, 0, report.m_steps - 1)
    ps, qs = continuants([s.a for s in steps])
    p, q = ps[-1], qs[-1]
    a = p - q * A / 2
    b = q / 2
    if a.lc != b.lc:
        raise AssertionError("convergent lost its leading term")
    scale = a.lc
    a = a / scale
    b = b / scale
    cpoly = a * a - b * b * D
    if cpoly.is_zero or cpoly.degree > 0:
        raise AssertionError(f"norm a^2 - b^2 D is not a nonzero constant: {cpoly}")
    c = cpoly.coeff(0)
    f = (a * b.derivative() * D + a * b * D.derivative() / 2 - a.derivative() * b * D) / c
    m = int(a.degree)
    if m != report.unit_degree:
        raise AssertionError("unit degree disagrees with deg a")
    if f.degree != curve.genus or f.lc != m:
        raise AssertionError(f"integrand f = {f} has wrong shape")
    return Certificate(f=f, a=a, b=b, m=m, c=c)
