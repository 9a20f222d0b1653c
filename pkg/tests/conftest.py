"""Shared random-curve builders for the identity suites.

Both constructions reverse-engineer an admissible start: pick the start
state first, then solve for the curve coefficient that admissibility of
that state forces.
"""

import random
from fractions import Fraction

from cfsomos.poly import Poly
from cfsomos.cf import Curve, cf_init

F = Fraction
X = Poly.x()


def random_genus1_curve(rng: random.Random):
    """A genus 1 curve with an admissible nontrivial start (e_0, X - w_0)."""
    e0 = F(rng.choice([-3, -2, -1, 1, 2, 3]))
    w0 = F(rng.randint(-3, 3))
    v = F(rng.choice([-3, -2, -1, 1, 2, 3]))
    w = F(rng.randint(-3, 3))
    s = F(rng.randint(-4, 4))
    t = v * (w0 - w) / e0 - e0 - w0 * w0 - s * w0
    curve = Curve(X * X + s * X + t, v * X - v * w)
    return curve, (Poly.constant(e0), X - w0)


def random_genus2_curve(rng: random.Random, want_u_zero: bool):
    """A genus 2 curve with an admissible start (P_0, Q_0), by reverse step.

    Q_{-1} is solved so that R = P_0(A + P_0) + Q_{-1}Q_0 drops to the
    requested degree (2 when u != 0, exactly 1 when u = 0); then Q_0
    divides P_0(A + P_0) - R by construction.
    """
    while True:
        A = Poly(
            (
                F(rng.randint(-4, 4)),
                F(rng.randint(-4, 4)),
                F(rng.randint(-4, 4)),
                F(1),
            )
        )
        d0 = F(rng.choice([x for x in range(-3, 4) if x]))
        e0 = F(rng.randint(-3, 3))
        P0 = Poly((d0 * e0, d0))
        u0 = F(rng.choice([x for x in range(-3, 4) if x]))
        p = F(rng.randint(-3, 3))
        q = F(rng.randint(-3, 3))
        Q0 = u0 * Poly((q, p, F(1)))
        um1 = -d0 / u0
        N = P0 * (A + P0)
        r = -N.coeff(3) / (um1 * u0) - p
        if want_u_zero:
            s = -N.coeff(2) / (um1 * u0) - r * p - q
        else:
            s = F(rng.randint(-3, 3))
        Qm1 = um1 * Poly((s, r, F(1)))
        R = N + Qm1 * Q0
        if R.is_zero or R.degree == 0:
            continue
        if want_u_zero and R.degree != 1:
            continue
        if not want_u_zero and R.degree != 2:
            continue
        try:
            curve = Curve(A, R)
            cf_init(curve, P0, Q0)
        except (ValueError, ArithmeticError):
            continue
        return curve, (P0, Q0)
