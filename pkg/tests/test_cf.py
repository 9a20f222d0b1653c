"""Tableau stepping, quasi-periods, and logarithm certificates."""

import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cfsomos.cf import (
    Certificate,
    Curve,
    cf_init,
    certificate,
    continuants,
    detect_quasi_period,
    expand,
    is_reduced,
    step_backward,
    step_forward,
)
from cfsomos.poly import Poly, format_poly

P = Poly.parse

# five consecutive lines of the expansion of a genus 2 surd, anchored at
# the non-principal state (X - 1, X^2 - X - 1)
GENUS2_CURVE = Curve(P("X^3 - 4*X + 1"), P("X - 2"))
GENUS2_START = (P("X - 1"), P("X^2 - X - 1"))
GENUS2_LINES = [
    (-2, "2*X - 1", "X^2 - 1", "X"),
    (-1, "X", "-X^2 + 2", "-X"),
    (0, "X - 1", "X^2 - X - 1", "X + 1"),
    (1, "X - 1", "-X^2 + 2", "-X"),
    (2, "X", "X^2 - 1", "X"),
]

# quartic whose expansion closes up after five steps with unit -27
D_TORSION = P("X^4 + 4*X^3 - 6*X^2 + 4*X + 1")


class TestCurve:
    def test_from_split(self):
        assert GENUS2_CURVE.genus == 2
        assert GENUS2_CURVE.D == P("X^6 - 8*X^4 + 2*X^3 + 16*X^2 - 4*X - 7")

    def test_from_D_round_trip(self):
        c = Curve.from_D(D_TORSION)
        assert c.A == P("X^2 + 2*X - 5")
        assert c.R == P("6*X - 6")
        assert c.genus == 1
        assert c.D == D_TORSION

    def test_rejects_non_monic(self):
        with pytest.raises(ValueError):
            Curve(P("2*X^2"), P("X"))

    def test_rejects_zero_R(self):
        with pytest.raises(ValueError):
            Curve(P("X^2"), Poly())

    def test_rejects_large_R(self):
        with pytest.raises(ValueError):
            Curve(P("X^2 + 1"), P("X^2"))

    def test_rejects_constant_A(self):
        with pytest.raises(ValueError):
            Curve(Poly.one(), Poly.one())


class TestTableau:
    def test_worked_genus2_lines(self):
        lines = expand(GENUS2_CURVE, -2, 2, start=GENUS2_START)
        got = [(s.h, format_poly(s.P), format_poly(s.Q), format_poly(s.a)) for s in lines]
        assert got == GENUS2_LINES

    def test_lines_are_normal_and_reduced(self):
        for s in expand(GENUS2_CURVE, -2, 2, start=GENUS2_START):
            assert s.normal
            assert is_reduced(GENUS2_CURVE, s.P, s.Q)

    def test_mirror_symmetry(self):
        # this expansion satisfies P_{-h} = P_{h+1} and Q_{-h} = Q_h
        lines = {s.h: s for s in expand(GENUS2_CURVE, -3, 4, start=GENUS2_START)}
        for h in range(0, 4):
            assert lines[-h].P == lines[h + 1].P
            assert lines[-h].Q == lines[h].Q

    def test_unit_of_line(self):
        s = expand(GENUS2_CURVE, 1, 1, start=GENUS2_START)[0]
        assert s.u == -1

    def test_reanchored_window_agrees(self):
        lines = expand(GENUS2_CURVE, -2, 2, start=GENUS2_START)
        s2 = next(s for s in lines if s.h == 2)
        again = expand(GENUS2_CURVE, -2, 2, start=(s2.P, s2.Q), start_index=2)
        assert again == lines

    def test_window_outside_start(self):
        back_only = expand(GENUS2_CURVE, -2, -1, start=GENUS2_START)
        assert [s.h for s in back_only] == [-2, -1]
        fwd_only = expand(GENUS2_CURVE, 1, 2, start=GENUS2_START)
        assert [s.h for s in fwd_only] == [1, 2]

    def test_empty_window_rejected(self):
        with pytest.raises(ValueError):
            expand(GENUS2_CURVE, 3, 2)

    def test_inadmissible_state_rejected(self):
        with pytest.raises(ValueError):
            cf_init(GENUS2_CURVE, P("X - 1"), P("X^2"))
        with pytest.raises(ValueError):
            cf_init(GENUS2_CURVE, Poly.zero(), Poly.zero())

    def test_step_round_trip(self):
        Pc, Qc = GENUS2_START
        a_f, P1, Q1 = step_forward(GENUS2_CURVE, Pc, Qc)
        a_b, P0, Q0 = step_backward(GENUS2_CURVE, P1, Q1)
        assert (a_b, P0, Q0) == (a_f, Pc, Qc)


class TestQuasiPeriod:
    def test_torsion_quartic_report(self):
        rep = detect_quasi_period(Curve.from_D(D_TORSION), 40)
        assert rep.m_steps == 5
        assert rep.kappa == -27
        assert rep.unit_degree == 6
        assert rep.pure_period == 10

    def test_partial_quotients(self):
        steps = expand(Curve.from_D(D_TORSION), 0, 4)
        assert [format_poly(s.a) for s in steps] == [
            "X^2 + 2*X - 5",
            "1/6*X + 1/2",
            "-3*X - 6",
            "1/9*X + 2/9",
            "-9/2*X - 27/2",
        ]

    def test_multiplier_pattern(self):
        # odd quasi-period: units alternate kappa, 1, kappa, 1 at multiples
        steps = expand(Curve.from_D(D_TORSION), 0, 20)
        assert [format_poly(steps[j].Q) for j in (5, 10, 15, 20)] == ["-27", "1", "-27", "1"]
        assert all(steps[j].P.is_zero for j in (5, 10, 15, 20))

    def test_unit_cocycle(self):
        # Q_{m+j} = kappa^((-1)^j) Q_j along a full quasi-period and beyond
        kappa = Fraction(-27)
        steps = expand(Curve.from_D(D_TORSION), 0, 15)
        for j in range(0, 11):
            factor = kappa if j % 2 == 0 else 1 / kappa
            assert steps[5 + j].Q == steps[j].Q * factor
            assert steps[5 + j].P == steps[j].P

    def test_non_principal_start(self):
        curve = Curve.from_D(D_TORSION)
        rep = detect_quasi_period(curve, 40, start=(Poly.zero(), curve.R))
        assert rep.m_steps == 5
        assert rep.kappa == Fraction(-1, 27)
        assert rep.unit_degree == 6
        assert rep.pure_period == 10

    def test_constant_R_closes_in_one_step(self):
        rep = detect_quasi_period(Curve.from_D(P("X^4 + 1")), 10)
        assert rep.m_steps == 1
        assert rep.kappa == Fraction(1, 4)
        assert rep.unit_degree == 2
        assert rep.pure_period == 2

    def test_even_period_unit_is_one(self):
        # even quasi-periods of principal expansions come with kappa = 1
        rep = detect_quasi_period(Curve(P("X^2 - 4*X - 3"), P("-3*X")), 20)
        assert (rep.m_steps, rep.kappa, rep.unit_degree, rep.pure_period) == (4, 1, 5, 4)
        rep2 = detect_quasi_period(Curve(P("X^2 - 4*X - 5"), P("-4*X - 4")), 20)
        assert (rep2.m_steps, rep2.kappa, rep2.pure_period) == (2, 1, 2)
        steps = expand(Curve(P("X^2 - 4*X - 3"), P("-3*X")), 0, 8)
        assert steps[8].Q == steps[0].Q and steps[8].P == steps[0].P

    def test_no_quasi_period(self):
        assert detect_quasi_period(Curve.from_D(P("X^4 + X + 1")), 40) is None
        assert detect_quasi_period(GENUS2_CURVE, 25, start=GENUS2_START) is None


class TestContinuants:
    def test_seeds(self):
        ps, qs = continuants([P("X + 1")])
        assert ps == [P("X + 1")]
        assert qs == [Poly.one()]

    def test_determinant_identity(self):
        steps = expand(Curve.from_D(D_TORSION), 0, 5)
        ps, qs = continuants([s.a for s in steps])
        for h in range(1, 6):
            det = ps[h] * qs[h - 1] - ps[h - 1] * qs[h]
            assert det == Poly.constant((-1) ** (h + 1))


class TestCertificate:
    def test_worked_quartic(self):
        cert = certificate(D_TORSION)
        assert cert.a == P("X^6 + 12*X^5 + 45*X^4 + 44*X^3 - 33*X^2 + 43")
        assert cert.b == P("X^4 + 10*X^3 + 30*X^2 + 22*X - 11")
        assert cert.f == P("6*X")
        assert cert.m == 6
        assert cert.c == 1728

    def test_certificate_is_self_consistent(self):
        cert = certificate(D_TORSION)
        a, b, D = cert.a, cert.b, D_TORSION
        assert a * a - b * b * D == Poly.constant(cert.c)
        lhs = cert.f * cert.c
        rhs = a * b.derivative() * D + a * b * D.derivative() / 2 - a.derivative() * b * D
        assert lhs == rhs
        assert cert.f.degree == 1
        assert cert.f.lc == cert.m == cert.a.degree

    def test_simplest_quartic(self):
        cert = certificate(P("X^4 + 1"))
        assert cert.f == P("2*X")
        assert cert.a == P("X^2")
        assert cert.b == Poly.one()
        assert cert.m == 2
        assert cert.c == -1

    def test_absent(self):
        assert certificate(P("X^4 + X + 1"), maxsteps=40) is None

    def test_perfect_square_rejected(self):
        with pytest.raises(ValueError):
            certificate(P("X^4 + 2*X^2 + 1"))


small_ints = st.integers(min_value=-5, max_value=5)


class TestRandomExpansions:
    @given(
        st.integers(min_value=1, max_value=2),
        st.data(),
    )
    def test_principal_states_stay_reduced(self, genus, data):
        A = Poly(
            [data.draw(small_ints) for _ in range(genus + 1)] + [1]
        )
        R = Poly(
            [data.draw(small_ints) for _ in range(genus)]
            + [data.draw(small_ints.filter(lambda v: v != 0))]
        )
        curve = Curve(A, R)
        steps = expand(curve, 0, 8)
        for s in steps[1:]:
            assert is_reduced(curve, s.P, s.Q)
            assert s.P.degree < s.Q.degree
            # admissibility of every visited state
            assert (s.P * (curve.A + s.P) - curve.R) % s.Q == Poly.zero()
        # consecutive lines satisfy the product relation
        for s, t in zip(steps, steps[1:]):
            assert s.Q * t.Q == curve.R - t.P * (curve.A + t.P)
            assert t.P == s.a * s.Q - curve.A - s.P

    def test_backward_reproduces_forward(self):
        rng = random.Random(414243)
        for _ in range(20):
            genus = rng.choice([1, 2])
            A = Poly([rng.randint(-5, 5) for _ in range(genus + 1)] + [1])
            R = Poly([rng.randint(-5, 5) for _ in range(genus)] + [rng.choice([-3, -2, -1, 1, 2, 3])])
            curve = Curve(A, R)
            fwd = expand(curve, 1, 12)
            last = fwd[-1]
            back = expand(curve, 1, 12, start=(last.P, last.Q), start_index=12)
            assert back == fwd
