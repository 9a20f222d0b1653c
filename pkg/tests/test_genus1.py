"""Genus 1 extraction, the cubic model bridge, and Somos 4 round trips."""

import random
from fractions import Fraction

import pytest

from cfsomos.cf import Curve, expand
from cfsomos.genus1 import (
    CubicModel,
    Genus1Line,
    g1_add,
    g1_cubic_model,
    g1_denominators,
    g1_e_relation,
    g1_eds_of_curve,
    g1_extract,
    g1_identity9,
    g1_identity10,
    g1_mul,
    g1_neg,
    g1_remainder,
    g1_somos4_check,
    g1_somos4_to_curve,
    g1_verify_translation,
    isomorphism_scale,
    rational_sqrt,
)
from cfsomos.poly import Poly, X

P = Poly.parse
F = Fraction

# quartic curve whose translated expansion generates the 4-Somos numbers
CURVE4 = Curve(P("X^2 - 3"), P("X - 2"))
START4 = (Poly.constant(1), P("X - 1"))

# and the one generating the 5-Somos numbers, from M = (-3, -8)
CURVE5 = Curve(P("X^2 - 29"), P("-48*X - 240"))
START5 = (Poly.constant(8), P("X + 3"))

E_CHAIN4 = [F(1), F(1), F(2), F(3, 4), F(14, 9), F(69, 49)]
E_CHAIN5 = [F(8), F(12), F(16), F(9), F(80, 9), F(396, 25)]


def lines_of(curve, start, hi):
    return expand(curve, 0, hi, start=start)


def chain_of(curve, start, hi):
    return [g1_extract(curve, ln).e for ln in lines_of(curve, start, hi)]


class TestExtraction:
    def test_four_somos_lines(self):
        got = [g1_extract(CURVE4, ln) for ln in lines_of(CURVE4, START4, 5)]
        assert [l.e for l in got] == E_CHAIN4
        assert [(l.v_line, l.w_line) for l in got[:4]] == [
            (F(1), F(1)),
            (F(-1), F(0)),
            (F(2), F(1, 2)),
            (F(-3, 8), F(5, 6)),
        ]
        # M_1 = (w_0, -e_0) is the translation point of the worked curve
        assert got[0].point == (F(1), F(-1))

    def test_five_somos_lines(self):
        got = [g1_extract(CURVE5, ln) for ln in lines_of(CURVE5, START5, 5)]
        assert [l.e for l in got] == E_CHAIN5
        assert got[0].point == (F(-3), F(-8))

    def test_remainder_params(self):
        rem = g1_remainder(CURVE4)
        assert (rem.v, rem.w) == (F(1), F(2))
        rem5 = g1_remainder(CURVE5)
        assert (rem5.v, rem5.w) == (F(-48), F(-5))

    def test_rejects_wrong_genus(self):
        g2 = Curve(P("X^3 - 4*X + 1"), P("X - 2"))
        with pytest.raises(ValueError):
            g1_remainder(g2)

    def test_rejects_constant_R(self):
        with pytest.raises(ValueError):
            g1_remainder(Curve(P("X^2 - 3"), Poly.constant(2)))

    def test_rejects_non_normal_line(self):
        # the principal line h = 0 has Q_0 = 1 and a quadratic quotient
        line = expand(CURVE4, 0, 0)[0]
        with pytest.raises(ValueError):
            g1_extract(CURVE4, line)

    def test_points_lie_on_the_quadratic_model(self):
        for ln in lines_of(CURVE4, START4, 8):
            w, me = g1_extract(CURVE4, ln).point
            assert me * me == CURVE4.A(w) * me + CURVE4.R(w)


class TestLineIdentities:
    def test_identity9_worked_values(self):
        got = [g1_extract(CURVE4, ln) for ln in lines_of(CURVE4, START4, 8)]
        assert all(g1_identity9(CURVE4, a, b) for a, b in zip(got, got[1:]))
        # v(w - w_0) = e_0 e_1 reads 1 * (2 - 1) = 1 on this curve
        assert got[0].e * got[1].e == 1

    def test_identity9_five_somos_first_step(self):
        got = [g1_extract(CURVE5, ln) for ln in lines_of(CURVE5, START5, 1)]
        # -48 * (-5 + 3) = 96 forces e_1 = 12
        assert got[1].e == 12
        assert g1_identity9(CURVE5, got[0], got[1])

    def test_identity9_rejects_fabricated_values(self):
        fake = Genus1Line(h=1, e=F(3), v_line=F(-1), w_line=F(0))
        real = g1_extract(CURVE4, lines_of(CURVE4, START4, 0)[0])
        assert not g1_identity9(CURVE4, real, fake)

    def test_identity10_worked_triples(self):
        assert g1_identity10(CURVE4, (F(1), F(1), F(2)))
        assert g1_identity10(CURVE4, (F(1), F(2), F(3, 4)))
        assert not g1_identity10(CURVE4, (F(1), F(1), F(1)))

    def test_identity10_rejects_zero(self):
        with pytest.raises(ValueError):
            g1_identity10(CURVE4, (F(1), F(0), F(2)))

    def test_e_relation_resolves_as_displayed(self):
        for curve, start in ((CURVE4, START4), (CURVE5, START5)):
            rep = g1_e_relation(curve, chain_of(curve, start, 9))
            assert rep.ok and rep.forms == ("as-displayed",)
        # on the 4-Somos curve the resolved pair is (-v^2 A(w), v^4 + 2 w v^3 A(w))
        rep = g1_e_relation(CURVE4, chain_of(CURVE4, START4, 9))
        assert rep.coeffs == (F(-1), F(5))


class TestCubicModel:
    def test_four_somos_model_is_the_printed_one(self):
        model, pmap = g1_cubic_model(CURVE4)
        assert (model.a1, model.a2, model.a3, model.a4, model.a6) == (0, 3, -1, 2, 0)
        # the map lands M = (1, -1) on the printed point up to involution
        image = pmap((F(1), F(-1)))
        assert image in {(F(-1), F(0)), (F(-1), F(1))}
        assert model.contains(image)
        assert model.contains((F(-1), F(1)))
        assert model.contains((F(0), F(0)))

    def test_five_somos_model_up_to_isomorphism(self):
        model, pmap = g1_cubic_model(CURVE5)
        assert (model.a1, model.a2, model.a3, model.a4, model.a6) == (0, 29, 48, 240, 0)
        printed = CubicModel(F(1), F(7), F(6), F(12), F(0))
        assert isomorphism_scale(model, printed) == F(1, 2)
        assert isomorphism_scale(printed, model) == F(2)
        assert model.contains(pmap((F(-3), F(-8))))

    def test_invariants_of_the_printed_models(self):
        m4 = CubicModel(F(0), F(3), F(-1), F(2), F(0))
        assert (m4.b2, m4.b4, m4.b6) == (12, 4, 1)
        assert (m4.c4, m4.c6) == (48, -216)
        m5 = CubicModel(F(1), F(7), F(6), F(12), F(0))
        assert (m5.c4, m5.c6) == (121, -845)

    def test_rejects_singular_cubic(self):
        with pytest.raises(ValueError):
            CubicModel(F(0), F(0), F(0), F(0), F(0))

    def test_isomorphism_special_fibers(self):
        flat = CubicModel(F(0), F(0), F(0), F(0), F(1))
        scaled = CubicModel(F(0), F(0), F(0), F(0), F(64))
        other = CubicModel(F(0), F(0), F(0), F(0), F(2))
        assert isomorphism_scale(flat, scaled) == 2
        assert isomorphism_scale(flat, other) is None
        harmonic = CubicModel(F(0), F(0), F(0), F(1), F(0))
        h16 = CubicModel(F(0), F(0), F(0), F(16), F(0))
        h2 = CubicModel(F(0), F(0), F(0), F(2), F(0))
        assert isomorphism_scale(harmonic, h16) == 2
        assert isomorphism_scale(harmonic, h2) is None
        assert isomorphism_scale(flat, harmonic) is None

    def test_not_isomorphic_generic(self):
        m4 = CubicModel(F(0), F(3), F(-1), F(2), F(0))
        m5 = CubicModel(F(1), F(7), F(6), F(12), F(0))
        assert isomorphism_scale(m4, m5) is None


class TestGroupLaw:
    MODEL = CubicModel(F(0), F(3), F(-1), F(2), F(0))

    def test_identity_and_inverse(self):
        p = (F(0), F(0))
        assert g1_add(self.MODEL, p, None) == p
        assert g1_add(self.MODEL, None, p) == p
        assert g1_add(self.MODEL, p, g1_neg(self.MODEL, p)) is None

    def test_chord_instance(self):
        assert g1_add(self.MODEL, (F(0), F(0)), (F(-1), F(0))) == (F(-2), F(1))

    def test_rejects_off_curve_point(self):
        with pytest.raises(ValueError):
            g1_add(self.MODEL, (F(1), F(1)), (F(0), F(0)))

    def test_associativity_on_multiples(self):
        gen = (F(0), F(0))
        pts = [g1_mul(self.MODEL, k, gen) for k in range(-4, 5)]
        rng = random.Random(20260822)
        for _ in range(30):
            a, b, c = (rng.choice(pts) for _ in range(3))
            left = g1_add(self.MODEL, g1_add(self.MODEL, a, b), c)
            right = g1_add(self.MODEL, a, g1_add(self.MODEL, b, c))
            assert left == right

    def test_doubling_two_torsion(self):
        # V^2 = U^3 - U has (0, 0) of order two
        model = CubicModel(F(0), F(0), F(0), F(-1), F(0))
        assert g1_add(model, (F(0), F(0)), (F(0), F(0))) is None


class TestTranslation:
    def test_four_somos_window(self):
        rep = g1_verify_translation(CURVE4, lines_of(CURVE4, START4, 10))
        assert rep.ok and rep.checked == 11
        assert not rep.involution and rep.s == (F(0), F(1))

    def test_five_somos_window(self):
        rep = g1_verify_translation(CURVE5, lines_of(CURVE5, START5, 10))
        assert rep.ok and rep.checked == 11
        assert not rep.involution and rep.s == (F(0), F(-48))

    def test_s_is_minus_origin_on_both_curves(self):
        for curve in (CURVE4, CURVE5):
            model, _ = g1_cubic_model(curve)
            start = START4 if curve is CURVE4 else START5
            rep = g1_verify_translation(curve, lines_of(curve, start, 6))
            assert rep.s == g1_neg(model, (F(0), F(0)))

    def test_shuffled_lines_fail(self):
        lines = lines_of(CURVE4, START4, 10)
        shuffled = [lines[i] for i in (3, 0, 5, 1, 8, 2, 9, 4, 10, 6, 7)]
        assert not g1_verify_translation(CURVE4, shuffled)

    def test_hmax_truncates(self):
        rep = g1_verify_translation(CURVE4, lines_of(CURVE4, START4, 10), hmax=4)
        assert rep.ok and rep.checked == 5


class TestDenominators:
    def test_four_somos_chain(self):
        chain = g1_denominators(E_CHAIN4, F(1), F(1))
        assert chain == [1, 1, 1, 2, 3, 7, 23]

    def test_long_chain_continues_the_somos_numbers(self):
        es = chain_of(CURVE4, START4, 9)
        chain = g1_denominators(es, F(1), F(1))
        assert chain == [1, 1, 1, 2, 3, 7, 23, 59, 314, 1529, 8209]

    def test_somos4_check_on_the_chain(self):
        es = chain_of(CURVE4, START4, 20)
        chain = g1_denominators(es, F(1), F(1))
        assert g1_somos4_check(chain, F(1), F(1))
        assert all(a.denominator == 1 for a in chain)

    def test_all_ones_fixed_point(self):
        assert g1_denominators([F(1)] * 6, F(1), F(1)) == [1] * 7

    def test_rejects_zero_e(self):
        with pytest.raises(ValueError):
            g1_denominators([F(1), F(0)], F(1), F(1))

    def test_square_denominators(self):
        # whenever the A-chain is integral every e_h has a square denominator
        for curve, start in ((CURVE4, START4), (CURVE5, START5)):
            es = chain_of(curve, start, 30)
            for e in es:
                root = rational_sqrt(F(e.denominator))
                assert root is not None and root.denominator == 1

    def test_somos4_check_rejects_perturbation(self):
        chain = [F(1), F(1), F(1), F(2), F(3), F(7), F(24)]
        assert not g1_somos4_check(chain, F(1), F(1))

    def test_eds_window_matches_eds_coefficients(self):
        W = g1_eds_of_curve(CURVE4, 10)
        # alpha = W_2^2, beta = -W_1 W_3 for a division sequence
        assert g1_somos4_check(W, W[1] ** 2, -W[0] * W[2])


class TestReconstruction:
    def test_square_alpha_round_trip(self):
        rec = g1_somos4_to_curve(F(1), F(1), [F(1)] * 4)
        assert rec.twist == 1
        assert rec.curve.A == P("X^2 + 4*X + 1")
        assert rec.curve.R == P("X")
        assert rec.state == (Poly.constant(1), P("X + 1"))
        model, _ = g1_cubic_model(rec.curve)
        assert (model.c4, model.c6) == (48, -216)
        assert isomorphism_scale(model, CubicModel(F(0), F(3), F(-1), F(2), F(0))) == 1

    def test_reconstruction_regenerates_the_e_chain(self):
        rec = g1_somos4_to_curve(F(1), F(1), [F(1)] * 4)
        es = [
            g1_extract(rec.curve, ln).e
            for ln in expand(rec.curve, 1, 5, start=rec.state, start_index=1)
        ]
        assert es == [F(1), F(1), F(2), F(3, 4), F(14, 9)]

    def test_five_somos_halves_curve(self):
        rec = g1_somos4_to_curve(F(1), F(8), [F(1), F(1), F(1), F(3)])
        assert rec.curve.A == P("X^2 + 7*X + 8")
        assert rec.curve.R == P("X")
        model, _ = g1_cubic_model(rec.curve)
        # lands exactly on the printed 5-Somos cubic
        assert (model.c4, model.c6) == (121, -845)
        assert isomorphism_scale(model, CubicModel(F(1), F(7), F(6), F(12), F(0))) == 1

    def test_nonsquare_alpha_twists(self):
        rec = g1_somos4_to_curve(F(2), F(1), [F(1)] * 4)
        assert rec.twist == 2
        assert rec.curve.A == P("X^2 + 6*X + 1")
        assert rec.curve.R == P("4*X")
        lines = expand(rec.curve, 1, 4, start=rec.state, start_index=1)
        es = [g1_extract(rec.curve, ln).e for ln in lines]
        # twisted expansion carries 2 * e_h; A_4 = (2*1*1 + 1)/1 = 3 gives e_3 = 3
        assert es[:3] == [F(2), F(2), F(6)]

    def test_rejects_bad_windows(self):
        with pytest.raises(ValueError):
            g1_somos4_to_curve(F(0), F(1), [F(1)] * 4)
        with pytest.raises(ValueError):
            g1_somos4_to_curve(F(1), F(1), [F(1), F(2), F(3)])
        with pytest.raises(ValueError):
            g1_somos4_to_curve(F(1), F(1), [F(1), F(0), F(1), F(1)])
        with pytest.raises(ValueError):
            g1_somos4_to_curve(F(1), F(1), [F(1), F(1), F(1), F(1), F(5)])


class TestEDS:
    def test_four_somos_curve_sequence(self):
        assert g1_eds_of_curve(CURVE4, 6) == [1, -1, -1, 5, -4, -29]

    def test_ladder_seeds(self):
        rem4 = g1_remainder(CURVE4)
        W = g1_eds_of_curve(CURVE4, 3)
        assert W[1] == -rem4.v
        assert W[2] == -rem4.v ** 2 * CURVE4.A(rem4.w)

    def test_five_somos_curve_seeds(self):
        W = g1_eds_of_curve(CURVE5, 3)
        assert W[:3] == [1, 48, 9216]

    def test_recurrence_holds_downstream(self):
        W = g1_eds_of_curve(CURVE4, 12)
        seq = {i + 1: w for i, w in enumerate(W)}
        for h in range(3, 11):
            assert (
                seq[h - 2] * seq[h + 2]
                == seq[2] ** 2 * seq[h - 1] * seq[h + 1] - seq[1] * seq[3] * seq[h] ** 2
            )


class TestRandomGenus1:
    def random_curve_with_start(self, rng):
        """A genus 1 curve with an admissible nontrivial start (e_0, X - w_0)."""
        e0 = F(rng.choice([-3, -2, -1, 1, 2, 3]))
        w0 = F(rng.randint(-3, 3))
        v = F(rng.choice([-3, -2, -1, 1, 2, 3]))
        w = F(rng.randint(-3, 3))
        s = F(rng.randint(-4, 4))
        # solve A(w0) from the admissibility of (e_0, X - w_0)
        t = v * (w0 - w) / e0 - e0 - w0 * w0 - s * w0
        curve = Curve(X * X + s * X + t, v * X - v * w)
        return curve, (Poly.constant(e0), X - w0)

    def test_identities_hold_on_random_windows(self):
        rng = random.Random(99173)
        tested = 0
        while tested < 25:
            curve, start = self.random_curve_with_start(rng)
            try:
                lines = expand(curve, 0, 30, start=start)
                got = [g1_extract(curve, ln) for ln in lines]
            except (ValueError, ArithmeticError):
                continue
            tested += 1
            assert all(g1_identity9(curve, a, b) for a, b in zip(got, got[1:]))
            es = [l.e for l in got]
            for i in range(len(es) - 2):
                if 0 not in es[i : i + 3]:
                    assert g1_identity10(curve, tuple(es[i : i + 3]))

    def test_translation_law_on_random_curves(self):
        rng = random.Random(55082)
        tested = 0
        while tested < 12:
            curve, start = self.random_curve_with_start(rng)
            try:
                g1_cubic_model(curve)
                lines = expand(curve, 0, 10, start=start)
                for ln in lines:
                    g1_extract(curve, ln)
            except (ValueError, ArithmeticError):
                continue
            tested += 1
            assert g1_verify_translation(curve, lines)

    def test_denominator_chains_satisfy_somos4(self):
        rng = random.Random(31415)
        tested = 0
        while tested < 20:
            curve, start = self.random_curve_with_start(rng)
            try:
                es = chain_of(curve, start, 20)
            except (ValueError, ArithmeticError):
                continue
            if 0 in es:
                continue
            tested += 1
            rem = g1_remainder(curve)
            chain = g1_denominators(es, F(1), F(1))
            alpha = rem.v ** 2
            beta = rem.v ** 2 * curve.A(rem.w)
            assert g1_somos4_check(chain, alpha, beta)

    def test_identity10_times_a_squared_is_somos4(self):
        # e_{h-1} e_h^2 e_{h+1} collapses to A_{h-2} A_{h+2} / A_h^2, so
        # multiplying the e-relation by A_h^2 is the width 4 recurrence
        es = chain_of(CURVE4, START4, 12)
        chain = g1_denominators(es, F(1), F(1))
        for h in range(2, len(es) - 1):
            folded = es[h - 1] * es[h] ** 2 * es[h + 1] * chain[h] ** 2
            assert folded == chain[h - 2] * chain[h + 2]
            assert folded == chain[h - 1] * chain[h + 1] + chain[h] ** 2
