from fractions import Fraction
import random

import mpmath

from effd.lib.ball import Ball
from effd.lib.errors import DomainError, InvalidWitness, ScheduleOverflow
from effd.lib.poisson import (
    CoefficientStream,
    boundary_value_rows,
    boundary_value_sequence,
    dense_series,
    divergence_index,
    energy_lower_approximants,
    energy_partial_enclosures,
    geometric_tail_bound,
    interior_solve,
    minimum_energy,
    poisson_kernel,
    poisson_partial_sum,
    schedule,
    stabilization_index,
    tail_bound,
    upper_envelope_sequence,
)
from effd.lib.trigpoly import TrigPoly, sup_norm_bound
from effd.lib.witnesses import C0
from effd.test import BaseTestCase

F = Fraction


class KernelTestCase(BaseTestCase):
    def test_it_is_one_at_the_center(self):
        self.assertEqual(poisson_kernel(0, F(1, 3), 20), Ball(1))

    def test_it_evaluates_at_zero_angle(self):
        ball = poisson_kernel(F(1, 2), 0, 30)
        self.assertEncloses(ball, 3)
        self.assertRadiusAtMost(ball, 30)

    def test_it_evaluates_at_pi(self):
        self.assertEncloses(poisson_kernel(F(1, 2), 1, 30), F(1, 3))

    def test_it_matches_mpmath(self):
        with mpmath.workprec(200):
            r, t = F(9, 10), F(1, 7)
            x = mpmath.pi / 7
            rr = mpmath.mpf(81) / 100
            expected = (1 - rr) / (1 - 2 * mpmath.mpf(9) / 10 * mpmath.cos(x) + rr)

            ball = poisson_kernel(r, t, 40)
            self.assertRadiusAtMost(ball, 40)
            self.assertEncloses(ball, expected)

    def test_it_rejects_the_boundary(self):
        with self.assertRaises(DomainError):
            poisson_kernel(1, 0, 10)

        with self.assertRaises(DomainError):
            poisson_kernel(F(-1, 2), 0, 10)


class ScheduleTestCase(BaseTestCase):
    def test_it_follows_the_formulas(self):
        self.assertEqual(schedule(1), (0, 0))
        self.assertEqual(schedule(2), (F(1, 2), 2))
        self.assertEqual(schedule(3), (F(2, 3), 6))
        self.assertEqual(schedule(12), (F(11, 12), 132))

    def test_it_overflows_past_the_cap(self):
        with self.assertRaises(ScheduleOverflow):
            schedule(65)

        with self.assertRaises(ScheduleOverflow):
            schedule(5, cap=4)

    def test_it_rejects_bad_indices(self):
        for k in (0, -3, F(5, 2)):
            with self.assertRaises(DomainError):
                schedule(k)

    def test_it_computes_tail_bounds(self):
        self.assertEqual(tail_bound(1, 4), F(1, 4))
        self.assertEqual(tail_bound(3, 10), F(15, 512))
        self.assertEqual(geometric_tail_bound(1, F(1, 2), 2), F(1, 4))

    def test_it_keeps_geometric_tail_under_schedule_bound(self):
        for k in range(2, 13):
            r, M = schedule(k)
            self.assertLessEqual(2 * geometric_tail_bound(1, r, M), tail_bound(1, k))


class CoefficientStreamTestCase(BaseTestCase):
    def test_it_checks_K1(self):
        f = CoefficientStream(lambda n: n, K1=3)
        self.assertEqual(f.a(3), 3)
        with self.assertRaises(InvalidWitness):
            f.a(4)

    def test_it_clips_to_support(self):
        f = CoefficientStream(lambda n: 1 // (3 - n), support=2)
        self.assertEqual(f.a(10), 0)

    def test_it_builds_from_polynomials(self):
        f = CoefficientStream.from_trigpoly(TrigPoly(a0=F(5, 2), cos={3: F(-1, 4)}))
        self.assertEqual(f.K1, 3)
        self.assertEqual(f.support, 3)
        self.assertTrue(f.cosine_only)
        self.assertEqual(f.a(0), F(5, 2))
        self.assertEqual(f.b(3), 0)


class PartialSumTestCase(BaseTestCase):
    def setUp(self):
        super().setUp()
        self.stream = CoefficientStream.from_trigpoly(self.inverse_squares)

    def test_it_sums_single_cosine(self):
        f = CoefficientStream.from_trigpoly(self.cos1)
        for r in (F(1, 4), F(1, 2), F(9, 10)):
            evaluation = poisson_partial_sum(f, 5, r, 0, 30)
            self.assertEncloses(evaluation.value, r)
            self.assertEqual(evaluation.bound("truncation"), 0)

    def test_it_returns_the_mean_at_the_center(self):
        f = CoefficientStream.from_trigpoly(TrigPoly.constant(F(2, 3)) + self.cos1)
        self.assertEncloses(poisson_partial_sum(f, 3, 0, F(1, 5), 30).value, F(2, 3))

    def test_it_matches_direct_summation(self):
        ball = poisson_partial_sum(self.stream, 200, F(1, 2), 0, 60).value
        expected = sum((F(1, n * n) / (1 << n) for n in range(1, 201)), F(0))
        self.assertEncloses(ball, expected)

    def test_it_matches_mpmath_off_axis(self):
        with mpmath.workprec(300):
            x = mpmath.pi / 5
            expected = mpmath.fsum(
                mpmath.mpf(1) / (n * n) / mpmath.mpf(2) ** n * mpmath.cos(n * x)
                for n in range(1, 201)
            )
            ball = poisson_partial_sum(self.stream, 200, F(1, 2), F(1, 5), 60).value

            self.assertRadiusAtMost(ball, 60)
            self.assertEncloses(ball, expected)

    def test_it_stays_within_the_schedule_tail_bound(self):
        for theta in (0, F(1, 3), F(1, 2)):
            for k in range(2, 13):
                r, M = schedule(k)
                dense = dense_series(self.stream, r, theta, 60)
                evaluation = poisson_partial_sum(self.stream, M, r, theta, 60)

                gap = abs(dense.center - evaluation.value.center)
                self.assertLessEqual(gap, tail_bound(1, k), (theta, k))
                self.assertLessEqual(evaluation.bound("truncation"), tail_bound(1, k))

    def test_it_doubles_the_truncation_bound_for_sines(self):
        f = CoefficientStream(lambda n: 0, lambda n: F(1, n * n), K1=1)
        evaluation = poisson_partial_sum(f, 4, F(1, 2), F(1, 2), 30)
        self.assertEqual(evaluation.bound("truncation"), 2 * geometric_tail_bound(1, F(1, 2), 4))

    def test_it_omits_truncation_without_K1(self):
        f = CoefficientStream(lambda n: F(1, n + 1))
        evaluation = poisson_partial_sum(f, 4, F(1, 2), 0, 30)
        self.assertIsNone(evaluation.bound("truncation"))
        self.assertIsNotNone(evaluation.bound("rounding"))

    def test_it_needs_support_for_dense_series(self):
        f = CoefficientStream(lambda n: F(1, n + 1))
        with self.assertRaises(DomainError):
            dense_series(f, F(1, 2), 0, 30)

    def test_it_serializes_evaluations(self):
        doc = interior_solve(self.cos1, F(1, 2), 0, 30).to_json()
        self.assertEqual(
            doc,
            {
                "value": {"center": "1/2", "radius": "0/1"},
                "budget": {"truncation": "0/1", "rounding": "0/1"},
            },
        )


class BoundaryValueTestCase(BaseTestCase):
    def test_it_presents_terms_as_computable_reals(self):
        f = CoefficientStream.from_trigpoly(self.cos1)
        x = boundary_value_sequence(f, 0)
        self.assertEncloses(x.ball(2, 30), F(1, 2))
        self.assertFalse(hasattr(x, "approximate"))

    def test_it_agrees_with_partial_sum(self):
        f = CoefficientStream.from_trigpoly(self.phi2)
        x = boundary_value_sequence(f, 0)

        # k = 10 is r = 9/10, M = 90, beyond the degree 26
        direct = poisson_partial_sum(f, 26, F(9, 10), 0, 50).value
        self.assertTrue(x.ball(10, 40).intersects(direct))

    def test_it_overflows_in_the_sequence(self):
        f = CoefficientStream.from_trigpoly(self.cos1)
        x = boundary_value_sequence(f, 0, cap=3)
        with self.assertRaises(ScheduleOverflow):
            x.ball(4, 10)

    def test_it_refuses_ball_coefficients(self):
        p = TrigPoly(cos={1: Ball(F(1, 2), F(1, 1024))})
        f = CoefficientStream.from_trigpoly(p)
        x = boundary_value_sequence(f, 0)
        with self.assertRaises(DomainError):
            x.term(2)

        rows = list(boundary_value_rows(f, 0, [2], 30))
        self.assertTrue(rows[0]["value"].contains(F(1, 4)))

    def test_it_reports_rows(self):
        f = CoefficientStream.from_trigpoly(self.cos1)
        rows = list(boundary_value_rows(f, 0, [2, 3], 30))

        self.assertEqual([row["k"] for row in rows], [2, 3])
        self.assertEqual(rows[0]["r"], F(1, 2))
        self.assertEqual(rows[1]["M"], 6)
        self.assertEqual(rows[1]["tail_bound"], F(3, 8))
        self.assertEncloses(rows[1]["value"], F(2, 3))


class InteriorSolveTestCase(BaseTestCase):
    def test_it_has_the_mean_value_property(self):
        rng = random.Random(17)

        def c():
            return F(rng.randint(-100, 100), rng.randint(1, 30))

        for i in range(20):
            N = rng.randint(0, 12)
            p = TrigPoly(c(), {n: c() for n in range(1, N + 1)}, {n: c() for n in range(1, N + 1)})
            theta = F(rng.randint(-10, 10), rng.randint(1, 9))
            self.assertEncloses(interior_solve(p, 0, theta, 30).value, p.a0 / 2)

    def test_it_stays_below_the_boundary_bound(self):
        rng = random.Random(23)

        def c():
            return F(rng.randint(-100, 100), rng.randint(1, 30))

        for i in range(10):
            N = rng.randint(1, 10)
            p = TrigPoly(c(), {n: c() for n in range(1, N + 1)}, {n: c() for n in range(1, N + 1)})
            bound = sup_norm_bound(p)
            for j in range(10):
                r = F(rng.randint(0, 99), 100)
                theta = F(rng.randint(-20, 20), rng.randint(1, 11))
                ball = interior_solve(p, r, theta, 30).value
                self.assertLessEqual(abs(ball.center), bound + ball.radius, (i, r, theta))

    def test_it_extends_cosine_linearly(self):
        for r in (F(1, 4), F(1, 2), F(3, 4)):
            evaluation = interior_solve(self.cos1, r, 0, 30)
            self.assertEncloses(evaluation.value, r)
            self.assertEqual(evaluation.bound("truncation"), 0)

    def test_it_matches_mpmath(self):
        p = TrigPoly(a0=1, cos={2: F(1, 3)}, sin={5: F(-2, 7)})
        with mpmath.workprec(200):
            r, x = mpmath.mpf(3) / 5, 3 * mpmath.pi / 11
            expected = (
                mpmath.mpf(1) / 2
                + r**2 * mpmath.cos(2 * x) / 3
                - 2 * r**5 * mpmath.sin(5 * x) / 7
            )
            ball = interior_solve(p, F(3, 5), F(3, 11), 50).value
            self.assertRadiusAtMost(ball, 50)
            self.assertEncloses(ball, expected)

    def test_it_rejects_the_boundary(self):
        with self.assertRaises(DomainError):
            interior_solve(self.cos1, 1, 0, 30)


class EnergyTestCase(BaseTestCase):
    def test_it_sums_single_cosine(self):
        E = energy_lower_approximants(CoefficientStream.from_trigpoly(self.cos1))
        self.assertEqual(E(0), 0)
        for N in (1, 2, 10, 100):
            self.assertEqual(E(N), F(1, 2))

    def test_it_reaches_the_packet_energy(self):
        E = energy_lower_approximants(CoefficientStream.from_trigpoly(self.phi2))
        self.assertLess(E(25), 16 * C0)
        self.assertEqual(E(26), 16 * C0)
        self.assertEqual(E(1000), 16 * C0)

    def test_it_rejects_ball_coefficients(self):
        p = TrigPoly(cos={1: Ball(1, F(1, 8))})
        E = energy_lower_approximants(CoefficientStream.from_trigpoly(p))
        with self.assertRaises(DomainError):
            E(1)

    def test_it_finds_divergence(self):
        # E_N = H_N / 2 for a_n = 1/n
        E = energy_lower_approximants(CoefficientStream(lambda n: F(1, n) if n else 0))
        with self.assertLogs("effd.lib.poisson", level="WARNING"):
            self.assertEqual(divergence_index(E, 2, 1000), 31)

    def test_it_returns_none_without_crossing(self):
        E = energy_lower_approximants(CoefficientStream.from_trigpoly(self.cos1))
        self.assertIsNone(divergence_index(E, 1, 100))

    def test_it_finds_the_stabilization_index(self):
        self.assertEqual(stabilization_index(CoefficientStream.from_trigpoly(self.phi2)), 26)
        constant = CoefficientStream.from_trigpoly(TrigPoly.constant(1))
        self.assertEqual(stabilization_index(constant), 0)

        with self.assertRaises(DomainError):
            stabilization_index(CoefficientStream(lambda n: 1))

    def test_it_equates_minimum_with_energy(self):
        result = minimum_energy(TrigPoly.cosine(3))
        self.assertEqual(result.value, F(3, 2))
        self.assertIsNone(result.quadrature)
        self.assertTrue(result.agrees(0))

    def test_it_cross_checks_by_quadrature(self):
        result = minimum_energy(self.cos1, cross_check=True, resolution=1024)
        self.assertEqual(result.value, F(1, 2))
        self.assertTrue(result.agrees(F(1, 10**4)))

    def test_it_encloses_ball_partial_sums(self):
        p = TrigPoly(cos={1: Ball(1, F(1, 8))}, sin={3: Ball(F(1, 2))})
        E = energy_partial_enclosures(CoefficientStream.from_trigpoly(p))

        self.assertEqual(E(0), Ball(0))
        self.assertTrue(E(1).contains(F(1, 2)))
        self.assertTrue(E(3).contains(F(1, 2) + F(3, 8)))
        self.assertEqual(E(3).radius, E(1).radius)
        lowers = [E(N).lower for N in range(6)]
        self.assertEqual(lowers, sorted(lowers))

    def test_it_keeps_ball_minimum_energy(self):
        p = TrigPoly(cos={1: Ball(F(1, 2), F(1, 1024))})
        result = minimum_energy(p, cross_check=True, resolution=1024)

        self.assertIsInstance(result.value, Ball)
        self.assertTrue(result.value.contains(F(1, 8)))
        self.assertTrue(result.agrees(F(1, 10**4)))

    def test_it_stabilizes_ball_streams(self):
        p = TrigPoly(cos={2: Ball(1, F(1, 8)), 5: Ball(0, F(1, 64))})
        self.assertEqual(stabilization_index(CoefficientStream.from_trigpoly(p)), 5)

    def test_it_builds_upper_envelopes(self):
        values = [3, 1, 2, 0, 5]
        x = upper_envelope_sequence(lambda n: values[n])
        self.assertEqual(x.prefix(4), [3, 1, 1, 0, 0])
