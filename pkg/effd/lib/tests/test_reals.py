from fractions import Fraction
from unittest.mock import Mock

from django.test import override_settings
import mpmath

from effd.lib.ball import Ball, pow2
from effd.lib.elementary import sqrt_ball
from effd.lib.errors import DomainError, InvalidWitness, SearchTimeout
from effd.lib.reals import (
    ComputableReal,
    Modulus,
    RecursivelyApproximableReal,
    approximate,
    arith,
    delta1_from_two_sided,
    from_monotone,
    limit_if_modulus,
    weak_from_difference,
    weak_from_variation,
)
from effd.test import BaseTestCase

F = Fraction


def geometric():
    # x_n = 1 - 2^-n, |x_n - 1| = 2^-n
    return ComputableReal(lambda n: 1 - pow2(n), lambda M: M + 1)


def sqrt2():
    return ComputableReal.from_enclosure(lambda M: sqrt_ball(2, M))


class ComputableRealTestCase(BaseTestCase):
    def test_it_approximates_constants(self):
        x = ComputableReal.constant(F(1, 3))
        self.assertEqual(approximate(x, 10), Ball(F(1, 3), pow2(10)))

    def test_it_approximates_geometric_limit(self):
        ball = approximate(geometric(), 5)
        self.assertTrue(ball.contains(1))
        self.assertRadiusAtMost(ball, 5)

    def test_it_approximates_sqrt2(self):
        ball = approximate(sqrt2(), 30)
        self.assertTrue(ball.square().contains(2))

    def test_it_uses_the_modulus_index(self):
        x = geometric()
        self.assertEqual(approximate(x, 7).center, 1 - pow2(8))

    def test_it_is_cauchy_consistent(self):
        x = sqrt2()
        for M in range(1, 40):
            n = x.modulus(M)
            for m in (n, n + 1, n + 5):
                self.assertLess(abs(x.approximant(m) - x.approximant(n)), pow2(M - 1))

    def test_it_rejects_nonmonotone_modulus(self):
        modulus = Modulus(lambda M: 10 - M)
        modulus(1)
        with self.assertRaises(InvalidWitness):
            modulus(2)

    def test_it_rejects_negative_index(self):
        with self.assertRaises(DomainError):
            geometric().approximant(-1)

    def test_it_adds(self):
        half = ComputableReal.constant(F(1, 2))
        for M in (1, 10, 50):
            self.assertEqual(approximate(arith(half, half, "add"), M), Ball(1, pow2(M)))

    def test_it_subtracts_to_zero(self):
        x = sqrt2()
        for M in (1, 20, 60):
            self.assertTrue(approximate(arith(x, x, "sub"), M).contains(0))

    def test_it_multiplies(self):
        product = arith(sqrt2(), sqrt2(), "mul")
        ball = approximate(product, 30)
        self.assertTrue(ball.contains(2))
        self.assertRadiusAtMost(ball, 30)

    def test_it_needs_a_division_witness(self):
        with self.assertRaises(DomainError):
            arith(geometric(), sqrt2(), "div")

    def test_it_divides_with_witness(self):
        quotient = arith(ComputableReal.constant(1), sqrt2(), "div", lower_bound_exp=0)
        with mpmath.workprec(200):
            self.assertEncloses(approximate(quotient, 40), 1 / mpmath.sqrt(2))

    def test_it_rejects_false_division_witness(self):
        tiny = ComputableReal.constant(F(1, 1000))
        with self.assertRaises(InvalidWitness):
            arith(ComputableReal.constant(1), tiny, "div", lower_bound_exp=1)

    def test_it_rejects_unknown_operation(self):
        with self.assertRaises(DomainError):
            arith(geometric(), geometric(), "pow")

    def test_it_builds_from_enclosures(self):
        x = ComputableReal.from_enclosure(lambda M: Ball(F(2, 3)))
        self.assertEqual(x.approximant(5), F(2, 3))

    def test_it_rejects_wide_enclosures(self):
        x = ComputableReal.from_enclosure(lambda M: Ball(0, 1))
        with self.assertRaises(InvalidWitness):
            approximate(x, 3)

    def test_it_negates(self):
        ball = approximate(-geometric(), 10)
        self.assertTrue(ball.contains(-1))


class MonotoneTestCase(BaseTestCase):
    def test_it_wraps_left_sequences(self):
        x = from_monotone(lambda n: 1 - pow2(n), "left")
        self.assertEqual(x.prefix(3), [0, F(1, 2), F(3, 4), F(7, 8)])

    def test_it_wraps_right_sequences(self):
        x = from_monotone(lambda n: F(1, n + 1), "right")
        self.assertEqual(x.term(9), F(1, 10))
        self.assertEqual(x.term(0), 1)

    def test_it_rejects_alternating_sequence(self):
        x = from_monotone(lambda n: (-1) ** n, "left")
        x(0)
        with self.assertRaises(InvalidWitness):
            x(1)

    def test_it_checks_out_of_order_queries(self):
        x = from_monotone(lambda n: F(1) if n == 5 else F(n, 100), "left")
        x(10)
        x(2)
        with self.assertRaises(InvalidWitness):
            x(5)

    def test_it_rejects_unknown_direction(self):
        with self.assertRaises(DomainError):
            from_monotone(lambda n: 0, "up")

    def test_it_has_no_modulus(self):
        x = from_monotone(lambda n: 1 - pow2(n), "left")
        self.assertFalse(hasattr(x, "modulus"))
        self.assertFalse(hasattr(x, "approximate"))


class WeakTestCase(BaseTestCase):
    def test_it_tracks_variation_and_K4(self):
        # 0, 1, 1/2, 3/4, 5/8, ... jumps (-1)^n 2^-n
        def seq(n):
            return sum((F((-1) ** k, 1 << k) for k in range(0, n)), F(0))

        x = weak_from_variation(seq, 2)
        self.assertEqual(x.delta(0), 1)
        self.assertEqual(x.delta(1), F(-1, 2))
        self.assertEqual(x.partial_variation(3), F(7, 4))
        self.assertEqual(x.K4, 1)

    def test_it_rejects_excess_variation(self):
        x = weak_from_variation(lambda n: n % 2, 3)
        x(3)
        with self.assertRaises(InvalidWitness):
            x(4)

    def test_it_builds_difference_of_left_reals(self):
        a = from_monotone(lambda n: 1 - pow2(n), "left")
        b = from_monotone(lambda n: F(1, 2) - pow2(n + 1), "left")
        x = weak_from_difference(a, b)
        self.assertEqual(x(0), 0)
        self.assertEqual(x(2), F(3, 8))
        self.assertIsNone(x.V)
        self.assertEqual(x.pair, (a, b))


class TwoSidedTestCase(BaseTestCase):
    def test_it_finds_the_modulus(self):
        l = from_monotone(lambda n: 1 - pow2(n), "left")
        r = from_monotone(lambda n: 1 + pow2(n), "right")
        x = delta1_from_two_sided(l, r)

        ball = approximate(x, 20)
        self.assertTrue(ball.contains(1))
        # r_n - l_n = 2^(1-n) < 2^-20 first at n = 22
        self.assertEqual(x.modulus(20), 22)

    def test_it_is_consistent_with_both_sides(self):
        l = from_monotone(lambda n: F(1, 3) - F(1, n + 1), "left")
        r = from_monotone(lambda n: F(1, 3) + F(1, 2 * n + 1), "right")
        x = delta1_from_two_sided(l, r)

        for M in (1, 5, 10):
            ball = approximate(x, M)
            n = x.modulus(M)
            self.assertLessEqual(l(n), ball.upper)
            self.assertLessEqual(ball.lower, r(n))
            self.assertTrue(ball.contains(F(1, 3)))

    def test_it_detects_crossing(self):
        l = from_monotone(lambda n: F(1, 2), "left")
        r = from_monotone(lambda n: F(1, 4), "right")
        x = delta1_from_two_sided(l, r)
        with self.assertRaises(InvalidWitness):
            approximate(x, 3)

    def test_it_times_out(self):
        # The two sides never meet
        l = from_monotone(lambda n: 0, "left")
        r = from_monotone(lambda n: 1, "right")
        x = delta1_from_two_sided(l, r, budget=50)
        with self.assertRaises(SearchTimeout) as cm:
            approximate(x, 3)

        self.assertEqual(cm.exception.steps, 51)

    @override_settings(SEARCH_BUDGET=7)
    def test_it_reads_default_budget_from_settings(self):
        l = from_monotone(lambda n: 0, "left")
        r = from_monotone(lambda n: 1, "right")
        x = delta1_from_two_sided(l, r)
        with self.assertRaises(SearchTimeout):
            approximate(x, 1)


class LimitTestCase(BaseTestCase):
    def test_it_diagonalizes(self):
        # x_k = 1 - 2^-k with tail modulus N -> N
        seq = Mock(side_effect=lambda k: ComputableReal.constant(1 - pow2(k)))
        x = limit_if_modulus(seq, lambda N: N)
        ball = approximate(x, 20)
        self.assertTrue(ball.contains(1))
        self.assertRadiusAtMost(ball, 20)

    def test_it_spot_checks_the_modulus(self):
        # x_k = k does not converge at all
        seq = lambda k: ComputableReal.constant(k)
        x = limit_if_modulus(seq, lambda N: N)
        with self.assertRaises(InvalidWitness):
            approximate(x, 5)


class RecursivelyApproximableTestCase(BaseTestCase):
    def test_it_encloses_each_term(self):
        x = RecursivelyApproximableReal(lambda k: ComputableReal.constant(F(1, k + 1)))
        self.assertEqual(x.ball(3, 10), Ball(F(1, 4), pow2(10)))
        self.assertFalse(hasattr(x, "approximate"))

    def test_it_computes_envelopes(self):
        x = RecursivelyApproximableReal(
            lambda k: ComputableReal.constant(F((-1) ** k, k + 1))
        )
        self.assertEqual(x.lower_envelope(0, 4, 10), F(-1, 2) - pow2(10))
        self.assertEqual(x.upper_envelope(0, 4, 10), 1 + pow2(10))
