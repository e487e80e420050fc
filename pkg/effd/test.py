from fractions import Fraction
from io import StringIO
import json
import os
import tempfile

from django.core.management import call_command
from django.test import TestCase
import mpmath

from effd.lib.ball import Ball, pow2
from effd.lib.trigpoly import TrigPoly
from effd.lib.witnesses import phi_m


def mp_ball(ball):
    """ The ball's edges as mpmath numbers at the current working precision. """

    lo, hi = ball.lower, ball.upper
    return (
        mpmath.mpf(lo.numerator) / lo.denominator,
        mpmath.mpf(hi.numerator) / hi.denominator,
    )


class BaseTestCase(TestCase):
    def setUp(self):
        super().setUp()

        # cos θ, the simplest nonconstant boundary data
        self.cos1 = TrigPoly.cosine(1)

        # φ_2 = cos(16θ) Σ_{ℓ=1}^{10} cos(ℓθ)/ℓ, spectrum {6..26} \ {16}
        self.phi2 = phi_m(2)

        # a_n = 1/n² for n <= 200
        self.inverse_squares = TrigPoly(cos={n: Fraction(1, n * n) for n in range(1, 201)})

    def assertEncloses(self, ball, value):
        """ Check that `ball` contains a Fraction, an int or an mpmath number.

        An mpmath value must have been computed well beyond the ball's
        radius. It is allowed a few ulps of the precision it was computed
        at, so exact balls can be checked against rounded oracles.

        """

        ball = Ball.coerce(ball)
        if isinstance(value, (int, Fraction)):
            self.assertTrue(ball.contains(value), "%s does not contain %s" % (ball, value))
            return

        slack = 4 * mpmath.mp.eps * max(1, abs(value))
        prec = max(ball.radius.denominator.bit_length(), mpmath.mp.prec) + 64
        with mpmath.workprec(prec):
            lo, hi = mp_ball(ball)
            ok = lo - slack <= value <= hi + slack
            self.assertTrue(ok, "%s does not contain %s" % (ball, value))

    def assertRadiusAtMost(self, ball, M):
        ball = Ball.coerce(ball)
        self.assertLessEqual(ball.radius, pow2(M), "radius of %s above 2^-%d" % (ball, M))

    def report(self, name, *args):
        """ Run a report command and return its JSON rows. """

        stdout = StringIO()
        call_command(name, *args, stdout=stdout)
        return [json.loads(line) for line in stdout.getvalue().splitlines() if line]

    def write_file(self, doc, suffix=".json"):
        """ Write doc (a dict, or text) to a temporary file and return its path. """

        fd, path = tempfile.mkstemp(suffix=suffix)
        with os.fdopen(fd, "w") as f:
            f.write(doc if isinstance(doc, str) else json.dumps(doc))

        self.addCleanup(os.remove, path)
        return path
