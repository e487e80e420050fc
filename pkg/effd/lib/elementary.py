""" Certified enclosures of sqrt, pi, ln, cos and sin.

The values come from mpmath's interval context, whose endpoints are dyadic
floats rounded outwards. Both endpoints are converted to exact Fractions
and the interval becomes a Ball. Each public function retries at a higher
working precision until the requested radius is met.

"""

from contextlib import contextmanager
from fractions import Fraction
from functools import lru_cache
import logging
import math

from mpmath import iv

from effd.lib.ball import Ball, pow2, to_rational
from effd.lib.errors import DomainError

logger = logging.getLogger(__name__)

# Extra bits used on the first attempt of every certified loop
GUARD_BITS = 12
# Extra bits added on each retry
RETRY_BITS = 32

# Values of cos(t*pi) and sin(t*pi) that are rational (t taken mod 2)
COS_PI_EXACT = {
    Fraction(0): Fraction(1),
    Fraction(1, 3): Fraction(1, 2),
    Fraction(1, 2): Fraction(0),
    Fraction(2, 3): Fraction(-1, 2),
    Fraction(1): Fraction(-1),
    Fraction(4, 3): Fraction(-1, 2),
    Fraction(3, 2): Fraction(0),
    Fraction(5, 3): Fraction(1, 2),
}

SIN_PI_EXACT = {
    Fraction(0): Fraction(0),
    Fraction(1, 6): Fraction(1, 2),
    Fraction(1, 2): Fraction(1),
    Fraction(5, 6): Fraction(1, 2),
    Fraction(1): Fraction(0),
    Fraction(7, 6): Fraction(-1, 2),
    Fraction(3, 2): Fraction(-1),
    Fraction(11, 6): Fraction(-1, 2),
}


@contextmanager
def _iv_precision(wp):
    saved = iv.prec
    iv.prec = wp
    try:
        yield
    finally:
        iv.prec = saved


def _endpoint(raw) -> Fraction:
    sign, man, exp, bc = raw
    if not man and exp:
        # mpmath marks inf and nan with a zero mantissa and a nonzero exponent
        raise DomainError("interval evaluation gave a non-finite endpoint")

    value = Fraction(-man if sign else man)
    return value * 2**exp if exp >= 0 else value / 2**-exp


def to_ball(x) -> Ball:
    """ The Ball spanning an mpmath interval. """

    lower, upper = x._mpi_
    return Ball.from_bounds(_endpoint(lower), _endpoint(upper))


def iv_rational(x):
    """ An mpmath interval around the rational x, at the current iv precision. """

    x = to_rational(x)
    return iv.mpf(x.numerator) / x.denominator


def _certify(compute, M, extra=0):
    """ Evaluate compute() with growing iv precision until the radius is <= 2**-M. """

    eps = pow2(M)
    wp = max(M, 0) + GUARD_BITS + extra
    while True:
        with _iv_precision(wp):
            result = to_ball(compute())
        if result.radius <= eps:
            return result

        logger.debug("radius %s above 2^-%d at wp=%d, retrying", result.radius, M, wp)
        wp += RETRY_BITS


def _exponent(x):
    return abs(x.numerator.bit_length() - x.denominator.bit_length())


def sqrt_ball(x, M):
    """ Enclose sqrt(x) in a ball of radius <= 2**-M.

    Perfect squares of rationals come back exact.

    """

    x = to_rational(x)
    if x < 0:
        raise DomainError("sqrt of negative number %s" % x)

    num_root, den_root = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if num_root**2 == x.numerator and den_root**2 == x.denominator:
        return Ball(Fraction(num_root, den_root))

    return _certify(lambda: iv.sqrt(iv_rational(x)), M, extra=_exponent(x) // 2 + 1)


@lru_cache(maxsize=64)
def pi_ball(M):
    """ Enclose pi in a ball of radius <= 2**-M. """

    return _certify(lambda: iv.pi, M, extra=2)


@lru_cache(maxsize=1024)
def ln_ball(x, M):
    """ Enclose ln(x) in a ball of radius <= 2**-M, for rational x > 0. """

    x = to_rational(x)
    if x <= 0:
        raise DomainError("ln of nonpositive number %s" % x)
    if x == 1:
        return Ball(0)

    # |ln x| grows with the binary exponent of x
    extra = 4 + _exponent(x).bit_length()
    return _certify(lambda: iv.log(iv_rational(x)), M, extra=extra)


def _cos_sin_ball(fn, t, M):
    t = Ball.coerce(t)
    # Argument reduction costs the integer bits of t
    extra = 2 + int(abs(t.center)).bit_length()
    value = _certify(lambda: fn(iv_rational(t.center)), M, extra=extra)
    # cos and sin are 1-Lipschitz, so the input radius passes through
    return Ball(value.center, value.radius + t.radius)


def cos_ball(t, M):
    """ Enclose cos(t) for a Ball or rational t.

    The radius is at most 2**-M plus the radius of t.

    """

    t = Ball.coerce(t)
    if t.center == 0:
        return Ball(1, t.radius)
    return _cos_sin_ball(iv.cos, t, M)


def sin_ball(t, M):
    """ Enclose sin(t) for a Ball or rational t.

    The radius is at most 2**-M plus the radius of t.

    """

    t = Ball.coerce(t)
    if t.center == 0:
        return Ball(0, t.radius)
    return _cos_sin_ball(iv.sin, t, M)


def _mod2(t):
    t = to_rational(t)
    return t - 2 * (t // 2)


@lru_cache(maxsize=4096)
def cos_pi_ball(t, M):
    """ Enclose cos(t * pi) for rational t, radius <= 2**-M.

    The reduction mod 2 is exact; the angles where cos is rational come
    back as exact balls.

    """

    t = _mod2(t)
    if t in COS_PI_EXACT:
        return Ball(COS_PI_EXACT[t])
    if t > 1:
        t -= 2

    return _certify(lambda: iv.cos(iv.pi * iv_rational(t)), M, extra=2)


@lru_cache(maxsize=4096)
def sin_pi_ball(t, M):
    """ Enclose sin(t * pi) for rational t, radius <= 2**-M. """

    t = _mod2(t)
    if t in SIN_PI_EXACT:
        return Ball(SIN_PI_EXACT[t])
    if t > 1:
        t -= 2

    return _certify(lambda: iv.sin(iv.pi * iv_rational(t)), M, extra=2)


def ceil_ball(enclose, M=16, max_prec=4096):
    """ Smallest integer >= a real known through enclose(M) -> Ball.

    The precision doubles until the enclosure stops straddling an integer.
    A value sitting exactly on an integer can never be separated; then the
    ceiling of the upper edge is returned, which is still an upper bound,
    and a warning is logged.

    """

    while True:
        ball = enclose(M)
        hi = math.ceil(ball.upper)
        if math.ceil(ball.lower) == hi:
            return hi
        if M >= max_prec:
            logger.warning("could not separate %s from an integer, using %d", ball, hi)
            return hi
        M *= 2
