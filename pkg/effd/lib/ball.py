""" Exact rationals and certified enclosures.

A Ball is a rational midpoint with a rational radius. It certifies that the
true value lies in [center - radius, center + radius]. Every operation
propagates radii outwards, so the result contains op(x, y) for any x, y
taken from the input balls.

"""

from dataclasses import dataclass
from fractions import Fraction
import numbers

from effd.lib.errors import DomainError

ZERO = Fraction(0)
ONE = Fraction(1)


def to_rational(x) -> Fraction:
    """ Convert an int or Fraction to a canonical Fraction.

    Floats are refused: they would smuggle rounding into an exact stack.

    """

    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool) or not isinstance(x, numbers.Rational):
        raise DomainError("%r is not an exact rational" % (x,))
    return Fraction(x)


def pow2(M) -> Fraction:
    """ Return 2**-M as an exact rational. """

    if M >= 0:
        return Fraction(1, 1 << M)
    return Fraction(1 << -M)


@dataclass(frozen=True)
class Ball:
    center: Fraction
    radius: Fraction = ZERO

    def __post_init__(self):
        object.__setattr__(self, "center", to_rational(self.center))
        object.__setattr__(self, "radius", to_rational(self.radius))
        if self.radius < 0:
            raise DomainError("negative ball radius %s" % self.radius)

    @classmethod
    def coerce(cls, x):
        if isinstance(x, Ball):
            return x
        return cls(to_rational(x))

    @classmethod
    def from_bounds(cls, lower, upper):
        lower, upper = to_rational(lower), to_rational(upper)
        if lower > upper:
            lower, upper = upper, lower
        return cls((lower + upper) / 2, (upper - lower) / 2)

    @property
    def lower(self) -> Fraction:
        return self.center - self.radius

    @property
    def upper(self) -> Fraction:
        return self.center + self.radius

    @property
    def is_exact(self) -> bool:
        return self.radius == 0

    def magnitude(self) -> Fraction:
        """ Upper bound of |x| over the ball. """

        return abs(self.center) + self.radius

    def mignitude(self) -> Fraction:
        """ Lower bound of |x| over the ball (0 if the ball contains 0). """

        return max(abs(self.center) - self.radius, ZERO)

    def contains(self, x) -> bool:
        if isinstance(x, Ball):
            return self.lower <= x.lower and x.upper <= self.upper
        x = to_rational(x)
        return self.lower <= x <= self.upper

    def contains_zero(self) -> bool:
        return abs(self.center) <= self.radius

    def intersects(self, other) -> bool:
        other = Ball.coerce(other)
        return self.lower <= other.upper and other.lower <= self.upper

    def rounded(self, bits):
        """ Round the center to a multiple of 2**-bits, outwards.

        Long sums of rationals grow their denominators without bound. Snapping
        the center to a dyadic grid and widening the radius by the rounding
        error keeps the sizes flat and the enclosure valid.

        """

        num, den = self.center.numerator, self.center.denominator
        if den <= (1 << bits) and (1 << bits) % den == 0:
            snapped = self.center
        else:
            snapped = Fraction((num << bits) // den, 1 << bits)

        slack = self.radius + (self.center - snapped)
        # Round the radius up to the same grid
        r_num = -((-slack.numerator << bits) // slack.denominator)
        return Ball(snapped, Fraction(r_num, 1 << bits))

    def square(self):
        """ Tighter than self * self: the square of a ball is nonnegative. """

        hi = self.magnitude() ** 2
        lo = self.mignitude() ** 2
        return Ball.from_bounds(lo, hi)

    def reciprocal(self):
        if self.contains_zero():
            raise DomainError("division by a ball containing zero: %s" % self)
        if self.is_exact:
            return Ball(1 / self.center)

        c = abs(self.center)
        radius = self.radius / (c * (c - self.radius))
        return Ball(1 / self.center, radius)

    def __neg__(self):
        return Ball(-self.center, self.radius)

    def __abs__(self):
        return Ball.from_bounds(self.mignitude(), self.magnitude())

    def __add__(self, other):
        other = Ball.coerce(other)
        return Ball(self.center + other.center, self.radius + other.radius)

    __radd__ = __add__

    def __sub__(self, other):
        other = Ball.coerce(other)
        return Ball(self.center - other.center, self.radius + other.radius)

    def __rsub__(self, other):
        return Ball.coerce(other) - self

    def __mul__(self, other):
        other = Ball.coerce(other)
        radius = (
            abs(self.center) * other.radius
            + abs(other.center) * self.radius
            + self.radius * other.radius
        )
        return Ball(self.center * other.center, radius)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * Ball.coerce(other).reciprocal()

    def __rtruediv__(self, other):
        return Ball.coerce(other) * self.reciprocal()

    def __str__(self):
        return "[%s ± %s]" % (self.center, self.radius)


OPERATIONS = {
    "add": Ball.__add__,
    "sub": Ball.__sub__,
    "mul": Ball.__mul__,
    "div": Ball.__truediv__,
}


def ball_arith(lhs, rhs, op):
    """ Apply `op` ("add", "sub", "mul" or "div") to two balls.

    Division by a ball whose enclosure contains zero raises DomainError.

    """

    if op not in OPERATIONS:
        raise DomainError("unknown ball operation '%s'" % op)

    return OPERATIONS[op](Ball.coerce(lhs), Ball.coerce(rhs))


def ball_sum(items):
    total = Ball(ZERO)
    for item in items:
        total = total + item
    return total
