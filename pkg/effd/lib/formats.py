""" Text forms of rationals and balls.

Rationals are written as "num/den" strings, always with an explicit
denominator. Balls are written as {"center": "num/den", "radius": "num/den"}.
No floats are ever produced or accepted.

"""

from fractions import Fraction
import re

from effd.lib.ball import Ball
from effd.lib.errors import ParseError

RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def parse_rational(s, line=None, field=None) -> Fraction:
    """ Parse "num/den" or "num" (a string or a JSON integer). """

    if isinstance(s, bool):
        raise ParseError("expected a rational, got %r" % s, line, field)
    if isinstance(s, int):
        return Fraction(s)
    if not isinstance(s, str):
        raise ParseError("expected a rational string, got %r" % (s,), line, field)

    m = RATIONAL_RE.match(s)
    if m is None:
        raise ParseError("'%s' is not a rational of the form num/den" % s, line, field)

    num, den = int(m.group(1)), int(m.group(2) or 1)
    if den == 0:
        raise ParseError("zero denominator in '%s'" % s, line, field)

    return Fraction(num, den)


def format_rational(x) -> str:
    x = Fraction(x)
    return "%d/%d" % (x.numerator, x.denominator)


def ball_to_json(ball) -> dict:
    return {"center": format_rational(ball.center), "radius": format_rational(ball.radius)}


def ball_from_json(obj, line=None, field=None):
    if not isinstance(obj, dict) or set(obj) != {"center", "radius"}:
        raise ParseError("expected a {center, radius} object", line, field)

    radius = parse_rational(obj["radius"], line, field)
    if radius < 0:
        raise ParseError("negative radius", line, field)

    return Ball(parse_rational(obj["center"], line, field), radius)


def coefficient_to_json(value):
    if isinstance(value, Ball):
        return ball_to_json(value)
    return format_rational(value)


def coefficient_from_json(obj, line=None, field=None):
    if isinstance(obj, dict):
        return ball_from_json(obj, line, field)
    return parse_rational(obj, line, field)


def to_jsonable(value):
    """ Recursively replace Fractions and Balls with their text forms. """

    if isinstance(value, Ball):
        return ball_to_json(value)
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, float):
        raise TypeError("refusing to emit a bare float: %r" % value)
    return value
