""" Finite trigonometric polynomials on the unit circle.

    p(e^{iθ}) = a0/2 + Σ_{n>=1} (a_n cos nθ + b_n sin nθ)

Coefficients are either all exact rationals or all Balls. A polynomial with
a single Ball coefficient is a "ball polynomial" and every other coefficient
is promoted to an exact Ball. Zero coefficients are never stored, so the
keys of `cos` and `sin` together form the spectrum.

Angles are given as rational multiples of π: a Fraction t or an integer
pair (p, q) stands for θ = tπ = pπ/q.

"""

from fractions import Fraction
import logging

from effd.lib import jsonschema
from effd.lib.ball import Ball, ZERO, to_rational
from effd.lib.elementary import cos_ball, cos_pi_ball, sin_ball, sin_pi_ball
from effd.lib.errors import DomainError, ParseError
from effd.lib.formats import coefficient_from_json, coefficient_to_json
from effd.lib.schemas import trigpoly as trigpoly_schema

logger = logging.getLogger(__name__)


def pi_multiple(theta) -> Fraction:
    """ Return t such that theta = t * pi. """

    if isinstance(theta, tuple):
        p, q = theta
        if q == 0:
            raise DomainError("angle %d*pi/0 is undefined" % p)
        return Fraction(p, q)

    return to_rational(theta)


def is_zero(c) -> bool:
    if isinstance(c, Ball):
        return c.center == 0 and c.radius == 0
    return c == 0


def _magnitude(c) -> Fraction:
    if isinstance(c, Ball):
        return c.magnitude()
    return abs(c)


def _square(c):
    if isinstance(c, Ball):
        return c.square()
    return c * c


class TrigPoly(object):
    def __init__(self, a0=ZERO, cos=None, sin=None):
        a0 = a0 if isinstance(a0, Ball) else to_rational(a0)
        cos = dict(cos or {})
        sin = dict(sin or {})

        for n in list(cos) + list(sin):
            if not isinstance(n, int) or isinstance(n, bool) or n < 1:
                raise DomainError("frequency %r is not a positive integer" % (n,))

        values = [a0] + list(cos.values()) + list(sin.values())
        self.ball = any(isinstance(c, Ball) for c in values)

        def norm(c):
            return Ball.coerce(c) if self.ball else to_rational(c)

        self.a0 = norm(a0)
        self.cos = {n: norm(c) for n, c in sorted(cos.items()) if not is_zero(c)}
        self.sin = {n: norm(c) for n, c in sorted(sin.items()) if not is_zero(c)}

    @classmethod
    def constant(cls, c):
        """ The constant function c (stored as a0 = 2c). """

        return cls(a0=2 * c)

    @classmethod
    def cosine(cls, n, c=1):
        return cls(cos={n: c})

    @classmethod
    def sine(cls, n, c=1):
        return cls(sin={n: c})

    def a(self, n):
        """ Cosine coefficient a_n; a(0) is a0. """

        if n == 0:
            return self.a0
        return self.cos.get(n, Ball(0) if self.ball else ZERO)

    def b(self, n):
        return self.sin.get(n, Ball(0) if self.ball else ZERO)

    @property
    def is_exact(self) -> bool:
        return not self.ball

    @property
    def spectrum(self):
        return spectrum(self)

    def degree(self) -> int:
        return max(list(self.cos) + list(self.sin) + [0])

    def terms(self):
        """ Yield (n, a_n, b_n) for every frequency in the spectrum. """

        for n in sorted(set(self.cos) | set(self.sin)):
            yield n, self.a(n), self.b(n)

    def coefficients(self):
        yield self.a0
        yield from self.cos.values()
        yield from self.sin.values()

    def map(self, fn):
        return TrigPoly(
            fn(self.a0),
            {n: fn(c) for n, c in self.cos.items()},
            {n: fn(c) for n, c in self.sin.items()},
        )

    def rounded(self, bits):
        """ Snap every Ball coefficient to the 2**-bits grid. """

        if not self.ball:
            return self
        return self.map(lambda c: c.rounded(bits))

    def max_radius(self) -> Fraction:
        if not self.ball:
            return ZERO
        return max(c.radius for c in self.coefficients())

    def __add__(self, other):
        return linear_combination([self, other], [1, 1])

    def __sub__(self, other):
        return linear_combination([self, other], [1, -1])

    def __neg__(self):
        return self.map(lambda c: -c)

    def __mul__(self, scalar):
        if isinstance(scalar, TrigPoly):
            raise DomainError("use multiply_by_cos for products of polynomials")
        if not isinstance(scalar, Ball):
            scalar = to_rational(scalar)
        return self.map(lambda c: c * scalar)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, TrigPoly):
            return NotImplemented
        return (self.a0, self.cos, self.sin) == (other.a0, other.cos, other.sin)

    __hash__ = None

    def __repr__(self):
        return "TrigPoly(a0=%s, cos=%s, sin=%s)" % (self.a0, self.cos, self.sin)

    def to_json(self) -> dict:
        doc = {"a0": coefficient_to_json(self.a0)}
        doc["cos"] = {str(n): coefficient_to_json(c) for n, c in self.cos.items()}
        doc["sin"] = {str(n): coefficient_to_json(c) for n, c in self.sin.items()}
        return doc

    @classmethod
    def from_json(cls, doc):
        try:
            jsonschema.validate(doc, trigpoly_schema, "polynomial")
        except jsonschema.ValidationError as e:
            raise ParseError(str(e))

        a0 = coefficient_from_json(doc.get("a0", 0), field="a0")
        parts = {}
        for kind in ("cos", "sin"):
            parts[kind] = {}
            for key, value in doc.get(kind, {}).items():
                field = "%s.%s" % (kind, key)
                if not key.isdigit() or int(key) < 1:
                    raise ParseError("frequency must be a positive integer", field=field)
                parts[kind][int(key)] = coefficient_from_json(value, field=field)

        return cls(a0, parts["cos"], parts["sin"])


def linear_combination(polys, coeffs):
    """ Σ coeffs[i] * polys[i], coefficientwise. """

    if len(polys) != len(coeffs):
        raise DomainError("%d polynomials but %d coefficients" % (len(polys), len(coeffs)))

    a0, cos, sin = ZERO, {}, {}
    for p, c in zip(polys, coeffs):
        if not isinstance(c, Ball):
            c = to_rational(c)
        a0 = a0 + c * p.a0
        for n, v in p.cos.items():
            cos[n] = cos.get(n, ZERO) + c * v
        for n, v in p.sin.items():
            sin[n] = sin.get(n, ZERO) + c * v

    return TrigPoly(a0, cos, sin)


def multiply_by_cos(p, k):
    """ The product p(θ) cos(kθ), expanded with the product-to-sum rules.

        cos kθ cos ℓθ = ½ cos (ℓ-k)θ + ½ cos (ℓ+k)θ
        cos kθ sin ℓθ = ½ sin (ℓ+k)θ + ½ sin (ℓ-k)θ

    A cos 0θ term lands in a0 doubled, because a0 enters p as a0/2.

    """

    if not isinstance(k, int) or k < 1:
        raise DomainError("multiply_by_cos needs a frequency k >= 1, got %r" % (k,))

    a0, cos, sin = ZERO, {}, {}

    def add(target, n, v):
        target[n] = target.get(n, ZERO) + v

    add(cos, k, p.a0 / 2)
    for n, c in p.cos.items():
        half = c / 2
        add(cos, n + k, half)
        if n == k:
            a0 = a0 + c
        else:
            add(cos, abs(n - k), half)

    for n, c in p.sin.items():
        half = c / 2
        add(sin, n + k, half)
        if n > k:
            add(sin, n - k, half)
        elif n < k:
            add(sin, k - n, -half)

    return TrigPoly(a0, cos, sin)


def _evaluate(p, M, cos_at, sin_at):
    # Each cos/sin enclosure is scaled by at most Σ|coefficients|
    scale = sup_norm_bound(p) + 1
    wp = M + 1 + int(scale).bit_length()

    total = Ball(p.a0 / 2) if not p.ball else p.a0 / 2
    for n, a, b in p.terms():
        if not is_zero(a):
            total = total + a * cos_at(n, wp)
        if not is_zero(b):
            total = total + b * sin_at(n, wp)

    return Ball.coerce(total)


def evaluate(p, theta, M):
    """ Enclose p(e^{iθ}) for θ a rational multiple of π.

    For rational coefficients the radius is at most 2**-M. Ball coefficients
    add their own radii on top.

    """

    t = pi_multiple(theta)
    return _evaluate(
        p,
        M,
        lambda n, wp: cos_pi_ball(n * t, wp),
        lambda n, wp: sin_pi_ball(n * t, wp),
    )


def evaluate_radians(p, x, M):
    """ Enclose p(e^{ix}) for a rational angle x given in radians. """

    x = to_rational(x)
    return _evaluate(
        p,
        M,
        lambda n, wp: cos_ball(n * x, wp),
        lambda n, wp: sin_ball(n * x, wp),
    )


def l2_norm_sq(p):
    """ |a0|²/4 + ½ Σ (a_n² + b_n²), the Parseval sum. """

    total = _square(p.a0) / 4
    for n, a, b in p.terms():
        total = total + (_square(a) + _square(b)) / 2
    return total


def dirichlet_energy(p):
    """ E(p) = ½ Σ n (a_n² + b_n²). """

    total = Ball(0) if p.ball else ZERO
    for n, a, b in p.terms():
        total = total + n * (_square(a) + _square(b)) / 2
    return total


def h12_norm_sq(p):
    """ Square of the H^{1/2} norm, |a0|²/4 + E(p). """

    return _square(p.a0) / 4 + dirichlet_energy(p)


def sup_norm_bound(p) -> Fraction:
    """ |a0|/2 + Σ (|a_n| + |b_n|), an upper bound of max |p| on the circle. """

    total = _magnitude(p.a0) / 2
    for c in p.cos.values():
        total += _magnitude(c)
    for c in p.sin.values():
        total += _magnitude(c)
    return total


class Spectrum(frozenset):
    """ The frequencies n >= 1 with a nonvanishing coefficient. """

    def __repr__(self):
        return "Spectrum(%s)" % sorted(self)


def spectrum(p) -> Spectrum:
    return Spectrum(set(p.cos) | set(p.sin))


def spectra_disjoint(p, q) -> bool:
    return spectrum(p).isdisjoint(spectrum(q))
