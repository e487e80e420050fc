""" Both routes to the Dirichlet problem on the unit disk.

The Poisson route evaluates the harmonic extension through its series,

    (P_r f)(e^{iθ}) = a0/2 + Σ r^n (a_n cos nθ + b_n sin nθ),

exactly for polynomial data and truncated on the schedule r_k = 1 - 1/k,
M_k = k² - k for coefficient streams. The energy route presents the
Dirichlet energy E(f) by its nondecreasing partial sums E_N.

The continuous Poisson integral is never computed by quadrature.

"""

from dataclasses import dataclass, field
from fractions import Fraction
import logging
import math
from typing import Optional, Union

from django.conf import settings

from effd.lib.ball import Ball, ZERO, pow2, to_rational
from effd.lib.elementary import GUARD_BITS, RETRY_BITS, cos_pi_ball, sin_pi_ball
from effd.lib.errors import DomainError, InvalidWitness, ScheduleOverflow
from effd.lib.formats import ball_to_json, format_rational
from effd.lib.quadrature import dirichlet_integral_quadrature
from effd.lib.reals import ComputableReal, LeftComputableReal, RecursivelyApproximableReal
from effd.lib.reals import RightComputableReal
from effd.lib.trigpoly import dirichlet_energy, is_zero, pi_multiple

logger = logging.getLogger(__name__)


def _magnitude(c) -> Fraction:
    return c.magnitude() if isinstance(c, Ball) else abs(c)


class CoefficientStream(object):
    """ Fourier coefficients n -> a_n, n -> b_n of a boundary function.

    `a(0)` is a0. A missing `b` means a cosine-only stream. `K1`, when
    given, is a natural number with max(|a_n|, |b_n|) <= K1 for every n,
    and each queried coefficient is checked against it. `support`, when
    given, is an N with a_n = b_n = 0 for every n > N.

    """

    def __init__(self, a, b=None, K1=None, support=None, label=""):
        self._a = a
        self._b = b
        self.K1 = K1
        self.support = support
        self.label = label
        self.cache = {}

    @classmethod
    def from_trigpoly(cls, p, label=""):
        values = list(p.coefficients())
        bound = max([_magnitude(c) for c in values] + [ZERO])
        K1 = math.ceil(bound)
        return cls(p.a, p.b if p.sin else None, K1=K1, support=p.degree(), label=label)

    @property
    def cosine_only(self) -> bool:
        return self._b is None

    def _value(self, fn, n):
        if fn is None or (self.support is not None and n > self.support):
            return ZERO

        c = fn(n)
        if not isinstance(c, Ball):
            c = to_rational(c)
        if self.K1 is not None and _magnitude(c) > self.K1:
            raise InvalidWitness(
                "coefficient %s at n=%d exceeds K1 = %d" % (c, n, self.K1)
            )
        return c

    def a(self, n):
        key = ("a", n)
        if key not in self.cache:
            self.cache[key] = self._value(self._a, n)
        return self.cache[key]

    def b(self, n):
        if n == 0:
            return ZERO
        key = ("b", n)
        if key not in self.cache:
            self.cache[key] = self._value(self._b, n)
        return self.cache[key]


@dataclass(frozen=True)
class CertifiedEvaluation:
    """ An enclosure plus the provenance of its error terms.

    The radius of `value` is authoritative. `budget` lists (name, bound)
    pairs such as truncation and rounding; they need not add up to it.

    """

    value: Ball
    budget: tuple = field(default_factory=tuple)

    def bound(self, name) -> Optional[Fraction]:
        return dict(self.budget).get(name)

    def to_json(self) -> dict:
        return {
            "value": ball_to_json(self.value),
            "budget": {name: format_rational(b) for name, b in self.budget},
        }


class PoissonSchedule(object):
    """ k -> (r_k, M_k) = (1 - 1/k, k² - k), for 1 <= k <= cap. """

    def __init__(self, cap=None):
        self.cap = settings.SCHEDULE_CAP if cap is None else cap

    def __call__(self, k):
        if not isinstance(k, int) or k < 1:
            raise DomainError("schedule index must be a positive integer, got %r" % (k,))
        if self.cap is not None and k > self.cap:
            raise ScheduleOverflow("schedule index %d exceeds the cap %d" % (k, self.cap))

        return 1 - Fraction(1, k), k * k - k


def schedule(k, cap=None):
    return PoissonSchedule(cap)(k)


def tail_bound(K1, k) -> Fraction:
    """ K1 * k / 2**k, the truncation bound on the schedule. """

    return Fraction(K1 * k, 1 << k)


def geometric_tail_bound(K1, r, M) -> Fraction:
    """ K1 * r**(M+1) / (1 - r), which bounds K1 * Σ_{n>M} r**n. """

    r = to_rational(r)
    _check_radius(r)
    return K1 * r ** (M + 1) / (1 - r)


def _check_radius(r):
    if r < 0 or r >= 1:
        raise DomainError("radius r must satisfy 0 <= r < 1, got %s" % r)


def poisson_kernel(r, theta, M) -> Ball:
    """ Enclose P_r(θ) = (1 - r²) / (1 - 2r cos θ + r²) with radius <= 2**-M. """

    r = to_rational(r)
    _check_radius(r)
    if r == 0:
        return Ball(1)

    t = pi_multiple(theta)
    numerator = 1 - r * r
    # The denominator is at least (1 - r)², which fixes the precision loss
    spread = math.ceil(1 / ((1 - r) * (1 - r))).bit_length()
    wp = M + GUARD_BITS + 2 * spread
    while True:
        cos = cos_pi_ball(t, wp)
        denominator = 1 - 2 * r * cos + r * r
        if not denominator.contains_zero():
            value = numerator / denominator
            if value.radius <= pow2(M):
                return value

        logger.debug("poisson kernel at r=%s: retrying above wp=%d", r, wp)
        wp += RETRY_BITS


def _series(f, N, r, t, prec):
    # Σ r^n (|a_n| + |b_n|) scales the rounding of every cos/sin enclosure
    scale = Fraction(1)
    power = Fraction(1)
    for n in range(1, N + 1):
        power *= r
        scale += power * (_magnitude(f.a(n)) + _magnitude(f.b(n)))
    wp = prec + 1 + int(scale).bit_length()

    total = Ball.coerce(f.a(0)) / 2
    power = Fraction(1)
    for n in range(1, N + 1):
        power *= r
        a, b = f.a(n), f.b(n)
        if a != 0:
            total = total + power * a * cos_pi_ball(n * t, wp)
        if b != 0:
            total = total + power * b * sin_pi_ball(n * t, wp)

    return total


def poisson_partial_sum(f, M, r, theta, prec) -> CertifiedEvaluation:
    """ Enclose (P^M_r f)(e^{iθ}), the series cut after frequency M.

    For rational coefficients the radius is at most 2**-prec. When the
    stream has a K1 bound, the budget also records the truncation error
    against the full series (twice the geometric bound when there are
    sine terms).

    """

    r = to_rational(r)
    _check_radius(r)
    t = pi_multiple(theta)

    value = _series(f, M, r, t, prec)
    budget = [("rounding", value.radius)]
    if f.support is not None and f.support <= M:
        budget.append(("truncation", ZERO))
    elif f.K1 is not None:
        families = 1 if f.cosine_only else 2
        budget.append(("truncation", families * geometric_tail_bound(f.K1, r, M)))

    return CertifiedEvaluation(value, tuple(budget))


def dense_series(f, r, theta, prec) -> Ball:
    """ The full series of a finitely supported stream. """

    if f.support is None:
        raise DomainError("dense_series needs a finitely supported stream")

    return poisson_partial_sum(f, f.support, r, theta, prec).value


def _require_rational(f, N):
    for n in range(0, N + 1):
        if isinstance(f.a(n), Ball) or isinstance(f.b(n), Ball):
            raise DomainError(
                "coefficient %d is a Ball; sequence terms must be computable to any precision" % n
            )


def boundary_value_sequence(f, theta, cap=None) -> RecursivelyApproximableReal:
    """ x_k = (P^{M_k}_{r_k} f)(e^{iθ}) as a sequence of computable reals.

    Each x_k is a finite sum and so computable to any precision, but the
    sequence carries no modulus: x_k -> f(e^{iθ}) at a rate nobody knows.
    Ball coefficients cap the precision of a term, so building a term
    raises DomainError if any coefficient it uses is a Ball;
    boundary_value_rows accepts them.

    """

    plan = PoissonSchedule(cap)

    def term(k):
        r, M = plan(k)
        _require_rational(f, M if f.support is None else min(M, f.support))

        def enclose(prec):
            return poisson_partial_sum(f, M, r, theta, prec).value

        return ComputableReal.from_enclosure(enclose)

    return RecursivelyApproximableReal(term)


def boundary_value_rows(f, theta, ks, prec, cap=None):
    """ Report rows {k, r, M, value, tail_bound} for the given k. """

    plan = PoissonSchedule(cap)
    for k in ks:
        r, M = plan(k)
        evaluation = poisson_partial_sum(f, M, r, theta, prec)
        row = {"k": k, "r": r, "M": M, "value": evaluation.value}
        if f.K1 is not None:
            row["tail_bound"] = tail_bound(f.K1, k)
        logger.debug("boundary value row k=%d: %s", k, evaluation.value)
        yield row


def interior_solve(p, r, theta, prec) -> CertifiedEvaluation:
    """ u(re^{iθ}) for polynomial boundary data p.

    The spectrum is finite, so the series is summed in full and the only
    error is rounding.

    """

    r = to_rational(r)
    _check_radius(r)

    stream = CoefficientStream.from_trigpoly(p)
    value = _series(stream, p.degree(), r, pi_multiple(theta), prec)
    return CertifiedEvaluation(value, (("truncation", ZERO), ("rounding", value.radius)))


class EnergyPartialSums(object):
    """ N -> E_N = ½ Σ_{n<=N} n (a_n² + b_n²), summed cumulatively.

    Ball coefficients are refused unless `enclose` is set. Then every E_N
    is a Ball holding the partial energy of each choice of coefficients
    inside the balls.

    """

    def __init__(self, f, enclose=False):
        self.f = f
        self.enclose = enclose
        self.sums = [Ball(0) if enclose else ZERO]

    def _term(self, n, a, b):
        if self.enclose:
            return n * (Ball.coerce(a).square() + Ball.coerce(b).square()) / 2

        if isinstance(a, Ball) or isinstance(b, Ball):
            raise DomainError("energy partial sums need rational coefficients")
        return Fraction(n * (a * a + b * b), 2)

    def __call__(self, N):
        while len(self.sums) <= N:
            n = len(self.sums)
            self.sums.append(self.sums[-1] + self._term(n, self.f.a(n), self.f.b(n)))

        return self.sums[N]


def energy_lower_approximants(f) -> LeftComputableReal:
    """ E(f) presented from below; there is no modulus, E(f) may be infinite. """

    return LeftComputableReal(EnergyPartialSums(f))


def energy_partial_enclosures(f) -> EnergyPartialSums:
    """ N -> Ball around E_N, for streams whose coefficients are Balls.

    The lower edges never decrease, so they are lower bounds of E(f).

    """

    return EnergyPartialSums(f, enclose=True)


def divergence_index(approximants, threshold, N_max):
    """ The first N <= N_max with approximants(N) > threshold, or None.

    A crossing proves nothing about E(f) = ∞; it is a diagnostic.

    """

    threshold = to_rational(threshold)
    for N in range(0, N_max + 1):
        if approximants(N) > threshold:
            logger.warning("energy passed %s at N=%d", threshold, N)
            return N

    return None


def stabilization_index(f) -> int:
    """ The N after which E_N stays constant, for a finitely supported stream. """

    if f.support is None:
        raise DomainError("only finitely supported streams stabilize")

    for n in range(f.support, 0, -1):
        if not (is_zero(f.a(n)) and is_zero(f.b(n))):
            return n

    return 0


@dataclass(frozen=True)
class MinimumEnergy:
    value: Union[Fraction, Ball]
    quadrature: Optional[Ball] = None

    def agrees(self, tolerance) -> bool:
        """ True if the quadrature cross-check is within tolerance of the value. """

        if self.quadrature is None:
            return True
        value = Ball.coerce(self.value)
        gap = abs(self.quadrature.center - value.center)
        return gap <= self.quadrature.radius + value.radius + to_rational(tolerance)


def minimum_energy(p, cross_check=False, resolution=None) -> MinimumEnergy:
    """ inf of E(u) over admissible extensions of p.

    The minimum is attained by the harmonic extension and equals the
    Dirichlet energy of the boundary data, so no search is done. The
    quadrature of ∬ |∇u|² is only attached as a floating-point cross-check.
    For Ball coefficients the value is a Ball and the quadrature runs on
    the centres.

    """

    value = dirichlet_energy(p)
    quadrature = None
    if cross_check:
        centers = p.map(lambda c: c.center) if p.ball else p
        quadrature = dirichlet_integral_quadrature(centers, resolution)

    return MinimumEnergy(value, quadrature)


class RunningMinimum(object):
    def __init__(self, values):
        self.values = values
        self.minima = []

    def __call__(self, N):
        while len(self.minima) <= N:
            v = to_rational(self.values(len(self.minima)))
            self.minima.append(min(self.minima[-1], v) if self.minima else v)

        return self.minima[N]


def upper_envelope_sequence(values) -> RightComputableReal:
    """ x_N = min of values(n) over n <= N, a nonincreasing majorant. """

    return RightComputableReal(RunningMinimum(values))
