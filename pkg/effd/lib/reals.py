""" Computable and semi-computable reals, presented by their sequences.

Membership in a class of the arithmetical hierarchy is a property of the
presentation, not something this module decides: a LeftComputableReal is a
real *given as* the limit of a nondecreasing sequence, and so on. Only a
ComputableReal carries a modulus of convergence, and only a ComputableReal
can be turned into a Ball of prescribed radius.

All sequences are pure functions of their index. Values are memoized, which
also lets the wrappers check monotonicity against earlier queries.

"""

from bisect import bisect_left
from fractions import Fraction
import logging

from django.conf import settings

from effd.lib.ball import Ball, pow2, to_rational
from effd.lib.errors import DomainError, InvalidWitness, SearchTimeout

logger = logging.getLogger(__name__)

LEFT = "left"
RIGHT = "right"


class Sequence(object):
    """ A memoized index -> Rational function. """

    def __init__(self, fn):
        self.fn = fn
        self.cache = {}

    def __call__(self, n):
        if n < 0:
            raise DomainError("negative sequence index %d" % n)
        if n not in self.cache:
            self.cache[n] = to_rational(self.fn(n))
        return self.cache[n]

    def prefix(self, N):
        return [self(n) for n in range(0, N + 1)]


class Modulus(object):
    """ A total, nondecreasing map from precision exponent M to index N0. """

    def __init__(self, fn):
        self.fn = fn
        self.cache = {}

    def __call__(self, M):
        M = max(M, 0)
        if M in self.cache:
            return self.cache[M]

        n = self.fn(M)
        if not isinstance(n, int) or n < 0:
            raise InvalidWitness("modulus(%d) = %r is not a natural number" % (M, n))

        self.cache[M] = n
        for other, value in self.cache.items():
            if (other < M and value > n) or (other > M and value < n):
                raise InvalidWitness(
                    "modulus is not monotone: e(%d) = %d, e(%d) = %d"
                    % (other, value, M, n)
                )

        return n


class ComputableReal(object):
    """ A rational sequence together with its modulus of convergence.

    For every M and every n >= modulus(M): |approximant(n) - x| < 2**-M.

    """

    def __init__(self, approximant, modulus):
        if not isinstance(approximant, Sequence):
            approximant = Sequence(approximant)
        if not isinstance(modulus, Modulus):
            modulus = Modulus(modulus)

        self.approximant = approximant
        self.modulus = modulus

    @classmethod
    def constant(cls, x):
        x = to_rational(x)
        return cls(lambda n: x, lambda M: 0)

    @classmethod
    def from_enclosure(cls, enclose):
        """ Build a computable real from enclose(M) -> Ball of radius <= 2**-(M+1). """

        def approximant(n):
            ball = enclose(n + 1)
            if ball.radius > pow2(n + 1):
                raise InvalidWitness("enclosure at %d is too wide: %s" % (n + 1, ball))
            return ball.center

        return cls(approximant, lambda M: M)

    def approximate(self, M):
        """ Return a Ball of radius 2**-M that contains the limit. """

        return Ball(self.approximant(self.modulus(M)), pow2(M))

    def magnitude_bits(self):
        """ Smallest b with |x_n| <= 2**b for every n >= modulus(0). """

        x0 = abs(self.approximant(self.modulus(0)))
        return (int(x0) + 2).bit_length()

    def __add__(self, other):
        return arith(self, other, "add")

    def __sub__(self, other):
        return arith(self, other, "sub")

    def __mul__(self, other):
        return arith(self, other, "mul")

    def __neg__(self):
        return ComputableReal(lambda n: -self.approximant(n), self.modulus)


def approximate(x, M):
    return x.approximate(M)


def _sum(x, y, sign):
    def modulus(M):
        return max(x.modulus(M + 1), y.modulus(M + 1))

    return ComputableReal(lambda n: x.approximant(n) + sign * y.approximant(n), modulus)


def _product(x, y):
    a, b = x.magnitude_bits(), y.magnitude_bits()
    floor = max(x.modulus(0), y.modulus(0))

    # |x_n y_n - x y| <= |x_n| |y_n - y| + |y| |x_n - x|
    #                 <= 2**a 2**-(M+1+a) + 2**b 2**-(M+1+b)
    def modulus(M):
        return max(floor, x.modulus(M + 1 + b), y.modulus(M + 1 + a))

    return ComputableReal(lambda n: x.approximant(n) * y.approximant(n), modulus)


def _reciprocal(y, L):
    """ 1/y given the witness |y| >= 2**-L. """

    start = y.modulus(L + 1)
    y0 = y.approximant(start)
    # |y_start - y| < 2**-(L+1), so |y| >= 2**-L forces |y_start| > 2**-(L+1)
    if abs(y0) <= pow2(L + 1):
        raise InvalidWitness("|y| >= 2^-%d contradicted by y_%d = %s" % (L, start, y0))

    # For n >= start, |y_n| >= 2**-(L+1) and |1/y_n - 1/y| <= |y_n - y| 2**(2L+1)
    def modulus(M):
        return max(start, y.modulus(M + 2 * L + 1))

    return ComputableReal(lambda n: 1 / y.approximant(max(n, start)), modulus)


def arith(x, y, op, lower_bound_exp=None):
    """ Combine two computable reals; the result carries a composed modulus.

    Division needs a witness L with |y| >= 2**-L, passed as lower_bound_exp:
    the sign of a computable real cannot be decided, so the caller has to
    know that y is away from zero.

    """

    if op == "add":
        return _sum(x, y, 1)
    if op == "sub":
        return _sum(x, y, -1)
    if op == "mul":
        return _product(x, y)
    if op == "div":
        if lower_bound_exp is None:
            raise DomainError("division needs a witness |y| >= 2^-L")
        return _product(x, _reciprocal(y, lower_bound_exp))

    raise DomainError("unknown operation '%s'" % op)


class MonotoneSequence(object):
    """ A sequence checked for monotonicity on every query.

    Queried values are kept sorted by index; a new value is compared with
    its nearest queried neighbours on both sides.

    """

    def __init__(self, seq, direction):
        if direction not in (LEFT, RIGHT):
            raise DomainError("direction must be 'left' or 'right'")

        self.seq = seq if isinstance(seq, Sequence) else Sequence(seq)
        self.direction = direction
        self.indices = []

    def _in_order(self, a, b):
        return a <= b if self.direction == LEFT else a >= b

    def __call__(self, n):
        value = self.seq(n)
        pos = bisect_left(self.indices, n)
        if pos < len(self.indices) and self.indices[pos] == n:
            return value

        if pos > 0:
            prev = self.indices[pos - 1]
            if not self._in_order(self.seq(prev), value):
                raise InvalidWitness(
                    "%s sequence not monotone: s_%d = %s, s_%d = %s"
                    % (self.direction, prev, self.seq(prev), n, value)
                )
        if pos < len(self.indices):
            nxt = self.indices[pos]
            if not self._in_order(value, self.seq(nxt)):
                raise InvalidWitness(
                    "%s sequence not monotone: s_%d = %s, s_%d = %s"
                    % (self.direction, n, value, nxt, self.seq(nxt))
                )

        self.indices.insert(pos, n)
        return value

    def prefix(self, N):
        return [self(n) for n in range(0, N + 1)]


class LeftComputableReal(MonotoneSequence):
    """ x = lim s_n with s_n nondecreasing; every term is a lower bound. """

    def __init__(self, seq):
        super().__init__(seq, LEFT)

    def term(self, n):
        return self(n)


class RightComputableReal(MonotoneSequence):
    """ x = lim s_n with s_n nonincreasing; every term is an upper bound. """

    def __init__(self, seq):
        super().__init__(seq, RIGHT)

    def term(self, n):
        return self(n)


def from_monotone(seq, direction):
    if direction == LEFT:
        return LeftComputableReal(seq)
    if direction == RIGHT:
        return RightComputableReal(seq)
    raise DomainError("direction must be 'left' or 'right'")


class WeaklyComputableReal(object):
    """ x = lim alpha_n with total variation bounded by V.

    The pair form x = a - b (a, b left-computable) is represented by the
    sequence a_n - b_n, which carries no certified variation bound.

    """

    def __init__(self, seq, V=None, pair=None):
        self.seq = seq if isinstance(seq, Sequence) else Sequence(seq)
        self.V = None if V is None else to_rational(V)
        self.pair = pair
        # variation[n] = sum_{i < n} |alpha_{i+1} - alpha_i|
        self.variation = [Fraction(0)]
        self.max_delta = Fraction(0)

    def _extend(self, n):
        while len(self.variation) <= n:
            i = len(self.variation) - 1
            d = self.seq(i + 1) - self.seq(i)
            self.max_delta = max(self.max_delta, abs(d))
            self.variation.append(self.variation[-1] + abs(d))
            if self.V is not None and self.variation[-1] > self.V:
                raise InvalidWitness(
                    "variation %s up to index %d exceeds V = %s"
                    % (self.variation[-1], i + 1, self.V)
                )

    def __call__(self, n):
        self._extend(n)
        return self.seq(n)

    term = __call__

    def delta(self, n):
        """ d_n = alpha_{n+1} - alpha_n. """

        self._extend(n + 1)
        return self.seq(n + 1) - self.seq(n)

    def partial_variation(self, N):
        self._extend(N)
        return self.variation[N]

    @property
    def K4(self):
        """ Smallest natural >= max |d_n| over the queried prefix. """

        return -((-self.max_delta.numerator) // self.max_delta.denominator)


def weak_from_variation(seq, V):
    return WeaklyComputableReal(seq, V=V)


def weak_from_difference(a, b):
    return WeaklyComputableReal(lambda n: a(n) - b(n), pair=(a, b))


class RecursivelyApproximableReal(object):
    """ x = lim x_k for a computable sequence of computable reals.

    No modulus: the convergence of x_k is not assumed to be effective, so
    this type never produces an enclosure of x itself, only of each x_k.

    """

    def __init__(self, terms):
        self.terms = terms
        self.cache = {}

    def term(self, k) -> ComputableReal:
        if k not in self.cache:
            self.cache[k] = self.terms(k)
        return self.cache[k]

    def ball(self, k, M):
        return self.term(k).approximate(M)

    def lower_envelope(self, N, window, M):
        """ inf of x_k over N <= k < N + window, as a rational lower bound. """

        return min(self.ball(k, M).lower for k in range(N, N + window))

    def upper_envelope(self, N, window, M):
        """ sup of x_k over N <= k < N + window, as a rational upper bound. """

        return max(self.ball(k, M).upper for k in range(N, N + window))


def delta1_from_two_sided(l, r, budget=None):
    """ A computable real from a left and a right presentation of it.

    The modulus searches for the first n with r_n - l_n < 2**-M. The search
    always terminates when both sequences really converge to the same real,
    but there is no a-priori bound on its length; past `budget` steps it
    raises SearchTimeout.

    """

    if budget is None:
        budget = settings.SEARCH_BUDGET

    state = {"n": 0}

    def width(n):
        lo, hi = l(n), r(n)
        if lo > hi:
            raise InvalidWitness("left and right sequences cross: l_%d > r_%d" % (n, n))
        return hi - lo

    def modulus(M):
        # Moduli are monotone, so each search resumes where the last one stopped
        n, steps = state["n"], 0
        eps = pow2(M)
        while width(n) >= eps:
            n += 1
            steps += 1
            if budget is not None and steps > budget:
                raise SearchTimeout(
                    "no n with r_n - l_n < 2^-%d within %d steps" % (M, budget), steps
                )

        state["n"] = n
        logger.debug("two-sided modulus e(%d) = %d", M, n)
        return n

    return ComputableReal(lambda n: (l(n) + r(n)) / 2, modulus)


def limit_if_modulus(seq, modulus, spot_checks=3):
    """ Diagonalize a sequence of computable reals with a given modulus.

    `modulus(N)` must guarantee |x_k - x| <= 2**-N for all k >= modulus(N).
    That cannot be verified; a few later terms are spot-checked against it
    and a violation raises InvalidWitness.

    """

    modulus = modulus if isinstance(modulus, Modulus) else Modulus(modulus)
    terms = {}

    def term(k):
        if k not in terms:
            terms[k] = seq(k)
        return terms[k]

    def approximant(n):
        k = modulus(n + 1)
        center = term(k).approximate(n + 2).center

        for j in range(1, spot_checks + 1):
            other = term(k + j).approximate(n + 2).center
            # both within 2**-(n+1) of x, plus 2**-(n+2) rounding each
            if abs(other - center) > pow2(n) + pow2(n + 1):
                raise InvalidWitness(
                    "tail modulus violated at N=%d: x_%d and x_%d differ by %s"
                    % (n + 1, k, k + j, abs(other - center))
                )

        return center

    # |approximant(n) - x| < 2**-(n+2) + 2**-(n+1) < 2**-n
    return ComputableReal(approximant, lambda M: M)
