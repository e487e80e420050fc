""" Explicit boundary data realizing prescribed degrees of non-computability.

Two constructions live here.

The energy witness packs a left-computable α = lim α_n into

    f_K = Σ_{m=m0}^{K} √d_j φ_m / ‖φ_m‖,   d_j = α_{j+1} - α_j,  j = m - m0 + 1,

where φ_m = cos(m⁴θ) Σ_{ℓ=1}^{10} cos(ℓθ)/ℓ. The spectra of different φ_m
are disjoint from m0 = 2 on, so E(f_K) telescopes to α_{K-m0+2}.

The boundary-value witness packs a sequence d_n of finite total variation
into Σ d_n φ_{M(n)} / C(M(n)) with φ_M = Σ_{n=2}^{M} cos(nθ)/(n ln n) and
C(M) = φ_M(0), so the value at θ = 0 is Σ d_n.

"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
import logging
import math
from typing import Optional

from django.conf import settings

from effd.lib.ball import Ball, to_rational
from effd.lib.elementary import ceil_ball, ln_ball, sqrt_ball
from effd.lib.errors import DomainError, InvalidWitness, ScheduleOverflow
from effd.lib.reals import LeftComputableReal, WeaklyComputableReal
from effd.lib.trigpoly import TrigPoly, evaluate, linear_combination, multiply_by_cos

logger = logging.getLogger(__name__)

PACKET_WIDTH = 10

# Terms scanned when a bound has to be read off an infinite sequence
SUP_WINDOW = 1000

# M(k) = 2^(k+1) stays small enough to build for every k up to this cap
DOUBLING_CAP = 16


def harmonic(N) -> Fraction:
    return sum((Fraction(1, n) for n in range(1, N + 1)), Fraction(0))


C_PHI = harmonic(PACKET_WIDTH)
C0 = sum((Fraction(1, n * n) for n in range(1, PACKET_WIDTH + 1)), Fraction(0)) / 4


def phi_m(m) -> TrigPoly:
    """ cos(m⁴θ) Σ_{ℓ=1}^{10} cos(ℓθ)/ℓ, expanded.

    a_n = 1 / (2|n - m⁴|) for 0 < |n - m⁴| <= 10. For m = 1 the lower half
    of the packet would fold over zero frequency, so m >= 2 is required.

    """

    if not isinstance(m, int) or m < 2:
        raise DomainError("phi_m needs m >= 2, got %r" % (m,))

    base = TrigPoly(cos={n: Fraction(1, n) for n in range(1, PACKET_WIDTH + 1)})
    return multiply_by_cos(base, m**4)


def _one_based(values, pad=None):
    """ Turn a list or a callable into n -> value for n >= 1.

    Past its end a list continues with `pad`, or with its last element
    when no pad is given.

    """

    if callable(values):
        return values, None

    values = [to_rational(v) for v in values]
    if not values:
        raise DomainError("empty sequence")
    last = len(values)

    def fn(n):
        if n > last:
            return values[-1] if pad is None else pad
        return values[n - 1]

    return fn, last


class Sigma1WitnessSpec(object):
    """ A nondecreasing rational sequence α_1 = 0 <= α_2 <= ... and a start index.

    `d_sup`, when given, is a rational upper bound of every d_j.

    """

    def __init__(self, alphas, m0=2, d_sup=None, label=""):
        if not isinstance(m0, int) or m0 < 2:
            raise DomainError("start index m0 must be >= 2, got %r" % (m0,))

        fn, self.length = _one_based(alphas)
        self.sequence = LeftComputableReal(lambda i: fn(i + 1))
        self.m0 = m0
        self.d_sup = None if d_sup is None else to_rational(d_sup)
        self.label = label

        if self.alpha(1) != 0:
            raise InvalidWitness("alpha_1 must be 0, got %s" % self.alpha(1))

    def alpha(self, n):
        return self.sequence(n - 1)

    def d(self, j):
        return self.alpha(j + 1) - self.alpha(j)

    def d_sup_bound(self):
        """ Return (bound on sup d_j, whether the bound is certified). """

        if self.d_sup is not None:
            return self.d_sup, True
        if self.length is not None:
            return max([self.d(j) for j in range(1, self.length)] + [Fraction(0)]), True

        logger.warning("sup d_j read off the first %d terms only", SUP_WINDOW)
        return max(self.d(j) for j in range(1, SUP_WINDOW + 1)), False


def telescoped_target(spec, K) -> Fraction:
    """ Σ of the d_j packed into f_K, which equals α_{K-m0+2}. """

    return sum((spec.d(j) for j in range(1, K - spec.m0 + 2)), Fraction(0))


def sigma1_witness(spec, K, prec=None) -> TrigPoly:
    if prec is None:
        prec = settings.PREC_DEFAULT
    if K < spec.m0:
        raise DomainError("K = %d is below the start index %d" % (K, spec.m0))

    packets, weights = [], []
    for m in range(spec.m0, K + 1):
        d = spec.d(m - spec.m0 + 1)
        if d == 0:
            continue

        # √d_j / ‖φ_m‖ with ‖φ_m‖ = √C0 · m²
        scale = sqrt_ball(d / C0, prec + 4) / (m * m)
        packets.append(phi_m(m))
        weights.append(scale)

    logger.info("energy witness K=%d: %d nonzero packets", K, len(packets))
    return linear_combination(packets, weights)


@lru_cache(maxsize=32)
def weak_phi_M(M, prec) -> TrigPoly:
    """ Σ_{n=2}^{M} cos(nθ) / (n ln n), each coefficient within 2**-prec. """

    if not isinstance(M, int) or M < 2:
        raise DomainError("weak_phi_M needs M >= 2, got %r" % (M,))

    cos = {}
    for n in range(2, M + 1):
        c = (n * ln_ball(n, prec + 4)).reciprocal()
        cos[n] = c.rounded(prec + 2)

    logger.debug("built weak_phi_M(%d) at prec %d", M, prec)
    return TrigPoly(cos=cos)


def phi_M_at_zero(M, prec) -> Ball:
    """ C(M) = φ_M(0) = Σ_{n=2}^{M} 1 / (n ln n). """

    return evaluate(weak_phi_M(M, prec), 0, prec)


def c_lower_bound(M, prec=40) -> Fraction:
    """ A rational upper bound of log(log(M+1) / log 2). """

    ratio = ln_ball(M + 1, prec) / ln_ball(2, prec)
    return ln_ball(ratio.upper, prec).upper


def check_c_lower_bound(M, prec=40) -> bool:
    """ Certify log(log(M+1)/log 2) <= C(M). """

    return c_lower_bound(M, prec) <= phi_M_at_zero(M, prec).lower


class DoubleExponentialSchedule(object):
    """ M(k) = 2^(2^(k²)). M(3) already has 155 digits. """

    name = "double-exponential"

    def __init__(self, cap=None):
        self.cap = settings.WEAK_SCHEDULE_CAP if cap is None else cap

    def __call__(self, k):
        if k < 1:
            raise DomainError("schedule index must be >= 1, got %d" % k)
        if self.cap is not None and k > self.cap:
            raise ScheduleOverflow(
                "M(%d) = 2^(2^%d) is beyond the schedule cap %d" % (k, k * k, self.cap)
            )
        return 1 << (1 << (k * k))

    def log_log_ratio(self, k, prec):
        """ log(log M(k) / log 2) = k² ln 2, without building M(k). """

        return k * k * ln_ball(2, prec)


class DoublingSchedule(object):
    """ M(k) = 2^(k+1). """

    name = "doubling"

    def __init__(self, cap=DOUBLING_CAP):
        self.cap = cap

    def __call__(self, k):
        if k < 1:
            raise DomainError("schedule index must be >= 1, got %d" % k)
        if self.cap is not None and k > self.cap:
            raise ScheduleOverflow("M(%d) is beyond the schedule cap %d" % (k, self.cap))
        return 1 << (k + 1)

    def log_log_ratio(self, k, prec):
        return ln_ball(k + 1, prec)


SCHEDULES = {"double-exponential": DoubleExponentialSchedule, "doubling": DoublingSchedule}


class PartialSums(object):
    """ i -> Σ_{n<=i} d_n for a one-based d. """

    def __init__(self, d):
        self.d = d
        self.sums = [Fraction(0)]

    def __call__(self, i):
        while len(self.sums) <= i:
            self.sums.append(self.sums[-1] + to_rational(self.d(len(self.sums))))
        return self.sums[i]


class WeakWitnessSpec(object):
    """ Jumps d_n with Σ |d_n| <= V, placed on the schedule M(n).

    For a finite list V defaults to its exact total variation and K4 to
    the exact ceiling of max |d_n|.

    """

    def __init__(self, deltas, V=None, schedule=None, K4=None, label=""):
        fn, self.length = _one_based(deltas, pad=Fraction(0))
        if self.length is not None and V is None:
            V = sum(abs(fn(n)) for n in range(1, self.length + 1))

        self.schedule = schedule or DoubleExponentialSchedule()
        self.alpha = WeaklyComputableReal(PartialSums(fn), V=V)
        self.V = self.alpha.V
        self.K4_given = K4
        self.label = label

    def d(self, n):
        return self.alpha.delta(n - 1)

    def K4_bound(self):
        """ Return (K4, whether it is certified). """

        if self.K4_given is not None:
            return self.K4_given, True
        if self.length is not None:
            top = max(abs(self.d(n)) for n in range(1, self.length + 1))
            return math.ceil(top), True

        for n in range(1, SUP_WINDOW + 1):
            self.d(n)
        logger.warning("K4 read off the first %d jumps only", SUP_WINDOW)
        return self.alpha.K4, False


def _packet_prec(M, prec):
    # φ_M has M - 1 coefficients, each rounding error is summed at θ = 0
    return prec + M.bit_length() + 4


def weak_witness(spec, K, prec=None) -> TrigPoly:
    if prec is None:
        prec = settings.PREC_DEFAULT
    if K < 1:
        raise DomainError("K must be >= 1, got %d" % K)

    packets, weights, widest = [], [], 0
    for n in range(1, K + 1):
        # Every schedule term up to K must exist, even under a zero jump
        M = spec.schedule(n)
        d = spec.d(n)
        if d == 0:
            continue

        wp = _packet_prec(M, prec)
        P = weak_phi_M(M, wp)
        packets.append(P)
        weights.append(Ball(d) / evaluate(P, 0, wp))
        widest = max(widest, M)

    result = linear_combination(packets, weights)
    logger.info("boundary-value witness K=%d: %d nonzero packets", K, len(packets))
    return result.rounded(_packet_prec(widest, prec))


@dataclass(frozen=True)
class TailBound:
    value: Fraction
    form: str
    certified: bool = True


def k3_enclosure(M) -> Ball:
    """ 1/(2 (ln 2)²) + 1/ln 2, the H^{1/2} bound of every φ_M. """

    L = ln_ball(2, M + 8)
    return (2 * L.square()).reciprocal() + L.reciprocal()


def _k5(K3, K4):
    return ceil_ball(lambda M: K3 * K4 / ln_ball(2, M))


def weak_tail_bound(spec, K, prec=40) -> TailBound:
    """ Upper bound of ‖f_* - f_K‖ in H^{1/2} for the boundary-value witness.

    Generic form: Σ_{n>K} |d_n| K3 / log(log M(n) / log 2). Under the
    double-exponential schedule this is at most K5 / K.

    """

    K3 = ceil_ball(k3_enclosure)
    if isinstance(spec.schedule, DoubleExponentialSchedule):
        K4, certified = spec.K4_bound()
        return TailBound(Fraction(_k5(K3, K4), K), "K5/K", certified)

    if spec.length is not None:
        total = Fraction(0)
        for n in range(K + 1, spec.length + 1):
            d = spec.d(n)
            if d != 0:
                total += abs(d) * K3 / spec.schedule.log_log_ratio(n, prec).lower
        return TailBound(total, "generic")

    if spec.V is None:
        raise DomainError("no tail bound without a variation bound V")

    # log(log M(n)/log 2) grows with n, so the first omitted term is the worst
    rest = spec.V - spec.alpha.partial_variation(K)
    denominator = spec.schedule.log_log_ratio(K + 1, prec).lower
    return TailBound(rest * K3 / denominator, "generic")


@dataclass(frozen=True)
class WitnessConstants:
    C0: Fraction
    C_phi: Fraction
    K3: int
    K3_enclosure: Ball
    C1: Optional[Fraction] = None
    C1_certified: bool = True
    K4: Optional[int] = None
    K4_certified: bool = True
    K5: Optional[int] = None


def constants(sigma1=None, weak=None, prec=40) -> WitnessConstants:
    """ C0, C_φ exactly, K3 certified, and the spec dependent C1, K4, K5. """

    K3 = ceil_ball(k3_enclosure)
    values = {"C0": C0, "C_phi": C_PHI, "K3": K3, "K3_enclosure": k3_enclosure(prec)}

    if sigma1 is not None:
        d_sup, certified = sigma1.d_sup_bound()
        # C1 = C_φ · sup √d_m / √C0, rounded up
        values["C1"] = C_PHI * sqrt_ball(d_sup / C0, prec).upper
        values["C1_certified"] = certified

    if weak is not None:
        K4, certified = weak.K4_bound()
        values["K4"] = K4
        values["K4_certified"] = certified
        values["K5"] = _k5(K3, K4)

    return WitnessConstants(**values)


def sigma1_tail_bound(spec, K, prec=40) -> TailBound:
    """ ‖f_* - f_K‖_∞ <= C1 / K, from Σ_{m>K} 1/m² < 1/K. """

    c = constants(sigma1=spec, prec=prec)
    return TailBound(c.C1 / K, "C1/K", c.C1_certified)
