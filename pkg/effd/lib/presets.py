""" Built-in inputs: coefficient streams and witness specs by name.

Stream presets:

    a_n=1/n^2[:N]     a_n = 1/n² for 1 <= n <= N (default 200), K1 = 1
    a_n=1/n[:N]       a_n = 1/n for 1 <= n <= N (default 1000), K1 = 1
    cos:n, sin:n      a single cosine or sine of frequency n
    phi_m:m           the energy witness packet φ_m
    random:seed[:N]   rational a_n, b_n in [-1, 1] for n <= N (default 100)

Witness presets:

    geometric         α_n = 1 - 2^(1-n)
    constant:c        α = (0, c, c, ...)
    delayed-step:i    α_n = 0 for n <= i, then 1/2
    single:c          one jump d_1 = c
    alternating       d_n = (-1)^(n+1) 2^-n

"""

from fractions import Fraction
import random

from effd.lib import jsonschema, sequences
from effd.lib.errors import DomainError, ParseError
from effd.lib.formats import parse_rational
from effd.lib.poisson import CoefficientStream
from effd.lib.reals import LeftComputableReal, WeaklyComputableReal
from effd.lib.schemas import sigma1_spec, weak_spec
from effd.lib.trigpoly import TrigPoly
from effd.lib.witnesses import SCHEDULES, Sigma1WitnessSpec, WeakWitnessSpec, phi_m

RANDOM_DENOMINATOR = 64


def _split(text):
    if "=" in text:
        # a_n=1/n^2:300 keeps its formula as the name
        name, _, arg = text.partition(":")
        return name, [arg] if arg else []

    name, *args = text.split(":")
    return name, args


def _int_arg(args, i, default=None, name="argument"):
    if len(args) <= i or args[i] == "":
        if default is None:
            raise ParseError("missing %s" % name, field="preset")
        return default
    try:
        value = int(args[i])
    except ValueError:
        raise ParseError("%s '%s' is not an integer" % (name, args[i]), field="preset")
    if value < 0:
        raise ParseError("%s must be nonnegative" % name, field="preset")
    return value


def _inverse_power(power, N):
    return TrigPoly(cos={n: Fraction(1, n**power) for n in range(1, N + 1)})


def _random_poly(seed, N):
    rng = random.Random(seed)

    def coefficient():
        d = rng.randint(1, RANDOM_DENOMINATOR)
        return Fraction(rng.randint(-d, d), d)

    a0 = coefficient()
    cos = {n: coefficient() for n in range(1, N + 1)}
    sin = {n: coefficient() for n in range(1, N + 1)}
    return TrigPoly(a0, cos, sin)


def poly_preset(text) -> TrigPoly:
    """ The trigonometric polynomial a stream preset names. """

    name, args = _split(text)
    try:
        if name == "a_n=1/n^2":
            return _inverse_power(2, _int_arg(args, 0, 200, "N"))
        if name == "a_n=1/n":
            return _inverse_power(1, _int_arg(args, 0, 1000, "N"))
        if name == "cos":
            return TrigPoly.cosine(_int_arg(args, 0, name="frequency"))
        if name == "sin":
            return TrigPoly.sine(_int_arg(args, 0, name="frequency"))
        if name == "phi_m":
            return phi_m(_int_arg(args, 0, name="m"))
        if name == "random":
            return _random_poly(_int_arg(args, 0, name="seed"), _int_arg(args, 1, 100, "N"))
    except DomainError as e:
        raise ParseError(e.message, field="preset")

    raise ParseError("unknown stream preset '%s'" % text, field="preset")


def stream_preset(text) -> CoefficientStream:
    """ A finitely supported stream; every preset has K1 = 1. """

    return CoefficientStream.from_trigpoly(poly_preset(text), label=text)


def _rational_arg(args, name):
    if not args or args[0] == "":
        raise ParseError("missing %s" % name, field="preset")
    return parse_rational(args[0], field="preset")


def _geometric(n):
    return 1 - Fraction(2) ** (1 - n)


def witness_preset(text):
    name, args = _split(text)

    if name == "geometric":
        return Sigma1WitnessSpec(_geometric, d_sup=Fraction(1, 2), label=text)
    if name == "constant":
        c = _rational_arg(args, "c")
        if c < 0:
            raise ParseError("constant must be nonnegative", field="preset")
        return Sigma1WitnessSpec([0, c], d_sup=c, label=text)
    if name == "delayed-step":
        index = _int_arg(args, 0, name="index")

        def step(n):
            return Fraction(0) if n <= index else Fraction(1, 2)

        return Sigma1WitnessSpec(step, d_sup=Fraction(1, 2), label=text)
    if name == "single":
        return WeakWitnessSpec([_rational_arg(args, "c")], label=text)
    if name == "alternating":
        return WeakWitnessSpec(
            lambda n: Fraction((-1) ** (n + 1), 1 << n), V=1, K4=1, label=text
        )

    raise ParseError("unknown witness preset '%s'" % text, field="preset")


def _validate(doc, schema):
    try:
        jsonschema.validate(doc, schema, "witness spec")
    except jsonschema.ValidationError as e:
        raise ParseError(str(e))


def sigma1_from_json(doc) -> Sigma1WitnessSpec:
    _validate(doc, sigma1_spec)
    m0 = doc.get("m0", 2)
    d_sup = doc.get("d_sup")
    if d_sup is not None:
        d_sup = parse_rational(d_sup, field="d_sup")

    if "alphas" in doc:
        alphas = [parse_rational(v, field="alphas") for v in doc["alphas"]]
        return Sigma1WitnessSpec(alphas, m0=m0, d_sup=d_sup)
    if "preset" in doc:
        spec = witness_preset(doc["preset"])
        if not isinstance(spec, Sigma1WitnessSpec):
            raise ParseError("'%s' is not an energy witness preset" % doc["preset"])
        spec.m0 = m0
        return spec

    raise ParseError("witness spec needs 'alphas' or 'preset'")


def weak_from_json(doc, cap=None) -> WeakWitnessSpec:
    _validate(doc, weak_spec)
    schedule = SCHEDULES[doc.get("schedule", "double-exponential")]
    schedule = schedule(cap) if cap is not None else schedule()

    if "deltas" in doc:
        deltas = [parse_rational(v, field="deltas") for v in doc["deltas"]]
        V = doc.get("V")
        if V is not None:
            V = parse_rational(V, field="V")
        return WeakWitnessSpec(deltas, V=V, schedule=schedule)
    if "preset" in doc:
        spec = witness_preset(doc["preset"])
        if not isinstance(spec, WeakWitnessSpec):
            raise ParseError("'%s' is not a boundary-value witness preset" % doc["preset"])
        spec.schedule = schedule
        return spec

    raise ParseError("witness spec needs 'deltas' or 'preset'")


def sigma1_from_sequence(path, m0=2) -> Sigma1WitnessSpec:
    """ An energy witness from a left sequence file x_0 <= x_1 <= ...

    The file is shifted behind a leading zero, α = (0, x_0, x_1, ...), so
    the witness energy converges to lim x_n. A negative x_0 breaks the
    monotonicity of α and is rejected.

    """

    witness, terms = sequences.load(path)
    if not isinstance(witness, LeftComputableReal):
        raise ParseError("an energy witness needs a left sequence file", field="kind")

    return Sigma1WitnessSpec([Fraction(0)] + terms, m0=m0, label=path)


def weak_from_sequence(path, cap=None) -> WeakWitnessSpec:
    """ A boundary-value witness from a variation sequence file.

    The jumps are d_n = x_n - x_{n-1} and the header V bounds their total.

    """

    witness, terms = sequences.load(path)
    if not isinstance(witness, WeaklyComputableReal):
        raise ParseError("a boundary-value witness needs a variation sequence file", field="kind")
    if len(terms) < 2:
        raise ParseError("a variation sequence file needs at least two terms")

    schedule = SCHEDULES["double-exponential"]
    schedule = schedule(cap) if cap is not None else schedule()
    deltas = [terms[n] - terms[n - 1] for n in range(1, len(terms))]
    return WeakWitnessSpec(deltas, V=witness.V, schedule=schedule, label=path)
