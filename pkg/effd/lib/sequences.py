""" Witness sequences stored as JSON lines.

The first line is a header object, {"kind": "left" | "right" | "variation"}
with an extra "V" bound for the variation kind. Every following non-blank
line holds one rational, "num/den" or a bare JSON integer, and line n+2 of
the file holds the term with index n.

A file is a finite prefix. Queries beyond it repeat the last term, so a
file describes an eventually constant sequence.

"""

import json
import logging

from effd.lib import jsonschema
from effd.lib.errors import ParseError
from effd.lib.formats import format_rational, parse_rational
from effd.lib.reals import LEFT, RIGHT, from_monotone, weak_from_variation
from effd.lib.schemas import sequence_header

logger = logging.getLogger(__name__)

VARIATION = "variation"


def parse_lines(lines):
    """ Parse an iterable of text lines into (header, list of terms). """

    header, terms = None, []
    for lineno, line in enumerate(lines, start=1):
        if not line.strip():
            continue

        try:
            doc = json.loads(line)
        except ValueError as e:
            raise ParseError("invalid JSON (%s)" % e, line=lineno)

        if header is None:
            try:
                jsonschema.validate(doc, sequence_header, "header")
            except jsonschema.ValidationError as e:
                raise ParseError(str(e), line=lineno)
            if doc["kind"] == VARIATION and "V" not in doc:
                raise ParseError("a variation sequence needs a V bound", lineno, "V")
            header = doc
            continue

        terms.append(parse_rational(doc, line=lineno))

    if header is None:
        raise ParseError("empty sequence file")
    if not terms:
        raise ParseError("sequence file has a header but no terms")

    return header, terms


def prefix_sequence(terms):
    last = len(terms) - 1
    return lambda n: terms[min(n, last)]


def build(header, terms):
    seq = prefix_sequence(terms)
    kind = header["kind"]
    if kind == VARIATION:
        V = parse_rational(header["V"], line=1, field="V")
        return weak_from_variation(seq, V)

    return from_monotone(seq, LEFT if kind == LEFT else RIGHT)


def check_prefix(witness, N):
    """ Query the first N+1 terms so a bad witness fails at load time. """

    for n in range(0, N + 1):
        witness(n)


def load(path):
    """ Read a witness file and return the checked witness and its terms. """

    try:
        with open(path, encoding="utf-8") as f:
            header, terms = parse_lines(f)
    except OSError as e:
        raise ParseError("cannot read %s: %s" % (path, e.strerror))

    witness = build(header, terms)
    check_prefix(witness, len(terms) - 1)
    logger.debug("loaded %d %s terms from %s", len(terms), header["kind"], path)
    return witness, terms


def dump(terms, kind, V=None):
    """ Return the JSON lines text for a finite prefix. """

    header = {"kind": kind}
    if V is not None:
        header["V"] = format_rational(V)

    lines = [json.dumps(header)]
    lines.extend(json.dumps(format_rational(t)) for t in terms)
    return "\n".join(lines) + "\n"
