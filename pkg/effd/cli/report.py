""" Shared plumbing for the report commands.

Every command turns its input into a list of report rows (dicts). Rows are
printed as JSON lines, or as CSV with nested keys flattened to dotted
column names. Library errors become a CommandError carrying the exit code
of the error class.

"""

import csv
from dataclasses import dataclass
import io
import json
import logging
import time

from django.conf import settings
from django.core.management.base import BaseCommand, CommandError
from statsd.defaults.env import statsd

from effd.lib.errors import EffdError, ParseError
from effd.lib.formats import parse_rational, to_jsonable
from effd.lib.presets import poly_preset
from effd.lib.trigpoly import TrigPoly

logger = logging.getLogger(__name__)

FORMATS = ("json", "csv")
# Witness inputs with this suffix are sequence files, everything else is JSON
SEQUENCE_SUFFIX = ".jsonl"


@dataclass(frozen=True)
class RunConfig:
    prec: int
    schedule_cap: int
    format: str
    out: str = None

    @classmethod
    def from_options(cls, options):
        prec = options.get("prec")
        if prec is None:
            prec = settings.PREC_DEFAULT
        cap = options.get("schedule_cap")
        if cap is None:
            cap = settings.SCHEDULE_CAP
        fmt = options.get("format") or settings.OUTPUT_FORMAT

        if prec < 1:
            raise ParseError("precision must be at least 1", field="--prec")
        if cap is not None and cap < 1:
            raise ParseError("schedule cap must be at least 1", field="--schedule-cap")
        if fmt not in FORMATS:
            raise ParseError("unknown output format '%s'" % fmt, field="--format")

        return cls(prec=prec, schedule_cap=cap, format=fmt, out=options.get("out"))


def rational_arg(value, flag):
    return parse_rational(value, field=flag)


def read_json(path):
    try:
        with open(path, encoding="utf-8") as f:
            return json.load(f)
    except OSError as e:
        raise ParseError("cannot read %s: %s" % (path, e.strerror))
    except json.JSONDecodeError as e:
        raise ParseError("invalid JSON in %s (%s)" % (path, e.msg), line=e.lineno)


def load_poly(path=None, preset=None) -> TrigPoly:
    """ A polynomial from a file or, failing that, from a stream preset. """

    if path:
        return TrigPoly.from_json(read_json(path))
    if preset:
        return poly_preset(preset)
    raise ParseError("give a polynomial file or --preset")


def _flatten(row, prefix=""):
    flat = {}
    for key, value in row.items():
        name = prefix + str(key)
        if isinstance(value, dict):
            flat.update(_flatten(value, name + "."))
        elif isinstance(value, list):
            flat[name] = json.dumps(value)
        else:
            flat[name] = value
    return flat


def render(rows, fmt) -> str:
    rows = [to_jsonable(row) for row in rows]
    if fmt == "json":
        return "".join(json.dumps(row) + "\n" for row in rows)

    flat = [_flatten(row) for row in rows]
    columns = []
    for row in flat:
        for key in row:
            if key not in columns:
                columns.append(key)

    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=columns, restval="", lineterminator="\n")
    writer.writeheader()
    writer.writerows(flat)
    return buf.getvalue()


class ReportCommand(BaseCommand):
    """ A management command that prints report rows.

    Subclasses implement add_command_arguments() and run(config, **options),
    which returns the list of rows.

    """

    name = "report"

    def add_arguments(self, parser):
        parser.add_argument(
            "--prec",
            type=int,
            default=None,
            help="Precision exponent M, enclosures get radius <= 2^-M",
        )
        parser.add_argument("--format", choices=FORMATS, default=None)
        parser.add_argument(
            "--schedule-cap",
            type=int,
            dest="schedule_cap",
            default=None,
            help="Largest schedule index k that may be evaluated",
        )
        parser.add_argument("--out", default=None, help="Also write the output here")
        self.add_command_arguments(parser)

    def add_command_arguments(self, parser):
        pass

    def run(self, config, **options):
        raise NotImplementedError

    def out_document(self, text):
        """ What --out receives. The rendered report, unless overridden. """

        return text

    def handle(self, *args, **options):
        start = time.time()
        try:
            config = RunConfig.from_options(options)
            rows = self.run(config, **options)
        except EffdError as e:
            logger.debug("%s failed: %s", self.name, e.message)
            raise CommandError(e.message, returncode=e.exit_code)

        text = render(rows, config.format)
        if config.out:
            with open(config.out, "w", encoding="utf-8") as f:
                f.write(self.out_document(text))

        statsd.timing("effd.%s.runTime" % self.name, int((time.time() - start) * 1000))
        return text
