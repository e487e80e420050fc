from fractions import Fraction
import json

from effd.cli.report import SEQUENCE_SUFFIX, ReportCommand, read_json
from effd.lib.ball import Ball
from effd.lib.errors import ParseError
from effd.lib.presets import (
    sigma1_from_json,
    sigma1_from_sequence,
    weak_from_json,
    weak_from_sequence,
)
from effd.lib.trigpoly import evaluate, h12_norm_sq
from effd.lib.witnesses import (
    sigma1_tail_bound,
    sigma1_witness,
    telescoped_target,
    weak_tail_bound,
    weak_witness,
)


class Command(ReportCommand):
    help = "Build an energy (sigma1) or boundary-value (weak) witness polynomial."
    name = "witness"

    def add_command_arguments(self, parser):
        parser.add_argument("kind", choices=("sigma1", "weak"))
        parser.add_argument("spec", nargs="?", help="Witness spec (JSON) or sequence file (.jsonl)")
        parser.add_argument("--preset", help="Witness preset instead of a file")
        parser.add_argument("--K", type=int, dest="K", default=10)

    def out_document(self, text):
        return json.dumps(self.poly.to_json(), indent=2) + "\n"

    def _spec_doc(self, spec, preset):
        if spec:
            return read_json(spec)
        if preset:
            return {"preset": preset}
        raise ParseError("give a witness spec file or --preset")

    def run(self, config, kind=None, spec=None, preset=None, K=10, **options):
        # Only an explicit --schedule-cap overrides WEAK_SCHEDULE_CAP here
        cap = options.get("schedule_cap")
        if spec and spec.endswith(SEQUENCE_SUFFIX):
            if kind == "sigma1":
                return [self.run_sigma1(sigma1_from_sequence(spec), K, config.prec)]
            return [self.run_weak(weak_from_sequence(spec, cap), K, config.prec)]

        doc = self._spec_doc(spec, preset)
        if kind == "sigma1":
            return [self.run_sigma1(sigma1_from_json(doc), K, config.prec)]
        return [self.run_weak(weak_from_json(doc, cap), K, config.prec)]

    def run_sigma1(self, spec, K, prec):
        self.poly = sigma1_witness(spec, K, prec)
        norm = Ball.coerce(h12_norm_sq(self.poly))
        target = telescoped_target(spec, K)
        tail = sigma1_tail_bound(spec, K)

        return {
            "kind": "sigma1",
            "K": K,
            "m0": spec.m0,
            "degree": self.poly.degree(),
            "h12_norm_sq": norm,
            "target": target,
            "telescoping_ok": norm.contains(target),
            "tail_bound": tail.value,
            "tail_form": tail.form,
            "tail_certified": tail.certified,
        }

    def run_weak(self, spec, K, prec):
        self.poly = weak_witness(spec, K, prec)
        value = evaluate(self.poly, 0, prec)
        target = sum((spec.d(n) for n in range(1, K + 1)), Fraction(0))
        tail = weak_tail_bound(spec, K)

        return {
            "kind": "weak",
            "K": K,
            "schedule": spec.schedule.name,
            "degree": self.poly.degree(),
            "value_at_zero": value,
            "target": target,
            "normalization_ok": value.contains(target),
            "h12_norm_sq": Ball.coerce(h12_norm_sq(self.poly)),
            "tail_bound": tail.value,
            "tail_form": tail.form,
            "tail_certified": tail.certified,
        }
