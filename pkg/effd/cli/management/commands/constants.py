from effd.cli.report import ReportCommand
from effd.lib.presets import witness_preset
from effd.lib.witnesses import (
    Sigma1WitnessSpec,
    c_lower_bound,
    constants,
    phi_M_at_zero,
)


class Command(ReportCommand):
    help = "Print the witness constants C0, C_phi, K3 and, for a preset, C1, K4, K5."
    name = "constants"

    def add_command_arguments(self, parser):
        parser.add_argument(
            "--witness",
            action="append",
            default=[],
            help="Witness preset whose constants to add (repeatable)",
        )
        parser.add_argument(
            "--c-bound",
            type=int,
            action="append",
            dest="c_bound",
            default=None,
            help="Check log(log(M+1)/log 2) <= C(M) for this M (repeatable)",
        )

    def run(self, config, witness=(), c_bound=None, **options):
        sigma1 = weak = None
        for text in witness:
            spec = witness_preset(text)
            if isinstance(spec, Sigma1WitnessSpec):
                sigma1 = spec
            else:
                weak = spec

        c = constants(sigma1, weak, config.prec)
        rows = [
            {"name": "C0", "value": c.C0, "derivation": "sum_{r=1}^{10} 1/r^2 / 4"},
            {"name": "C_phi", "value": c.C_phi, "derivation": "sum_{l=1}^{10} 1/l"},
            {
                "name": "K3",
                "value": c.K3,
                "enclosure": c.K3_enclosure,
                "derivation": "ceil(1/(2 ln(2)^2) + 1/ln 2)",
            },
        ]
        if c.C1 is not None:
            rows.append(
                {
                    "name": "C1",
                    "value": c.C1,
                    "certified": c.C1_certified,
                    "derivation": "C_phi sqrt(sup d_m / C0), rounded up",
                }
            )
        if c.K4 is not None:
            rows.append(
                {
                    "name": "K4",
                    "value": c.K4,
                    "certified": c.K4_certified,
                    "derivation": "ceil(max |d_n|)",
                }
            )
            rows.append({"name": "K5", "value": c.K5, "derivation": "ceil(K3 K4 / ln 2)"})

        for M in c_bound or [4, 100]:
            C = phi_M_at_zero(M, config.prec)
            bound = c_lower_bound(M, config.prec)
            rows.append(
                {
                    "name": "C(%d)" % M,
                    "value": C,
                    "lower_bound": bound,
                    "certified": bound <= C.lower,
                    "derivation": "sum_{n=2}^{M} 1/(n ln n) >= log(log(M+1)/log 2)",
                }
            )

        return rows
