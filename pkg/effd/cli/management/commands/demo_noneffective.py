from effd.cli.report import SEQUENCE_SUFFIX, ReportCommand, read_json
from effd.lib.ball import Ball
from effd.lib.errors import ParseError
from effd.lib.presets import sigma1_from_json, sigma1_from_sequence
from effd.lib.reals import LeftComputableReal
from effd.lib.trigpoly import dirichlet_energy
from effd.lib.witnesses import sigma1_witness, telescoped_target

CHECKPOINTS = [1, 10, 100, 1000, 10000, 100000]
# Witness polynomials are only built up to this K for the energy cross-check
CROSS_CHECK_MAX_K = 12


class Command(ReportCommand):
    """ Show that a left-computable input yields energies without a modulus.

    E(f_K) of the energy witness is the telescoped sum α_{K-m0+2}, read here
    as the K-th term of a left-computable real. Each row is exact, but
    nothing in the input says how far the next jump is. The gap column is
    only known once the run is over: it is the distance of each row to the
    last lower bound seen, and it stays flat until a delayed jump closes it.

    """

    help = "Track energy lower bounds of a witness built from a Σ1 input."
    name = "demo_noneffective"

    def add_command_arguments(self, parser):
        parser.add_argument(
            "spec", nargs="?", help="Energy witness spec (JSON) or left sequence file (.jsonl)"
        )
        parser.add_argument("--preset", help="Energy witness preset, e.g. delayed-step:10000")
        parser.add_argument(
            "--checkpoint",
            type=int,
            action="append",
            dest="checkpoints",
            default=None,
            help="Packet count K to report (repeatable)",
        )

    def _witness(self, spec, preset):
        if spec and spec.endswith(SEQUENCE_SUFFIX):
            return sigma1_from_sequence(spec)
        if spec:
            return sigma1_from_json(read_json(spec))
        if preset:
            return sigma1_from_json({"preset": preset})
        raise ParseError("give a witness spec file or --preset")

    def run(self, config, spec=None, preset=None, checkpoints=None, **options):
        witness = self._witness(spec, preset)
        counts = sorted(set(checkpoints or CHECKPOINTS))
        if counts[0] < 1:
            raise ParseError("checkpoints count packets and start at 1", field="--checkpoint")

        # term i is the energy of the witness with i + 1 packets
        energy = LeftComputableReal(lambda i: telescoped_target(witness, witness.m0 + i))

        rows, previous, last_change = [], None, None
        for k in counts:
            K = witness.m0 + k - 1
            value = energy(k - 1)
            row = {"K": K, "energy_lower_bound": value}
            if previous is not None:
                row["change"] = value - previous
                if value != previous:
                    last_change = K
            if K <= CROSS_CHECK_MAX_K:
                built = Ball.coerce(dirichlet_energy(sigma1_witness(witness, K, config.prec)))
                row["witness_energy"] = built
                row["witness_agrees"] = built.contains(value)
            rows.append(row)
            previous = value

        for row in rows:
            row["gap_to_latest"] = previous - row["energy_lower_bound"]

        rows.append(
            {
                "modulus": "unavailable",
                "last_change_at": last_change,
                "latest_lower_bound": previous,
            }
        )
        return rows
