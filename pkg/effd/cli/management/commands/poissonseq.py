from effd.cli.report import ReportCommand, rational_arg
from effd.lib.errors import ParseError
from effd.lib.poisson import boundary_value_rows, dense_series
from effd.lib.presets import stream_preset


class Command(ReportCommand):
    help = "Print x_k = P^{M_k}_{r_k} f(e^{iθ}) along the schedule, with tail bounds."
    name = "poissonseq"

    def add_command_arguments(self, parser):
        parser.add_argument("preset", help="Stream preset, e.g. a_n=1/n^2")
        parser.add_argument(
            "--theta", default="0", help="Angle as a rational multiple of pi"
        )
        parser.add_argument("--k-from", type=int, dest="k_from", default=2)
        parser.add_argument("--k-to", type=int, dest="k_to", default=12)

    def run(self, config, preset=None, theta="0", k_from=2, k_to=12, **options):
        if k_from < 1 or k_to < k_from:
            raise ParseError("bad k range %d..%d" % (k_from, k_to), field="--k-from")

        stream = stream_preset(preset)
        t = rational_arg(theta, "--theta")
        ks = range(k_from, k_to + 1)

        rows = []
        for row in boundary_value_rows(stream, t, ks, config.prec, config.schedule_cap):
            value = row["value"]
            if "tail_bound" in row:
                # The full series is finite for presets, so the bound can be checked
                full = dense_series(stream, row["r"], t, config.prec)
                gap = abs(full.center - value.center) + full.radius + value.radius
                row["within_tail_bound"] = gap <= row["tail_bound"]
            rows.append(row)

        return rows
