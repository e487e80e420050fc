from effd.cli.report import ReportCommand, load_poly, rational_arg
from effd.lib.poisson import interior_solve, poisson_kernel


class Command(ReportCommand):
    help = "Evaluate the harmonic extension of a polynomial at r e^{iθ}."
    name = "poisson"

    def add_command_arguments(self, parser):
        parser.add_argument("poly", nargs="?", help="Polynomial file (JSON)")
        parser.add_argument("--preset", help="Stream preset instead of a file")
        parser.add_argument("--r", default="1/2", help="Radius, a rational in [0, 1)")
        parser.add_argument(
            "--theta", default="0", help="Angle as a rational multiple of pi"
        )
        parser.add_argument(
            "--kernel",
            action="store_true",
            help="Also print the Poisson kernel P_r(θ)",
        )

    def run(self, config, poly=None, preset=None, r="1/2", theta="0", **options):
        p = load_poly(poly, preset)
        r = rational_arg(r, "--r")
        t = rational_arg(theta, "--theta")

        evaluation = interior_solve(p, r, t, config.prec)
        row = {"r": r, "theta_over_pi": t}
        row.update(evaluation.to_json())
        if options.get("kernel"):
            row["kernel"] = poisson_kernel(r, t, config.prec)

        return [row]
