from django.conf import settings

from effd.cli.report import ReportCommand, load_poly, rational_arg
from effd.lib.poisson import (
    CoefficientStream,
    divergence_index,
    energy_lower_approximants,
    energy_partial_enclosures,
    minimum_energy,
    stabilization_index,
)
from effd.lib.trigpoly import h12_norm_sq


class Command(ReportCommand):
    help = "Print the partial energies E_N of a polynomial or a stream preset."
    name = "energy"

    def add_command_arguments(self, parser):
        parser.add_argument("poly", nargs="?", help="Polynomial file (JSON)")
        parser.add_argument("--preset", help="Stream preset, e.g. a_n=1/n^2:200")
        parser.add_argument("--rows", type=int, default=None, help="Largest N printed")
        parser.add_argument(
            "--threshold",
            default=None,
            help="Report the first N whose E_N passes this rational",
        )
        parser.add_argument(
            "--cross-check",
            action="store_true",
            dest="cross_check",
            help="Add the quadrature of the Dirichlet integral",
        )

    def run(self, config, poly=None, preset=None, rows=None, threshold=None, **options):
        p = load_poly(poly, preset)
        stream = CoefficientStream.from_trigpoly(p, label=preset or poly)
        if rows is None:
            rows = settings.ENERGY_ROWS_DEFAULT

        if p.is_exact:
            approximants = energy_lower_approximants(stream)
            lower = approximants
        else:
            # Ball rows; their lower edges still bound E(f) from below
            approximants = energy_partial_enclosures(stream)

            def lower(N):
                return approximants(N).lower

        report = [{"N": N, "E_N": approximants(N)} for N in range(1, rows + 1)]

        minimum = minimum_energy(p, cross_check=options.get("cross_check"))
        summary = {
            "total": minimum.value,
            "h12_norm_sq": h12_norm_sq(p),
            "stabilization_index": stabilization_index(stream),
        }
        if minimum.quadrature is not None:
            summary["quadrature"] = minimum.quadrature
        if threshold is not None:
            limit = rational_arg(threshold, "--threshold")
            summary["divergence_index"] = divergence_index(lower, limit, rows)

        report.append(summary)
        return report
