from django.core.management.base import BaseCommand
from rest_framework.renderers import JSONRenderer

from discrimination.conf import SolverConfig
from discrimination.exceptions import EmissionError
from discrimination.hermitian import read_operator
from discrimination.norms import all_norm
from discrimination.sampling import RngStream
from discrimination.serializers import SolverReportSerializer
from discrimination.solvers import locc_one_way_lower, ppt_norm

from ._options import add_solver_arguments, command_errors, solver_overrides


class Command(BaseCommand):
    help = "Read a matrix fixture and print its ALL, PPT and one-way LOCC norms as JSON."

    def add_arguments(self, parser):
        parser.add_argument('fixture')
        parser.add_argument('--seed', type=int, default=0, help="Seed for the seesaw restarts.")
        parser.add_argument('--skip-locc', action='store_true')
        add_solver_arguments(parser)

    def handle(self, *args, **options):
        with command_errors():
            try:
                with open(options['fixture'], encoding='utf-8') as handle:
                    delta = read_operator(handle)
            except OSError as exc:
                raise EmissionError(f"Could not read {options['fixture']}: {exc}") from exc
            cfg = SolverConfig.from_settings().with_overrides(**solver_overrides(options))

            summary = {'dim': delta.dim, 'all_norm': all_norm(delta)}
            if delta.bipartite_shape is not None:
                summary['bipartite_shape'] = list(delta.bipartite_shape)
                summary['ppt'] = SolverReportSerializer(ppt_norm(delta, cfg)).data
                if not options['skip_locc']:
                    rng = RngStream(options['seed']).generator()
                    summary['locc_one_way_lower'], _ = locc_one_way_lower(delta, cfg, rng)
        self.stdout.write(JSONRenderer().render(summary).decode('utf-8'))
