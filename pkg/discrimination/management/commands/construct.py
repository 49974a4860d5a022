import io

from django.core.management.base import BaseCommand

from discrimination.constructions import (
    data_hiding_pair, lo_vs_locc_delta, uniform_pair, werner_pair,
)
from discrimination.exceptions import EmissionError
from discrimination.hermitian import write_operator
from discrimination.sampling import RngStream

from ._options import command_errors

CONSTRUCTIONS = {
    'werner': lambda d, rng: werner_pair(d).delta,
    'data-hiding': lambda d, rng: data_hiding_pair(d, rng).delta,
    'lo-vs-locc': lambda d, rng: lo_vs_locc_delta(d, rng).expand(),
    'uniform': lambda d, rng: uniform_pair(d, rng).delta,
}


class Command(BaseCommand):
    help = "Write a named construction's rho - sigma (or flagged Delta) in the matrix text format."

    def add_arguments(self, parser):
        parser.add_argument('construction', choices=sorted(CONSTRUCTIONS))
        parser.add_argument('--d', type=int, required=True)
        parser.add_argument('--seed', type=int, default=0)
        parser.add_argument('--out', help="Fixture path; stdout when omitted.")

    def handle(self, *args, **options):
        with command_errors():
            rng = RngStream(options['seed'], 0, options['d']).generator()
            delta = CONSTRUCTIONS[options['construction']](options['d'], rng)
            buffer = io.StringIO()
            write_operator(delta, buffer)
            if not options.get('out'):
                self.stdout.write(buffer.getvalue(), ending='')
                return
            try:
                with open(options['out'], 'w', encoding='utf-8') as handle:
                    handle.write(buffer.getvalue())
            except OSError as exc:
                raise EmissionError(f"Could not write {options['out']}: {exc}") from exc
        self.stdout.write(self.style.SUCCESS(
            f"{options['construction']} (d={options['d']}, dim {delta.dim}) -> {options['out']}"
        ))
