from django.core.management.base import BaseCommand

from discrimination.experiments import EXPERIMENTS


class Command(BaseCommand):
    help = "List the available experiments with their dimension caps."

    def handle(self, *args, **options):
        for name, spec in sorted(EXPERIMENTS.items()):
            parity = ', even' if spec.even_only else ''
            trials = f', trials >= {spec.min_trials}' if spec.min_trials > 1 else ''
            self.stdout.write(
                f"{name:<18} d in [{spec.d_min}, {spec.d_max}]{parity}{trials}; "
                f"default d={','.join(map(str, spec.default_d))}"
            )
            self.stdout.write(f"{'':<18} {spec.description}")
