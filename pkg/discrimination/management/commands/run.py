import json
from pathlib import Path

from django.conf import settings
from django.core.management.base import BaseCommand, CommandError

from discrimination.exceptions import EmissionError, ValidationError
from discrimination.experiments import run_experiment
from discrimination.record_writer import emit
from discrimination.serializers import ExperimentConfigSerializer

from ._options import (
    VALIDATION_EXIT, add_solver_arguments, command_errors, format_errors, int_list,
    solver_overrides,
)

# option dest -> ExperimentConfig field
CLI_FIELDS = {
    'experiment': 'name',
    'd_values': 'd_values',
    'trials': 'trials',
    'seed': 'seed',
    'out': 'output_path',
    'format': 'format',
    'workers': 'workers',
    'samples': 'samples',
    'epsilon': 'epsilon',
    'net_mode': 'net_mode',
}


def _load_config(path):
    try:
        with open(path, encoding='utf-8') as handle:
            payload = json.load(handle)
    except OSError as exc:
        raise EmissionError(f"Could not read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ValidationError(f"Config {path} is not valid JSON: {exc}") from exc
    if not isinstance(payload, dict):
        raise ValidationError("Config file must hold a JSON object")
    return payload


class Command(BaseCommand):
    help = "Run a named experiment and write its records as CSV or JSONL."

    def add_arguments(self, parser):
        parser.add_argument('experiment', nargs='?', help="Experiment name (see `list`).")
        parser.add_argument('--d', dest='d_values', type=int_list, help="Comma-separated dimensions.")
        parser.add_argument('--trials', type=int)
        parser.add_argument('--seed', type=int)
        parser.add_argument('--out', help="Output path; defaults to DISCRIM_OUTPUT_DIR/<name>.<format>.")
        parser.add_argument('--format', choices=['csv', 'jsonl'])
        parser.add_argument('--config', help="JSON file with ExperimentConfig fields.")
        parser.add_argument('--workers', type=int)
        parser.add_argument('--samples', type=int, help="Monte-Carlo sample count override.")
        parser.add_argument('--epsilon', type=float, help="Net resolution for net-approx.")
        parser.add_argument('--net-mode', dest='net_mode', choices=['certified', 'randomized'])
        add_solver_arguments(parser)

    def _payload(self, options):
        payload = _load_config(options['config']) if options.get('config') else {}
        for dest, key in CLI_FIELDS.items():
            if options.get(dest) is not None:
                payload[key] = options[dest]
        overrides = solver_overrides(options)
        if overrides:
            payload['solver'] = {**payload.get('solver', {}), **overrides}
        if 'name' not in payload:
            raise ValidationError("Name an experiment, e.g. `run werner --d 2,3`")
        return payload

    def handle(self, *args, **options):
        with command_errors():
            serializer = ExperimentConfigSerializer(data=self._payload(options))
            if not serializer.is_valid():
                raise CommandError(format_errors(serializer.errors), returncode=VALIDATION_EXIT)
            cfg = serializer.save()

            result = run_experiment(cfg)
            path = cfg.output_path or Path(settings.DISCRIM_OUTPUT_DIR) / f"{cfg.name}.{cfg.format}"
            emit(result.records, cfg.format, path)

        self.stdout.write(self.style.SUCCESS(f"{cfg.name}: {len(result.records)} records -> {path}"))
        for metric, fit in sorted(result.fits.items()):
            self.stdout.write(f"  slope[{metric}] = {fit.slope:.4f} (r^2 {fit.r_squared:.3f})")
