"""Argument helpers shared by the discrimination management commands."""
import argparse
from contextlib import contextmanager
from dataclasses import fields

from django.core.management.base import CommandError

from discrimination.conf import SolverConfig
from discrimination.exceptions import (
    CoverageError, EmissionError, RefusalError, ValidationError,
)

VALIDATION_EXIT = 2
IO_EXIT = 3


def int_list(text):
    try:
        return [int(part) for part in text.split(',') if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def add_solver_arguments(parser):
    """One --solver.<field> option per SolverConfig field."""
    group = parser.add_argument_group('solver overrides')
    for f in fields(SolverConfig):
        group.add_argument(f'--solver.{f.name}', dest=f'solver_{f.name}', type=f.type, default=None)


def solver_overrides(options):
    overrides = {}
    for f in fields(SolverConfig):
        value = options.get(f'solver_{f.name}')
        if value is not None:
            overrides[f.name] = value
    return overrides


def format_errors(errors):
    parts = []
    for key, messages in errors.items():
        if isinstance(messages, dict):
            parts.append(f"{key}: {format_errors(messages)}")
        else:
            parts.append(f"{key}: {' '.join(str(m) for m in messages)}")
    return '; '.join(parts)


@contextmanager
def command_errors():
    """Map library errors to CommandError exit codes (2 input, 3 I/O)."""
    try:
        yield
    except EmissionError as exc:
        raise CommandError(str(exc), returncode=IO_EXIT) from exc
    except (ValidationError, RefusalError, CoverageError) as exc:
        raise CommandError(str(exc), returncode=VALIDATION_EXIT) from exc
    except OSError as exc:
        raise CommandError(str(exc), returncode=IO_EXIT) from exc
