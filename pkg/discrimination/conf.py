"""Configuration records for tolerances, solvers and Monte-Carlo sample sizes.

Defaults live in the dataclasses; `discrim_lab.settings` can override them
through DISCRIM_TOLERANCES, DISCRIM_SOLVER and DISCRIM_SAMPLES.
"""
from dataclasses import asdict, dataclass, fields, replace

from django.conf import settings
from django.core.exceptions import ImproperlyConfigured

from .exceptions import ValidationError


def _settings_dict(name):
    try:
        return dict(getattr(settings, name, {}) or {})
    except ImproperlyConfigured:
        return {}


class _Record:
    """Shared construction helpers for the frozen config records."""

    @classmethod
    def field_names(cls):
        return [f.name for f in fields(cls)]

    @classmethod
    def from_mapping(cls, mapping):
        unknown = set(mapping) - set(cls.field_names())
        if unknown:
            raise ValidationError(f"Unknown {cls.__name__} keys: {sorted(unknown)}")
        return cls(**mapping)

    def with_overrides(self, **overrides):
        overrides = {k: v for k, v in overrides.items() if v is not None}
        unknown = set(overrides) - set(self.field_names())
        if unknown:
            raise ValidationError(f"Unknown {type(self).__name__} keys: {sorted(unknown)}")
        return replace(self, **overrides)

    def as_dict(self):
        return asdict(self)


@dataclass(frozen=True)
class Tolerances(_Record):
    hermiticity: float = 1e-12
    psd: float = 1e-9
    completeness: float = 1e-9
    trace: float = 1e-9
    certificate: float = 1e-6
    dual_feasibility: float = 1e-8
    traceless: float = 1e-10
    feasibility: float = 1e-9

    @classmethod
    def from_settings(cls):
        return cls.from_mapping(_settings_dict('DISCRIM_TOLERANCES'))


@dataclass(frozen=True)
class SolverConfig(_Record):
    """Flat solver record; every field can be overridden from the CLI."""

    tolerance: float = 1e-7
    gap_tolerance: float = 1e-6
    max_iterations: int = 20000
    penalty: float = 1.0
    relaxation: float = 1.0
    restarts: int = 5
    feasibility_rounds: int = 500
    check_every: int = 10
    inner_max_iterations: int = 500
    seesaw_iterations: int = 50
    lo_restarts: int = 50
    lo_iterations: int = 2000
    lo_step: float = 0.1

    def __post_init__(self):
        if self.tolerance <= 0 or self.gap_tolerance <= 0:
            raise ValidationError("Solver tolerances must be positive")
        if self.penalty <= 0:
            raise ValidationError("Penalty must be positive")
        if not 0 < self.relaxation < 2:
            raise ValidationError("Relaxation must lie in (0, 2)")
        for name in ('max_iterations', 'restarts', 'check_every',
                     'inner_max_iterations', 'seesaw_iterations',
                     'lo_restarts', 'lo_iterations'):
            if getattr(self, name) < 1:
                raise ValidationError(f"{name} must be at least 1")
        if self.feasibility_rounds < 0 or self.lo_step <= 0:
            raise ValidationError("feasibility_rounds must be >= 0 and lo_step > 0")

    @classmethod
    def from_settings(cls):
        return cls.from_mapping(_settings_dict('DISCRIM_SOLVER'))


@dataclass(frozen=True)
class SampleDefaults(_Record):
    width: int = 20000
    volume_small: int = 1_000_000
    volume_large: int = 10_000_000

    @classmethod
    def from_settings(cls):
        return cls.from_mapping(_settings_dict('DISCRIM_SAMPLES'))

    def volume_for(self, real_dim):
        return self.volume_small if real_dim <= 4 else self.volume_large


def tolerances():
    return Tolerances.from_settings()
