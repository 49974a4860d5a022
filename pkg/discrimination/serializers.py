from rest_framework import serializers

from .conf import SolverConfig
from .exceptions import ValidationError as DomainValidationError
from .experiments import EXPERIMENTS, ExperimentConfig, ExperimentRecord


class SolverConfigSerializer(serializers.Serializer):
    """Partial solver record; missing fields keep the configured defaults."""

    tolerance = serializers.FloatField(required=False)
    gap_tolerance = serializers.FloatField(required=False)
    max_iterations = serializers.IntegerField(required=False, min_value=1)
    penalty = serializers.FloatField(required=False)
    relaxation = serializers.FloatField(required=False)
    restarts = serializers.IntegerField(required=False, min_value=1)
    feasibility_rounds = serializers.IntegerField(required=False, min_value=0)
    check_every = serializers.IntegerField(required=False, min_value=1)
    inner_max_iterations = serializers.IntegerField(required=False, min_value=1)
    seesaw_iterations = serializers.IntegerField(required=False, min_value=1)
    lo_restarts = serializers.IntegerField(required=False, min_value=1)
    lo_iterations = serializers.IntegerField(required=False, min_value=1)
    lo_step = serializers.FloatField(required=False)

    def validate_tolerance(self, value):
        if value <= 0:
            raise serializers.ValidationError("Tolerance must be positive.")
        return value

    def validate_gap_tolerance(self, value):
        if value <= 0:
            raise serializers.ValidationError("Gap tolerance must be positive.")
        return value

    def validate_relaxation(self, value):
        if not 0 < value < 2:
            raise serializers.ValidationError("Relaxation must lie strictly between 0 and 2.")
        return value

    def validate(self, attrs):
        try:
            SolverConfig.from_settings().with_overrides(**attrs)
        except DomainValidationError as exc:
            raise serializers.ValidationError(str(exc))
        return attrs

    def create(self, validated_data):
        return SolverConfig.from_settings().with_overrides(**validated_data)


class ExperimentConfigSerializer(serializers.Serializer):
    name = serializers.ChoiceField(choices=sorted(EXPERIMENTS))
    d_values = serializers.ListField(
        child=serializers.IntegerField(min_value=1), allow_empty=False, required=False,
    )
    trials = serializers.IntegerField(min_value=1, required=False)
    seed = serializers.IntegerField(min_value=0, max_value=2 ** 64 - 1, default=0)
    solver = SolverConfigSerializer(required=False)
    output_path = serializers.CharField(required=False, allow_null=True, allow_blank=False)
    format = serializers.ChoiceField(choices=['csv', 'jsonl'], default='csv')
    workers = serializers.IntegerField(min_value=1, default=1)
    samples = serializers.IntegerField(min_value=100, required=False, allow_null=True)
    epsilon = serializers.FloatField(required=False)
    net_mode = serializers.ChoiceField(choices=['certified', 'randomized'], default='certified')

    def validate_epsilon(self, value):
        if not 0 < value < 1:
            raise serializers.ValidationError("epsilon must lie strictly between 0 and 1.")
        return value

    def validate(self, attrs):
        spec = EXPERIMENTS[attrs['name']]
        attrs.setdefault('d_values', list(spec.default_d))
        attrs.setdefault('trials', spec.min_trials)
        try:
            self._build(attrs)
        except DomainValidationError as exc:
            raise serializers.ValidationError(str(exc))
        return attrs

    def _build(self, attrs):
        data = dict(attrs)
        solver = data.pop('solver', None) or {}
        return ExperimentConfig(solver=SolverConfig.from_settings().with_overrides(**solver), **data)

    def create(self, validated_data):
        return self._build(validated_data)


class ExperimentRecordSerializer(serializers.Serializer):
    experiment = serializers.CharField()
    d = serializers.IntegerField()
    trial = serializers.IntegerField()
    stream_id = serializers.IntegerField()
    metric = serializers.CharField()
    value = serializers.FloatField()
    standard_error = serializers.FloatField(allow_null=True, required=False, default=None)

    def create(self, validated_data):
        return ExperimentRecord(**validated_data)


class SolverReportSerializer(serializers.Serializer):
    lower = serializers.FloatField()
    upper = serializers.FloatField()
    gap = serializers.FloatField(read_only=True)
    iterations = serializers.IntegerField()
    primal_residual = serializers.FloatField()
    dual_residual = serializers.FloatField()
    status = serializers.CharField(source='status.value')


class WidthEstimateSerializer(serializers.Serializer):
    mean = serializers.FloatField()
    standard_error = serializers.FloatField()
    n_samples = serializers.IntegerField()
