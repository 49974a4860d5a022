from django.test import SimpleTestCase

from discrimination.conf import SolverConfig
from discrimination.experiments import EXPERIMENTS, ExperimentConfig
from discrimination.geometry import WidthEstimate
from discrimination.serializers import (
    ExperimentConfigSerializer, SolverConfigSerializer, SolverReportSerializer,
    WidthEstimateSerializer,
)
from discrimination.solvers import SolverReport, SolverStatus


class SolverConfigSerializerTests(SimpleTestCase):
    def test_empty_payload_keeps_defaults(self):
        serializer = SolverConfigSerializer(data={})
        self.assertTrue(serializer.is_valid(), serializer.errors)
        self.assertEqual(serializer.save(), SolverConfig.from_settings())

    def test_overrides(self):
        serializer = SolverConfigSerializer(data={'max_iterations': 50, 'penalty': 2.0})
        self.assertTrue(serializer.is_valid(), serializer.errors)
        cfg = serializer.save()
        self.assertEqual(cfg.max_iterations, 50)
        self.assertEqual(cfg.penalty, 2.0)

    def test_invalid_values(self):
        for payload in ({'tolerance': 0}, {'gap_tolerance': -1}, {'relaxation': 2.5}, {'restarts': 0}):
            with self.subTest(payload=payload):
                serializer = SolverConfigSerializer(data=payload)
                self.assertFalse(serializer.is_valid())
                self.assertIn(next(iter(payload)), serializer.errors)


class ExperimentConfigSerializerTests(SimpleTestCase):
    def test_defaults_come_from_the_registry(self):
        serializer = ExperimentConfigSerializer(data={'name': 'concentration'})
        self.assertTrue(serializer.is_valid(), serializer.errors)
        cfg = serializer.save()
        spec = EXPERIMENTS['concentration']
        self.assertIsInstance(cfg, ExperimentConfig)
        self.assertEqual(cfg.d_values, spec.default_d)
        self.assertEqual(cfg.trials, spec.min_trials)
        self.assertEqual(cfg.format, 'csv')
        self.assertEqual(cfg.seed, 0)

    def test_nested_solver(self):
        serializer = ExperimentConfigSerializer(data={
            'name': 'werner', 'd_values': [2, 3], 'solver': {'max_iterations': 100},
        })
        self.assertTrue(serializer.is_valid(), serializer.errors)
        cfg = serializer.save()
        self.assertEqual(cfg.solver.max_iterations, 100)
        self.assertEqual(cfg.solver.restarts, SolverConfig.from_settings().restarts)

    def test_unknown_name(self):
        serializer = ExperimentConfigSerializer(data={'name': 'bogus'})
        self.assertFalse(serializer.is_valid())
        self.assertIn('name', serializer.errors)

    def test_dimension_caps_surface_as_errors(self):
        serializer = ExperimentConfigSerializer(data={'name': 'data-hiding', 'd_values': [3]})
        self.assertFalse(serializer.is_valid())
        self.assertIn('non_field_errors', serializer.errors)

    def test_field_ranges(self):
        for payload in (
            {'name': 'werner', 'seed': -1},
            {'name': 'werner', 'epsilon': 1.0},
            {'name': 'werner', 'samples': 10},
            {'name': 'werner', 'format': 'xml'},
            {'name': 'werner', 'workers': 0},
        ):
            with self.subTest(payload=payload):
                self.assertFalse(ExperimentConfigSerializer(data=payload).is_valid())


class ResultSerializerTests(SimpleTestCase):
    def test_solver_report(self):
        report = SolverReport(1.0, 1.5, 10, 0.1, 0.2, SolverStatus.ITERATION_LIMIT)
        data = SolverReportSerializer(report).data
        self.assertEqual(data['status'], 'iteration-limit')
        self.assertEqual(data['gap'], 0.5)
        self.assertEqual(data['iterations'], 10)

    def test_width_estimate(self):
        data = WidthEstimateSerializer(WidthEstimate(0.5, 0.01, 1000)).data
        self.assertEqual(dict(data), {'mean': 0.5, 'standard_error': 0.01, 'n_samples': 1000})
