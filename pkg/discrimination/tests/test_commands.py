import io
import json
import tempfile
from pathlib import Path

from django.apps import apps
from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase, override_settings

from discrimination.record_writer import load_records


def _call(*args, **kwargs):
    out = io.StringIO()
    call_command(*args, stdout=out, **kwargs)
    return out.getvalue()


class ListCommandTests(SimpleTestCase):
    def test_lists_every_experiment(self):
        output = _call('list')
        for name in ('werner', 'lo-vs-locc', 'net-approx', 'majorization', 'povm-expectation',
                     'levy-concentration'):
            self.assertIn(name, output)


class RunCommandTests(SimpleTestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)

    def test_writes_to_the_output_dir(self):
        with override_settings(DISCRIM_OUTPUT_DIR=self.tmp.name):
            output = _call('run', 'werner', d_values=[2], solver_restarts=1, solver_seesaw_iterations=5)
        path = Path(self.tmp.name) / 'werner.csv'
        self.assertIn('werner', output)
        records = load_records(path)
        self.assertTrue(any(r.metric == 'ppt_lower' for r in records))

    def test_jsonl_to_explicit_path(self):
        path = Path(self.tmp.name) / 'maj.jsonl'
        _call('run', 'majorization', d_values=[6], trials=3, out=str(path), format='jsonl')
        self.assertEqual(len(path.read_text().splitlines()), 3 * 4 + 1)

    def test_config_file(self):
        config = Path(self.tmp.name) / 'cfg.json'
        out = Path(self.tmp.name) / 'spectra.csv'
        config.write_text(json.dumps({'name': 'spectra', 'd_values': [4, 8], 'trials': 2, 'seed': 3}))
        output = _call('run', config=str(config), out=str(out))
        self.assertIn('slope[delta_trace_norm]', output)
        self.assertEqual({r.d for r in load_records(out) if r.trial >= 0}, {4, 8})

    def test_povm_expectation_summary(self):
        path = Path(self.tmp.name) / 'expectation.csv'
        _call('run', 'povm-expectation', d_values=[3], trials=20, samples=1000, out=str(path))
        metrics = {r.metric for r in load_records(path) if r.trial < 0}
        self.assertEqual(metrics, {'mean/povm_norm', 'omega', 'ratio/povm_norm'})

    def test_invalid_dimension_exits_with_2(self):
        with self.assertRaises(CommandError) as ctx:
            _call('run', 'data-hiding', d_values=[3])
        self.assertEqual(ctx.exception.returncode, 2)

    def test_missing_name_exits_with_2(self):
        with self.assertRaises(CommandError) as ctx:
            _call('run')
        self.assertEqual(ctx.exception.returncode, 2)

    def test_unwritable_output_exits_with_3(self):
        blocker = Path(self.tmp.name) / 'file'
        blocker.write_text('x')
        with self.assertRaises(CommandError) as ctx:
            _call('run', 'majorization', d_values=[4], out=str(blocker / 'out.csv'))
        self.assertEqual(ctx.exception.returncode, 3)


class ConstructEvaluateTests(SimpleTestCase):
    def test_round_trip(self):
        with tempfile.TemporaryDirectory() as tmp:
            fixture = Path(tmp) / 'werner.txt'
            _call('construct', 'werner', d=2, out=str(fixture))
            summary = json.loads(_call('evaluate', str(fixture), solver_restarts=1, solver_seesaw_iterations=5))
        self.assertEqual(summary['dim'], 4)
        self.assertEqual(summary['bipartite_shape'], [2, 2])
        self.assertAlmostEqual(summary['all_norm'], 2.0, places=9)
        self.assertAlmostEqual(summary['ppt']['lower'], 4 / 3, delta=1e-3)
        self.assertLessEqual(summary['locc_one_way_lower'], summary['ppt']['upper'] + 1e-6)

    def test_construct_to_stdout(self):
        output = _call('construct', 'lo-vs-locc', d=2, seed=1)
        self.assertEqual(output.splitlines()[0], '4 2 2')
        self.assertEqual(len(output.splitlines()), 1 + 4 * 5 // 2)

    def test_odd_data_hiding_exits_with_2(self):
        with self.assertRaises(CommandError) as ctx:
            _call('construct', 'data-hiding', d=3)
        self.assertEqual(ctx.exception.returncode, 2)

    def test_missing_fixture_exits_with_3(self):
        with self.assertRaises(CommandError) as ctx:
            _call('evaluate', '/nonexistent/fixture.txt', skip_locc=True)
        self.assertEqual(ctx.exception.returncode, 3)

    def test_malformed_fixture_exits_with_2(self):
        cases = {
            'bad-value.txt': '1 0 0\n0 0 abc 0\n',
            'bad-header.txt': 'two 0 0\n',
            'negative-dim.txt': '-1 0 0\n',
        }
        with tempfile.TemporaryDirectory() as tmp:
            for name, text in cases.items():
                fixture = Path(tmp) / name
                fixture.write_text(text)
                with self.subTest(fixture=name), self.assertRaises(CommandError) as ctx:
                    _call('evaluate', str(fixture), skip_locc=True)
                self.assertEqual(ctx.exception.returncode, 2)


class ProjectCheckTests(SimpleTestCase):
    def test_app_is_registered_without_models(self):
        config = apps.get_app_config('discrimination')
        self.assertEqual(config.verbose_name, 'Distinguishability norms')
        self.assertEqual(list(config.get_models()), [])

    def test_system_check_passes(self):
        out = io.StringIO()
        call_command('check', stdout=out)
        self.assertIn('no issues', out.getvalue())
