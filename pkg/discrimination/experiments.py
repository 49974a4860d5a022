"""Named, seeded experiments producing flat records.

Every trial draws from RngStream(seed, stream_id=trial, substream=d), runs on
a thread pool and lands in the output sorted by (d, trial). Summary records
(per-d aggregates, slope fits) follow the trial records and carry
trial = stream_id = -1.
"""
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.stats import linregress

from .conf import SampleDefaults, SolverConfig
from .constructions import (
    data_hiding_pair, flag_basis_povm, flagged_to_state_pair, lo_vs_locc_delta,
    net_povm_family, random_rank1_povm, uniform_pair, werner_pair,
)
from .exceptions import ValidationError
from .geometry import (
    SupportOracle, alpha, cube_oracle, euclidean_gauge, gamma_exact, is_majorized,
    majorization_factor, majorization_factor_check, mean_width_mc, operator_norm_ball_oracle,
    partial_sum_sandwich, povm_oracle, projective_tensor_gauge, schatten_width_reference,
    trace_norm_ball_oracle, volume_radius_mc, width_projection_traceless,
)
from .hermitian import hs_norm, operator_norm, trace_norm
from .norms import all_norm, locc_one_way_exact_flagged, povm_norm
from .sampling import RngStream, gue_standard, traceless_sphere_direction, uniform_state
from .solvers import (
    SolverStatus, lo_norm_block_exact_small, lo_norm_block_upper, locc_one_way_lower,
    one_way_value, ppt_norm,
)

logger = logging.getLogger(__name__)

SUMMARY_TRIAL = -1
# stream_id reserved for per-d setup draws (e.g. building a net once per d)
SETUP_STREAM = 2 ** 64 - 1
HIERARCHY_SLACK = 1e-6
# The one-way LOCC bound stays near 0.9 at d = 2, 3 before its 1/sqrt(d)
# decay sets in; its tail fit starts here.
TYPICAL_TAIL_D = 4


@dataclass(frozen=True)
class ExperimentRecord:
    experiment: str
    d: int
    trial: int
    stream_id: int
    metric: str
    value: float
    standard_error: float | None = None


@dataclass(frozen=True)
class SlopeFit:
    slope: float
    intercept: float
    r_squared: float


@dataclass
class ExperimentResult:
    records: list
    fits: dict = field(default_factory=dict)


@dataclass(frozen=True)
class ExperimentSpec:
    name: str
    description: str
    runner: Callable = field(repr=False)
    d_min: int = 2
    d_max: int = 6
    even_only: bool = False
    min_trials: int = 1
    default_d: tuple = (2, 3)


@dataclass(frozen=True)
class ExperimentConfig:
    name: str
    d_values: tuple
    trials: int = 1
    seed: int = 0
    solver: SolverConfig = field(default_factory=SolverConfig)
    output_path: str | None = None
    format: str = 'csv'
    workers: int = 1
    samples: int | None = None
    epsilon: float = 0.5
    net_mode: str = 'certified'

    def __post_init__(self):
        object.__setattr__(self, 'd_values', tuple(int(d) for d in self.d_values))
        spec = EXPERIMENTS.get(self.name)
        if spec is None:
            raise ValidationError(f"Unknown experiment {self.name!r}; choose from {sorted(EXPERIMENTS)}")
        if not self.d_values:
            raise ValidationError("d_values must not be empty")
        for d in self.d_values:
            if not spec.d_min <= d <= spec.d_max:
                raise ValidationError(f"{self.name}: d={d} outside [{spec.d_min}, {spec.d_max}]")
            if spec.even_only and d % 2:
                raise ValidationError(f"{self.name}: d must be even, got {d}")
        if self.trials < spec.min_trials:
            raise ValidationError(f"{self.name} needs at least {spec.min_trials} trials")
        if not 0 <= self.seed < 2 ** 64:
            raise ValidationError("seed must be a 64-bit unsigned integer")
        if self.format not in ('csv', 'jsonl'):
            raise ValidationError(f"format must be 'csv' or 'jsonl', got {self.format!r}")
        if self.workers < 1:
            raise ValidationError("workers must be at least 1")

    @property
    def spec(self):
        return EXPERIMENTS[self.name]


# Shared plumbing

def _run_trials(cfg, trial):
    """Run trial(d, index, rng) -> [(metric, value, se)] over the (d, trial) grid."""
    jobs = [(d, t) for d in sorted(set(cfg.d_values)) for t in range(cfg.trials)]

    def job(key):
        d, t = key
        rng = RngStream(cfg.seed, t, d).generator()
        return [
            ExperimentRecord(cfg.name, d, t, t, metric, float(value),
                             None if se is None else float(se))
            for metric, value, se in trial(d, t, rng)
        ]

    logger.info("Running %s: %d jobs on %d workers", cfg.name, len(jobs), cfg.workers)
    if cfg.workers == 1:
        results = [job(key) for key in jobs]
    else:
        with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
            results = list(pool.map(job, jobs))
    records = [r for batch in results for r in batch]
    records.sort(key=lambda r: (r.d, r.trial))
    return records


def _summary(cfg, d, metric, value, standard_error=None):
    return ExperimentRecord(cfg.name, d, SUMMARY_TRIAL, SUMMARY_TRIAL, metric, float(value),
                            None if standard_error is None else float(standard_error))


def _values_by_d(records, metric):
    grouped = {}
    for r in records:
        if r.metric == metric and r.trial != SUMMARY_TRIAL:
            grouped.setdefault(r.d, []).append(r.value)
    return dict(sorted(grouped.items()))


def fit_slope(d_values, values):
    """Least squares of log(value) on log(d)."""
    d_values = np.asarray(d_values, dtype=float)
    values = np.asarray(values, dtype=float)
    if len(np.unique(d_values)) < 2:
        raise ValidationError("A slope fit needs at least two distinct d")
    if np.any(values <= 0):
        raise ValidationError("A log-log fit needs positive values")
    fit = linregress(np.log(d_values), np.log(values))
    return SlopeFit(slope=float(fit.slope), intercept=float(fit.intercept),
                    r_squared=float(min(1.0, max(0.0, fit.rvalue ** 2))))


def _fit_summary(cfg, metric, medians):
    fit = fit_slope(list(medians), list(medians.values()))
    return fit, [
        _summary(cfg, 0, f'slope/{metric}', fit.slope),
        _summary(cfg, 0, f'intercept/{metric}', fit.intercept),
        _summary(cfg, 0, f'r_squared/{metric}', fit.r_squared),
    ]


def _medians_and_fits(cfg, records, metrics):
    summary, fits = [], {}
    for metric in metrics:
        grouped = _values_by_d(records, metric)
        medians = {d: float(np.median(v)) for d, v in grouped.items()}
        for d, m in medians.items():
            summary.append(_summary(cfg, d, f'median/{metric}', m))
        if len(medians) >= 2 and all(m > 0 for m in medians.values()):
            fits[metric], rows = _fit_summary(cfg, metric, medians)
            summary.extend(rows)
    return summary, fits


def hierarchy_holds(locc_lower, ppt_upper, all_value):
    """locc_lower <= ppt_upper + 1e-6 <= all_norm + 2e-6."""
    return (locc_lower <= ppt_upper + HIERARCHY_SLACK
            and ppt_upper + HIERARCHY_SLACK <= all_value + 2 * HIERARCHY_SLACK)


def _audited(cfg, d, t, locc_lower, ppt_upper, all_value):
    ok = hierarchy_holds(locc_lower, ppt_upper, all_value)
    if not ok:
        logger.warning(
            "%s d=%d trial=%d: hierarchy violated (locc %.9g, ppt %.9g, all %.9g)",
            cfg.name, d, t, locc_lower, ppt_upper, all_value,
        )
    return ok


def _ppt_metrics(report):
    return [
        ('ppt_lower', report.lower, None),
        ('ppt_upper', report.upper, None),
        ('ppt_converged', float(report.status is SolverStatus.CONVERGED), None),
        ('ppt_iterations', report.iterations, None),
    ]


# Experiments

def run_typical_states(cfg):
    def trial(d, t, rng):
        delta = uniform_pair(d, rng).delta
        all_value = all_norm(delta)
        report = ppt_norm(delta, cfg.solver)
        locc, _ = locc_one_way_lower(delta, cfg.solver, rng)
        return [
            ('all_norm', all_value, None),
            *_ppt_metrics(report),
            ('ppt_lower_ratio', report.lower / all_value, None),
            ('locc_one_way_lower', locc, None),
            ('sep_lower_bound_ok', float(report.upper >= (2 / d) * all_value - HIERARCHY_SLACK), None),
            ('hierarchy_ok', float(_audited(cfg, d, t, locc, report.upper, all_value)), None),
        ]

    records = _run_trials(cfg, trial)
    summary, fits = _medians_and_fits(
        cfg, records, ['all_norm', 'ppt_lower', 'ppt_lower_ratio', 'locc_one_way_lower'],
    )
    tail = {
        d: float(np.median(v))
        for d, v in _values_by_d(records, 'locc_one_way_lower').items() if d >= TYPICAL_TAIL_D
    }
    if len(tail) >= 2 and all(m > 0 for m in tail.values()):
        fits['locc_one_way_lower_tail'], rows = _fit_summary(cfg, 'locc_one_way_lower_tail', tail)
        summary.extend(rows)
    return ExperimentResult(records + summary, fits)


def run_werner(cfg):
    def trial(d, t, rng):
        delta = werner_pair(d).delta
        expected = 4 / (d + 1)
        all_value = all_norm(delta)
        report = ppt_norm(delta, cfg.solver)
        locc, _ = locc_one_way_lower(delta, cfg.solver, rng)
        return [
            ('all_norm', all_value, None),
            *_ppt_metrics(report),
            ('ppt_expected', expected, None),
            ('ppt_relative_error', abs(report.lower - expected) / expected, None),
            ('locc_one_way_lower', locc, None),
            ('hierarchy_ok', float(_audited(cfg, d, t, locc, report.upper, all_value)), None),
        ]

    records = _run_trials(cfg, trial)
    summary, fits = _medians_and_fits(cfg, records, ['ppt_lower'])
    return ExperimentResult(records + summary, fits)


def run_data_hiding(cfg):
    def trial(d, t, rng):
        delta = data_hiding_pair(d, rng).delta
        all_value = all_norm(delta)
        report = ppt_norm(delta, cfg.solver)
        locc, _ = locc_one_way_lower(delta, cfg.solver, rng)
        return [
            ('all_norm', all_value, None),
            ('hs_norm', hs_norm(delta), None),
            ('operator_norm', operator_norm(delta), None),
            *_ppt_metrics(report),
            ('locc_one_way_lower', locc, None),
            ('locc_scaled', locc * math.sqrt(d), None),
            ('hierarchy_ok', float(_audited(cfg, d, t, locc, report.upper, all_value)), None),
        ]

    records = _run_trials(cfg, trial)
    summary, fits = _medians_and_fits(cfg, records, ['ppt_lower', 'locc_one_way_lower'])
    return ExperimentResult(records + summary, fits)


def run_lo_vs_locc(cfg):
    def trial(d, t, rng):
        blocks = lo_vs_locc_delta(d, rng)
        locc = locc_one_way_exact_flagged(blocks)
        lo = lo_norm_block_upper(blocks, cfg.solver, rng)
        pair = flagged_to_state_pair(blocks)
        rows = [
            ('locc_one_way_exact', locc, None),
            ('state_pair_flag_value', one_way_value(pair.delta, flag_basis_povm(d)), None),
            ('lo_estimate', lo.value, None),
            ('lo_scaled', lo.value / d ** 1.5, None),
            ('lo_locc_ratio', lo.value / locc, None),
        ]
        if d <= 3:
            lower, upper = lo_norm_block_exact_small(blocks)
            rows += [('lo_net_lower', lower, None), ('lo_net_upper', upper, None)]
        return rows

    records = _run_trials(cfg, trial)
    summary, fits = _medians_and_fits(cfg, records, ['lo_estimate', 'lo_locc_ratio'])
    return ExperimentResult(records + summary, fits)


def run_net_approx(cfg):
    families = {
        d: net_povm_family(d, cfg.epsilon, RngStream(cfg.seed, SETUP_STREAM, d).generator(), cfg.net_mode)
        for d in sorted(set(cfg.d_values))
    }

    def trial(d, t, rng):
        family = families[d]
        delta = gue_standard(d, rng)
        effects = np.stack([m.stacked for m in family.members])
        best = float(np.abs(np.einsum('nkij,ji->nk', effects, delta.entries).real).sum(axis=1).max())
        ratio = best / all_norm(delta)
        return [
            ('net_size', len(family), None),
            ('best_ratio', ratio, None),
            ('violation', float(ratio < 1 - cfg.epsilon), None),
        ]

    records = _run_trials(cfg, trial)
    summary = []
    for d, values in _values_by_d(records, 'violation').items():
        summary.append(_summary(cfg, d, 'violations/best_ratio', sum(values)))
        summary.append(_summary(cfg, d, 'min/best_ratio', min(_values_by_d(records, 'best_ratio')[d])))
    return ExperimentResult(records + summary)


def _urysohn_rows(samples, rng):
    """Volume radius against mean width for the cube and B_1^2 (x) B_2^2."""
    cube_vol = volume_radius_mc(lambda p: np.abs(p).max(axis=1) <= 1.0, math.sqrt(3), 3, samples, rng)
    cube_width = mean_width_mc(cube_oracle(3), min(samples, 20000), rng)

    def tensor_member(points):
        return projective_tensor_gauge(points, 2, euclidean_gauge) <= 1.0

    tensor_vol = volume_radius_mc(tensor_member, 1.0, 4, samples, rng)
    tensor_support = SupportOracle(4, lambda xs: euclidean_gauge(xs.reshape(-1, 2, 2)).max(axis=1))
    tensor_width = mean_width_mc(tensor_support, min(samples, 20000), rng)
    return [
        ('cube_vrad', cube_vol.vrad, cube_vol.standard_error),
        ('cube_width', cube_width.mean, cube_width.standard_error),
        ('cube_urysohn_ok', float(cube_vol.vrad <= cube_width.mean + 3 * (cube_vol.standard_error + cube_width.standard_error)), None),
        ('tensor_volume', tensor_vol.volume, None),
        ('tensor_vrad', tensor_vol.vrad, tensor_vol.standard_error),
        ('tensor_width', tensor_width.mean, tensor_width.standard_error),
        ('tensor_urysohn_ok', float(tensor_vol.vrad <= tensor_width.mean + 3 * (tensor_vol.standard_error + tensor_width.standard_error)), None),
    ]


def run_mean_width_suite(cfg):
    defaults = SampleDefaults.from_settings()
    width_samples = cfg.samples or defaults.width
    volume_samples = cfg.samples or defaults.volume_small
    smallest = min(cfg.d_values)

    def trial(d, t, rng):
        povm = random_rank1_povm(d, d, rng)
        k_m = povm_oracle(povm)
        width = mean_width_mc(k_m, width_samples, rng)
        projected = width_projection_traceless(k_m, width_samples, rng)
        s_inf = mean_width_mc(operator_norm_ball_oracle(d), width_samples, rng)
        s_one = mean_width_mc(trace_norm_ball_oracle(d), width_samples, rng)
        rows = [
            ('povm_width', width.mean, width.standard_error),
            ('povm_width_expected', d * alpha(d * d), None),
            ('povm_projected_width', projected.mean, projected.standard_error),
            ('povm_projected_expected',
             d * math.sqrt(2 / math.pi) * math.sqrt(1 - 1 / d) / gamma_exact(d * d - 1), None),
            ('sinf_width', s_inf.mean, s_inf.standard_error),
            ('sinf_reference', schatten_width_reference(d, 'Sinf'), None),
            ('s1_width', s_one.mean, s_one.standard_error),
            ('s1_reference', schatten_width_reference(d, 'S1'), None),
            ('schatten_product', s_inf.mean * s_one.mean, None),
        ]
        if d == smallest:
            rows += _urysohn_rows(volume_samples, rng)
        return rows

    records = _run_trials(cfg, trial)
    summary, fits = _medians_and_fits(cfg, records, ['povm_width', 'sinf_width', 's1_width'])
    return ExperimentResult(records + summary, fits)


def run_concentration(cfg):
    def trial(d, t, rng):
        delta = uniform_pair(d, rng).delta
        return [
            ('all_norm', all_norm(delta), None),
            ('ppt_lower', ppt_norm(delta, cfg.solver).lower, None),
        ]

    records = _run_trials(cfg, trial)
    summary = []
    stds = {}
    for metric in ('all_norm', 'ppt_lower'):
        grouped = _values_by_d(records, metric)
        stds[metric] = {d: float(np.std(v, ddof=1)) if len(v) > 1 else 0.0 for d, v in grouped.items()}
        for d, values in grouped.items():
            summary.append(_summary(cfg, d, f'mean/{metric}', float(np.mean(values))))
            summary.append(_summary(cfg, d, f'std/{metric}', stds[metric][d]))
    for metric, by_d in stds.items():
        low, high = min(by_d), max(by_d)
        if low != high and by_d[low] > 0:
            summary.append(_summary(cfg, 0, f'std_ratio/{metric}', by_d[high] / by_d[low]))
    return ExperimentResult(records + summary)


def run_spectra(cfg):
    """Global spectra of a traceless HS-sphere point and of a state difference."""
    def trial(d, t, rng):
        delta = traceless_sphere_direction(d, rng)
        diff = uniform_state(d, rng) - uniform_state(d, rng)
        return [
            ('delta_trace_norm', trace_norm(delta), None),
            ('delta_hs_norm', hs_norm(delta), None),
            ('delta_operator_norm', operator_norm(delta), None),
            ('states_trace_norm', trace_norm(diff), None),
            ('states_hs_norm', hs_norm(diff), None),
            ('states_operator_norm', operator_norm(diff), None),
        ]

    records = _run_trials(cfg, trial)
    summary, fits = _medians_and_fits(cfg, records, [
        'delta_trace_norm', 'delta_operator_norm',
        'states_trace_norm', 'states_hs_norm', 'states_operator_norm',
    ])
    return ExperimentResult(records + summary, fits)


def run_majorization(cfg):
    """Top-k comparison on random traceless pairs; d is the vector length."""
    def trial(n, t, rng):
        x = rng.standard_normal(n)
        y = rng.standard_normal(n)
        x -= x.mean()
        y -= y.mean()
        x[-1] = -x[:-1].sum()
        y[-1] = -y[:-1].sum()
        violations = sum(not majorization_factor_check(x, y, k) for k in range(1, n + 1))
        sandwich = partial_sum_sandwich(x, y)
        slack = 1e-9
        sandwich_ok = bool(np.all(sandwich[:, 0] <= sandwich[:, 1] + slack)
                           and np.all(sandwich[:, 1] <= sandwich[:, 2] + slack))
        return [
            ('violations', violations, None),
            ('factor', majorization_factor(x, y), None),
            ('majorized_ok', float(is_majorized(x, majorization_factor(x, y) * y, tol=1e-9)), None),
            ('sandwich_ok', float(sandwich_ok), None),
        ]

    records = _run_trials(cfg, trial)
    summary = [
        _summary(cfg, d, 'total/violations', sum(values))
        for d, values in _values_by_d(records, 'violations').items()
    ]
    return ExperimentResult(records + summary)


def _setup_povms(cfg):
    """One random rank-1 POVM with d outcomes per d, drawn from the setup stream."""
    return {
        d: random_rank1_povm(d, d, RngStream(cfg.seed, SETUP_STREAM, d).generator())
        for d in sorted(set(cfg.d_values))
    }


def run_povm_expectation(cfg):
    """E ||rho - sigma||_M against omega / sqrt(d), omega the traceless width of K_M."""
    samples = cfg.samples or SampleDefaults.from_settings().width
    povms, widths = {}, {}
    for d in sorted(set(cfg.d_values)):
        setup = RngStream(cfg.seed, SETUP_STREAM, d).generator()
        povms[d] = random_rank1_povm(d, d, setup)
        widths[d] = width_projection_traceless(povm_oracle(povms[d]), samples, setup)

    def trial(d, t, rng):
        diff = uniform_state(d, rng) - uniform_state(d, rng)
        return [
            ('povm_norm', povm_norm(diff, povms[d]), None),
            ('all_norm', all_norm(diff), None),
        ]

    records = _run_trials(cfg, trial)
    summary = []
    for d, values in _values_by_d(records, 'povm_norm').items():
        mean = float(np.mean(values))
        omega = widths[d]
        summary += [
            _summary(cfg, d, 'mean/povm_norm', mean, np.std(values, ddof=1) / math.sqrt(len(values))),
            _summary(cfg, d, 'omega', omega.mean, omega.standard_error),
            _summary(cfg, d, 'ratio/povm_norm', mean * math.sqrt(d) / omega.mean),
        ]
    ratios = [r.value for r in summary if r.metric == 'ratio/povm_norm']
    if len(ratios) >= 2:
        summary.append(_summary(cfg, 0, 'spread/ratio', max(ratios) / min(ratios)))
    return ExperimentResult(records + summary)


# Tail levels, in standard deviations, for the empirical concentration constant.
LEVY_LEVELS = (0.5, 1.0, 1.5, 2.0, 2.5, 3.0)


def levy_constant(values, d):
    """Largest c with P(|f - E f| > t) <= 2 exp(-c d t^2 / 2) at every tail level.

    The d/2 is n / L^2 for n = 2 d^2 real coordinates and Lipschitz constant
    L = 2 sqrt(d). Levels with no exceedance put no constraint on c.
    """
    values = np.asarray(values, dtype=float)
    deviations = np.abs(values - values.mean())
    std = float(values.std(ddof=1))
    if std == 0.0:
        raise ValidationError("A concentration constant needs non-constant samples")
    bounds = []
    for level in LEVY_LEVELS:
        t = level * std
        tail = float(np.mean(deviations > t))
        if tail > 0:
            bounds.append(2 * math.log(2 / tail) / (d * t * t))
    return min(bounds) if bounds else math.inf


def run_levy_concentration(cfg):
    """Spread of ||rho - sigma||_ALL and ||rho - sigma||_M for independent uniform states on C^d."""
    povms = _setup_povms(cfg)

    def trial(d, t, rng):
        diff = uniform_state(d, rng) - uniform_state(d, rng)
        return [
            ('all_norm', all_norm(diff), None),
            ('povm_norm', povm_norm(diff, povms[d]), None),
        ]

    records = _run_trials(cfg, trial)
    summary = []
    for metric in ('all_norm', 'povm_norm'):
        for d, values in _values_by_d(records, metric).items():
            std = float(np.std(values, ddof=1))
            summary += [
                _summary(cfg, d, f'mean/{metric}', float(np.mean(values))),
                _summary(cfg, d, f'std/{metric}', std),
                _summary(cfg, d, f'std_scaled/{metric}', std * math.sqrt(d)),
            ]
            constant = levy_constant(values, d)
            if math.isfinite(constant):
                summary.append(_summary(cfg, d, f'levy_constant/{metric}', constant))
    return ExperimentResult(records + summary)


EXPERIMENTS = {
    spec.name: spec for spec in (
        ExperimentSpec('typical-states', "ALL, PPT and one-way LOCC norms of HS-uniform pairs",
                       run_typical_states, 2, 6, default_d=(2, 3, 4, 5, 6)),
        ExperimentSpec('werner', "Symmetric vs antisymmetric Werner states (PPT value 4/(d+1))",
                       run_werner, 2, 6, default_d=(2, 3, 4, 5)),
        ExperimentSpec('data-hiding', "Random-subspace data-hiding pairs",
                       run_data_hiding, 2, 6, even_only=True, default_d=(2, 4, 6)),
        ExperimentSpec('lo-vs-locc', "Flagged-block operator: LO estimate vs one-way LOCC value d^2",
                       run_lo_vs_locc, 2, 16, even_only=True, default_d=(4, 8, 16)),
        ExperimentSpec('mean-width-suite', "POVM and Schatten-ball mean widths, Urysohn audit",
                       run_mean_width_suite, 2, 16, default_d=(3, 10)),
        ExperimentSpec('net-approx', "Epsilon-net POVM families approximating ALL",
                       run_net_approx, 2, 3, default_d=(2,)),
        ExperimentSpec('concentration', "Spread of ALL and PPT norms over uniform pairs",
                       run_concentration, 2, 6, min_trials=100, default_d=(3, 6)),
        ExperimentSpec('povm-expectation', "Mean POVM norm of uniform state differences against the traceless width",
                       run_povm_expectation, 2, 8, min_trials=20, default_d=(3, 6)),
        ExperimentSpec('levy-concentration', "Empirical concentration constant of ALL and POVM norms of state differences",
                       run_levy_concentration, 2, 16, min_trials=100, default_d=(3, 6, 12)),
        ExperimentSpec('spectra', "Global spectra of traceless directions and state differences",
                       run_spectra, 2, 64, default_d=(4, 8, 16, 32, 64)),
        ExperimentSpec('majorization', "Top-k norm comparison on traceless vectors",
                       run_majorization, 2, 64, default_d=(12,)),
    )
}


def run_experiment(cfg):
    result = cfg.spec.runner(cfg)
    logger.info("%s finished with %d records", cfg.name, len(result.records))
    return result
