"""Certificate-producing engines for restricted-class norms.

- `ppt_norm`: max <Delta, A> over A in [-Id, Id] with A^Gamma in [-Id, Id],
  solved by consensus operator splitting. The lower certificate is a
  feasible A, the upper one a split Delta = P + Q bounded by
  ||P||_1 + ||Q^Gamma||_1.
- `multi_hypothesis_povm_sdp`: max sum_i tr(A_i X_i) over POVMs, with a dual
  Y >= X_i as upper certificate.
- `locc_one_way_lower`: seesaw between the first party's POVM and the second
  party's Helstrom responses; a lower bound on the one-way LOCC norm.
- `lo_norm_block_upper` / `lo_norm_block_exact_small`: sphere bounds on the
  LO norm of flagged block operators.

Reported values are always recomputed from the returned objects.
"""
import logging
import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .conf import SolverConfig, tolerances
from .exceptions import RefusalError, ValidationError
from .hermitian import (
    as_hermitian, clip_spectrum, eigh_descending, operator_norm,
    partial_trace_array, partial_transpose_array, sign_operator,
)
from .norms import Povm
from .sampling import RngStream, unit_vectors

logger = logging.getLogger(__name__)


class SolverStatus(str, Enum):
    CONVERGED = 'converged'
    ITERATION_LIMIT = 'iteration-limit'


@dataclass(frozen=True, eq=False)
class SolverReport:
    """Two-sided certificate of an optimization run.

    `point` is the primal object the lower value was evaluated on, `dual` the
    object the upper value was evaluated on.
    """

    lower: float
    upper: float
    iterations: int
    primal_residual: float
    dual_residual: float
    status: SolverStatus
    point: object = field(default=None, repr=False)
    dual: object = field(default=None, repr=False)

    def __post_init__(self):
        slack = tolerances().certificate * max(1.0, abs(self.upper))
        if self.lower > self.upper + slack:
            raise ValidationError(
                f"Certificates cross: lower {self.lower!r} > upper {self.upper!r}"
            )
        object.__setattr__(self, 'status', SolverStatus(self.status))

    @property
    def gap(self):
        return self.upper - self.lower

    @property
    def converged(self):
        return self.status is SolverStatus.CONVERGED


def _require_bipartite(delta):
    if delta.bipartite_shape is None:
        raise ValidationError("Operator needs a bipartite_shape")
    return delta.bipartite_shape


def _spectral_norm(arr):
    return float(np.max(np.abs(np.linalg.eigvalsh(arr))))


def _nuclear_norm(arr):
    return float(np.sum(np.abs(np.linalg.eigvalsh(arr))))


def _inner(a, b):
    return float(np.vdot(a, b).real)


# PPT norm

def _split_bound(d, q, shape):
    """Upper bound ||d - q||_1 + ||q^Gamma||_1 for any Hermitian q."""
    q = (q + q.conj().T) / 2
    return _nuclear_norm(d - q) + _nuclear_norm(partial_transpose_array(q, shape))


def _rescaled_point(x, shape):
    t = max(1.0, _spectral_norm(x), _spectral_norm(partial_transpose_array(x, shape)))
    return x / t


def _restore_feasibility(x, shape, rounds, tol):
    """Alternate projections onto both order intervals, then rescale."""
    a = x
    for _ in range(rounds):
        a = clip_spectrum(a, -1.0, 1.0)
        if _spectral_norm(partial_transpose_array(a, shape)) <= 1.0 + tol:
            break
        a = partial_transpose_array(clip_spectrum(partial_transpose_array(a, shape), -1.0, 1.0), shape)
        if _spectral_norm(a) <= 1.0 + tol:
            break
    return _rescaled_point(a, shape)


def _ppt_feasible_value(d, a, shape, tol):
    a = (a + a.conj().T) / 2
    excess = max(_spectral_norm(a), _spectral_norm(partial_transpose_array(a, shape))) - 1.0
    if excess > tol:
        raise ValidationError(f"PPT primal point infeasible by {excess:.3e}")
    return _inner(a, d)


def ppt_norm(delta, cfg=None):
    """PPT distinguishability norm of a bipartite Hermitian operator."""
    delta = as_hermitian(delta)
    shape = _require_bipartite(delta)
    cfg = cfg or SolverConfig.from_settings()
    tol = tolerances()
    n = delta.dim

    scale = operator_norm(delta)
    if scale == 0.0:
        zero = np.zeros((n, n), dtype=complex)
        return SolverReport(0.0, 0.0, 0, 0.0, 0.0, SolverStatus.CONVERGED, point=zero, dual=zero)

    d = delta.entries / scale
    rho, alpha = cfg.penalty, cfg.relaxation
    eps = cfg.tolerance * math.sqrt(n)

    x = np.zeros((n, n), dtype=complex)
    z = np.zeros_like(x)
    u = np.zeros_like(x)
    best_point, best_lower = np.zeros_like(x), 0.0
    best_q, best_upper = np.zeros_like(x), _nuclear_norm(d)
    status = SolverStatus.ITERATION_LIMIT
    r_norm = s_norm = float('inf')

    iteration = 0
    for iteration in range(1, cfg.max_iterations + 1):
        x = clip_spectrum(z - u + d / rho, -1.0, 1.0)
        x_hat = alpha * x + (1.0 - alpha) * z
        z_old = z
        z = partial_transpose_array(
            clip_spectrum(partial_transpose_array(x_hat + u, shape), -1.0, 1.0), shape
        )
        u = u + x_hat - z
        r_norm = float(np.linalg.norm(x - z))
        s_norm = rho * float(np.linalg.norm(z - z_old))

        done = max(r_norm, s_norm) <= eps
        if done or iteration % cfg.check_every == 0:
            upper = _split_bound(d, rho * u, shape)
            if upper < best_upper:
                best_upper, best_q = upper, rho * u
            candidate = _rescaled_point(x, shape)
            lower = _inner(candidate, d)
            if lower > best_lower:
                best_lower, best_point = lower, candidate
            if best_upper - best_lower <= cfg.gap_tolerance * max(1.0, abs(best_upper)):
                done = True
        if done:
            status = SolverStatus.CONVERGED
            break

    restored = _restore_feasibility(x, shape, cfg.feasibility_rounds, tol.feasibility)
    if _inner(restored, d) > best_lower:
        best_point = restored

    lower = _ppt_feasible_value(d, best_point, shape, tol.feasibility)
    upper = _split_bound(d, best_q, shape)
    if status is SolverStatus.ITERATION_LIMIT:
        logger.warning(
            "PPT solver hit %d iterations (dim %d): gap %.3e", iteration, n, (upper - lower) * scale
        )
    else:
        logger.debug("PPT solver converged in %d iterations, gap %.3e", iteration, (upper - lower) * scale)
    return SolverReport(
        lower=lower * scale,
        upper=upper * scale,
        iterations=iteration,
        primal_residual=r_norm,
        dual_residual=s_norm,
        status=status,
        point=best_point,
        dual=best_q * scale,
    )


def verify_ppt_report(delta, report):
    """Re-derive (lower, upper) of a PPT report from its point and split."""
    delta = as_hermitian(delta)
    shape = _require_bipartite(delta)
    lower = _ppt_feasible_value(delta.entries, report.point, shape, tolerances().feasibility)
    upper = _split_bound(delta.entries, report.dual, shape)
    return lower, upper


# POVM SDP

def _herm(stack):
    return (stack + np.conj(np.swapaxes(stack, -1, -2))) / 2


def _feasible_povm(a, eta=1e-12):
    """Nearest-looking valid POVM: clip to PSD, mix in Id/N, renormalize."""
    count, n = a.shape[0], a.shape[1]
    a = clip_spectrum(_herm(a), 0.0, np.inf)
    a = (1.0 - eta) * a + eta * np.eye(n) / count
    values, vectors = np.linalg.eigh(_herm(a.sum(axis=0)))
    inv_sqrt = (vectors / np.sqrt(values)) @ vectors.conj().T
    return _herm(inv_sqrt @ a @ inv_sqrt)


def _dual_certificate(c, multipliers):
    """Shift the averaged multiplier until it dominates every target."""
    y = _herm(multipliers.mean(axis=0))
    shift = max(0.0, float(np.max(np.linalg.eigvalsh(c - y)[:, -1])))
    y = y + shift * np.eye(y.shape[0])
    return float(np.trace(y).real), y


def multi_hypothesis_povm_sdp(targets, cfg=None, initial=None):
    """max sum_i tr(A_i X_i) over POVMs (A_i); returns (Povm, SolverReport)."""
    cfg = cfg or SolverConfig.from_settings()
    tol = tolerances()
    if len(targets) < 1:
        raise ValidationError("Need at least one target")
    xs = np.stack([as_hermitian(t).entries for t in targets])
    count, n = xs.shape[0], xs.shape[1]

    scale = float(max(np.max(np.abs(np.linalg.eigvalsh(xs))), 0.0))
    if scale == 0.0:
        effects = np.zeros_like(xs)
        effects[0] = np.eye(n)
        povm = Povm.from_arrays(effects)
        return povm, SolverReport(0.0, 0.0, 0, 0.0, 0.0, SolverStatus.CONVERGED,
                                  point=povm, dual=np.zeros((n, n), dtype=complex))
    c = xs / scale
    rho, alpha = cfg.penalty, cfg.relaxation
    eps = cfg.tolerance * math.sqrt(n * count)
    identity = np.eye(n)

    if initial is not None:
        if len(initial) != count or initial.dim != n:
            raise ValidationError("Initial POVM does not match the targets")
        b = np.array(initial.stacked, dtype=complex)
    else:
        b = np.repeat(identity[None, :, :] / count, count, axis=0).astype(complex)
    u = np.zeros_like(b)
    a = b.copy()

    best_effects = _feasible_povm(a)
    best_lower = float(np.einsum('kij,kji->', best_effects, c).real)
    best_upper, best_y = _dual_certificate(c, c)
    status = SolverStatus.ITERATION_LIMIT
    r_norm = s_norm = float('inf')

    iteration = 0
    for iteration in range(1, cfg.inner_max_iterations + 1):
        a = clip_spectrum(b - u + c / rho, 0.0, np.inf)
        a_hat = alpha * a + (1.0 - alpha) * b
        v = a_hat + u
        b_old = b
        b = v - (v.sum(axis=0) - identity)[None, :, :] / count
        u = u + a_hat - b
        r_norm = float(np.linalg.norm(a - b))
        s_norm = rho * float(np.linalg.norm(b - b_old))

        done = max(r_norm, s_norm) <= eps
        if done or iteration % cfg.check_every == 0:
            upper, y = _dual_certificate(c, rho * u)
            if upper < best_upper:
                best_upper, best_y = upper, y
            effects = _feasible_povm(a)
            lower = float(np.einsum('kij,kji->', effects, c).real)
            if lower > best_lower:
                best_lower, best_effects = lower, effects
            if best_upper - best_lower <= cfg.gap_tolerance * max(1.0, abs(best_upper)):
                done = True
        if done:
            status = SolverStatus.CONVERGED
            break

    povm = Povm.from_arrays(best_effects)
    lower = float(np.einsum('kij,kji->', povm.stacked, xs).real)
    y = best_y * scale
    slack = float(np.min(np.linalg.eigvalsh(y[None, :, :] - xs)[:, 0]))
    if slack < -tol.dual_feasibility * max(1.0, scale):
        raise ValidationError(f"Dual certificate infeasible by {-slack:.3e}")
    upper = float(np.trace(y).real)
    if status is SolverStatus.ITERATION_LIMIT:
        logger.debug("POVM SDP stopped at %d iterations, gap %.3e", iteration, upper - lower)
    return povm, SolverReport(
        lower=lower, upper=upper, iterations=iteration,
        primal_residual=r_norm, dual_residual=s_norm, status=status,
        point=povm, dual=y,
    )


# One-way LOCC

def _conditional_blocks(delta_arr, shape, alice_effects):
    """Y_i = tr_first((A_i (x) Id) Delta) for each effect A_i."""
    d_a, d_b = shape
    tensor = delta_arr.reshape(d_a, d_b, d_a, d_b)
    return _herm(np.einsum('iac,cbae->ibe', alice_effects, tensor))


def _alice_targets(delta_arr, shape, bob_responses):
    """X_i = tr_second(Delta (Id (x) B_i)) for each response B_i."""
    d_a, d_b = shape
    tensor = delta_arr.reshape(d_a, d_b, d_a, d_b)
    return _herm(np.einsum('abce,ieb->iac', tensor, bob_responses))


def one_way_value(delta, alice_povm):
    """sum_i ||tr_first((A_i (x) Id) Delta)||_1: Alice fixed, Bob Helstrom."""
    delta = as_hermitian(delta)
    shape = _require_bipartite(delta)
    if alice_povm.dim != shape[0]:
        raise ValidationError("Alice's POVM must act on the first factor")
    blocks = _conditional_blocks(delta.entries, shape, alice_povm.stacked)
    return float(np.sum(np.abs(np.linalg.eigvalsh(blocks))))


def _eigenbasis_povm(arr):
    _, vectors = eigh_descending(arr)
    return Povm.from_arrays([np.outer(v, v.conj()) for v in vectors.T])


def _seesaw(delta, shape, povm, cfg):
    value = one_way_value(delta, povm)
    iterations = 0
    for iterations in range(1, cfg.seesaw_iterations + 1):
        blocks = _conditional_blocks(delta.entries, shape, povm.stacked)
        responses = sign_operator(blocks)
        targets = _alice_targets(delta.entries, shape, responses)
        candidate, _ = multi_hypothesis_povm_sdp(targets, cfg, initial=povm)
        candidate_value = one_way_value(delta, candidate)
        if candidate_value <= value:
            break
        improvement = candidate_value - value
        povm, value = candidate, candidate_value
        if improvement <= cfg.gap_tolerance * max(1.0, value):
            break
    return value, povm, iterations


def locc_one_way_lower(delta, cfg=None, rng=None, initial_povm=None):
    """Seesaw lower bound on the one-way LOCC norm; returns (value, Povm).

    Starts: `initial_povm` if given, the eigenbasis of tr_second(Delta), then
    mixtures of d_A Haar bases (d_A^2 rank-1 outcomes) up to cfg.restarts.
    """
    from .constructions import random_rank1_povm

    delta = as_hermitian(delta)
    shape = _require_bipartite(delta)
    cfg = cfg or SolverConfig.from_settings()
    rng = rng if rng is not None else RngStream(0).generator()
    d_a = shape[0]

    starts = [] if initial_povm is None else [initial_povm]
    starts.append(_eigenbasis_povm(partial_trace_array(delta.entries, shape, 'second')))
    while len(starts) < cfg.restarts + (initial_povm is not None):
        starts.append(random_rank1_povm(d_a, d_a, rng))

    best_value, best_povm = -1.0, None
    for index, start in enumerate(starts):
        value, povm, iterations = _seesaw(delta, shape, start, cfg)
        logger.debug("Seesaw start %d: %.10g after %d rounds", index, value, iterations)
        if value > best_value:
            best_value, best_povm = value, povm
    return one_way_value(delta, best_povm), best_povm


# LO bounds for flagged block operators

@dataclass(frozen=True, eq=False)
class LoEstimate:
    """d * (best sphere value found); an estimate, not a certified bound."""

    value: float
    sphere_sup: float
    vector: np.ndarray = field(repr=False)
    heuristic: bool = True


def _sphere_values(blocks, x):
    """<x|Delta_i|x> for a batch of vectors x, shape (restarts, blocks)."""
    return np.einsum('rj,ijk,rk->ri', x.conj(), blocks, x).real


def _sign_locked_polish(blocks, x, f, rounds=50):
    """Top eigenvector of sum_i s_i Delta_i for the current signs; monotone."""
    for _ in range(rounds):
        signs = np.where(_sphere_values(blocks, x) >= 0, 1.0, -1.0)
        combined = np.einsum('ri,ijk->rjk', signs, blocks)
        _, vectors = np.linalg.eigh(combined)
        candidate = vectors[:, :, -1]
        candidate_f = np.abs(_sphere_values(blocks, candidate)).sum(axis=1)
        better = candidate_f > f * (1.0 + 1e-15)
        if not better.any():
            break
        x = np.where(better[:, None], candidate, x)
        f = np.where(better, candidate_f, f)
    return x, f


def lo_norm_block_upper(blocks, cfg=None, rng=None):
    """d * sup_x sum_i |<x|Delta_i|x>| by projected subgradient ascent."""
    cfg = cfg or SolverConfig.from_settings()
    rng = rng if rng is not None else RngStream(0).generator()
    stacked = blocks.stacked
    d = blocks.block_dim

    x = unit_vectors(d, cfg.lo_restarts, rng)
    values = _sphere_values(stacked, x)
    f = np.abs(values).sum(axis=1)
    best_x, best_f = x.copy(), f.copy()
    active = np.ones(cfg.lo_restarts, dtype=bool)

    for t in range(1, cfg.lo_iterations + 1):
        signs = np.where(values >= 0, 1.0, -1.0)
        grad = np.einsum('ri,ijk,rk->rj', signs, stacked, x)
        candidate = x + (cfg.lo_step / math.sqrt(t)) * grad
        candidate /= np.linalg.norm(candidate, axis=1, keepdims=True)
        candidate_values = _sphere_values(stacked, candidate)
        candidate_f = np.abs(candidate_values).sum(axis=1)

        change = np.abs(candidate_f - f) / np.maximum(f, 1e-300)
        x = np.where(active[:, None], candidate, x)
        values = np.where(active[:, None], candidate_values, values)
        f = np.where(active, candidate_f, f)
        improved = f > best_f
        best_x[improved], best_f[improved] = x[improved], f[improved]
        active &= change >= 1e-8
        if not active.any():
            break

    best_x, best_f = _sign_locked_polish(stacked, best_x, best_f)
    winner = int(np.argmax(best_f))
    sup = float(best_f[winner])
    return LoEstimate(value=d * sup, sphere_sup=sup, vector=best_x[winner])


def _grid_centers(length, spacing):
    count = max(1, math.ceil(length / spacing))
    return (np.arange(count) + 0.5) * (length / count)


def _moduli_from_angles(angles):
    """Points of the positive orthant of the real unit sphere, one per row."""
    m, k = angles.shape
    moduli = np.ones((m, k + 1))
    sines = np.ones(m)
    for j in range(k):
        moduli[:, j] = sines * np.cos(angles[:, j])
        sines = sines * np.sin(angles[:, j])
    moduli[:, k] = sines
    return moduli


def sphere_net_chunks(d, resolution):
    """A resolution-net of the unit sphere of C^d modulo a global phase.

    Yields (rows, d) complex chunks. Moduli come from a hyperspherical angle
    grid and phases (first coordinate real) from a circular grid; each grid
    contributes at most resolution/2 to the distance.
    """
    if d == 1:
        yield np.ones((1, 1), dtype=complex)
        return
    spacing = resolution / math.sqrt(d - 1)
    angle_axis = _grid_centers(math.pi / 2, spacing)
    phase_count = max(1, math.ceil(2 * math.pi / spacing))
    phase_axis = np.arange(phase_count) * (2 * math.pi / phase_count)

    angles = np.stack(np.meshgrid(*([angle_axis] * (d - 1)), indexing='ij'), -1).reshape(-1, d - 1)
    phases = np.stack(np.meshgrid(*([phase_axis] * (d - 1)), indexing='ij'), -1).reshape(-1, d - 1)
    phase_factors = np.concatenate([np.ones((len(phases), 1)), np.exp(1j * phases)], axis=1)
    for modulus in _moduli_from_angles(angles):
        yield phase_factors * modulus


def sphere_net_size(d, resolution):
    if d == 1:
        return 1
    spacing = resolution / math.sqrt(d - 1)
    angles = max(1, math.ceil((math.pi / 2) / spacing))
    phases = max(1, math.ceil(2 * math.pi / spacing))
    return (angles * phases) ** (d - 1)


def lo_norm_block_exact_small(blocks, net_resolution=1 / 16):
    """(lower, upper) around d * sup_x sum_i |<x|Delta_i|x>| from a sphere net.

    upper = d * max_net / (1 - 8 * resolution), i.e. 2d * max_net on a 1/16-net.
    """
    d = blocks.block_dim
    if d > 3:
        raise RefusalError(f"Sphere nets are only certified up to block dimension 3, got {d}")
    if not 0 < net_resolution < 1 / 8:
        raise ValidationError("net_resolution must lie in (0, 1/8)")
    size = sphere_net_size(d, net_resolution)
    if size > (1 + 2 / net_resolution) ** (2 * d):
        raise RefusalError(f"Net of {size} points exceeds the volumetric cardinality bound")

    stacked = blocks.stacked
    best = 0.0
    for chunk in sphere_net_chunks(d, net_resolution):
        values = np.abs(_sphere_values(stacked, chunk)).sum(axis=1)
        best = max(best, float(values.max()))
    logger.debug("Sphere net of %d points, max %.6g", size, best)
    return d * best, d * best / (1 - 8 * net_resolution)
