"""Concrete state pairs and POVM families.

Fixed subspaces are spanned by the leading computational basis vectors.
"""
import logging
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .exceptions import CoverageError, RefusalError, ValidationError
from .hermitian import HermitianOperator, jordan_decompose
from .norms import FlaggedBlockOperator, Povm
from .sampling import DensityOperator, RngStream, haar_unitary, uniform_state

logger = logging.getLogger(__name__)

COVERAGE_TESTS = 1000
_GOLDEN_ANGLE = math.pi * (3.0 - math.sqrt(5.0))
_PAULI = np.array([
    [[0, 1], [1, 0]],
    [[0, -1j], [1j, 0]],
    [[1, 0], [0, -1]],
], dtype=complex)


class Provenance(str, Enum):
    WERNER = 'werner'
    DATA_HIDING = 'data_hiding'
    LO_VS_LOCC = 'lo_vs_locc'
    UNIFORM_RANDOM = 'uniform_random'


@dataclass(frozen=True, eq=False)
class StatePair:
    rho: DensityOperator
    sigma: DensityOperator
    provenance: Provenance

    def __post_init__(self):
        if self.rho.dim != self.sigma.dim:
            raise ValidationError(f"State dims differ: {self.rho.dim} vs {self.sigma.dim}")
        object.__setattr__(self, 'provenance', Provenance(self.provenance))

    @property
    def delta(self):
        """rho - sigma, carrying rho's bipartite shape."""
        return self.rho - self.sigma


@dataclass(frozen=True, eq=False)
class PovmFamily:
    members: tuple
    epsilon: float | None = None
    net_points: np.ndarray | None = None

    def __post_init__(self):
        object.__setattr__(self, 'members', tuple(self.members))

    def __len__(self):
        return len(self.members)


def _require_even(d):
    if d < 2 or d % 2:
        raise ValidationError(f"d must be even and >= 2, got {d}")


def _state(arr, shape):
    return DensityOperator(HermitianOperator.trusted(arr, shape))


def swap_operator(d):
    swap = np.zeros((d * d, d * d))
    for a in range(d):
        for b in range(d):
            swap[b * d + a, a * d + b] = 1.0
    return swap


def werner_pair(d):
    """Normalized symmetric and antisymmetric projectors on C^d (x) C^d."""
    if d < 2:
        raise ValidationError(f"werner_pair needs d >= 2, got {d}")
    swap = swap_operator(d)
    identity = np.eye(d * d)
    sym = (identity + swap) / 2
    anti = (identity - swap) / 2
    return StatePair(
        rho=_state(sym / (d * (d + 1) / 2), (d, d)),
        sigma=_state(anti / (d * (d - 1) / 2), (d, d)),
        provenance=Provenance.WERNER,
    )


def data_hiding_pair(d, rng):
    """U P_E U^dagger and U P_{E-perp} U^dagger, each over d^2/2, for Haar U."""
    _require_even(d)
    n = d * d
    half = n // 2
    u = haar_unitary(n, rng)
    inside = u[:, :half]
    outside = u[:, half:]
    return StatePair(
        rho=_state(inside @ inside.conj().T / half, (d, d)),
        sigma=_state(outside @ outside.conj().T / half, (d, d)),
        provenance=Provenance.DATA_HIDING,
    )


def lo_vs_locc_delta(d, rng):
    """Flagged blocks U_i (2 P_E - Id) U_i^dagger with independent Haar U_i."""
    _require_even(d)
    base = np.diag(np.r_[np.ones(d // 2), -np.ones(d // 2)]).astype(complex)
    blocks = []
    for _ in range(d):
        u = haar_unitary(d, rng)
        blocks.append(HermitianOperator.trusted(u @ base @ u.conj().T))
    return FlaggedBlockOperator(tuple(blocks))


def flagged_to_state_pair(blocks, tol=1e-12):
    """Normalized positive and negative parts of the expanded operator."""
    for index, block in enumerate(blocks.blocks):
        values = np.linalg.eigvalsh(block.entries)
        if values[-1] <= tol or values[0] >= -tol:
            raise ValidationError(f"Block {index} lacks a positive or a negative part")
    parts = jordan_decompose(blocks.expand())
    shape = blocks.expand().bipartite_shape
    pos, neg = parts.positive_part.entries, parts.negative_part.entries
    return StatePair(
        rho=_state(pos / np.trace(pos).real, shape),
        sigma=_state(neg / np.trace(neg).real, shape),
        provenance=Provenance.LO_VS_LOCC,
    )


def uniform_pair(d, rng):
    """Two independent HS-uniform states on C^d (x) C^d."""
    if d < 1:
        raise ValidationError(f"uniform_pair needs d >= 1, got {d}")
    return StatePair(
        rho=uniform_state(d * d, rng, (d, d)),
        sigma=uniform_state(d * d, rng, (d, d)),
        provenance=Provenance.UNIFORM_RANDOM,
    )


def flag_basis_povm(n):
    """Computational-basis measurement on C^n."""
    return Povm.from_arrays([np.diag(row) for row in np.eye(n)])


def random_rank1_povm(d, n_bases, rng):
    """Uniform mixture of n_bases Haar-random basis measurements."""
    if n_bases < 1:
        raise ValidationError(f"n_bases must be >= 1, got {n_bases}")
    effects = []
    for _ in range(n_bases):
        u = haar_unitary(d, rng)
        effects.extend(np.outer(v, v.conj()) / n_bases for v in u.T)
    return Povm.from_arrays(effects)


def rank1_refinement(m, prune=1e-12):
    """Split every effect into its spectral rank-1 pieces."""
    pieces = []
    for effect in m.stacked:
        values, vectors = np.linalg.eigh(effect)
        pieces.extend(
            value * np.outer(v, v.conj()) for value, v in zip(values, vectors.T) if value > prune
        )
    return Povm.from_arrays(pieces)


# Nets of [-Id, Id] in the operator-norm gauge

def _gauge_distances(target, points):
    """||target - A_i||_inf for a stack of net points."""
    return np.abs(np.linalg.eigvalsh(target[None, :, :] - points)).max(axis=1)


def _random_interval_point(d, rng):
    u = haar_unitary(d, rng)
    return (u * rng.uniform(-1.0, 1.0, size=d)) @ u.conj().T


def _fibonacci_sphere(count):
    i = np.arange(count)
    z = 1.0 - (2 * i + 1) / count
    r = np.sqrt(1.0 - z * z)
    phi = i * _GOLDEN_ANGLE
    return np.stack([r * np.cos(phi), r * np.sin(phi), z], axis=1)


def _qubit_net(epsilon):
    """Eigenvalue grid times per-gap Bloch-direction nets.

    Eigenvalues are rounded to a grid of spacing <= epsilon/2, costing at
    most epsilon/4; the direction net then needs chord radius
    (3 epsilon / 4) / b for half-gap b.
    """
    steps = math.ceil(4 / epsilon)
    grid = np.linspace(-1.0, 1.0, steps + 1)
    points = []
    for i, high in enumerate(grid):
        for low in grid[:i + 1]:
            centre = (high + low) / 2
            half_gap = (high - low) / 2
            radius = (0.75 * epsilon) / half_gap if half_gap > 0 else float('inf')
            if radius >= 2:
                directions = np.array([[0.0, 0.0, 1.0]])
            else:
                theta = 2 * math.asin(radius / 2)
                directions = _fibonacci_sphere(max(4, math.ceil((4 / theta) ** 2)))
            bloch = np.einsum('nk,kij->nij', directions, _PAULI)
            points.append(centre * np.eye(2) + half_gap * bloch)
    return np.concatenate(points)


def _check_coverage(points, epsilon, rng, tests=COVERAGE_TESTS):
    d = points.shape[1]
    for _ in range(tests):
        target = _random_interval_point(d, rng)
        distance = float(_gauge_distances(target, points).min())
        if distance > epsilon + 1e-12:
            raise CoverageError(
                f"Net misses a target at gauge distance {distance:.4f} > {epsilon}",
                witness=target, distance=distance,
            )


def _randomized_net(d, epsilon, rng, max_members):
    points = [_random_interval_point(d, rng)]
    passed = 0
    while passed < COVERAGE_TESTS:
        target = _random_interval_point(d, rng)
        distance = float(_gauge_distances(target, np.stack(points)).min())
        if distance <= epsilon:
            passed += 1
            continue
        if len(points) >= max_members:
            raise CoverageError(
                f"Randomized net reached {max_members} members without covering",
                witness=target, distance=distance,
            )
        points.append(target)
        passed = 0
    return np.stack(points)


def net_povm_family(d, epsilon, rng=None, mode='certified', max_members=20000):
    """Two-outcome POVMs ((Id + A_i)/2, (Id - A_i)/2) over an epsilon-net {A_i}.

    'certified' builds a deterministic grid (d = 2 only); 'randomized' adds
    uncovered random targets until COVERAGE_TESTS consecutive ones are
    covered (d <= 3). Both are validated against random targets.
    """
    if not 0 < epsilon < 1:
        raise ValidationError(f"epsilon must lie in (0, 1), got {epsilon}")
    rng = rng if rng is not None else RngStream(0).generator()
    bound = (3 / epsilon) ** (d * d)
    if mode == 'certified':
        if d != 2:
            raise RefusalError("Certified nets are only built for d = 2")
        points = _qubit_net(epsilon)
        _check_coverage(points, epsilon, rng)
    elif mode == 'randomized':
        if d > 3:
            raise RefusalError("Randomized nets are only built for d <= 3")
        points = _randomized_net(d, epsilon, rng, int(min(bound, max_members)))
    else:
        raise ValidationError(f"mode must be 'certified' or 'randomized', got {mode!r}")

    logger.info("Net of %d points for d=%d, epsilon=%.3g (bound %.0f)", len(points), d, epsilon, bound)
    identity = np.eye(d)
    members = [Povm.from_arrays([(identity + a) / 2, (identity - a) / 2]) for a in points]
    points.flags.writeable = False
    return PovmFamily(members=members, epsilon=epsilon, net_points=points)
