"""POVMs and the norms they induce on differences of states.

For a POVM M = (M_i), ||Delta||_M = sum_i |tr(M_i Delta)|; the unrestricted
class ALL gives the trace norm. Certificate-producing engines for the PPT,
one-way LOCC and LO classes live in `solvers`.
"""
import logging
from dataclasses import dataclass

import numpy as np

from .conf import tolerances
from .exceptions import ValidationError
from .hermitian import HermitianOperator, as_hermitian, trace_norm
from .sampling import unit_vectors

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class Povm:
    """Finite family of PSD effects summing to the identity."""

    effects: tuple

    def __post_init__(self):
        effects = tuple(as_hermitian(e) for e in self.effects)
        if not effects:
            raise ValidationError("A POVM needs at least one effect")
        dim = effects[0].dim
        if any(e.dim != dim for e in effects):
            raise ValidationError("POVM effects must share one dimension")
        object.__setattr__(self, 'effects', effects)
        stacked = np.stack([e.entries for e in effects])
        stacked.flags.writeable = False
        object.__setattr__(self, '_stacked', stacked)

        tol = tolerances()
        min_eigs = np.linalg.eigvalsh(stacked)[:, 0]
        if np.any(min_eigs < -tol.psd):
            worst = int(np.argmin(min_eigs))
            raise ValidationError(f"Effect {worst} is not PSD: min eigenvalue {min_eigs[worst]:.3e}")
        defect = np.linalg.eigvalsh(stacked.sum(axis=0) - np.eye(dim))
        if np.max(np.abs(defect)) > tol.completeness:
            raise ValidationError(
                f"Effects do not sum to the identity: ||sum - Id||_inf = {np.max(np.abs(defect)):.3e}"
            )

    @classmethod
    def from_arrays(cls, arrays):
        return cls(tuple(HermitianOperator.trusted(a) for a in arrays))

    @property
    def dim(self):
        return self.effects[0].dim

    @property
    def stacked(self):
        """Effects as one read-only (n, dim, dim) array."""
        return self._stacked

    def __len__(self):
        return len(self.effects)


@dataclass(frozen=True, eq=False)
class TwoOutcomeEffect:
    """Effect m with 0 <= m <= Id; stands for the POVM (m, Id - m)."""

    m: HermitianOperator

    def __post_init__(self):
        m = as_hermitian(self.m)
        object.__setattr__(self, 'm', m)
        values = np.linalg.eigvalsh(m.entries)
        tol = tolerances().psd
        if values[0] < -tol or values[-1] > 1 + tol:
            raise ValidationError(
                f"Effect spectrum [{values[0]:.3e}, {values[-1]:.3e}] leaves [0, 1]"
            )

    def as_povm(self):
        return Povm((self.m, HermitianOperator.trusted(np.eye(self.m.dim) - self.m.entries)))


@dataclass(frozen=True, eq=False)
class FlaggedBlockOperator:
    """Delta = sum_i |i><i| (x) Delta_i with classically flagged blocks."""

    blocks: tuple

    def __post_init__(self):
        blocks = tuple(as_hermitian(b) for b in self.blocks)
        if not blocks:
            raise ValidationError("Need at least one block")
        if any(b.dim != blocks[0].dim for b in blocks):
            raise ValidationError("All blocks must share one dimension")
        object.__setattr__(self, 'blocks', blocks)

    @property
    def block_dim(self):
        return self.blocks[0].dim

    @property
    def stacked(self):
        return np.stack([b.entries for b in self.blocks])

    def __len__(self):
        return len(self.blocks)

    def expand(self):
        n, d = len(self.blocks), self.block_dim
        full = np.zeros((n * d, n * d), dtype=complex)
        for i, block in enumerate(self.blocks):
            full[i * d:(i + 1) * d, i * d:(i + 1) * d] = block.entries
        return HermitianOperator.trusted(full, (n, d))


def _outcome_values(delta, povm):
    if povm.dim != delta.dim:
        raise ValidationError(f"POVM dim {povm.dim} does not match operator dim {delta.dim}")
    return np.einsum('kij,ji->k', povm.stacked, delta.entries).real


def povm_norm(delta, m):
    """sum_i |tr(M_i Delta)|."""
    delta = as_hermitian(delta)
    return float(np.sum(np.abs(_outcome_values(delta, m))))


def all_norm(delta):
    return trace_norm(delta)


def helstrom_error_probability(rho, sigma, m):
    """Error probability 1/2 (1 - ||rho/2 - sigma/2||_M) for equal priors."""
    rho, sigma = as_hermitian(rho), as_hermitian(sigma)
    if rho.dim != sigma.dim:
        raise ValidationError(f"Dimension mismatch: {rho.dim} vs {sigma.dim}")
    bias = 0.5 * povm_norm(rho - sigma, m)
    return float(np.clip(0.5 * (1.0 - bias), 0.0, 0.5))


def two_outcome_reduction(m, subset):
    """Coarse-grain a POVM to the effect sum_{i in subset} M_i."""
    indices = sorted(set(int(i) for i in subset))
    if indices and (indices[0] < 0 or indices[-1] >= len(m)):
        raise ValidationError(f"Subset {indices} out of range for {len(m)} effects")
    total = m.stacked[indices].sum(axis=0) if indices else np.zeros((m.dim, m.dim), dtype=complex)
    return TwoOutcomeEffect(HermitianOperator.trusted(total))


def locc_one_way_exact_flagged(blocks):
    """One-way LOCC norm of a flagged block operator: sum_i ||Delta_i||_1."""
    return float(sum(trace_norm(b) for b in blocks.blocks))


def uniform_norm_estimate(delta, n_samples, rng):
    """Monte-Carlo E|<x|Delta|x>| over uniform unit vectors, with its SE."""
    if n_samples < 100:
        raise ValidationError("uniform_norm_estimate needs n_samples >= 100")
    delta = as_hermitian(delta)
    x = unit_vectors(delta.dim, n_samples, rng)
    values = np.abs(np.einsum('ni,ij,nj->n', x.conj(), delta.entries, x).real)
    return float(values.mean()), float(values.std(ddof=1) / np.sqrt(n_samples))
