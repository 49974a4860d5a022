"""Seeded samplers: Ginibre, GUE, HS-uniform states, Haar unitaries.

Every sampler takes a numpy Generator; `RngStream` builds one from a Philox
counter-based bit generator keyed by (seed, stream_id), so a trial's draws
depend only on its own key.
"""
from dataclasses import dataclass

import numpy as np

from .conf import tolerances
from .exceptions import ValidationError
from .hermitian import HermitianOperator

_UINT64_MAX = 2 ** 64 - 1


@dataclass(frozen=True)
class RngStream:
    """Reproducible sub-stream: identical keys give bit-identical draws.

    `substream` lands in the top word of the Philox counter, which keeps
    streams sharing (seed, stream_id) apart (experiments pass d here).
    """

    seed: int
    stream_id: int = 0
    substream: int = 0

    def __post_init__(self):
        for name in ('seed', 'stream_id', 'substream'):
            value = getattr(self, name)
            if not 0 <= int(value) <= _UINT64_MAX:
                raise ValidationError(f"{name} must be a 64-bit unsigned integer, got {value}")

    def generator(self):
        bit_generator = np.random.Philox(
            key=np.array([self.seed, self.stream_id], dtype=np.uint64),
            counter=np.array([0, 0, 0, self.substream], dtype=np.uint64),
        )
        return np.random.Generator(bit_generator)


@dataclass(frozen=True, eq=False)
class DensityOperator:
    """PSD, unit-trace Hermitian operator."""

    op: HermitianOperator

    def __post_init__(self):
        tol = tolerances()
        values = np.linalg.eigvalsh(self.op.entries)
        if values[0] < -tol.psd:
            raise ValidationError(f"State is not PSD: min eigenvalue {values[0]:.3e}")
        trace = float(np.trace(self.op.entries).real)
        if abs(trace - 1.0) > tol.trace:
            raise ValidationError(f"State trace is {trace!r}, expected 1")

    @property
    def entries(self):
        return self.op.entries

    @property
    def dim(self):
        return self.op.dim

    def __sub__(self, other):
        return self.op - getattr(other, 'op', other)


def _require_dim(d):
    if int(d) < 1:
        raise ValidationError(f"Dimension must be >= 1, got {d}")
    return int(d)


def ginibre_batch(d, n, rng):
    """n independent d x d Ginibre matrices, E|entry|^2 = 1."""
    shape = (n, d, d)
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2)


def ginibre(d, rng):
    d = _require_dim(d)
    return ginibre_batch(d, 1, rng)[0]


def gue_batch(d, n, rng):
    """n standard Gaussian vectors of H(C^d) for the HS inner product."""
    g = ginibre_batch(d, n, rng)
    return (g + np.conj(np.swapaxes(g, -1, -2))) / np.sqrt(2)


def gue_standard(d, rng):
    d = _require_dim(d)
    return HermitianOperator.trusted(gue_batch(d, 1, rng)[0])


def uniform_state(n, rng, bipartite_shape=None):
    """HS-uniform density operator G G^dagger / tr(G G^dagger)."""
    n = _require_dim(n)
    g = ginibre(n, rng)
    w = g @ g.conj().T
    w /= np.trace(w).real
    return DensityOperator(HermitianOperator.trusted(w, bipartite_shape))


def haar_unitary(d, rng):
    """QR of a Ginibre matrix with R's diagonal made positive."""
    d = _require_dim(d)
    q, r = np.linalg.qr(ginibre(d, rng))
    phases = np.diag(r) / np.abs(np.diag(r))
    return q * phases


def random_subspace_projector(d, k, rng):
    d = _require_dim(d)
    if not 1 <= k <= d:
        raise ValidationError(f"Subspace dimension k={k} outside [1, {d}]")
    u = haar_unitary(d, rng)[:, :k]
    return HermitianOperator.trusted(u @ u.conj().T)


def traceless_sphere_direction(d, rng):
    """Uniform point of the unit HS sphere inside the traceless hyperplane."""
    d = _require_dim(d)
    g = gue_batch(d, 1, rng)[0]
    g -= (np.trace(g).real / d) * np.eye(d)
    return HermitianOperator.trusted(g / np.linalg.norm(g))


def unit_vectors(d, n, rng):
    x = rng.standard_normal((n, d)) + 1j * rng.standard_normal((n, d))
    return x / np.linalg.norm(x, axis=1, keepdims=True)


def uniform_unit_vector(d, rng):
    d = _require_dim(d)
    return unit_vectors(d, 1, rng)[0]
