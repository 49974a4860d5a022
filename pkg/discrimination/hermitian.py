"""Dense Hermitian operators, spectral routines and bipartite maps.

Bipartite indices are row-major: |a>|b> sits at a * dB + b. The partial
transpose acts on the first factor, (M (x) N)^Gamma = M^T (x) N.
"""
from dataclasses import dataclass

import numpy as np

from .conf import tolerances
from .exceptions import ValidationError

SUBSYSTEMS = ('first', 'second')


@dataclass(frozen=True, eq=False)
class HermitianOperator:
    """Immutable dim x dim complex Hermitian matrix, optionally bipartite."""

    entries: np.ndarray
    bipartite_shape: tuple | None = None

    def __post_init__(self):
        arr = np.array(self.entries, dtype=complex)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
            raise ValidationError(f"Expected a non-empty square matrix, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise ValidationError("Operator entries must be finite")
        scale = float(np.max(np.abs(arr))) or 1.0
        asymmetry = float(np.max(np.abs(arr - arr.conj().T)))
        if asymmetry > tolerances().hermiticity * scale:
            raise ValidationError(
                f"Operator is not Hermitian: max |H - H^dagger| = {asymmetry:.3e}"
            )
        arr = (arr + arr.conj().T) / 2
        arr.flags.writeable = False
        object.__setattr__(self, 'entries', arr)
        if self.bipartite_shape is not None:
            d_a, d_b = (int(x) for x in self.bipartite_shape)
            if d_a < 1 or d_b < 1 or d_a * d_b != arr.shape[0]:
                raise ValidationError(
                    f"bipartite_shape {self.bipartite_shape} does not factor dim {arr.shape[0]}"
                )
            object.__setattr__(self, 'bipartite_shape', (d_a, d_b))

    @classmethod
    def trusted(cls, arr, bipartite_shape=None):
        """Wrap the output of a Hermiticity-preserving computation.

        Rounding noise is removed by symmetrizing; no tolerance check is made.
        """
        arr = np.asarray(arr, dtype=complex)
        return cls((arr + arr.conj().T) / 2, bipartite_shape)

    @property
    def dim(self):
        return self.entries.shape[0]

    def with_shape(self, bipartite_shape):
        return HermitianOperator(self.entries, bipartite_shape)

    def __add__(self, other):
        other = as_hermitian(other)
        _require_same_dim(self, other)
        return HermitianOperator.trusted(self.entries + other.entries, self.bipartite_shape)

    def __sub__(self, other):
        other = as_hermitian(other)
        _require_same_dim(self, other)
        return HermitianOperator.trusted(self.entries - other.entries, self.bipartite_shape)

    def __mul__(self, scalar):
        if np.iscomplexobj(scalar) and np.imag(scalar) != 0:
            raise ValidationError("Only real scalars preserve Hermiticity")
        return HermitianOperator.trusted(self.entries * float(np.real(scalar)), self.bipartite_shape)

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1.0

    def __repr__(self):
        shape = f", bipartite_shape={self.bipartite_shape}" if self.bipartite_shape else ""
        return f"HermitianOperator(dim={self.dim}{shape})"


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Eigenvalues sorted non-increasing."""

    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float).copy()
        if values.ndim != 1:
            raise ValidationError("Spectrum must be a vector")
        if np.any(np.diff(values) > 0):
            raise ValidationError("Spectrum must be sorted non-increasing")
        values.flags.writeable = False
        object.__setattr__(self, 'values', values)

    def __len__(self):
        return len(self.values)


@dataclass(frozen=True, eq=False)
class JordanDecomposition:
    positive_part: HermitianOperator
    negative_part: HermitianOperator


def as_hermitian(value, bipartite_shape=None):
    """Coerce arrays (or operators) to HermitianOperator."""
    if isinstance(value, HermitianOperator):
        if bipartite_shape is not None and value.bipartite_shape != tuple(bipartite_shape):
            return value.with_shape(bipartite_shape)
        return value
    entries = getattr(value, 'op', None)
    if isinstance(entries, HermitianOperator):
        return as_hermitian(entries, bipartite_shape)
    return HermitianOperator(np.asarray(value), bipartite_shape)


def identity(dim, bipartite_shape=None):
    return HermitianOperator(np.eye(dim, dtype=complex), bipartite_shape)


def _require_same_dim(a, b):
    if a.dim != b.dim:
        raise ValidationError(f"Dimension mismatch: {a.dim} vs {b.dim}")


def _require_shape(h):
    if h.bipartite_shape is None:
        raise ValidationError("Operator has no bipartite_shape")
    return h.bipartite_shape


def eigh_descending(arr):
    """numpy eigh with eigenvalues reordered non-increasing (stable on ties)."""
    values, vectors = np.linalg.eigh(arr)
    order = np.argsort(-values, kind='stable')
    return values[order], vectors[:, order]


def eig_hermitian(h):
    """Spectrum (non-increasing) and the matching orthonormal eigenvectors."""
    h = as_hermitian(h)
    values, vectors = eigh_descending(h.entries)
    return Spectrum(values), vectors


def trace_norm(h):
    return float(np.sum(np.abs(np.linalg.eigvalsh(as_hermitian(h).entries))))


def operator_norm(h):
    return float(np.max(np.abs(np.linalg.eigvalsh(as_hermitian(h).entries))))


def hs_norm(h):
    return float(np.linalg.norm(as_hermitian(h).entries))


def hs_inner(a, b):
    a, b = as_hermitian(a), as_hermitian(b)
    _require_same_dim(a, b)
    return float(np.vdot(a.entries, b.entries).real)


def partial_transpose_array(arr, bipartite_shape):
    d_a, d_b = bipartite_shape
    tensor = np.asarray(arr).reshape(d_a, d_b, d_a, d_b)
    return tensor.transpose(2, 1, 0, 3).reshape(d_a * d_b, d_a * d_b)


def partial_transpose(h):
    h = as_hermitian(h)
    shape = _require_shape(h)
    return HermitianOperator.trusted(partial_transpose_array(h.entries, shape), shape)


def partial_trace_array(arr, bipartite_shape, subsystem):
    d_a, d_b = bipartite_shape
    tensor = np.asarray(arr).reshape(d_a, d_b, d_a, d_b)
    if subsystem == 'first':
        return np.einsum('ajak->jk', tensor)
    if subsystem == 'second':
        return np.einsum('ajbj->ab', tensor)
    raise ValidationError(f"subsystem must be one of {SUBSYSTEMS}, got {subsystem!r}")


def partial_trace(h, subsystem):
    """Trace out `subsystem` ('first' or 'second'); the result is unshaped."""
    h = as_hermitian(h)
    shape = _require_shape(h)
    return HermitianOperator.trusted(partial_trace_array(h.entries, shape, subsystem))


def clip_spectrum(arr, lo, hi):
    """V clip(lambda, lo, hi) V^dagger for a Hermitian ndarray (or a stack)."""
    values, vectors = np.linalg.eigh(arr)
    clipped = np.clip(values, lo, hi)
    return (vectors * clipped[..., None, :]) @ np.conj(np.swapaxes(vectors, -1, -2))


def project_order_interval(h, lo, hi):
    """HS-nearest operator with spectrum in [lo, hi]."""
    if lo > hi:
        raise ValidationError(f"Empty order interval: lo={lo} > hi={hi}")
    h = as_hermitian(h)
    return HermitianOperator.trusted(clip_spectrum(h.entries, lo, hi), h.bipartite_shape)


def jordan_decompose(h):
    h = as_hermitian(h)
    values, vectors = np.linalg.eigh(h.entries)
    pos = (vectors * np.clip(values, 0, None)) @ vectors.conj().T
    neg = (vectors * np.clip(-values, 0, None)) @ vectors.conj().T
    return JordanDecomposition(
        positive_part=HermitianOperator.trusted(pos, h.bipartite_shape),
        negative_part=HermitianOperator.trusted(neg, h.bipartite_shape),
    )


def sign_operator(arr):
    """V sign(lambda) V^dagger with sign(0) = +1."""
    values, vectors = np.linalg.eigh(arr)
    signs = np.where(values >= 0, 1.0, -1.0)
    return (vectors * signs[..., None, :]) @ np.conj(np.swapaxes(vectors, -1, -2))


# Text fixture format: header "dim dA dB" (dA = dB = 0 when unshaped), then
# one "row col re im" line per upper-triangle entry, row <= col.

def write_operator(h, stream):
    h = as_hermitian(h)
    d_a, d_b = h.bipartite_shape or (0, 0)
    stream.write(f"{h.dim} {d_a} {d_b}\n")
    rows, cols = np.triu_indices(h.dim)
    for row, col in zip(rows, cols):
        value = h.entries[row, col]
        stream.write(f"{row} {col} {float(value.real)!r} {float(value.imag)!r}\n")


def _parse_fields(parts, kinds, where):
    try:
        return tuple(kind(part) for kind, part in zip(kinds, parts))
    except ValueError as exc:
        raise ValidationError(f"Malformed {where}: {' '.join(parts)!r}") from exc


def read_operator(stream):
    header = stream.readline().split()
    if len(header) != 3:
        raise ValidationError("Fixture header must read 'dim dA dB'")
    dim, d_a, d_b = _parse_fields(header, (int, int, int), 'fixture header')
    if dim < 1 or d_a < 0 or d_b < 0:
        raise ValidationError(f"Fixture header needs dim >= 1 and dA, dB >= 0, got {dim} {d_a} {d_b}")
    arr = np.zeros((dim, dim), dtype=complex)
    seen = 0
    for line_no, line in enumerate(stream, start=2):
        if not line.strip():
            continue
        parts = line.split()
        if len(parts) != 4:
            raise ValidationError(f"Malformed fixture line {line_no}: {line.strip()!r}")
        row, col, re, im = _parse_fields(parts, (int, int, float, float), f'fixture line {line_no}')
        if not 0 <= row <= col < dim:
            raise ValidationError(f"Entry ({row}, {col}) outside the upper triangle")
        value = complex(re, im)
        arr[row, col] = value
        arr[col, row] = value.conjugate()
        seen += 1
    if seen != dim * (dim + 1) // 2:
        raise ValidationError(f"Fixture lists {seen} entries, expected {dim * (dim + 1) // 2}")
    if np.any(np.abs(np.diag(arr).imag) > 0):
        raise ValidationError("Diagonal entries must be real")
    shape = (d_a, d_b) if d_a and d_b else None
    return HermitianOperator(arr, shape)
