"""Convex-geometry estimators over support-function and membership oracles.

Mean widths are spherical: Gaussian averages of h_K divided by the exact
gamma_n = E||G||_2. Volumes are hit-or-miss estimates in a bounding ball and
are only attempted up to eight real dimensions.
"""
import logging
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.special import gammaln

from .conf import SampleDefaults, tolerances
from .exceptions import RefusalError, ValidationError
from .hermitian import as_hermitian
from .sampling import RngStream, gue_batch

logger = logging.getLogger(__name__)

MAX_VOLUME_DIM = 8
_CHUNK = 2000


class OracleKind:
    REAL = 'real'
    HERMITIAN = 'hermitian'


@dataclass(frozen=True, eq=False)
class SupportOracle:
    """h_K on a real space (vectors) or on H(C^d) (matrices).

    `evaluate_batch` maps a stack of directions to their support values; it
    must not mutate shared state so estimators can share one oracle.
    """

    ambient_dim: int
    evaluate_batch: Callable = field(repr=False)
    kind: str = OracleKind.REAL
    matrix_dim: int | None = None
    name: str = ''

    def __post_init__(self):
        if self.kind not in (OracleKind.REAL, OracleKind.HERMITIAN):
            raise ValidationError(f"Unknown oracle kind {self.kind!r}")
        if self.kind == OracleKind.HERMITIAN:
            if self.matrix_dim is None or self.matrix_dim ** 2 != self.ambient_dim:
                raise ValidationError("Hermitian oracles need ambient_dim = matrix_dim ** 2")

    def evaluate(self, direction):
        if self.kind == OracleKind.HERMITIAN:
            direction = as_hermitian(direction).entries
        return float(self.evaluate_batch(np.asarray(direction)[None])[0])

    __call__ = evaluate

    def gaussian_directions(self, n, rng):
        if self.kind == OracleKind.HERMITIAN:
            return gue_batch(self.matrix_dim, n, rng)
        return rng.standard_normal((n, self.ambient_dim))


@dataclass(frozen=True)
class GeometryConstants:
    n: int
    gamma_n: float
    alpha_n: float


@dataclass(frozen=True)
class WidthEstimate:
    mean: float
    standard_error: float
    n_samples: int

    def __post_init__(self):
        if self.n_samples < 100:
            raise ValidationError("Width estimates need at least 100 samples")


@dataclass(frozen=True)
class VolumeEstimate:
    vrad: float
    standard_error: float
    hit_fraction: float
    volume: float
    n_samples: int
    real_dim: int
    radius: float


def gamma_exact(n):
    """E||G||_2 for a standard Gaussian in R^n."""
    if n < 1:
        raise ValidationError(f"gamma_n needs n >= 1, got {n}")
    return float(math.sqrt(2.0) * np.exp(gammaln((n + 1) / 2) - gammaln(n / 2)))


def alpha(n):
    """Mean width of a unit segment conv{+-u} in R^n."""
    return math.sqrt(2.0 / math.pi) / gamma_exact(n)


def geometry_constants(n):
    return GeometryConstants(n=int(n), gamma_n=gamma_exact(n), alpha_n=alpha(n))


def unit_ball_volume(n, radius=1.0):
    return float(np.exp((n / 2) * math.log(math.pi) - gammaln(n / 2 + 1))) * radius ** n


# Oracles

def segment_oracle(u):
    """conv{+-u}: h(x) = |<u, x>|; u a real vector or a Hermitian matrix."""
    if isinstance(u, np.ndarray) and u.ndim == 1:
        u = np.asarray(u, dtype=float)
        return SupportOracle(len(u), lambda xs: np.abs(xs @ u), name='segment')
    u = as_hermitian(u).entries
    return SupportOracle(
        u.shape[0] ** 2,
        lambda xs: np.abs(np.einsum('ij,nji->n', u, xs).real),
        kind=OracleKind.HERMITIAN, matrix_dim=u.shape[0], name='segment',
    )


def ball_oracle(n, radius=1.0):
    return SupportOracle(n, lambda xs: radius * np.linalg.norm(xs, axis=1), name='ball')


def cube_oracle(n):
    """[-1, 1]^n: h(x) = ||x||_1."""
    return SupportOracle(n, lambda xs: np.abs(xs).sum(axis=1), name='cube')


def povm_oracle(m):
    """K_M, whose support function is the POVM norm."""
    effects = m.stacked
    return SupportOracle(
        m.dim ** 2,
        lambda xs: np.abs(np.einsum('kij,nji->nk', effects, xs).real).sum(axis=1),
        kind=OracleKind.HERMITIAN, matrix_dim=m.dim, name='povm',
    )


def operator_norm_ball_oracle(d):
    """[-Id, Id] = S_inf ball: h(X) = ||X||_1."""
    return SupportOracle(
        d * d,
        lambda xs: np.abs(np.linalg.eigvalsh(xs)).sum(axis=1),
        kind=OracleKind.HERMITIAN, matrix_dim=d, name='operator-norm-ball',
    )


def trace_norm_ball_oracle(d):
    """S_1 ball: h(X) = ||X||_inf."""
    return SupportOracle(
        d * d,
        lambda xs: np.abs(np.linalg.eigvalsh(xs)).max(axis=1),
        kind=OracleKind.HERMITIAN, matrix_dim=d, name='trace-norm-ball',
    )


def support_oracle_sanity(oracle, n_pairs, rng):
    """Largest homogeneity and subadditivity defects over random pairs."""
    xs = oracle.gaussian_directions(n_pairs, rng)
    ys = oracle.gaussian_directions(n_pairs, rng)
    scales = rng.uniform(0.1, 10.0, size=n_pairs)
    hx, hy = oracle.evaluate_batch(xs), oracle.evaluate_batch(ys)
    scaled = oracle.evaluate_batch(xs * scales.reshape((-1,) + (1,) * (xs.ndim - 1)))
    homogeneity = float(np.max(np.abs(scaled - scales * hx) / np.maximum(scales * hx, 1e-300)))
    subadditivity = float(np.max(oracle.evaluate_batch(xs + ys) - hx - hy))
    return homogeneity, subadditivity


# Estimators

def _chunked_support(oracle, directions_for, n_samples):
    values = []
    remaining = n_samples
    while remaining > 0:
        size = min(_CHUNK, remaining)
        values.append(np.asarray(oracle.evaluate_batch(directions_for(size)), dtype=float))
        remaining -= size
    return np.concatenate(values)


def _width(values, gamma):
    n = len(values)
    return WidthEstimate(
        mean=float(values.mean() / gamma),
        standard_error=float(values.std(ddof=1) / math.sqrt(n) / gamma),
        n_samples=n,
    )


def mean_width_mc(oracle, n_samples=None, rng=None):
    """Spherical mean width: E h_K(G) / gamma_n."""
    n_samples = n_samples or SampleDefaults.from_settings().width
    if n_samples < 100:
        raise ValidationError("mean_width_mc needs n_samples >= 100")
    rng = rng if rng is not None else RngStream(0).generator()
    values = _chunked_support(oracle, lambda k: oracle.gaussian_directions(k, rng), n_samples)
    return _width(values, gamma_exact(oracle.ambient_dim))


def width_projection_traceless(oracle, n_samples=None, rng=None):
    """Mean width of the projection of K onto the traceless hyperplane."""
    if oracle.kind != OracleKind.HERMITIAN:
        raise ValidationError("Traceless projection needs a Hermitian oracle")
    n_samples = n_samples or SampleDefaults.from_settings().width
    if n_samples < 100:
        raise ValidationError("width_projection_traceless needs n_samples >= 100")
    rng = rng if rng is not None else RngStream(0).generator()
    d = oracle.matrix_dim
    identity = np.eye(d)

    def directions(k):
        g = gue_batch(d, k, rng)
        traces = np.trace(g, axis1=1, axis2=2).real / d
        return g - traces[:, None, None] * identity

    values = _chunked_support(oracle, directions, n_samples)
    return _width(values, gamma_exact(d * d - 1))


# Largest-of-two GUE edge fluctuations on the Tracy-Widom scale.
_EDGE_SHIFT = 1.262


def schatten_width_reference(d, which, edge_corrected=True):
    """Reference mean widths of the Schatten unit balls of H(C^d).

    'Sinf' (operator-norm ball): d^{3/2} 8/(3 pi) / gamma_{d^2}.
    'S1' (trace-norm ball): 2 sqrt(d) / gamma_{d^2}, optionally with the
    largest-eigenvalue edge shift.
    """
    if d < 2:
        raise ValidationError("Schatten references need d >= 2")
    gamma = gamma_exact(d * d)
    if which == 'Sinf':
        return d ** 1.5 * 8 / (3 * math.pi) / gamma
    if which == 'S1':
        edge = 2 * math.sqrt(d)
        if edge_corrected:
            edge -= _EDGE_SHIFT * d ** (-1 / 6)
        return edge / gamma
    raise ValidationError(f"which must be 'S1' or 'Sinf', got {which!r}")


def _ball_points(n, size, radius, rng):
    g = rng.standard_normal((size, n))
    g /= np.linalg.norm(g, axis=1, keepdims=True)
    return g * (radius * rng.random(size) ** (1.0 / n))[:, None]


def volume_radius_mc(membership, radius, n, n_samples=None, rng=None):
    """Hit-or-miss volume radius: vrad = R * (hits / total)^{1/n}.

    `membership` maps an (N, n) batch of points to a boolean array.
    """
    if n > MAX_VOLUME_DIM:
        raise RefusalError(f"Hit-or-miss volumes are capped at {MAX_VOLUME_DIM} real dimensions")
    if radius <= 0:
        raise ValidationError("Bounding radius must be positive")
    n_samples = n_samples or SampleDefaults.from_settings().volume_for(n)
    rng = rng if rng is not None else RngStream(0).generator()

    hits = 0
    remaining = n_samples
    chunk = 50 * _CHUNK
    while remaining > 0:
        size = min(chunk, remaining)
        hits += int(np.count_nonzero(membership(_ball_points(n, size, radius, rng))))
        remaining -= size
    if hits == 0:
        raise RefusalError(f"No hits in {n_samples} samples; shrink the bounding radius")

    p = hits / n_samples
    p_se = math.sqrt(p * (1 - p) / n_samples)
    vrad = radius * p ** (1 / n)
    logger.debug("Volume MC: %d/%d hits in dimension %d", hits, n_samples, n)
    return VolumeEstimate(
        vrad=vrad,
        standard_error=radius * p ** (1 / n - 1) * p_se / n,
        hit_fraction=p,
        volume=p * unit_ball_volume(n, radius),
        n_samples=n_samples,
        real_dim=n,
        radius=radius,
    )


def projective_tensor_gauge(points, n, gauge):
    """sum_i ||x_i||_K for points of R^{n m} split into n blocks of R^m.

    `gauge` maps a (..., m) array of blocks to their K-gauges.
    """
    points = np.asarray(points, dtype=float)
    if points.shape[-1] % n:
        raise ValidationError(f"Point length {points.shape[-1]} is not a multiple of {n}")
    blocks = points.reshape(points.shape[:-1] + (n, points.shape[-1] // n))
    return np.asarray(gauge(blocks)).sum(axis=-1)


def projective_tensor_membership(point, n, gauge, slack=1e-12):
    """Membership in B_1^n (x) K: sum_i ||x_i||_K <= 1."""
    return bool(projective_tensor_gauge(point, n, gauge) <= 1.0 + slack)


def euclidean_gauge(blocks):
    return np.linalg.norm(blocks, axis=-1)


def interval_gauge(blocks):
    return np.abs(blocks).max(axis=-1)


def ordered_topk_norm(x, k):
    """Sum of the k largest absolute coordinates."""
    x = np.asarray(x, dtype=float)
    if not 1 <= k <= len(x):
        raise ValidationError(f"k={k} outside [1, {len(x)}]")
    return float(np.sort(np.abs(x))[::-1][:k].sum())


def _require_traceless(*vectors):
    tol = tolerances().traceless
    for v in vectors:
        if abs(float(np.sum(v))) > tol * max(1.0, float(np.abs(v).sum())):
            raise ValidationError(f"Vector must sum to zero, sums to {float(np.sum(v)):.3e}")


def majorization_factor(x, y):
    """2n ||x||_inf / ||y||_1."""
    x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
    y_norm = float(np.abs(y).sum())
    if y_norm == 0.0:
        raise ValidationError("y must be nonzero")
    return 2 * len(x) * float(np.abs(x).max()) / y_norm


def majorization_factor_check(x, y, k):
    """|||x||| <= 2n (||x||_inf / ||y||_1) |||y||| for the top-k norm."""
    x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
    if x.shape != y.shape:
        raise ValidationError("x and y must have the same length")
    _require_traceless(x, y)
    bound = majorization_factor(x, y) * ordered_topk_norm(y, k)
    return ordered_topk_norm(x, k) <= bound * (1 + 1e-12) + 1e-15


def is_majorized(x, y, tol=1e-10):
    """x is majorized by y: decreasing partial sums of x never exceed y's."""
    x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
    if x.shape != y.shape:
        raise ValidationError("x and y must have the same length")
    sx = np.cumsum(np.sort(x)[::-1])
    sy = np.cumsum(np.sort(y)[::-1])
    return bool(np.all(sx <= sy + tol) and abs(sx[-1] - sy[-1]) <= tol)


def partial_sum_sandwich(x, y):
    """Per k: (S_k(x)/||x||_inf, min(k, n - k), 2n S_k(y)/||y||_1).

    S_k is the sum of the k largest entries; for traceless x, y the three
    columns are ordered left to right.
    """
    x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
    _require_traceless(x, y)
    n = len(x)
    k = np.arange(1, n + 1)
    left = np.cumsum(np.sort(x)[::-1]) / np.abs(x).max()
    right = 2 * n * np.cumsum(np.sort(y)[::-1]) / np.abs(y).sum()
    return np.stack([left, np.minimum(k, n - k).astype(float), right], axis=1)
