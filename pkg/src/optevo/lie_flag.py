"""The su(n) layer behind flag-manifold geometry.

A flag manifold enters only through its block partition (n_1, ..., n_t) of
n. The isotropy subalgebra keeps the block-diagonal part of a traceless
skew-Hermitian matrix, the tangent space at the origin keeps the
off-diagonal blocks, and an invariant metric rescales each off-diagonal
block pair by one positive multiplier. On top of that split this module
provides the negative Killing pairing, brackets, conjugation, one-parameter
orbits, and the two certificates (structural and variational) for a tangent
direction whose one-parameter orbit is a geodesic for every invariant
metric at once.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    BlockStructureError,
    DimensionMismatchError,
    NotSkewHermitianError,
    NotUnitaryError,
)
from .numerics import DEFAULT_TOLERANCES, Tolerances, as_matrix, is_unitary, unitary_exp

__all__ = [
    "BlockStructure",
    "SuVector",
    "MetricOperator",
    "killing_inner",
    "killing_norm",
    "reductive_split",
    "apply_metric",
    "bracket",
    "is_equigeodesic_structural",
    "is_equigeodesic_variational",
    "ad_conjugate",
    "coset_orbit",
]


@dataclass(frozen=True)
class BlockStructure:
    """Ordered partition (n_1, ..., n_t) of n with t >= 2 parts."""

    parts: tuple[int, ...]

    def __post_init__(self) -> None:
        parts = tuple(int(p) for p in self.parts)
        object.__setattr__(self, "parts", parts)
        if len(parts) < 2:
            raise BlockStructureError("a partition needs at least two parts")
        if any(p < 1 for p in parts):
            raise BlockStructureError(f"parts must be positive, got {parts}")

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def count(self) -> int:
        return len(self.parts)

    def slices(self) -> list[slice]:
        """Row/column ranges of the parts, in order."""
        edges = np.cumsum((0,) + self.parts)
        return [slice(int(a), int(b)) for a, b in zip(edges[:-1], edges[1:])]

    def diagonal_mask(self) -> np.ndarray:
        """Boolean n x n mask, True on the diagonal blocks."""
        mask = np.zeros((self.n, self.n), dtype=bool)
        for s in self.slices():
            mask[s, s] = True
        return mask


@dataclass(frozen=True)
class SuVector:
    """Element of su(n): a traceless skew-Hermitian matrix.

    Construction validates both constraints against the structural
    tolerance and stores a read-only copy. Offending inputs are rejected,
    never repaired.
    """

    matrix: np.ndarray
    tol: Tolerances = field(default=DEFAULT_TOLERANCES, repr=False, compare=False)

    def __post_init__(self) -> None:
        a = as_matrix(self.matrix)
        scale = max(1.0, float(np.linalg.norm(a)))
        skew_defect = float(np.linalg.norm(a + a.conj().T))
        if skew_defect > self.tol.structural * scale:
            raise NotSkewHermitianError(
                f"skew-hermiticity defect {skew_defect:.3e} exceeds tolerance"
            )
        tr = complex(np.trace(a))
        if abs(tr) > self.tol.structural * scale:
            raise NotSkewHermitianError(f"trace {tr:.3e} exceeds tolerance")
        a = a.copy()
        a.flags.writeable = False
        object.__setattr__(self, "matrix", a)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True)
class MetricOperator:
    """Invariant metric on the tangent space of a flag manifold.

    One positive multiplier per unordered block pair, keyed by 0-based
    indices ``(i, j)`` with ``j < i``. The operator acts entrywise, scaling
    the (i, j) and (j, i) blocks of an off-diagonal matrix by the same
    factor.
    """

    blocks: BlockStructure
    multipliers: dict[tuple[int, int], float]

    def __post_init__(self) -> None:
        wanted = {(i, j) for i in range(self.blocks.count) for j in range(i)}
        given = {(int(i), int(j)): float(v) for (i, j), v in self.multipliers.items()}
        if set(given) != wanted:
            raise BlockStructureError(
                f"multipliers must cover exactly the pairs {sorted(wanted)}"
            )
        if any(v <= 0.0 for v in given.values()):
            raise BlockStructureError("metric multipliers must be positive")
        object.__setattr__(self, "multipliers", given)

    @classmethod
    def identity(cls, blocks: BlockStructure) -> "MetricOperator":
        pairs = {(i, j): 1.0 for i in range(blocks.count) for j in range(i)}
        return cls(blocks, pairs)

    @classmethod
    def sample(
        cls,
        blocks: BlockStructure,
        rng: np.random.Generator,
        low: float = 0.1,
        high: float = 10.0,
    ) -> "MetricOperator":
        """Random metric, multipliers log-uniform in [low, high]."""
        if not (0.0 < low <= high):
            raise ValueError("need 0 < low <= high")
        pairs = {
            (i, j): float(np.exp(rng.uniform(np.log(low), np.log(high))))
            for i in range(blocks.count)
            for j in range(i)
        }
        return cls(blocks, pairs)

    def factor_matrix(self) -> np.ndarray:
        """Entrywise n x n scaling grid: multipliers off-diagonal, 1 on-diagonal."""
        f = np.ones((self.blocks.n, self.blocks.n))
        sl = self.blocks.slices()
        for (i, j), mu in self.multipliers.items():
            f[sl[i], sl[j]] = mu
            f[sl[j], sl[i]] = mu
        return f


def _require_same_dim(x: SuVector, y: SuVector) -> None:
    if x.dim != y.dim:
        raise DimensionMismatchError(f"dimensions differ: {x.dim} vs {y.dim}")


def _require_blocks_fit(x: SuVector, blocks: BlockStructure) -> None:
    if blocks.n != x.dim:
        raise DimensionMismatchError(
            f"partition sums to {blocks.n} but the matrix has dimension {x.dim}"
        )


def killing_inner(x: SuVector, y: SuVector) -> float:
    """Negative Killing pairing -B(X, Y) = -2n tr(XY) on su(n).

    Positive definite on skew-Hermitian matrices. The imaginary part of the
    trace is a roundoff artifact and is discarded after checking it is
    negligible against the value itself.
    """
    _require_same_dim(x, y)
    n = x.dim
    val = complex(-2.0 * n * np.trace(x.matrix @ y.matrix))
    if abs(val.imag) > 1e-10 * max(1.0, abs(val.real)):
        raise ArithmeticError(f"pairing came out non-real: {val!r}")
    return float(val.real)


def killing_norm(x: SuVector) -> float:
    """Norm induced by the negative Killing pairing."""
    return float(np.sqrt(max(0.0, killing_inner(x, x))))


def reductive_split(x: SuVector, blocks: BlockStructure) -> tuple[SuVector, SuVector]:
    """Split X into its isotropy part (diagonal blocks) and tangent part.

    The two pieces sum to X entry for entry, and they are orthogonal under
    the trace form because their supports never meet.
    """
    _require_blocks_fit(x, blocks)
    mask = blocks.diagonal_mask()
    zero = np.zeros_like(x.matrix)
    iso = np.where(mask, x.matrix, zero)
    tan = np.where(mask, zero, x.matrix)
    return SuVector(iso), SuVector(tan)


def apply_metric(metric: MetricOperator, x_m: SuVector) -> SuVector:
    """Apply an invariant metric operator to a tangent vector.

    The input must have vanishing diagonal blocks for the metric's
    partition.
    """
    _require_blocks_fit(x_m, metric.blocks)
    mask = metric.blocks.diagonal_mask()
    diag_norm = float(np.linalg.norm(x_m.matrix[mask]))
    scale = max(1.0, float(np.linalg.norm(x_m.matrix)))
    if diag_norm > DEFAULT_TOLERANCES.structural * scale:
        raise BlockStructureError(
            "metric operators act on off-diagonal matrices; "
            f"diagonal-block mass {diag_norm:.3e} found"
        )
    return SuVector(metric.factor_matrix() * x_m.matrix)


def bracket(x: SuVector, y: SuVector) -> SuVector:
    """Commutator XY - YX, again in su(n)."""
    _require_same_dim(x, y)
    return SuVector(x.matrix @ y.matrix - y.matrix @ x.matrix)


def _line_criterion_residual(x: SuVector) -> tuple[float, float]:
    """Residual of the eigen-condition for the partition (1, n-1).

    Writing the matrix as [[i a, -x*], [x, A]], returns
    (|A x - i a x|, max(1, |A| |x|)).
    """
    m = x.matrix
    a = float(m[0, 0].imag)
    vec = m[1:, 0]
    comp = m[1:, 1:]
    residual = float(np.linalg.norm(comp @ vec - 1j * a * vec))
    scale = max(1.0, float(np.linalg.norm(comp)) * float(np.linalg.norm(vec)))
    return residual, scale

def is_equigeodesic_structural(
    x: SuVector, blocks: BlockStructure, tol: Tolerances | None = None
) -> bool:
    """Closed-form certificate that every invariant metric geodesic through
    the origin with initial direction X is the one-parameter orbit of X.

    For the partition (1, n-1) the certificate is the eigen-condition
    A x = i a x on the blocks of X = [[i a, -x*], [x, A]], tested with a
    scale-relative threshold. For partitions with three or more parts it is
    the vanishing of every product X_ij X_jk over pairwise distinct block
    indices. For a two-part partition whose first part exceeds 1 the
    product test has no terms; the function warns and returns True, and
    only the variational certificate carries information there.
    """
    tols = tol or DEFAULT_TOLERANCES
    _require_blocks_fit(x, blocks)
    if blocks.count == 2:
        if blocks.parts[0] == 1:
            residual, scale = _line_criterion_residual(x)
            return residual <= tols.search * scale
        warnings.warn(
            "the block-product certificate is vacuous for a two-part partition "
            "with a non-line first part; use the variational test",
            RuntimeWarning,
            stacklevel=2,
        )
        return True
    sl = blocks.slices()
    worst = 0.0
    for i, j, k in itertools.permutations(range(blocks.count), 3):
        left = x.matrix[sl[i], sl[j]]
        right = x.matrix[sl[j], sl[k]]
        prod = float(np.linalg.norm(left @ right))
        scale = max(1.0, float(np.linalg.norm(left)) * float(np.linalg.norm(right)))
        worst = max(worst, prod / scale)
    return worst <= tols.search


def is_equigeodesic_variational(
    x: SuVector,
    blocks: BlockStructure,
    samples: int = 16,
    rng_seed: int = 0,
    tol: Tolerances | None = None,
) -> tuple[bool, float]:
    """Sampled certificate: the tangent projection of [X, L X_m] must vanish
    for every invariant metric L.

    Draws ``samples`` random metrics (multipliers log-uniform in [0.1, 10])
    and returns the verdict together with the largest Killing-norm residual
    seen, normalized by max(1, |X|^2).
    """
    if samples < 1:
        raise ValueError("need at least one metric sample")
    tols = tol or DEFAULT_TOLERANCES
    _require_blocks_fit(x, blocks)
    rng = np.random.default_rng(rng_seed)
    _, tangent = reductive_split(x, blocks)
    denom = max(1.0, killing_inner(x, x))
    worst = 0.0
    for _ in range(samples):
        metric = MetricOperator.sample(blocks, rng)
        moved = apply_metric(metric, tangent)
        _, br_tangent = reductive_split(bracket(x, moved), blocks)
        worst = max(worst, killing_norm(br_tangent) / denom)
    return worst <= tols.search, worst


def ad_conjugate(u, x: SuVector, tol: Tolerances | None = None) -> SuVector:
    """Adjoint action U X U* of a unitary on su(n)."""
    a = as_matrix(u)
    if a.shape[0] != x.dim:
        raise DimensionMismatchError(
            f"unitary of dimension {a.shape[0]} against vector of dimension {x.dim}"
        )
    if not is_unitary(a, tol):
        raise NotUnitaryError("conjugation requires a unitary matrix")
    return SuVector(a @ x.matrix @ a.conj().T)


def coset_orbit(x: SuVector, t: float) -> np.ndarray:
    """One-parameter orbit exp(t X), computed through the Hermitian
    eigendecomposition of iX."""
    return unitary_exp(1j * x.matrix, float(t), 1.0)
