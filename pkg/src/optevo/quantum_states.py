"""States, the ray metric, and energy uncertainty.

Pure states are unit vectors taken modulo phase wherever a distance or a
projector is involved. The distance between rays is the angle
arccos of the overlap modulus, which ranges over [0, pi/2]. Energy
uncertainty is the standard deviation of a Hermitian observable in a
state; its largest possible value over all states is half the spectral
spread, attained by an equal-weight superposition of extreme eigenvectors.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DimensionMismatchError,
    DistinguishedStateNotMappedError,
    InvalidQuasiPureError,
    NotRankOneError,
    NotUnitaryError,
    SpectraMismatchError,
)
from .numerics import (
    DEFAULT_TOLERANCES,
    Tolerances,
    as_matrix,
    frobenius,
    herm_eig,
    is_hermitian,
    is_unitary,
)

__all__ = [
    "Units",
    "PureState",
    "DensityMatrix",
    "QuasiPureSpec",
    "fs_distance",
    "fidelity",
    "energy_uncertainty",
    "energy_uncertainty_max",
    "projector",
    "state_from_projector",
    "quasi_pure",
    "quasi_pure_transport",
]


@dataclass(frozen=True)
class Units:
    """Physical scale of the evolution equations: the action quantum."""

    hbar: float = 1.0

    def __post_init__(self) -> None:
        if not self.hbar > 0.0:
            raise ValueError("hbar must be positive")


@dataclass(frozen=True)
class PureState:
    """Unit vector in C^n.

    The constructor validates normalization against the spectral tolerance
    and stores a read-only copy. Use :meth:`from_vector` to normalize an
    arbitrary nonzero vector first.
    """

    amplitudes: np.ndarray
    tol: Tolerances = field(default=DEFAULT_TOLERANCES, repr=False, compare=False)

    def __post_init__(self) -> None:
        a = np.asarray(self.amplitudes, dtype=complex)
        if a.ndim != 1 or a.size == 0:
            raise DimensionMismatchError(f"expected a nonempty vector, got shape {a.shape}")
        norm = float(np.linalg.norm(a))
        if abs(norm - 1.0) > self.tol.spectral:
            raise ValueError(f"state norm {norm!r} is not 1 within tolerance")
        a = a.copy()
        a.flags.writeable = False
        object.__setattr__(self, "amplitudes", a)

    @classmethod
    def from_vector(cls, vec, tol: Tolerances | None = None) -> "PureState":
        """Normalize a nonzero vector into a state."""
        a = np.asarray(vec, dtype=complex)
        norm = float(np.linalg.norm(a))
        if norm <= 0.0:
            raise ValueError("cannot normalize the zero vector")
        return cls(a / norm, tol or DEFAULT_TOLERANCES)

    @classmethod
    def basis_state(cls, n: int, k: int) -> "PureState":
        """The k-th standard basis vector of C^n."""
        if not 0 <= k < n:
            raise DimensionMismatchError(f"index {k} outside dimension {n}")
        a = np.zeros(n, dtype=complex)
        a[k] = 1.0
        return cls(a)

    @property
    def n(self) -> int:
        return self.amplitudes.size

    def overlap(self, other: "PureState") -> complex:
        """Inner product <self|other>."""
        if self.n != other.n:
            raise DimensionMismatchError(f"dimensions differ: {self.n} vs {other.n}")
        return complex(np.vdot(self.amplitudes, other.amplitudes))


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian positive semidefinite matrix of unit trace."""

    matrix: np.ndarray
    tol: Tolerances = field(default=DEFAULT_TOLERANCES, repr=False, compare=False)

    def __post_init__(self) -> None:
        a = as_matrix(self.matrix)
        if not is_hermitian(a, self.tol):
            raise ValueError("density matrix must be Hermitian")
        tr = complex(np.trace(a))
        if abs(tr - 1.0) > self.tol.spectral * max(1.0, abs(tr)):
            raise ValueError(f"trace {tr!r} is not 1 within tolerance")
        evals = np.linalg.eigvalsh((a + a.conj().T) / 2.0)
        if float(evals[0]) < -self.tol.spectral:
            raise ValueError(f"negative eigenvalue {float(evals[0])!r}")
        a = a.copy()
        a.flags.writeable = False
        object.__setattr__(self, "matrix", a)

    @property
    def n(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True)
class QuasiPureSpec:
    """Spectrum and eigenbasis of a quasi-pure mixture.

    One distinguished unit vector carries weight ``p1`` and the remaining
    n - 1 orthonormal vectors share the common weight ``p2``, with
    p1 + (n - 1) p2 = 1 and p1 != p2. The distinguished vector comes first
    in ``basis``.
    """

    p1: float
    p2: float
    basis: tuple[PureState, ...]

    def __post_init__(self) -> None:
        basis = tuple(self.basis)
        object.__setattr__(self, "basis", basis)
        n = len(basis)
        if n < 2:
            raise InvalidQuasiPureError("need at least two basis states")
        if any(state.n != n for state in basis):
            raise InvalidQuasiPureError("basis must hold n states of dimension n")
        p1, p2 = float(self.p1), float(self.p2)
        object.__setattr__(self, "p1", p1)
        object.__setattr__(self, "p2", p2)
        eps = DEFAULT_TOLERANCES.spectral
        if p1 < -eps or p1 > 1.0 + eps or p2 < -eps:
            raise InvalidQuasiPureError(f"weights out of range: p1={p1}, p2={p2}")
        if abs(p1 + (n - 1) * p2 - 1.0) > eps:
            raise InvalidQuasiPureError("weights must satisfy p1 + (n-1) p2 = 1")
        if abs(p1 - p2) <= eps:
            raise InvalidQuasiPureError("p1 = p2 degenerates to the maximally mixed state")
        for i in range(n):
            for j in range(i + 1, n):
                ov = abs(basis[i].overlap(basis[j]))
                if ov > 1e-10:
                    raise InvalidQuasiPureError(
                        f"basis states {i} and {j} overlap by {ov:.3e}"
                    )

    @property
    def n(self) -> int:
        return len(self.basis)

    @property
    def distinguished(self) -> PureState:
        return self.basis[0]


def fs_distance(phi: PureState, psi: PureState) -> float:
    """Ray distance arccos |<phi|psi>|, in [0, pi/2].

    Insensitive to the phases of both arguments. The overlap modulus is
    clamped into [0, 1] before the arccos so roundoff cannot push it out of
    the domain.
    """
    ov = abs(phi.overlap(psi))
    return float(np.arccos(min(max(ov, 0.0), 1.0)))


def fidelity(phi: PureState, psi: PureState) -> float:
    """Squared overlap modulus |<phi|psi>|^2."""
    ov = abs(phi.overlap(psi))
    return float(min(ov * ov, 1.0))


def energy_uncertainty(h, phi: PureState, tol: Tolerances | None = None) -> float:
    """Standard deviation of a Hermitian observable in a pure state.

    Computed as sqrt(|H phi|^2 - <phi|H|phi>^2), which is algebraically the
    variance and numerically more stable than forming H^2. Tiny negative
    variances from roundoff are clamped to zero; anything below the
    spectral tolerance in magnitude signals a broken input and raises.
    """
    tols = tol or DEFAULT_TOLERANCES
    a = as_matrix(h)
    if a.shape[0] != phi.n:
        raise DimensionMismatchError(
            f"operator of dimension {a.shape[0]} against state of dimension {phi.n}"
        )
    if not is_hermitian(a, tols):
        raise ValueError("observable must be Hermitian")
    image = a @ phi.amplitudes
    mean = float(np.vdot(phi.amplitudes, image).real)
    var = float(np.vdot(image, image).real) - mean * mean
    if var < -tols.spectral * max(1.0, mean * mean):
        raise ArithmeticError(f"variance fell below the roundoff floor: {var!r}")
    return float(np.sqrt(max(var, 0.0)))


def energy_uncertainty_max(h, tol: Tolerances | None = None) -> tuple[float, PureState]:
    """Largest energy uncertainty any state can have, with a witness.

    The value is half the spectral spread. The witness is the equal-weight
    superposition of one lowest and one highest eigenvector, whose
    uncertainty attains the value; a balanced two-point mixture of those
    eigenvectors gives the same number.
    """
    w, v = herm_eig(h, tol)
    value = float(w[-1] - w[0]) / 2.0
    if w.size == 1:
        return value, PureState(v[:, 0])
    witness = (v[:, 0] + v[:, -1]) / np.sqrt(2.0)
    return value, PureState(witness)


def projector(phi: PureState) -> DensityMatrix:
    """Rank-one density matrix |phi><phi|."""
    a = phi.amplitudes
    return DensityMatrix(np.outer(a, a.conj()))


def state_from_projector(rho: DensityMatrix, tol: Tolerances | None = None) -> PureState:
    """Recover the state of a rank-one density matrix.

    The phase is fixed by rotating the first nonzero amplitude onto the
    positive real axis, so the output is a deterministic function of the
    projector.
    """
    w, v = herm_eig(rho.matrix, tol)
    if rho.n >= 2 and float(w[-2]) > 1e-10:
        raise NotRankOneError(
            f"second-largest eigenvalue {float(w[-2])!r} exceeds the rank-one gate"
        )
    vec = v[:, -1]
    idx = int(np.argmax(np.abs(vec) > 1e-9))
    pivot = vec[idx]
    vec = vec * (pivot.conjugate() / abs(pivot))
    vec = vec / float(np.linalg.norm(vec))
    return PureState(vec)


def quasi_pure(spec: QuasiPureSpec) -> DensityMatrix:
    """Assemble the density matrix of a quasi-pure specification."""
    out = np.zeros((spec.n, spec.n), dtype=complex)
    for weight, state in zip([spec.p1] + [spec.p2] * (spec.n - 1), spec.basis):
        a = state.amplitudes
        out += weight * np.outer(a, a.conj())
    return DensityMatrix(out)


def quasi_pure_transport(
    source: QuasiPureSpec,
    target: QuasiPureSpec,
    u,
    tol: Tolerances | None = None,
) -> bool:
    """Whether a unitary carries one quasi-pure state exactly onto another.

    The two specifications must share the spectrum (p1, p2). Because every
    non-distinguished eigenvector carries the same weight, any unitary that
    maps the distinguished ray of the source onto that of the target maps
    the full mixture onto the target mixture; this function checks the
    distinguished rays and then verifies the conjugation residual.
    """
    if abs(source.p1 - target.p1) > 1e-12 or abs(source.p2 - target.p2) > 1e-12:
        raise SpectraMismatchError(
            f"weights differ: ({source.p1}, {source.p2}) vs ({target.p1}, {target.p2})"
        )
    a = as_matrix(u)
    if source.n != target.n or a.shape[0] != source.n:
        raise DimensionMismatchError("specifications and unitary must share one dimension")
    if not is_unitary(a, tol):
        raise NotUnitaryError("transport requires a unitary matrix")
    mapped = PureState.from_vector(a @ source.distinguished.amplitudes)
    # Ray agreement is gated on infidelity, the quadratic form of the ray
    # angle; an angle-linear gate this tight would sit below the sqrt(eps)
    # conditioning floor and reject exact matches.
    if 1.0 - fidelity(mapped, target.distinguished) > 1e-9:
        raise DistinguishedStateNotMappedError(
            "the unitary moves the distinguished ray off target"
        )
    rho = quasi_pure(source).matrix
    sigma = quasi_pure(target).matrix
    return frobenius(a @ rho @ a.conj().T - sigma) <= 1e-9
