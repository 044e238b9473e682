"""Dense complex-matrix substrate.

Hermitian eigendecompositions, unitary exponentials, the Frobenius norm,
and tolerance-aware structural predicates. Everything downstream is built
on these primitives. All operations are pure functions on plain numpy
arrays and never mutate their arguments.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError, EigenConvergenceError, NotHermitianError

__all__ = [
    "Tolerances",
    "DEFAULT_TOLERANCES",
    "as_matrix",
    "frobenius",
    "is_hermitian",
    "is_skew_hermitian",
    "is_unitary",
    "herm_eig",
    "unitary_exp",
    "golden_section_min",
]


@dataclass(frozen=True)
class Tolerances:
    """Numerical thresholds used across the package.

    Attributes
    ----------
    structural : float
        Scale-relative threshold for structural predicates such as
        hermiticity and unitarity. A matrix ``M`` passes a predicate when
        the defect norm is at most ``structural * max(1, |M|_F)``, so the
        checks behave the same for weak and strong operators.
    spectral : float
        Threshold for spectrum-derived quantities (state norms,
        eigenvalue floors, probability weights).
    search : float
        Threshold for criterion residuals and numerical searches.
    """

    structural: float = 1e-10
    spectral: float = 1e-12
    search: float = 1e-9

    def __post_init__(self) -> None:
        if not (self.structural > 0.0 and self.spectral > 0.0 and self.search > 0.0):
            raise ValueError("tolerances must be strictly positive")


DEFAULT_TOLERANCES = Tolerances()


def as_matrix(m) -> np.ndarray:
    """Coerce ``m`` to a square complex matrix, validating the shape."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
        raise DimensionMismatchError(f"expected a square matrix, got shape {a.shape}")
    return a


def frobenius(m) -> float:
    """Entrywise 2-norm of a square matrix."""
    return float(np.linalg.norm(as_matrix(m)))


def _scale(a: np.ndarray) -> float:
    # Relative scale floor: predicates on tiny matrices fall back to an
    # absolute threshold.
    return max(1.0, float(np.linalg.norm(a)))


def is_hermitian(m, tol: Tolerances | None = None) -> bool:
    """Whether ``M`` equals its conjugate transpose within tolerance."""
    a = as_matrix(m)
    t = (tol or DEFAULT_TOLERANCES).structural
    return float(np.linalg.norm(a - a.conj().T)) <= t * _scale(a)


def is_skew_hermitian(m, tol: Tolerances | None = None) -> bool:
    """Whether ``M`` equals the negative of its conjugate transpose within tolerance."""
    a = as_matrix(m)
    t = (tol or DEFAULT_TOLERANCES).structural
    return float(np.linalg.norm(a + a.conj().T)) <= t * _scale(a)


def is_unitary(m, tol: Tolerances | None = None) -> bool:
    """Whether ``M* M`` equals the identity within tolerance."""
    a = as_matrix(m)
    t = (tol or DEFAULT_TOLERANCES).structural
    gram = a.conj().T @ a
    return float(np.linalg.norm(gram - np.eye(a.shape[0]))) <= t * _scale(a)


def herm_eig(h, tol: Tolerances | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix.

    Parameters
    ----------
    h : array_like
        Square matrix, Hermitian within the structural tolerance.
    tol : Tolerances, optional
        Thresholds governing the hermiticity gate.

    Returns
    -------
    (w, v) : tuple of ndarray
        ``w`` holds real eigenvalues in ascending order and the columns of
        ``v`` the matching orthonormal eigenvectors, so that
        ``v @ diag(w) @ v.conj().T`` reconstructs the input. The input is
        symmetrized before factorization, which makes the output a
        deterministic function of the matrix alone; degenerate blocks come
        out orthonormal and every consumer in this package is invariant to
        the basis chosen inside such a block.

    Raises
    ------
    NotHermitianError
        If the hermiticity defect exceeds tolerance.
    EigenConvergenceError
        If the underlying solver fails to converge.
    """
    a = as_matrix(h)
    if not is_hermitian(a, tol):
        defect = float(np.linalg.norm(a - a.conj().T))
        raise NotHermitianError(f"hermiticity defect {defect:.3e} exceeds tolerance")
    sym = (a + a.conj().T) / 2.0
    try:
        w, v = np.linalg.eigh(sym)
    except np.linalg.LinAlgError as exc:
        raise EigenConvergenceError(str(exc)) from exc
    return np.real(w), v


def unitary_exp(h, t: float, hbar: float = 1.0, tol: Tolerances | None = None) -> np.ndarray:
    """Propagator ``exp(-i H t / hbar)`` of a Hermitian generator.

    Built from the eigendecomposition rather than a power series, so the
    result is unitary to working precision for any time and operator norm.

    Parameters
    ----------
    h : array_like
        Hermitian matrix.
    t : float
        Evolution time, any sign.
    hbar : float
        Positive action scale.

    Returns
    -------
    ndarray
        The unitary propagator.
    """
    if not hbar > 0.0:
        raise ValueError("hbar must be positive")
    w, v = herm_eig(h, tol)
    phases = np.exp(-1j * w * (float(t) / float(hbar)))
    return (v * phases) @ v.conj().T


def golden_section_min(f, a: float, b: float, xtol: float) -> tuple[float, float]:
    """Golden-section minimum of a unimodal scalar function on [a, b].

    Returns the midpoint of the final bracket and the function value there.
    """
    if not (b > a and xtol > 0.0):
        raise ValueError("need b > a and xtol > 0")
    invphi = (np.sqrt(5.0) - 1.0) / 2.0
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = f(c), f(d)
    while (b - a) > xtol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
    x = (a + b) / 2.0
    return x, f(x)
