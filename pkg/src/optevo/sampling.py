"""Seeded random generators used by the verification suite and the tests.

Everything takes an explicit numpy Generator so runs replay exactly from a
seed.
"""

from __future__ import annotations

import numpy as np

from .lie_flag import SuVector
from .quantum_states import PureState

__all__ = [
    "random_hermitian",
    "random_unitary",
    "random_pure_state",
    "random_su_vector",
    "random_equigeodesic",
]


def _ginibre(rng: np.random.Generator, n: int) -> np.ndarray:
    return rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))


def random_hermitian(rng: np.random.Generator, n: int, scale: float = 1.0) -> np.ndarray:
    g = _ginibre(rng, n)
    return scale * (g + g.conj().T) / 2.0


def random_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    # QR with the phase convention that makes the factor unique.
    q, r = np.linalg.qr(_ginibre(rng, n))
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def random_pure_state(rng: np.random.Generator, n: int) -> PureState:
    v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return PureState.from_vector(v)


def random_su_vector(rng: np.random.Generator, n: int, scale: float = 1.0) -> SuVector:
    g = _ginibre(rng, n)
    s = scale * (g - g.conj().T) / 2.0
    s -= (np.trace(s) / n) * np.eye(n)
    return SuVector(s)


def random_equigeodesic(
    rng: np.random.Generator,
    n: int,
    with_isotropy: bool = True,
) -> SuVector:
    """Random element of su(n) passing the eigen-condition certificate for
    the partition (1, n-1).

    With ``with_isotropy`` the diagonal blocks are populated too (a random
    line coefficient and a random complement block fixed up to satisfy the
    condition exactly); otherwise the result has off-diagonal blocks only.
    For n = 2 the traceless constraint forces the vanishing-diagonal form,
    so the flag is ignored there.

    The construction: pick a nonzero coupling x, set the complement block
    to i a on the line spanned by x plus an arbitrary skew-Hermitian
    operator on the orthogonal complement of x, then shift that operator by
    an imaginary multiple of the identity to restore tracelessness.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    x = rng.standard_normal(n - 1) + 1j * rng.standard_normal(n - 1)
    x *= float(rng.uniform(0.5, 2.0)) / float(np.linalg.norm(x))
    out = np.zeros((n, n), dtype=complex)
    out[1:, 0] = x
    out[0, 1:] = -x.conj()
    if not with_isotropy or n == 2:
        return SuVector(out)
    a = float(rng.standard_normal())
    xhat = x / np.linalg.norm(x)
    proj = np.eye(n - 1) - np.outer(xhat, xhat.conj())
    g = _ginibre(rng, n - 1)
    skew = proj @ ((g - g.conj().T) / 2.0) @ proj
    # Trace budget: the full matrix must be traceless while A xhat = i a xhat.
    correction = (-2j * a - np.trace(skew)) / (n - 2)
    comp = 1j * a * np.outer(xhat, xhat.conj()) + skew + correction * proj
    out[0, 0] = 1j * a
    out[1:, 1:] = comp
    return SuVector(out)
