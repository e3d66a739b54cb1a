"""Dense spectral route for f(A)v on symmetric matrices.

This is the reference oracle for everything else in the package: an
explicit eigendecomposition, a diagonal function application, and the
transform back.  Deliberately O(n^3); a guard refuses orders above 5000
so the oracle is never silently used at scales it was not meant for.
"""

from __future__ import annotations

from typing import Callable

import numpy as np
import scipy.sparse as sp

from .special import psi, sigma, sinc

__all__ = [
    "sym_eigendecomposition",
    "funm_sym",
    "sinc_apply_dense",
    "psi_apply_dense",
    "sigma_apply_dense",
    "expm_i_dense",
]

_MAX_DENSE_ORDER = 5000
_SYM_TOL = 1e-12


def _as_dense_sym(A) -> np.ndarray:
    if sp.issparse(A):
        A = A.toarray()
    A = np.asarray(A, dtype=np.float64)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {A.shape}")
    n = A.shape[0]
    if n > _MAX_DENSE_ORDER:
        raise ValueError(
            f"dense route refuses order {n} > {_MAX_DENSE_ORDER}; "
            "use the Krylov or exponential-sum route instead"
        )
    scale = max(np.abs(A).max(), 1.0)
    if np.abs(A - A.T).max() > _SYM_TOL * scale:
        raise ValueError("matrix is not symmetric to 1e-12 (max-norm, relative)")
    return A


def sym_eigendecomposition(A) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending) and orthonormal eigenvectors of symmetric A."""
    A = _as_dense_sym(A)
    lam, Q = np.linalg.eigh(A)
    return lam, Q


def funm_sym(A, f: Callable[[np.ndarray], np.ndarray]) -> np.ndarray:
    """Full matrix f(A) = Q f(Lambda) Q^T for symmetric A."""
    lam, Q = sym_eigendecomposition(A)
    fl = np.asarray(f(lam))
    return (Q * fl) @ Q.T


def _apply(A, v: np.ndarray, f: Callable) -> np.ndarray:
    lam, Q = sym_eigendecomposition(A)
    v = np.asarray(v, dtype=np.float64)
    if v.shape != (Q.shape[0],):
        raise ValueError(f"vector shape {v.shape} does not match order {Q.shape[0]}")
    return Q @ (np.asarray(f(lam)) * (Q.T @ v))


def sinc_apply_dense(A, v: np.ndarray) -> np.ndarray:
    """sinc(A) v through the eigendecomposition."""
    return _apply(A, v, sinc)


def psi_apply_dense(A, v: np.ndarray, h: float = 1.0) -> np.ndarray:
    """psi(h^2 A) v, the inner filter of the one-step scheme."""
    return _apply(A, v, lambda lam: psi(h * h * lam))


def sigma_apply_dense(A, v: np.ndarray, h: float = 1.0) -> np.ndarray:
    """sigma(h^2 A) v, the velocity filter of the one-step scheme."""
    return _apply(A, v, lambda lam: sigma(h * h * lam))


def expm_i_dense(A, t: float) -> np.ndarray:
    """Unitary propagator exp(-i t A) for symmetric A, as a dense matrix."""
    lam, Q = sym_eigendecomposition(A)
    return (Q * np.exp(-1j * t * lam)) @ Q.T
