"""Rational Krylov spaces for f(A)v with shift-and-invert Arnoldi.

The space is grown one column at a time: each new direction is either a
shifted solve (zeta_j I - A)^{-1} v_j for a finite pole or a plain
matrix-vector product for the infinity sentinel.  Modified Gram-Schmidt
with a single reorthogonalization pass keeps the basis orthonormal to
machine precision, and the function is then applied to the small
projected matrix A_k = V^H A V.

For real symmetric A the projection is Hermitian regardless of where
the poles sit, so the small problem is solved by a Hermitian
eigendecomposition; when the pole multiset is closed under conjugation
and the data are real, the assembled result is real up to roundoff and
is returned as such.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .poles import PoleSet, scale_poles, square_poles
from .special import psi, sigma, sinc

__all__ = [
    "PoleCollisionError",
    "ShiftedSolveCache",
    "RationalKrylovSpace",
    "build_space",
    "apply_function",
    "sinc_apply",
    "psi_apply",
    "sigma_apply",
]

_BREAKDOWN_RTOL = 1e-14
_SEED_RTOL = 1e-10
_HERM_RTOL = 1e-8
_REAL_GUARD_RTOL = 1e-6


class PoleCollisionError(RuntimeError):
    """A shift zeta coincides with an eigenvalue: (zeta I - A) is singular."""


def _check_symmetric(A, rtol: float = 1e-12) -> None:
    if sp.issparse(A):
        diff = abs(A - A.T)
        dmax = diff.max() if diff.nnz else 0.0
        scale = abs(A).max() if A.nnz else 1.0
    else:
        dmax = np.abs(A - A.T).max()
        scale = np.abs(A).max()
    if dmax > rtol * max(scale, 1.0):
        raise ValueError("matrix must be real symmetric (max |A - A^T| too large)")


class ShiftedSolveCache:
    """Sparse LU factorizations of (zeta I - A), one per distinct pole.

    Building a factorization is the dominant cost of a rational Krylov
    step; inside a time integrator the same pole set is reused at every
    step, so the cache is shared across calls.
    """

    def __init__(self, A):
        if not sp.issparse(A):
            A = sp.csc_matrix(np.asarray(A, dtype=np.float64))
        self._A = A.tocsc()
        n = self._A.shape[0]
        self._eye = sp.identity(n, format="csc")
        self._lu: dict[complex, spla.SuperLU] = {}

    @property
    def matrix(self):
        return self._A

    def solve(self, zeta: complex, b: np.ndarray) -> np.ndarray:
        zeta = complex(zeta)
        lu = self._lu.get(zeta)
        if lu is None:
            shifted = (zeta * self._eye - self._A).astype(np.complex128)
            try:
                lu = spla.splu(shifted.tocsc())
            except RuntimeError as exc:
                raise PoleCollisionError(
                    f"shift {zeta} makes (zeta I - A) singular: {exc}"
                ) from exc
            self._lu[zeta] = lu
        x = lu.solve(b.astype(np.complex128))
        if not np.all(np.isfinite(x)):
            raise PoleCollisionError(
                f"shifted solve at zeta={zeta} returned non-finite values; "
                "the pole sits on (or numerically on) the spectrum"
            )
        return x


@dataclass
class RationalKrylovSpace:
    """Orthonormal basis V, projection A_k = V^H A V and bookkeeping."""

    V: np.ndarray
    A_k: np.ndarray
    poles: PoleSet
    seed_norm: float
    breakdown: bool = False

    @property
    def dim(self) -> int:
        return self.V.shape[1]


def build_space(A, v: np.ndarray, poles: PoleSet, k: int | None = None,
                cache: ShiftedSolveCache | None = None) -> RationalKrylovSpace:
    """Grow a rational Krylov space of dimension k from seed v.

    The first basis vector is v normalized; the remaining k-1 columns
    consume the poles cyclically (an infinite pole contributes a plain
    product A v_j).  k defaults to len(poles) + 1 and is capped at the
    matrix order.  Near-linear dependence (new direction below 1e-14 of
    its pre-orthogonalization norm) stops growth early and marks the
    space as exact from that dimension on.

    When a cache is supplied it already owns the matrix, and its matrix
    is the one used; pass the same operator as A (it is only consulted
    when cache is None).
    """
    if cache is None:
        cache = ShiftedSolveCache(A)
    A = cache.matrix
    _check_symmetric(A)
    n = A.shape[0]
    v = np.asarray(v, dtype=np.float64).reshape(-1)
    if v.shape[0] != n:
        raise ValueError(f"seed length {v.shape[0]} does not match order {n}")
    nrm = float(np.linalg.norm(v))
    if nrm == 0.0:
        raise ValueError("seed vector must be nonzero")
    if k is None:
        k = len(poles) + 1
    if k < 1:
        raise ValueError(f"space dimension must be >= 1, got {k}")
    k = min(k, n)

    V = np.zeros((n, k), dtype=np.complex128)
    V[:, 0] = v / nrm
    pole_list = list(poles.values)
    breakdown = False
    m = 1
    for j in range(1, k):
        zeta = pole_list[(j - 1) % len(pole_list)] if pole_list else complex("inf")
        if np.isinf(np.real(zeta)) or np.isinf(np.imag(zeta)):
            w = A @ V[:, j - 1]
        else:
            w = cache.solve(zeta, V[:, j - 1])
        w0 = float(np.linalg.norm(w))
        for _ in range(2):
            w = w - V[:, :m] @ (V[:, :m].conj().T @ w)
        wn = float(np.linalg.norm(w))
        if wn <= _BREAKDOWN_RTOL * max(w0, 1e-300):
            breakdown = True
            break
        V[:, j] = w / wn
        m += 1
    V = V[:, :m]
    A_k = V.conj().T @ (A @ V)
    return RationalKrylovSpace(V=V, A_k=A_k, poles=poles, seed_norm=nrm,
                               breakdown=breakdown)


def apply_function(space: RationalKrylovSpace, f, v: np.ndarray,
                   realify: bool = True) -> np.ndarray:
    """Evaluate f(A) v through the projected problem of the given space.

    v must be the seed the space was built from (checked: its
    coefficient vector in the basis must be norm(v) e_1 to 1e-10).  f
    maps an eigenvalue array to function values.
    """
    v = np.asarray(v).reshape(-1)
    c = space.V.conj().T @ v
    nrm = float(np.linalg.norm(v))
    e1 = np.zeros_like(c)
    e1[0] = nrm
    if np.linalg.norm(c - e1) > _SEED_RTOL * max(nrm, 1e-300):
        raise ValueError(
            "vector is not the seed of this space (projection deviates "
            "from norm(v) e_1); rebuild the space for this right-hand side"
        )
    A_k = space.A_k
    herm_defect = np.linalg.norm(A_k - A_k.conj().T)
    if herm_defect <= _HERM_RTOL * max(np.linalg.norm(A_k), 1e-300):
        lam, U = np.linalg.eigh(0.5 * (A_k + A_k.conj().T))
        y_small = U @ (np.asarray(f(lam)) * (U.conj().T @ c))
    else:
        lam, W = np.linalg.eig(A_k)
        cond = np.linalg.cond(W)
        if cond > 1e8:
            raise np.linalg.LinAlgError(
                f"projected eigenvector basis is ill conditioned ({cond:.2e}); "
                "choose different poles or a smaller space"
            )
        y_small = W @ (np.asarray(f(lam)) * np.linalg.solve(W, c))
    y = space.V @ y_small
    if realify and np.isrealobj(v) and space.poles.is_conjugate_closed():
        scale = max(float(np.linalg.norm(y)), 1e-300)
        if float(np.linalg.norm(y.imag)) > _REAL_GUARD_RTOL * scale:
            raise FloatingPointError(
                "imaginary residue exceeds guard although the pole set is "
                "conjugate closed; the space is numerically degenerate"
            )
        return np.ascontiguousarray(y.real)
    return y


def sinc_apply(A, v: np.ndarray, poles: PoleSet, k: int | None = None,
               cache: ShiftedSolveCache | None = None,
               realify: bool = True) -> np.ndarray:
    """sinc(A) v via a rational Krylov space on A with the given poles."""
    space = build_space(A, v, poles, k=k, cache=cache)
    return apply_function(space, sinc, v, realify=realify)


def psi_apply(A, v: np.ndarray, poles: PoleSet, h: float = 1.0,
              k: int | None = None, cache: ShiftedSolveCache | None = None,
              map_poles: bool = True, realify: bool = True) -> np.ndarray:
    """psi(h^2 A) v via a rational Krylov space on B = h^2 A.

    With map_poles=True (default) the given sinc-plane poles zeta are
    transported to the matrix plane as (2 zeta)^2, matching the inner
    half-argument of psi; pass map_poles=False to supply matrix-plane
    poles directly.  The cache, when given, must factor B = h^2 A.
    """
    B = A * (h * h) if h != 1.0 else A
    ps = square_poles(scale_poles(poles, 2.0)) if map_poles else poles
    space = build_space(B, v, ps, k=k, cache=cache)
    return apply_function(space, psi, v, realify=realify)


def sigma_apply(A, v: np.ndarray, poles: PoleSet, h: float = 1.0,
                k: int | None = None, cache: ShiftedSolveCache | None = None,
                map_poles: bool = True, realify: bool = True) -> np.ndarray:
    """sigma(h^2 A) v via a rational Krylov space on B = h^2 A.

    Sinc-plane poles are mapped to zeta^2 unless map_poles=False.
    """
    B = A * (h * h) if h != 1.0 else A
    ps = square_poles(poles) if map_poles else poles
    space = build_space(B, v, ps, k=k, cache=cache)
    return apply_function(space, sigma, v, realify=realify)
