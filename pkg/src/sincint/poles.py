"""Pole families for rational approximation of sinc and exp.

Each family is derived from zeros of generalized Laguerre polynomials
with negative integer parameter:

* ``E``: zeros of L_n^(-2n-1) rotated to the imaginary axis in
  conjugate pairs, plus the origin (2n+1 poles).
* ``L``: zeros of L_n^(-2n-2) divided by 2i (n poles, one-sided).
* ``Lbar``: the conjugate-symmetrized variant of ``L`` (2n poles).
* ``pade-sinc``: zeros of the tabulated diagonal Pade denominators of
  sinc (n poles, even n <= 10).
* ``pade-exp``: zeros of the [k/k] exponential Pade denominator
  (2k)!/k! 1F1(-k; -2k; x), all in the open left half-plane (k poles).

Pole sets live on the "sinc plane": they target sinc(A)v directly.  The
integrator filters act on h^2 A, and :func:`square_poles` together with
:func:`scale_poles` transports a sinc-plane set to that matrix plane
(zeta -> zeta^2 for sigma, zeta -> (2 zeta)^2 for psi).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .special import laguerre_coeffs, pade_sinc_denominator, poly_roots

__all__ = [
    "PoleSet",
    "poles_E",
    "poles_L",
    "poles_Lbar",
    "poles_pade_sinc",
    "poles_pade_exp",
    "scale_poles",
    "square_poles",
]

FAMILY_LABELS = ("E", "L", "Lbar", "pade-sinc", "pade-exp")


def _canonical_order(values) -> tuple[complex, ...]:
    arr = np.asarray(list(values), dtype=np.complex128)
    order = np.lexsort((np.angle(arr), np.abs(arr)))
    return tuple(complex(v) for v in arr[order])


@dataclass(frozen=True)
class PoleSet:
    """Ordered collection of poles with a provenance label.

    values are sorted by (|zeta|, arg zeta); math.inf is a permitted
    sentinel meaning a plain Krylov (multiplication) step.
    """

    values: tuple
    family: str = ""
    degree: int = 0

    def __post_init__(self):
        finite = [v for v in self.values if not _is_inf(v)]
        inf_count = len(self.values) - len(finite)
        ordered = _canonical_order(finite) + (complex(math.inf, 0.0),) * inf_count
        object.__setattr__(self, "values", ordered)

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def is_conjugate_closed(self, tol: float = 1e-9) -> bool:
        """True when the multiset of poles equals its complex conjugate.

        Matching is greedy nearest-neighbor rather than sort-based:
        numerically computed roots of real polynomials are conjugate
        pairs only up to roundoff, which can reorder a lexicographic
        sort and misalign the comparison.
        """
        vals = np.asarray([v for v in self.values if not _is_inf(v)])
        if vals.size == 0:
            return True
        scale = max(np.abs(vals).max(), 1.0)
        remaining = list(np.conj(vals))
        for v in vals:
            dist = np.abs(np.asarray(remaining) - v)
            j = int(np.argmin(dist))
            if dist[j] > tol * scale:
                return False
            remaining.pop(j)
        return True


def _is_inf(v) -> bool:
    v = complex(v)
    return math.isinf(v.real) or math.isinf(v.imag)


def poles_E(n: int) -> PoleSet:
    """Exponential-Pade sinc poles: {+-i x : L_n^(-2n-1)(x) = 0} plus 0."""
    _check_degree(n)
    x = poly_roots(laguerre_coeffs(n, -2 * n - 1))
    vals = [0.0 + 0.0j]
    for r in x:
        vals.append(1j * r)
        vals.append(-1j * r)
    return PoleSet(tuple(vals), family="E", degree=n)


def poles_L(n: int) -> PoleSet:
    """One-sided hypergeometric sinc poles: zeros of L_n^(-2n-2) over 2i."""
    _check_degree(n)
    x = poly_roots(laguerre_coeffs(n, -2 * n - 2))
    return PoleSet(tuple(r / 2j for r in x), family="L", degree=n)


def poles_Lbar(n: int) -> PoleSet:
    """Conjugate-symmetrized hypergeometric poles: {+-i x} for the same zeros."""
    _check_degree(n)
    x = poly_roots(laguerre_coeffs(n, -2 * n - 2))
    vals = []
    for r in x:
        vals.append(1j * r)
        vals.append(-1j * r)
    return PoleSet(tuple(vals), family="Lbar", degree=n)


def poles_pade_sinc(n: int) -> PoleSet:
    """Zeros of the tabulated diagonal Pade denominator of sinc."""
    p = pade_sinc_denominator(n)
    return PoleSet(tuple(poly_roots(p)), family="pade-sinc", degree=n)


def poles_pade_exp(k: int) -> PoleSet:
    """Poles of the [k/k] Pade approximant of exp, all with Re < 0.

    These are the zeros of L_k^(-2k-1)(x), which up to normalization is
    the reversed denominator 1F1(-k; -2k; x) of the diagonal approximant;
    they drive the shifted solves inside the exponential-sum route.
    """
    _check_degree(k)
    x = poly_roots(laguerre_coeffs(k, -2 * k - 1))
    vals = tuple(complex(r) for r in x)
    return PoleSet(vals, family="pade-exp", degree=k)


def _check_degree(n: int) -> None:
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise ValueError(f"degree must be a positive integer, got {n!r}")


def scale_poles(ps: PoleSet, c: complex) -> PoleSet:
    """Multiply every finite pole by c, keeping label and degree.

    Used to transport sinc-plane poles before squaring: psi(z) involves
    sinc at half the square root, so its matrix-plane poles are
    square_poles(scale_poles(ps, 2)).
    """
    if c == 0:
        raise ValueError("scale factor must be nonzero")
    vals = tuple(v if _is_inf(v) else complex(v) * c for v in ps.values)
    return PoleSet(vals, family=ps.family, degree=ps.degree)


def square_poles(ps: PoleSet) -> PoleSet:
    """Map each finite pole zeta to zeta**2 (sinc plane to matrix plane).

    sigma(h^2 A) = sinc(sqrt(h^2 A)) turns a pole zeta of the sinc
    approximant into a pole zeta^2 of the induced rational function of
    h^2 A; for psi = sinc(sqrt(z)/2)^2 the composition with the halved
    argument gives (2 zeta)^2, obtained by scaling first.
    """
    vals = tuple(v if _is_inf(v) else complex(v) ** 2 for v in ps.values)
    return PoleSet(vals, family=ps.family, degree=ps.degree)
