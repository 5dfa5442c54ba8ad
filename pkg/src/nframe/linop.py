"""Operators on X_F: pseudo-inverse, PSD ordering, range inclusion.

Operators are plain ``numpy`` arrays acting on orthonormal X_F coordinates
(or on coefficient space ``R^m`` for synthesis/analysis maps). With an
orthonormal basis the adjoint is the transpose.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _tol
from .errors import InputError

__all__ = [
    "DouglasCertificate",
    "RangeSumCertificate",
    "as_matrix",
    "douglas_check",
    "is_psd",
    "min_eigenvalue",
    "numerical_rank",
    "operator_norm",
    "pseudo_inverse",
    "range_sum_check",
]


def as_matrix(M, name: str = "matrix") -> np.ndarray:
    M = np.asarray(M, dtype=float)
    if M.ndim != 2:
        raise InputError(f"{name} must be two-dimensional, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise InputError(f"{name} contains NaN or Inf")
    return M


def _singular_values(M: np.ndarray) -> np.ndarray:
    if M.size == 0:
        return np.zeros(0)
    return np.linalg.svd(M, compute_uv=False)


def operator_norm(M) -> float:
    """Largest singular value (0 for an empty or zero matrix)."""
    s = _singular_values(as_matrix(M))
    return float(s[0]) if s.size else 0.0


def numerical_rank(M, scale: float | None = None, rcond: float = _tol.RANK_RCOND) -> int:
    """Number of singular values above ``rcond * scale`` (default scale: ``||M||``)."""
    s = _singular_values(as_matrix(M))
    if s.size == 0:
        return 0
    scale = s[0] if scale is None else scale
    if scale == 0:
        return 0
    return int(np.sum(s > rcond * scale))


def pseudo_inverse(U, rcond: float = _tol.RANK_RCOND) -> np.ndarray:
    """Moore-Penrose inverse via SVD; singular values ``<= rcond * s_max`` count as zero."""
    U = as_matrix(U, "U")
    if U.size == 0:
        return np.zeros(U.shape[::-1])
    u, s, vt = np.linalg.svd(U, full_matrices=False)
    keep = s > rcond * s[0] if s[0] > 0 else np.zeros_like(s, dtype=bool)
    inv = np.zeros_like(s)
    inv[keep] = 1.0 / s[keep]
    return (vt.T * inv) @ u.T


def _sym(M: np.ndarray) -> np.ndarray:
    return 0.5 * (M + M.T)


def min_eigenvalue(M) -> float:
    M = as_matrix(M)
    return float(np.linalg.eigvalsh(_sym(M))[0])


def is_psd(M, rtol: float = _tol.PSD_RTOL) -> bool:
    """PSD test on the symmetric part with an absolute-plus-relative floor."""
    M = as_matrix(M)
    if M.shape[0] != M.shape[1]:
        raise InputError(f"PSD test needs a square matrix, got {M.shape}")
    if M.size == 0:
        return True
    ev = np.linalg.eigvalsh(_sym(M))
    return bool(ev[0] >= -rtol * (np.max(np.abs(ev)) + 1.0))


@dataclass
class DouglasCertificate:
    """Outcome of the three-way range-inclusion test ``R(U) <= R(V)``.

    ``criteria`` holds the individual verdicts for range inclusion, the
    operator inequality ``UU* <= lam^2 VV*`` and the factorization
    ``U = VW``; ``holds`` is the range-inclusion verdict.
    """

    holds: bool
    lam: float
    witness: np.ndarray
    residual: float
    criteria: tuple

    @property
    def consistent(self) -> bool:
        return len(set(self.criteria)) == 1


def _check_codomain(U, V, names):
    if U.shape[0] != V.shape[0]:
        raise InputError(
            f"{names[0]} and {names[1]} must share a codomain: {U.shape} vs {V.shape}"
        )


def douglas_check(U, V, tol: float | None = None) -> DouglasCertificate:
    """Decide ``R(U) <= R(V)`` and produce ``W = V^+ U`` with ``lam = ||W||``.

    ``lam`` is the smallest constant for which ``UU* <= lam^2 VV*``.
    """
    U = as_matrix(U, "U")
    V = as_matrix(V, "V")
    _check_codomain(U, V, ("U", "V"))
    tol = _tol.inequality_tol() if tol is None else tol
    scale = max(operator_norm(U), operator_norm(V))

    inclusion = numerical_rank(np.hstack([V, U]), scale) == numerical_rank(V, scale)

    W = pseudo_inverse(V) @ U
    lam = operator_norm(W)
    residual = operator_norm(U - V @ W)
    factorization = residual <= tol * max(scale, np.finfo(float).tiny)

    gap = lam**2 * (V @ V.T) - U @ U.T
    inequality = is_psd(gap, rtol=_tol.PSD_RTOL + tol) if scale > 0 else True

    return DouglasCertificate(
        holds=bool(inclusion),
        lam=lam,
        witness=W,
        residual=residual,
        criteria=(bool(inclusion), bool(inequality), bool(factorization)),
    )


@dataclass
class RangeSumCertificate:
    """``R(S) <= R(T) + R(U)`` together with ``S = TA + UB``."""

    holds: bool
    lam: float
    A: np.ndarray
    B: np.ndarray
    residual: float
    criteria: tuple

    @property
    def consistent(self) -> bool:
        return len(set(self.criteria)) == 1


def range_sum_check(S, T, U, tol: float | None = None) -> RangeSumCertificate:
    """Range-sum version of :func:`douglas_check`, factoring through ``[T | U]``.

    Since ``[T|U][T|U]^* = TT^* + UU^*``, the Douglas certificate for
    ``(S, [T|U])`` gives ``SS^* <= lam^2 (TT^* + UU^*)`` and the stacked
    witness splits into ``A`` (first ``T.shape[1]`` rows) and ``B``.
    """
    S = as_matrix(S, "S")
    T = as_matrix(T, "T")
    U = as_matrix(U, "U")
    _check_codomain(S, T, ("S", "T"))
    _check_codomain(S, U, ("S", "U"))
    cert = douglas_check(S, np.hstack([T, U]), tol=tol)
    k = T.shape[1]
    return RangeSumCertificate(
        holds=cert.holds,
        lam=cert.lam,
        A=cert.witness[:k],
        B=cert.witness[k:],
        residual=cert.residual,
        criteria=cert.criteria,
    )
