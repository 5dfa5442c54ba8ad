"""Finite frames for X_F: analysis, synthesis and frame operators, optimal bounds."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _tol
from .errors import InputError
from .linop import as_matrix, is_psd, numerical_rank
from .nspace import as_vector
from .quotient import QuotientSpace, lift, orthonormal_coords

__all__ = [
    "BoundsReport",
    "FrameOperators",
    "FrameSequence",
    "build_operators",
    "frame_bounds",
    "frame_operator",
    "frame_operator_certificate",
    "is_frame_bound",
]


@dataclass(frozen=True, eq=False)
class FrameSequence:
    """``m`` ambient vectors ``f_1, ..., f_m`` viewed through X_F.

    ``coeffs`` caches the orthonormal X_F coordinates of each element
    (one row per element), which is all any frame quantity depends on.
    """

    elements: np.ndarray  # (m, d)
    qs: QuotientSpace

    def __post_init__(self):
        elems = np.atleast_2d(as_vector(self.elements, self.qs.dim)).copy()
        if elems.ndim != 2 or elems.shape[0] < 1:
            raise InputError("a frame sequence needs at least one element")
        elems.setflags(write=False)
        object.__setattr__(self, "elements", elems)
        coeffs = orthonormal_coords(self.qs, elems)
        coeffs.setflags(write=False)
        object.__setattr__(self, "_coeffs", coeffs)

    @classmethod
    def from_coords(cls, qs: QuotientSpace, coords) -> "FrameSequence":
        """Sequence whose elements have the given orthonormal coordinates."""
        coords = np.atleast_2d(np.asarray(coords, dtype=float))
        return cls(lift(qs, coords), qs)

    @property
    def m(self) -> int:
        return self.elements.shape[0]

    @property
    def coeffs(self) -> np.ndarray:
        return self._coeffs

    def transformed(self, T) -> "FrameSequence":
        """``{T f_i}`` with ``T`` acting on X_F coordinates; elements lifted into ``M_F``."""
        T = as_matrix(T, "T")
        if T.shape != (self.qs.q, self.qs.q):
            raise InputError(f"operator must be {self.qs.q}x{self.qs.q}, got {T.shape}")
        return FrameSequence.from_coords(self.qs, self.coeffs @ T.T)

    def scaled(self, c: float) -> "FrameSequence":
        return FrameSequence(c * self.elements, self.qs)

    def __add__(self, other: "FrameSequence") -> "FrameSequence":
        if other.qs is not self.qs or other.m != self.m:
            raise InputError("can only add sequences of equal length over the same X_F")
        return FrameSequence(self.elements + other.elements, self.qs)


@dataclass(frozen=True, eq=False)
class FrameOperators:
    analysis: np.ndarray  # (m, q), T*
    synthesis: np.ndarray  # (q, m), T
    frame_op: np.ndarray  # (q, q), S_F = T T*


def build_operators(fs: FrameSequence) -> FrameOperators:
    analysis = fs.coeffs.copy()
    synthesis = analysis.T.copy()
    return FrameOperators(analysis, synthesis, synthesis @ analysis)


def frame_operator(fs: FrameSequence) -> np.ndarray:
    return fs.coeffs.T @ fs.coeffs


def is_frame_bound(lower: float, upper: float) -> bool:
    return bool(lower > _tol.RANK_RCOND * max(1.0, upper))


@dataclass
class BoundsReport:
    lower: float
    upper: float
    is_frame: bool
    is_bessel: bool = True


def frame_bounds(fs: FrameSequence) -> BoundsReport:
    """Optimal frame bounds: extreme eigenvalues of ``S_F`` in orthonormal coordinates."""
    ev = np.linalg.eigvalsh(frame_operator(fs))
    lower = max(float(ev[0]), 0.0)
    upper = max(float(ev[-1]), 0.0)
    return BoundsReport(lower, upper, is_frame_bound(lower, upper))


@dataclass
class FrameOperatorCertificate:
    symmetry_residual: float
    min_eigenvalue: float
    condition: float
    positive: bool
    invertible: bool
    is_frame: bool

    @property
    def consistent(self) -> bool:
        return self.positive and self.invertible == self.is_frame


def frame_operator_certificate(fs: FrameSequence) -> FrameOperatorCertificate:
    """Check that ``S_F`` is symmetric and PSD, and invertible exactly when ``fs`` is a frame."""
    S = frame_operator(fs)
    sym = float(np.linalg.norm(S - S.T) / max(np.linalg.norm(S), np.finfo(float).tiny))
    ev = np.linalg.eigvalsh(0.5 * (S + S.T))
    bounds = frame_bounds(fs)
    invertible = numerical_rank(S) == S.shape[0]
    condition = float(ev[-1] / ev[0]) if invertible else float("inf")
    return FrameOperatorCertificate(
        symmetry_residual=sym,
        min_eigenvalue=float(ev[0]),
        condition=condition,
        positive=is_psd(S),
        invertible=invertible,
        is_frame=bounds.is_frame,
    )
