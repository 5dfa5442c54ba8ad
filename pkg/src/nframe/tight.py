"""Tight and Parseval K-frames.

``fs`` is a tight K-frame with constant ``A`` when ``S_F = A KK^*``; it is
Parseval when ``A = 1``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _tol
from .errors import InputError, PreconditionError
from .frames import FrameSequence, frame_bounds, frame_operator
from .kframes import ConstructionReport, _square
from .linop import operator_norm, pseudo_inverse

__all__ = [
    "TightnessReport",
    "construct_theorem_4_3",
    "construct_theorem_4_4",
    "disjoint_sum_theorem_4_6",
    "dual_bessel_theorem_4_5",
    "scale_to_parseval",
    "tightness",
]

_TINY = np.finfo(float).tiny


@dataclass
class TightnessReport:
    is_tight: bool
    constant: float
    residual: float  # worst |sum <f,f_i>^2 - A ||K* f||^2| over unit test vectors
    matrix_residual: float  # ||S_F - A KK^*||_F, relative
    is_parseval: bool
    degenerate: bool = False


def _test_vectors(q: int) -> np.ndarray:
    """``e_i`` and normalized ``e_i + e_j``; these pin down a symmetric form."""
    vecs = [np.eye(q)]
    iu, ju = np.triu_indices(q, k=1)
    if iu.size:
        pair = np.zeros((iu.size, q))
        pair[np.arange(iu.size), iu] = 1.0
        pair[np.arange(iu.size), ju] = 1.0
        vecs.append(pair / np.sqrt(2.0))
    return np.vstack(vecs)


def quadratic_residual(fs: FrameSequence, K, A: float, vectors=None) -> float:
    """Worst ``|sum_i <f, f_i>_F^2 - A ||K^* f||_F^2|`` over the given coordinate vectors."""
    f = _test_vectors(fs.qs.q) if vectors is None else np.atleast_2d(vectors)
    energy = np.sum((f @ fs.coeffs.T) ** 2, axis=1)
    kstar = np.sum((f @ K) ** 2, axis=1)
    return float(np.max(np.abs(energy - A * kstar)))


def tightness(fs: FrameSequence, K, tol: float | None = None) -> TightnessReport:
    """Fit the nearest tight constant by least squares and test ``S_F = A KK^*``."""
    tol = _tol.identity_tol() if tol is None else tol
    K = _square(K, fs.qs.q)
    S = frame_operator(fs)
    M = K @ K.T
    s_norm = np.linalg.norm(S)
    mm = float(np.sum(M * M))
    if mm == 0.0:
        degenerate = s_norm == 0.0
        return TightnessReport(False, 0.0, quadratic_residual(fs, K, 0.0), 0.0 if degenerate else 1.0, False, degenerate)
    A = float(np.sum(S * M) / mm)
    rel = float(np.linalg.norm(S - A * M) / max(s_norm, abs(A) * np.sqrt(mm), _TINY))
    is_tight = rel <= tol and A > _tol.RANK_RCOND * max(1.0, abs(A))
    return TightnessReport(
        is_tight=bool(is_tight),
        constant=A,
        residual=quadratic_residual(fs, K, A),
        matrix_residual=rel,
        is_parseval=bool(is_tight and abs(A - 1.0) <= tol),
    )


def _require_tight(fs, K, what="input sequence") -> TightnessReport:
    rep = tightness(fs, K)
    if not rep.is_tight:
        raise PreconditionError(f"{what} is not a tight K-frame (residual {rep.matrix_residual:.3e})")
    return rep


def scale_to_parseval(fs: FrameSequence, K) -> FrameSequence:
    """Rescale a tight K-frame with constant ``A`` by ``1/sqrt(A)``."""
    rep = _require_tight(fs, K)
    return fs.scaled(1.0 / np.sqrt(rep.constant))


def _constant_check(rep: TightnessReport, A: float, tol: float) -> bool:
    return rep.is_tight and abs(rep.constant - A) <= tol * max(abs(A), _TINY)


def construct_theorem_4_3(fs_tight: FrameSequence, K, tol: float | None = None):
    """``{K f_i}`` from a tight frame with constant ``A`` is a tight K-frame with constant ``A``."""
    tol = _tol.identity_tol() if tol is None else tol
    q = fs_tight.qs.q
    K = _square(K, q)
    base = _require_tight(fs_tight, np.eye(q), "input sequence (K = I)")
    new = fs_tight.transformed(K)
    rep = tightness(new, K)
    checks = {"tight": rep.is_tight or rep.degenerate}
    if not rep.degenerate:
        checks["constant_preserved"] = _constant_check(rep, base.constant, tol)
    return new, ConstructionReport(
        theorem="4.3",
        checks=checks,
        predicted={"constant": base.constant},
        achieved={"constant": rep.constant},
        residuals={"matrix": rep.matrix_residual, "quadratic": rep.residual},
        extra={"tightness": rep},
    )


def construct_theorem_4_4(fs: FrameSequence, K, T, tol: float | None = None):
    """``{T f_i}`` from a tight K-frame is a tight ``TK``-frame with the same constant."""
    tol = _tol.identity_tol() if tol is None else tol
    q = fs.qs.q
    K = _square(K, q)
    T = _square(T, q, "T")
    base = _require_tight(fs, K)
    new = fs.transformed(T)
    rep = tightness(new, T @ K)
    checks = {"tight": rep.is_tight or rep.degenerate}
    if not rep.degenerate:
        checks["constant_preserved"] = _constant_check(rep, base.constant, tol)
    return new, ConstructionReport(
        theorem="4.4",
        checks=checks,
        predicted={"constant": base.constant},
        achieved={"constant": rep.constant},
        residuals={"matrix": rep.matrix_residual, "quadratic": rep.residual},
        extra={"tightness": rep},
    )


def dual_bessel_theorem_4_5(fs: FrameSequence, K, samples: int = 20, seed=0, tol: float | None = None):
    """Build a Bessel sequence ``{g_i}`` with ``K f = sum <f, g_i>_F f_i`` and check ``A B >= 1``.

    ``g_i = W^* e_i`` for the minimal-norm factor ``W = T^+ K`` of
    ``K = T W`` (``T`` the synthesis map). Both reconstruction identities
    are sampled on random ``f``; ``B`` is the optimal Bessel bound of the
    constructed sequence.
    """
    tol = _tol.inequality_tol() if tol is None else tol
    q = fs.qs.q
    K = _square(K, q)
    base = _require_tight(fs, K)
    if operator_norm(K) == 0.0:
        raise PreconditionError("K = 0 is degenerate")
    A = base.constant
    T = fs.coeffs.T
    W = pseudo_inverse(T) @ K
    gs = FrameSequence.from_coords(fs.qs, W)

    rng = np.random.default_rng(seed)
    f = rng.uniform(-1, 1, size=(samples, q))
    scale = operator_norm(K) * np.linalg.norm(f, axis=1)
    scale = np.maximum(scale, _TINY)
    # K f = sum_i <f, g_i> f_i  and  K* f = sum_i <f, f_i> g_i
    synth = (f @ gs.coeffs.T) @ fs.coeffs
    recon_k = float(np.max(np.linalg.norm(synth - f @ K.T, axis=1) / scale))
    synth_adj = (f @ fs.coeffs.T) @ gs.coeffs
    recon_kstar = float(np.max(np.linalg.norm(synth_adj - f @ K, axis=1) / scale))

    B = frame_bounds(gs).upper
    report = ConstructionReport(
        theorem="4.5",
        checks={
            "reconstruction": recon_k <= tol,
            "adjoint_reconstruction": recon_kstar <= tol,
            "ab_at_least_one": A * B >= 1.0 - tol,
        },
        predicted={"AB": 1.0},
        achieved={"A": A, "B": B, "AB": A * B},
        residuals={"reconstruction": recon_k, "adjoint_reconstruction": recon_kstar},
    )
    return gs, report


def disjoint_sum_theorem_4_6(fs: FrameSequence, gs: FrameSequence, K, samples: int = 20, seed=0, tol: float | None = None):
    """Sum of two Parseval K-frames with ``T L^* = 0`` is tight with constant 2."""
    tol = _tol.inequality_tol() if tol is None else tol
    if gs.qs is not fs.qs or gs.m != fs.m:
        raise InputError("both sequences must have the same length over the same X_F")
    q = fs.qs.q
    K = _square(K, q)
    rf = tightness(fs, K)
    if not rf.is_parseval:
        raise PreconditionError("first sequence is not a Parseval K-frame")
    rg = tightness(gs, K)
    if not rg.is_parseval:
        raise PreconditionError("second sequence is not a Parseval K-frame")
    T = fs.coeffs.T
    L = gs.coeffs.T
    cross = operator_norm(T @ L.T)
    if cross > _tol.identity_tol() * max(operator_norm(T) * operator_norm(L), _TINY):
        raise PreconditionError(f"T L* is not the null operator (norm {cross:.3e})")

    rng = np.random.default_rng(seed)
    f = rng.uniform(-1, 1, size=(samples, q))
    kstar = np.sum((f @ K) ** 2, axis=1)
    tstar = np.sum((f @ T) ** 2, axis=1)
    lstar = np.sum((f @ L) ** 2, axis=1)
    denom = np.maximum(np.sum(f * f, axis=1) * operator_norm(K) ** 2, _TINY)
    eq_t = float(np.max(np.abs(kstar - tstar) / denom))
    eq_l = float(np.max(np.abs(kstar - lstar) / denom))

    new = fs + gs
    rep = tightness(new, K)
    return new, ConstructionReport(
        theorem="4.6",
        checks={
            "first_energy_identity": eq_t <= tol,
            "second_energy_identity": eq_l <= tol,
            "tight": rep.is_tight,
            "constant_two": abs(rep.constant - 2.0) <= tol,
        },
        predicted={"constant": 2.0},
        achieved={"constant": rep.constant},
        residuals={"first_energy_identity": eq_t, "second_energy_identity": eq_l, "cross_term": cross, "matrix": rep.matrix_residual},
        extra={"tightness": rep},
    )
