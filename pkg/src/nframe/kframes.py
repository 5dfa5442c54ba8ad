"""K-frames: optimal bounds and certified transformations.

A sequence is a K-frame when ``A ||K* f||_F^2 <= sum_i <f, f_i>_F^2 <= B ||f||_F^2``.
In orthonormal X_F coordinates this is the operator sandwich
``A KK^T <= S_F <= B I``, so the optimal lower constant is the largest
``A`` with ``S_F - A KK^T`` PSD. Writing ``S_F = R R^T`` with ``R = S_F^{1/2}``,
range inclusion gives ``A_opt = 1 / ||R^+ K||^2`` when ``R(K) <= R(S_F)``
and ``A_opt = 0`` otherwise.

The ``*_theorem_*`` functions take hypothesis-satisfying inputs, build the
transformed sequence and compare the bounds predicted by the classical
argument with the optimal bounds actually achieved.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _tol
from .errors import InputError, PreconditionError
from .frames import FrameSequence, frame_bounds, frame_operator
from .linop import (
    as_matrix,
    douglas_check,
    is_psd,
    operator_norm,
    pseudo_inverse,
    range_sum_check,
)

__all__ = [
    "ClosedRangeReport",
    "KFrameReport",
    "ConstructionReport",
    "closed_range_bounds_check",
    "kframe_bounds",
    "perturb_theorem_3_8",
    "restrict_theorem_3_3",
    "sum_theorem_3_7",
    "synthesis_characterization",
    "transform_theorem_3_4",
    "transform_theorem_3_5",
]


@dataclass
class KFrameReport:
    lower: float
    upper: float
    is_kframe: bool
    lambda_certificate: float  # largest lam with S_F >= lam KK^*
    degenerate_k: bool = False


@dataclass
class ConstructionReport:
    """Predicted vs achieved bounds plus named boolean checks.

    ``passed`` is true iff every entry of ``checks`` is true.
    """

    theorem: str
    checks: dict
    predicted: dict = field(default_factory=dict)
    achieved: dict = field(default_factory=dict)
    residuals: dict = field(default_factory=dict)
    extra: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(bool(v) for v in self.checks.values())

    def failed_checks(self) -> list:
        return [k for k, v in self.checks.items() if not v]


def _square(K, q: int, name: str = "K") -> np.ndarray:
    K = as_matrix(K, name)
    if K.shape != (q, q):
        raise InputError(f"{name} must be {q}x{q} on X_F, got {K.shape}")
    return K


def _psd_root(S: np.ndarray) -> np.ndarray:
    """Symmetric square root with the rank decision made on ``S`` itself."""
    ev, V = np.linalg.eigh(0.5 * (S + S.T))
    top = max(ev[-1], 0.0)
    ev = np.where(ev > _tol.RANK_RCOND * top, ev, 0.0)
    return (V * np.sqrt(ev)) @ V.T


def _lower_ok(predicted: float, achieved: float, tol: float) -> bool:
    """``predicted <= achieved`` up to relative slack."""
    if not (np.isfinite(predicted) and np.isfinite(achieved)):
        return bool(predicted <= achieved)
    return bool(predicted <= achieved + tol * max(abs(predicted), abs(achieved), np.finfo(float).tiny))


def _hypothesis_tol(*norms: float) -> float:
    return 1e-8 * (1.0 + float(np.prod(norms)))


def kframe_bounds(fs: FrameSequence, K) -> KFrameReport:
    """Optimal K-frame bounds of ``fs``.

    ``upper`` is the optimal Bessel bound ``lambda_max(S_F)``; ``lower`` is
    the largest ``A`` with ``A KK^* <= S_F``. For ``K = 0`` the lower
    inequality is vacuous: ``lower`` is ``inf`` and ``degenerate_k`` is set.
    """
    K = _square(K, fs.qs.q)
    S = frame_operator(fs)
    upper = frame_bounds(fs).upper
    k_norm = operator_norm(K)
    if k_norm == 0.0:
        return KFrameReport(float("inf"), upper, True, float("inf"), degenerate_k=True)

    cert = douglas_check(K, _psd_root(S))
    if cert.holds and cert.lam > 0:
        lower = 1.0 / cert.lam**2
    else:
        lower = 0.0
    is_kframe = bool(cert.holds and lower * k_norm**2 > _tol.RANK_RCOND * max(upper, np.finfo(float).tiny))
    return KFrameReport(lower, upper, is_kframe, lower)


@dataclass
class ClosedRangeReport:
    lower_chain: float  # worst relative violation on R(K)
    inverse_chain: float  # worst relative violation on S_F(R(K))
    samples: int
    tol: float

    @property
    def max_violation(self) -> float:
        return max(self.lower_chain, self.inverse_chain)

    @property
    def passed(self) -> bool:
        return self.max_violation <= self.tol


def closed_range_bounds_check(fs: FrameSequence, K, samples: int = 100, seed=0, tol: float | None = None) -> ClosedRangeReport:
    """Sample both sandwiches that hold for K-frames when ``K`` has closed range.

    On ``f in R(K)``:  ``A ||K^+||^-2 ||f||^2 <= <S f, f> <= B ||f||^2``.
    On ``f in S(R(K))``: ``B^-1 ||f||^2 <= <S^+ f, f> <= A^-1 ||K^+||^2 ||f||^2``.
    """
    tol = _tol.inequality_tol() if tol is None else tol
    K = _square(K, fs.qs.q)
    rep = kframe_bounds(fs, K)
    if rep.degenerate_k:
        raise PreconditionError("K = 0 has trivial range; nothing to check")
    if not rep.is_kframe:
        raise PreconditionError("sequence is not a K-frame")
    A, B = rep.lower, rep.upper
    S = frame_operator(fs)
    S_inv = pseudo_inverse(S)
    kp = operator_norm(pseudo_inverse(K))

    rng = np.random.default_rng(seed)
    z = rng.uniform(-1, 1, size=(samples, fs.qs.q))
    f = z @ K.T
    nf = np.einsum("ij,ij->i", f, f)
    sf = np.einsum("ij,jk,ik->i", f, S, f)
    lo = A / kp**2 * nf
    hi = B * nf
    scale = np.maximum(hi, np.finfo(float).tiny)
    lower_chain = float(np.max(np.maximum(lo - sf, sf - hi) / scale))

    g = f @ S.T
    ng = np.einsum("ij,ij->i", g, g)
    sg = np.einsum("ij,jk,ik->i", g, S_inv, g)
    lo2 = ng / B
    hi2 = kp**2 / A * ng
    scale2 = np.maximum(hi2, np.finfo(float).tiny)
    inverse_chain = float(np.max(np.maximum(lo2 - sg, sg - hi2) / scale2))
    return ClosedRangeReport(max(lower_chain, 0.0), max(inverse_chain, 0.0), samples, tol)


def _require_kframe(fs, K, what="input sequence") -> KFrameReport:
    rep = kframe_bounds(fs, K)
    if not rep.is_kframe:
        raise PreconditionError(f"{what} is not a K-frame")
    return rep


def restrict_theorem_3_3(fs: FrameSequence, K, T, tol: float | None = None) -> ConstructionReport:
    """A K-frame is a T-frame whenever ``R(T) <= R(K)``, with lower bound ``A / lam^2``."""
    tol = _tol.inequality_tol() if tol is None else tol
    q = fs.qs.q
    K = _square(K, q)
    T = _square(T, q, "T")
    cert = douglas_check(T, K)
    if not cert.holds:
        raise PreconditionError("range of T is not contained in range of K")
    rk = _require_kframe(fs, K)
    rt = kframe_bounds(fs, T)
    predicted = rk.lower / cert.lam**2 if cert.lam > 0 else float("inf")
    return ConstructionReport(
        theorem="3.3",
        checks={
            "t_frame": rt.is_kframe,
            "lower_bound": _lower_ok(predicted, rt.lower, tol),
            "upper_bound": _lower_ok(rt.upper, rk.upper, tol),
            "douglas_consistent": cert.consistent,
        },
        predicted={"lower": predicted, "upper": rk.upper},
        achieved={"lower": rt.lower, "upper": rt.upper},
        residuals={"factorization": cert.residual},
        extra={"lambda": cert.lam},
    )


def _commutation(K, T) -> tuple:
    res = operator_norm(T @ K - K @ T)
    return res, _hypothesis_tol(operator_norm(K), operator_norm(T))


def transform_theorem_3_4(fs: FrameSequence, K, T, tol: float | None = None):
    """``{T f_i}`` is a K-frame for invertible ``T`` commuting with ``K``.

    Predicted bounds: ``A ||T^-1||^-2`` and ``B ||T||^2``.
    Returns ``(new_sequence, report)``.
    """
    tol = _tol.inequality_tol() if tol is None else tol
    q = fs.qs.q
    K = _square(K, q)
    T = _square(T, q, "T")
    s = np.linalg.svd(T, compute_uv=False)
    if not s[-1] > _tol.RANK_RCOND * s[0]:
        raise PreconditionError("T is not invertible")
    comm, comm_tol = _commutation(K, T)
    if comm > comm_tol:
        raise PreconditionError(f"T and K do not commute (residual {comm:.3e})")
    rk = _require_kframe(fs, K)
    new = fs.transformed(T)
    rn = kframe_bounds(new, K)
    pred_lo = float(rk.lower * s[-1] ** 2)
    pred_hi = float(rk.upper * s[0] ** 2)
    report = ConstructionReport(
        theorem="3.4",
        checks={
            "k_frame": rn.is_kframe,
            "lower_bound": _lower_ok(pred_lo, rn.lower, tol),
            "upper_bound": _lower_ok(rn.upper, pred_hi, tol),
        },
        predicted={"lower": pred_lo, "upper": pred_hi},
        achieved={"lower": rn.lower, "upper": rn.upper},
        residuals={"commutation": comm},
    )
    return new, report


def transform_theorem_3_5(fs: FrameSequence, K, T, tol: float | None = None):
    """``{T f_i}`` is a K-frame with the same lower bound when ``TT^* = I`` and ``TK = KT``."""
    tol = _tol.inequality_tol() if tol is None else tol
    q = fs.qs.q
    K = _square(K, q)
    T = _square(T, q, "T")
    iso = operator_norm(T @ T.T - np.eye(q))
    if iso > _hypothesis_tol(operator_norm(K), operator_norm(T)):
        raise PreconditionError(f"T T* != I (residual {iso:.3e})")
    comm, comm_tol = _commutation(K, T)
    if comm > comm_tol:
        raise PreconditionError(f"T and K do not commute (residual {comm:.3e})")
    rk = _require_kframe(fs, K)
    new = fs.transformed(T)
    rn = kframe_bounds(new, K)
    pred_hi = rk.upper * operator_norm(T) ** 2
    # ||T* K* f|| = ||K* f|| for every f
    rng = np.random.default_rng(0)
    f = rng.uniform(-1, 1, size=(8, q))
    kf = np.linalg.norm(f @ K, axis=1)
    tkf = np.linalg.norm(f @ K @ T, axis=1)
    iso_res = float(np.max(np.abs(kf - tkf)) / max(np.max(kf), np.finfo(float).tiny))
    report = ConstructionReport(
        theorem="3.5",
        checks={
            "k_frame": rn.is_kframe,
            "lower_bound": _lower_ok(rk.lower, rn.lower, tol),
            "upper_bound": _lower_ok(rn.upper, pred_hi, tol),
            "norm_preserved": iso_res <= tol,
        },
        predicted={"lower": rk.lower, "upper": pred_hi},
        achieved={"lower": rn.lower, "upper": rn.upper},
        residuals={"coisometry": iso, "commutation": comm, "norm_preservation": iso_res},
    )
    return new, report


def synthesis_characterization(fs: FrameSequence, K, tol: float | None = None) -> ConstructionReport:
    """K-frame iff ``R(K) <= R(T)`` for the synthesis map ``T e_i = f_i``.

    Both directions are exercised: the verdicts must agree and, when the
    inclusion holds, ``1 / lam^2`` from the factorization through ``T``
    must be a valid lower K-frame bound.
    """
    tol = _tol.inequality_tol() if tol is None else tol
    q = fs.qs.q
    K = _square(K, q)
    T = fs.coeffs.T  # T e_i = coordinates of f_i
    cert = douglas_check(K, T)
    rk = kframe_bounds(fs, K)
    checks = {"biconditional": rk.is_kframe == cert.holds, "douglas_consistent": cert.consistent}
    predicted = {}
    if cert.holds and not rk.degenerate_k:
        bound = 1.0 / cert.lam**2
        predicted["lower"] = bound
        checks["converse_bound"] = _lower_ok(bound, rk.lower, tol)
    return ConstructionReport(
        theorem="3.6",
        checks=checks,
        predicted=predicted,
        achieved={"lower": rk.lower, "upper": rk.upper},
        residuals={"factorization": cert.residual} if cert.holds else {},
        extra={"is_kframe": rk.is_kframe, "inclusion": cert.holds},
    )


def sum_theorem_3_7(fs: FrameSequence, gs: FrameSequence, K, tol: float | None = None):
    """``{f_i + g_i}`` is a K-frame when ``TL^*`` and ``LT^*`` are positive.

    Predicted bounds: ``1 / lam^2`` with ``lam`` from the range-sum
    certificate of ``K`` against ``(T, L)``, and ``(sqrt(B_f) + sqrt(B_g))^2``
    from the two Bessel bounds.
    """
    tol = _tol.inequality_tol() if tol is None else tol
    if gs.qs is not fs.qs or gs.m != fs.m:
        raise InputError("both sequences must have the same length over the same X_F")
    q = fs.qs.q
    K = _square(K, q)
    T = fs.coeffs.T
    L = gs.coeffs.T
    if not is_psd(T @ L.T):
        raise PreconditionError("T L* is not a positive operator")
    if not is_psd(L @ T.T):
        raise PreconditionError("L T* is not a positive operator")
    rs = range_sum_check(K, T, L)
    if not rs.holds:
        raise PreconditionError("range of K is not contained in R(T) + R(L)")
    bf = frame_bounds(fs).upper
    bg = frame_bounds(gs).upper
    new = fs + gs
    rn = kframe_bounds(new, K)
    pred_lo = 1.0 / rs.lam**2 if rs.lam > 0 else float("inf")
    pred_hi = (np.sqrt(bf) + np.sqrt(bg)) ** 2
    report = ConstructionReport(
        theorem="3.7",
        checks={
            "k_frame": rn.is_kframe,
            "lower_bound": _lower_ok(pred_lo, rn.lower, tol),
            "upper_bound": _lower_ok(rn.upper, pred_hi, tol),
            "range_sum_consistent": rs.consistent,
        },
        predicted={"lower": pred_lo, "upper": float(pred_hi)},
        achieved={"lower": rn.lower, "upper": rn.upper},
        residuals={"factorization": rs.residual},
        extra={"lambda": rs.lam},
    )
    return new, report


def perturb_theorem_3_8(fs: FrameSequence, K, U, tol: float | None = None):
    """``{f_i + U f_i}`` for a positive ``U``.

    The new frame operator must equal ``(I+U) S_F (I+U)^*``. The K-frame
    property is certified through ``(I+U) S_F (I+U)^* >= S_F >= A KK^*``;
    that middle inequality needs ``US_F + S_F U`` to be positive, which holds
    when ``U`` commutes with ``S_F`` but can fail otherwise, so it is
    reported as its own check rather than assumed.
    """
    tol = _tol.inequality_tol() if tol is None else tol
    id_tol = _tol.identity_tol()
    q = fs.qs.q
    K = _square(K, q)
    U = _square(U, q, "U")
    if not is_psd(U):
        raise PreconditionError("U is not a positive operator")
    rk = _require_kframe(fs, K)
    S = frame_operator(fs)
    I_U = np.eye(q) + U
    new = fs.transformed(I_U)
    S_new = frame_operator(new)
    expected = I_U @ S @ I_U.T
    identity = float(np.linalg.norm(S_new - expected) / max(np.linalg.norm(expected), np.finfo(float).tiny))
    dominates = is_psd(S_new - S)
    rn = kframe_bounds(new, K)
    report = ConstructionReport(
        theorem="3.8",
        checks={
            "operator_identity": identity <= id_tol,
            "dominates_original": dominates,
            "k_frame": rn.is_kframe,
            "lower_bound": _lower_ok(rk.lower, rn.lower, tol),
        },
        predicted={"lower": rk.lower},
        achieved={"lower": rn.lower, "upper": rn.upper},
        residuals={"operator_identity": identity},
    )
    return new, report
