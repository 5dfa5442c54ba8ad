"""Seeded random instances that satisfy the hypotheses of each construction.

Random matrices almost never commute, are almost never tight and almost
never have nested ranges, so every generator builds its structure in:

* commuting pairs: ``T`` a polynomial in ``K``, or simultaneous block forms;
* positive cross terms: ``g_i = P f_i`` with ``P`` diagonal in the
  eigenbasis of ``S_F``;
* tight K-frames: synthesis ``sqrt(A) K V`` with ``V`` having orthonormal rows;
* disjoint Parseval pairs: ``K V_1`` and ``K V_2`` with ``V_1 V_2^T = 0``.

Entries are i.i.d. uniform on ``[-1, 1]`` from numpy's PCG64 generator.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateAnchorError, InputError
from .frames import FrameSequence, frame_bounds
from .nspace import AmbientSpace, AnchorSet
from .quotient import QuotientSpace, build_quotient

__all__ = [
    "DEFAULT_GRID",
    "Instance",
    "KINDS",
    "PRNG_NAME",
    "instance_rng",
    "random_kframe",
    "random_operator",
    "random_quotient",
    "generate_instance",
]

PRNG_NAME = f"numpy.random.PCG64 (numpy {np.__version__})"

DEFAULT_GRID = [(d, n) for d in range(3, 9) for n in (2, 3, 4) if d >= n]

KINDS = ("frame", "kframe", "tight-kframe", "parseval-disjoint-pair")


@dataclass
class Instance:
    qs: QuotientSpace
    frame: FrameSequence
    operators: dict = field(default_factory=dict)
    second_frame: FrameSequence | None = None
    kind: str | None = None
    seed: int | None = None

    @property
    def space(self) -> AmbientSpace:
        return self.qs.space

    @property
    def anchors(self) -> AnchorSet:
        return self.qs.anchor_set


def instance_rng(seed: int, index: int = 0) -> np.random.Generator:
    """Independent stream for instance ``index`` of a run seeded with ``seed``."""
    return np.random.default_rng([int(seed), int(index)])


def uniform(rng, *shape) -> np.ndarray:
    return rng.uniform(-1.0, 1.0, size=shape)


def random_quotient(rng, d: int, n: int) -> QuotientSpace:
    space = AmbientSpace(d, n)
    for _ in range(10):
        try:
            return build_quotient(space, AnchorSet(uniform(rng, n - 1, d)))
        except DegenerateAnchorError:
            continue
    raise RuntimeError("could not draw independent anchors")


def random_operator(rng, q: int, rank: int | None = None) -> np.ndarray:
    """``q x q`` matrix of the given rank (full rank by default)."""
    rank = q if rank is None else rank
    if rank >= q:
        return uniform(rng, q, q)
    return uniform(rng, q, rank) @ uniform(rng, rank, q)


def orthonormal_rows(rng, k: int, m: int) -> np.ndarray:
    """``k x m`` matrix with orthonormal rows (``k <= m``)."""
    Q, R = np.linalg.qr(uniform(rng, m, m))
    Q = Q * np.sign(np.diag(R))
    return Q[:, :k].T


def with_anchor_noise(rng, qs: QuotientSpace, fs: FrameSequence) -> FrameSequence:
    """Same X_F cosets, but with random anchor-span components added."""
    noise = uniform(rng, fs.m, qs.anchor_set.arity - 1) @ qs.anchor_set.vectors
    return FrameSequence(fs.elements + noise, qs)


def random_kframe(rng, qs: QuotientSpace, K: np.ndarray, m: int, mode: str = "range") -> FrameSequence:
    """A K-frame of length ``m``.

    ``mode="range"`` puts the synthesis range exactly on ``R(K)`` (so it
    is not a frame when ``K`` is singular); ``mode="frame"`` draws a
    generic sequence, which is a frame as soon as ``m >= q``.
    """
    q = qs.q
    if mode == "frame":
        coords = uniform(rng, m, q)
    elif mode == "range":
        coords = (K @ uniform(rng, q, m)).T
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return FrameSequence.from_coords(qs, coords)


def random_tight_kframe(rng, qs: QuotientSpace, K: np.ndarray, m: int, A: float) -> FrameSequence:
    """Synthesis map ``sqrt(A) K V`` with ``V V^T = I``, so ``S_F = A K K^T``."""
    if m < qs.q:
        raise InputError(f"a tight K-frame here needs m >= q = {qs.q}, got m = {m}")
    V = orthonormal_rows(rng, qs.q, m)
    return FrameSequence.from_coords(qs, (np.sqrt(A) * K @ V).T)


def parseval_disjoint_pair(rng, qs: QuotientSpace, K: np.ndarray, m: int):
    """Two Parseval K-frames whose synthesis maps satisfy ``T L^* = 0``."""
    q = qs.q
    if m < 2 * q:
        raise InputError(f"a disjoint Parseval pair needs m >= 2q = {2 * q}, got m = {m}")
    V = orthonormal_rows(rng, 2 * q, m)
    fs = FrameSequence.from_coords(qs, (K @ V[:q]).T)
    gs = FrameSequence.from_coords(qs, (K @ V[q:]).T)
    return fs, gs


def eigen_positive(rng, S: np.ndarray, low: float = 0.0, high: float = 2.0) -> np.ndarray:
    """Random PSD matrix diagonal in the eigenbasis of the symmetric ``S``."""
    _, V = np.linalg.eigh(S)
    return (V * rng.uniform(low, high, size=S.shape[0])) @ V.T


def commuting_polynomial(rng, K: np.ndarray) -> np.ndarray:
    """Invertible ``c0 I + c1 K + c2 K^2`` (``c0`` dominates the other terms)."""
    q = K.shape[0]
    c1, c2 = uniform(rng, 2)
    P = c1 * K + c2 * K @ K
    c0 = (1.0 + rng.uniform(0.0, 1.0) + np.linalg.norm(P, 2)) * rng.choice([-1.0, 1.0])
    return c0 * np.eye(q) + P


def commuting_rotation_pair(rng, q: int):
    """Orthogonal ``T`` and a (possibly singular) ``K`` that commute.

    Both are block diagonal in a random orthonormal basis: on 2x2 blocks
    ``T`` is a rotation and ``K = aI + bJ`` (a scaled rotation) or zero,
    on 1x1 blocks ``T = +-1`` and ``K`` is any scalar.
    """
    Tb = np.zeros((q, q))
    Kb = np.zeros((q, q))
    J = np.array([[0.0, -1.0], [1.0, 0.0]])
    i = 0
    while i < q:
        if i + 1 < q and rng.uniform() < 0.7:
            th = rng.uniform(0, 2 * np.pi)
            Tb[i:i + 2, i:i + 2] = [[np.cos(th), -np.sin(th)], [np.sin(th), np.cos(th)]]
            if i == 0 or rng.uniform() < 0.7:
                a, b = uniform(rng, 2)
                Kb[i:i + 2, i:i + 2] = a * np.eye(2) + b * J
            i += 2
        else:
            Tb[i, i] = rng.choice([-1.0, 1.0])
            if i == 0 or rng.uniform() < 0.7:
                Kb[i, i] = rng.uniform(-1, 1)
            i += 1
    Q, R = np.linalg.qr(uniform(rng, q, q))
    Q = Q * np.sign(np.diag(R))
    return Q @ Tb @ Q.T, Q @ Kb @ Q.T


def generate_instance(kind: str, seed: int = 0, dim: int = 4, arity: int = 2, size: int | None = None) -> Instance:
    """Random instance whose advertised property has been checked before returning."""
    from .kframes import kframe_bounds
    from .tight import disjoint_sum_theorem_4_6, tightness

    if kind not in KINDS:
        raise InputError(f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}")
    rng = instance_rng(seed)
    qs = random_quotient(rng, dim, arity)
    q = qs.q
    if size is None:
        size = 2 * q if kind == "parseval-disjoint-pair" else q + 1
    if size < 1:
        raise InputError("size must be positive")

    second = None
    if kind == "frame":
        if size < q:
            raise InputError(f"a frame for X_F (dimension {q}) needs at least {q} elements, got {size}")
        K = np.eye(q)
        fs = random_kframe(rng, qs, K, size, mode="frame")
        ok = frame_bounds(fs).is_frame
    elif kind == "kframe":
        K = random_operator(rng, q, rank=max(1, q - 1))
        fs = random_kframe(rng, qs, K, size, mode="range")
        ok = kframe_bounds(fs, K).is_kframe
    elif kind == "tight-kframe":
        K = random_operator(rng, q)
        fs = random_tight_kframe(rng, qs, K, size, A=rng.uniform(0.5, 3.0))
        ok = tightness(fs, K).is_tight
    else:
        K = random_operator(rng, q)
        fs, second = parseval_disjoint_pair(rng, qs, K, size)
        second = with_anchor_noise(rng, qs, second)
        try:
            disjoint_sum_theorem_4_6(fs, second, K)
            ok = True
        except Exception:
            ok = False
    fs = with_anchor_noise(rng, qs, fs)
    if not ok:
        raise RuntimeError(f"generated {kind} instance failed its own check (seed {seed})")
    return Instance(qs, fs, {"K": K}, second, kind, seed)
