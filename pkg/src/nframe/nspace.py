"""Real n-inner product spaces built from Gram determinants.

For anchors ``a_2, ..., a_n`` in R^d the n-inner product is

    <x, y | a_2, ..., a_n> = det [[x.y,   x.a_j ],
                                  [a_i.y, a_i.a_j]]

with the Euclidean dot product inside. :func:`n_inner` is the single
evaluation point for the product; everything downstream goes through it.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _tol
from .errors import DegenerateAnchorError, InputError

__all__ = [
    "AmbientSpace",
    "AnchorSet",
    "AxiomReport",
    "as_vector",
    "axiom_report",
    "in_anchor_span",
    "n_inner",
    "n_norm",
]


@dataclass(frozen=True)
class AmbientSpace:
    """R^dim equipped with an n-inner product of the given arity."""

    dim: int
    arity: int

    def __post_init__(self):
        if int(self.dim) != self.dim or int(self.arity) != self.arity:
            raise InputError("dim and arity must be integers")
        if self.arity < 2:
            raise InputError(f"arity must be >= 2, got {self.arity}")
        if self.dim < self.arity:
            raise InputError(
                f"dimension {self.dim} is smaller than arity {self.arity}; "
                "no room for the derived Hilbert space"
            )


def as_vector(x, dim: int | None = None) -> np.ndarray:
    """Convert to a finite float array, optionally checking the trailing size."""
    arr = np.asarray(x, dtype=float)
    if arr.ndim == 0:
        raise InputError("expected a vector, got a scalar")
    if dim is not None and arr.shape[-1] != dim:
        raise InputError(f"vector has length {arr.shape[-1]}, expected {dim}")
    if not np.all(np.isfinite(arr)):
        raise InputError("vector contains NaN or Inf")
    return arr


@dataclass(frozen=True, eq=False)
class AnchorSet:
    """The fixed tuple ``(a_2, ..., a_n)``, stored row-wise."""

    vectors: np.ndarray
    _gram: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        vecs = np.atleast_2d(as_vector(self.vectors)).copy()
        if vecs.ndim != 2 or vecs.shape[0] < 1:
            raise InputError("anchors must be a non-empty (n-1, d) array")
        if vecs.shape[0] > vecs.shape[1]:
            raise DegenerateAnchorError(
                f"{vecs.shape[0]} anchors in dimension {vecs.shape[1]} "
                "cannot be linearly independent"
            )
        s = np.linalg.svd(vecs, compute_uv=False)
        if not s[-1] > _tol.RANK_RCOND * s[0]:
            raise DegenerateAnchorError(
                f"anchors are linearly dependent (singular values {s})"
            )
        vecs.setflags(write=False)
        gram = vecs @ vecs.T
        gram.setflags(write=False)
        object.__setattr__(self, "vectors", vecs)
        object.__setattr__(self, "_gram", gram)

    @property
    def arity(self) -> int:
        return self.vectors.shape[0] + 1

    @property
    def dim(self) -> int:
        return self.vectors.shape[1]

    @property
    def gram(self) -> np.ndarray:
        """Euclidean Gram matrix of the anchors."""
        return self._gram

    @property
    def gram_det(self) -> float:
        return float(np.linalg.det(self._gram))

    def permuted(self, order) -> "AnchorSet":
        return AnchorSet(self.vectors[list(order)])

    def check_space(self, space: AmbientSpace) -> None:
        if space.dim != self.dim or space.arity != self.arity:
            raise InputError(
                f"anchor set (dim={self.dim}, arity={self.arity}) does not match "
                f"space (dim={space.dim}, arity={space.arity})"
            )


def _anchors(F) -> AnchorSet:
    return F if isinstance(F, AnchorSet) else AnchorSet(F)


def n_inner(x, y, F):
    """Evaluate ``<x, y | a_2, ..., a_n>``.

    ``x`` and ``y`` may be stacks of vectors of shape ``(..., d)``; they
    broadcast against each other. Returns a float for single vectors.
    """
    F = _anchors(F)
    x = as_vector(x, F.dim)
    y = as_vector(y, F.dim)
    A = F.vectors
    x, y = np.broadcast_arrays(x, y)
    k = F.arity
    M = np.empty(x.shape[:-1] + (k, k))
    M[..., 0, 0] = np.einsum("...i,...i->...", x, y)
    M[..., 0, 1:] = x @ A.T
    M[..., 1:, 0] = y @ A.T
    M[..., 1:, 1:] = F.gram
    with np.errstate(divide="ignore", invalid="ignore"):  # exactly singular M is a valid zero
        val = np.linalg.det(M)
    return float(val) if np.ndim(val) == 0 else val


def n_norm(x, F):
    """``||x, a_2, ..., a_n||``, the square root of ``<x, x | F>``.

    Round-off negatives down to ``-1e-12 * scale`` are clamped to zero.
    """
    F = _anchors(F)
    x = as_vector(x, F.dim)
    sq = np.asarray(n_inner(x, x, F))
    scale = np.einsum("...i,...i->...", x, x) * F.gram_det
    floor = -_tol.ROUNDOFF_CLAMP * np.maximum(scale, 1.0)
    if np.any(sq < floor):
        raise InputError(f"n-inner product of x with itself is negative: {sq.min()}")
    out = np.sqrt(np.clip(sq, 0.0, None))
    return float(out) if out.ndim == 0 else out


def in_anchor_span(x, F, rcond: float = _tol.RANK_RCOND) -> bool:
    """Rank test: does ``x`` lie in the span of the anchors?"""
    F = _anchors(F)
    x = as_vector(x, F.dim)
    base = np.linalg.svd(F.vectors, compute_uv=False)
    ext = np.linalg.svd(np.vstack([F.vectors, x]), compute_uv=False)
    scale = max(base[0], ext[0])
    return int(np.sum(ext > rcond * scale)) == int(np.sum(base > rcond * scale))


@dataclass
class AxiomReport:
    samples: int
    tol: float
    violations: dict
    passed: bool

    def summary(self) -> str:
        worst = max(self.violations, key=self.violations.get)
        status = "pass" if self.passed else "FAIL"
        return (
            f"{status}: {self.samples} tuples, worst '{worst}' "
            f"{self.violations[worst]:.3e} (tol {self.tol:g})"
        )


def axiom_report(space: AmbientSpace, F, samples: int = 1000, seed=0, tol: float | None = None) -> AxiomReport:
    """Sample random tuples and record the worst relative violation of each law.

    Checked: symmetry, homogeneity, additivity, anchor-permutation
    invariance, positivity, vanishing on the anchor span, Cauchy-Schwarz,
    polarization and the parallelogram law.
    """
    F = _anchors(F)
    F.check_space(space)
    tol = _tol.identity_tol() if tol is None else tol
    rng = np.random.default_rng(seed)
    d = space.dim
    x, y, z = (rng.uniform(-1, 1, size=(samples, d)) for _ in range(3))
    alpha = rng.uniform(-3, 3, size=samples)
    order = rng.permutation(F.arity - 1)
    Fp = F.permuted(order)
    span_pts = rng.uniform(-1, 1, size=(samples, F.arity - 1)) @ F.vectors

    vnorm = lambda v: np.linalg.norm(v, axis=-1)
    scale = (vnorm(x) + vnorm(y) + vnorm(z)) ** 2 * F.gram_det

    xy = n_inner(x, y, F)
    nx2 = n_inner(x, x, F)
    ny2 = n_inner(y, y, F)
    plus = n_inner(x + y, x + y, F)
    minus = n_inner(x - y, x - y, F)

    v = {
        "symmetry": np.abs(xy - n_inner(y, x, F)),
        "homogeneity": np.abs(n_inner(alpha[:, None] * x, y, F) - alpha * xy) / np.maximum(np.abs(alpha), 1.0),
        "additivity": np.abs(n_inner(x + y, z, F) - n_inner(x, z, F) - n_inner(y, z, F)),
        "permutation": np.abs(n_inner(x, y, Fp) - xy),
        "positivity": np.clip(-nx2, 0.0, None),
        "anchor_kernel": np.abs(n_inner(span_pts, span_pts, F)),
        "cauchy_schwarz": np.clip(np.abs(xy) - np.sqrt(np.clip(nx2, 0, None) * np.clip(ny2, 0, None)), 0.0, None),
        "polarization": np.abs(xy - 0.25 * (plus - minus)),
        "parallelogram": np.abs(plus + minus - 2.0 * (nx2 + ny2)),
    }
    violations = {k: float(np.max(val / scale)) for k, val in v.items()}
    passed = all(val <= tol for val in violations.values())
    return AxiomReport(samples=samples, tol=tol, violations=violations, passed=passed)
