"""The derived Hilbert space X_F.

``L_F`` is the span of the anchors, ``M_F`` a complement of it and
``<x, y>_F = <x, y | a_2, ..., a_n>`` the semi-inner product whose null
space is exactly ``L_F``. In finite dimension the completion is ``M_F``
itself, so X_F is represented by a basis of ``M_F`` together with its
``<.,.>_F`` Gram matrix and a Cholesky factor ``R`` (``gram = R^T R``).

Two coordinate systems are used:

* raw coordinates ``c``: ``x = l + sum_j c_j b_j`` with ``l`` in ``L_F``;
* orthonormal coordinates ``u = R c``, in which ``<.,.>_F`` is the dot product.

All operators elsewhere in the package act on orthonormal coordinates.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla

from . import _tol
from .errors import DegenerateAnchorError, InputError
from .nspace import AmbientSpace, AnchorSet, as_vector, n_inner

__all__ = ["QuotientSpace", "build_quotient", "project", "f_inner", "orthonormal_coords", "lift"]


@dataclass(frozen=True, eq=False)
class QuotientSpace:
    space: AmbientSpace
    anchor_set: AnchorSet
    basis: np.ndarray  # (q, d), rows span M_F
    gram: np.ndarray  # (q, q), <b_i, b_j>_F
    chol: np.ndarray  # upper triangular R, gram = R^T R
    _split: np.ndarray  # (d, d) inverse of [anchors^T | basis^T]

    @property
    def q(self) -> int:
        return self.basis.shape[0]

    @property
    def dim(self) -> int:
        return self.space.dim


def _complement_basis(A: np.ndarray) -> np.ndarray:
    """Orthonormal basis of span(A)^perp, picked from projected coordinate axes.

    Pivoted Gram-Schmidt over the columns of ``I - P`` keeps the result
    aligned with the standard axes when possible (e.g. anchors ``e_3`` in
    R^3 give ``e_1, e_2``).
    """
    d = A.shape[1]
    qa, _ = np.linalg.qr(A.T)
    resid = np.eye(d) - qa @ qa.T
    q = d - A.shape[0]
    Q, R, piv = sla.qr(resid, pivoting=True)
    Q = Q[:, :q] * np.sign(np.diag(R)[:q])
    # restore coordinate order among the chosen pivots
    order = np.argsort(piv[:q], kind="stable")
    return Q[:, order].T + 0.0  # drop negative zeros


def _assemble(space: AmbientSpace, F: AnchorSet, basis: np.ndarray) -> QuotientSpace:
    q = basis.shape[0]
    gram = n_inner(basis[:, None, :], basis[None, :, :], F)
    gram = 0.5 * (gram + gram.T)
    ev = np.linalg.eigvalsh(gram)
    if not ev[0] > _tol.RANK_RCOND * ev[-1]:
        raise DegenerateAnchorError(f"Gram matrix of X_F is not positive definite: {ev}")
    chol = np.linalg.cholesky(gram).T
    split = np.linalg.inv(np.vstack([F.vectors, basis]).T)
    for arr in (basis, gram, chol, split):
        arr.setflags(write=False)
    assert q == space.dim - (space.arity - 1)
    return QuotientSpace(space, F, basis, gram, chol, split)


def build_quotient(space: AmbientSpace, F) -> QuotientSpace:
    """Build X_F with ``M_F`` the Euclidean orthogonal complement of the anchors."""
    F = F if isinstance(F, AnchorSet) else AnchorSet(F)
    F.check_space(space)
    return _assemble(space, F, _complement_basis(F.vectors))


def _build_with_complement(space: AmbientSpace, F: AnchorSet, basis) -> QuotientSpace:
    """Build X_F over a caller-chosen algebraic complement (internal, for tests)."""
    basis = np.atleast_2d(as_vector(basis, space.dim)).copy()
    if basis.shape[0] != space.dim - F.arity + 1:
        raise InputError("complement basis has the wrong number of vectors")
    if np.linalg.matrix_rank(np.vstack([F.vectors, basis])) != space.dim:
        raise InputError("complement and anchors do not span the space")
    return _assemble(space, F, basis)


def project(qs: QuotientSpace, x) -> np.ndarray:
    """Raw coordinates of the ``M_F`` component of ``x`` (shape ``(..., q)``)."""
    x = as_vector(x, qs.dim)
    full = x @ qs._split.T
    return full[..., qs.anchor_set.arity - 1:]


def orthonormal_coords(qs: QuotientSpace, x) -> np.ndarray:
    """Coordinates of ``x + L_F`` in an ``<.,.>_F``-orthonormal basis of X_F."""
    return project(qs, x) @ qs.chol.T


def lift(qs: QuotientSpace, u) -> np.ndarray:
    """Ambient representative in ``M_F`` of orthonormal coordinates ``u``."""
    u = np.asarray(u, dtype=float)
    if u.shape[-1] != qs.q:
        raise InputError(f"coordinate vector has length {u.shape[-1]}, expected {qs.q}")
    c = sla.solve_triangular(qs.chol, np.moveaxis(np.atleast_2d(u), -1, 0)).T
    out = c @ qs.basis
    return out.reshape(u.shape[:-1] + (qs.dim,))


def f_inner(qs: QuotientSpace, x, y):
    """``<x, y>_F``, the semi-inner product induced by the anchors."""
    return n_inner(x, y, qs.anchor_set)
