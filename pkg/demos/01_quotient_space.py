"""Walk through the n-inner product and the derived space X_F.

Run with: python3 demos/01_quotient_space.py
"""
import numpy as np

from nframe import AmbientSpace, build_quotient, f_inner, n_inner, n_norm, orthonormal_coords, project

np.set_printoptions(precision=4, suppress=True)

# A 2-inner product on R^3 anchored at a2 = e3.
a2 = [0.0, 0.0, 1.0]
print("<e1, e1 | e3> =", n_inner([1, 0, 0], [1, 0, 0], [a2]))
print("<e3, e1 | e3> =", n_inner([0, 0, 1], [1, 0, 0], [a2]), "  (e3 is dependent on the anchor)")
print("||(3,4,0), e3|| =", n_norm([3, 4, 0], [a2]))

# The anchor direction is invisible: X_F is the plane spanned by e1, e2.
qs = build_quotient(AmbientSpace(3, 2), [a2])
print("\nbasis of M_F:\n", qs.basis)
print("gram:\n", qs.gram)
print("raw coordinates of (2,3,7):", project(qs, [2, 3, 7]))

# A less tidy example: R^6 with three random anchors, so X_F has dimension 3.
rng = np.random.default_rng(0)
qs = build_quotient(AmbientSpace(6, 4), rng.uniform(-1, 1, (3, 6)))
print(f"\nd=6, n=4: q = {qs.q}")
print("gram eigenvalues:", np.linalg.eigvalsh(qs.gram))

x, y = rng.uniform(-1, 1, (2, 6))
ux, uy = orthonormal_coords(qs, x), orthonormal_coords(qs, y)
print("<x, y>_F directly      :", f_inner(qs, x, y))
print("dot of orthonormal coords:", ux @ uy)

# adding anything from the anchor span changes nothing
shift = rng.uniform(-1, 1, 3) @ qs.anchor_set.vectors
print("<x + l, y>_F           :", f_inner(qs, x + shift, y))
