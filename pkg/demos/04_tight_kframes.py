"""Tight and Parseval K-frames, dual Bessel sequences and disjoint sums.

Run with: python3 demos/04_tight_kframes.py
"""
import numpy as np

from nframe import (
    construct_theorem_4_4,
    disjoint_sum_theorem_4_6,
    dual_bessel_theorem_4_5,
    scale_to_parseval,
    tightness,
)
from nframe.generate import instance_rng, parseval_disjoint_pair, random_quotient, random_tight_kframe

rng = instance_rng(7)
qs = random_quotient(rng, 6, 2)
q = qs.q
K = rng.uniform(-1, 1, (q, q))

# S_F = A KK^T exactly when the synthesis map is sqrt(A) K V with V V^T = I.
fs = random_tight_kframe(rng, qs, K, m=q + 2, A=2.5)
rep = tightness(fs, K)
print(f"tight: {rep.is_tight}, A = {rep.constant:.12f}, relative residual {rep.matrix_residual:.1e}")

pfs = scale_to_parseval(fs, K)
print("after rescaling by 1/sqrt(A):", tightness(pfs, K).constant)

# Pushing a tight K-frame through any T gives a tight TK-frame with the same A.
T = rng.uniform(-1, 1, (q, q))
_, rep = construct_theorem_4_4(fs, K, T)
print("\n{T f_i} constant:", rep.achieved["constant"])

# A Bessel sequence g_i with K f = sum <f, g_i> f_i, from the minimal-norm factor of K through T.
gs, rep = dual_bessel_theorem_4_5(fs, K)
print("\ndual sequence: A =", round(rep.achieved["A"], 6), " B =", round(rep.achieved["B"], 6), " AB =", rep.achieved["AB"])
print("reconstruction residuals:", rep.residuals)

# Two Parseval K-frames with orthogonal coefficient supports add up to a tight K-frame with constant 2.
f1, f2 = parseval_disjoint_pair(rng, qs, K, m=2 * q)
new, rep = disjoint_sum_theorem_4_6(f1, f2, K)
print("\ndisjoint Parseval pair, sum constant:", rep.achieved["constant"])
print("||T L^T|| =", np.linalg.norm(f1.coeffs.T @ f2.coeffs, 2))
