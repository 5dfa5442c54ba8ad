"""New K-frames from old ones: restriction, transformation, sums, perturbation.

Each certifier returns predicted and achieved (optimal) bounds.
Run with: python3 demos/03_constructions.py
"""
import numpy as np

from nframe import (
    FrameSequence,
    frame_operator,
    kframe_bounds,
    perturb_theorem_3_8,
    restrict_theorem_3_3,
    sum_theorem_3_7,
    transform_theorem_3_4,
)
from nframe.errors import PreconditionError
from nframe.generate import commuting_polynomial, eigen_positive, instance_rng, random_kframe, random_quotient

rng = instance_rng(2024)
qs = random_quotient(rng, 7, 3)
q = qs.q
K = rng.uniform(-1, 1, (q, 3)) @ rng.uniform(-1, 1, (3, q))
fs = random_kframe(rng, qs, K, 2 * q, mode="range")
base = kframe_bounds(fs, K)
print(f"q = {q}, rank K = 3, bounds A = {base.lower:.4f}, B = {base.upper:.4f}")


def show(rep):
    pred = {k: round(v, 4) for k, v in rep.predicted.items()}
    got = {k: round(v, 4) for k, v in rep.achieved.items()}
    print(f"  predicted {pred}  achieved {got}  ok={rep.passed}")


print("\nrestrict to T = K W (so R(T) <= R(K)):")
show(restrict_theorem_3_3(fs, K, K @ rng.uniform(-1, 1, (q, q))))

print("\ntransform by T = c0 I + c1 K + c2 K^2 (invertible, commutes with K):")
show(transform_theorem_3_4(fs, K, commuting_polynomial(rng, K))[1])

print("\nadd g_i = P f_i with P >= 0 diagonal in the eigenbasis of S_F:")
P = eigen_positive(rng, frame_operator(fs))
gs = FrameSequence.from_coords(qs, fs.coeffs @ P.T)
show(sum_theorem_3_7(fs, gs, K)[1])

print("\nadding a sequence with a negative cross term is refused:")
try:
    sum_theorem_3_7(fs, fs.scaled(-0.5), K)
except PreconditionError as exc:
    print("  ", exc)

print("\nperturb f_i -> f_i + U f_i with U >= 0 commuting with S_F:")
U = eigen_positive(rng, frame_operator(fs))
show(perturb_theorem_3_8(fs, K, U)[1])

# Without commutation the perturbed frame operator need not dominate S_F.
# Smallest case: one vector on the e1 axis and K projecting onto it.
qs2 = random_quotient(rng, 3, 2)
line = FrameSequence.from_coords(qs2, [[1.0, 0.0]])
U = np.ones((2, 2))
_, rep = perturb_theorem_3_8(line, np.diag([1.0, 0.0]), U)
print("\nnon-commuting U = [[1,1],[1,1]] on {e1}:", rep.checks)
