"""Frame bounds, K-frame bounds and the range-inclusion test behind them.

Run with: python3 demos/02_frame_bounds.py
"""
import numpy as np

from nframe import (
    AmbientSpace,
    FrameSequence,
    build_quotient,
    douglas_check,
    frame_bounds,
    frame_operator,
    kframe_bounds,
    synthesis_characterization,
)

np.set_printoptions(precision=4, suppress=True)

qs = build_quotient(AmbientSpace(3, 2), [[0.0, 0.0, 1.0]])
e1, e2 = [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]

fs = FrameSequence([e1, e1, e2], qs)
print("S_F for {e1, e1, e2}:\n", frame_operator(fs))
print(frame_bounds(fs))

# One vector cannot be a frame for a plane ...
line = FrameSequence([e1], qs)
print("\n{e1}:", frame_bounds(line))
# ... but it is a K-frame when K only asks for the e1 direction.
P1 = np.diag([1.0, 0.0])
print("{e1} with K = proj onto e1:", kframe_bounds(line, P1))

# The lower K-frame bound is decided by range inclusion R(K) <= R(T).
T = line.coeffs.T
print("\nR(P1) <= R(T)?", douglas_check(P1, T).holds)
print("R(I)  <= R(T)?", douglas_check(np.eye(2), T).holds)

# A random K of rank 2 on a 4-dimensional X_F, and a sequence built from it.
rng = np.random.default_rng(1)
qs4 = build_quotient(AmbientSpace(6, 3), rng.uniform(-1, 1, (2, 6)))
K = rng.uniform(-1, 1, (4, 2)) @ rng.uniform(-1, 1, (2, 4))
fs = FrameSequence.from_coords(qs4, (K @ rng.uniform(-1, 1, (4, 6))).T)
rep = kframe_bounds(fs, K)
print(f"\nrank-2 K: A = {rep.lower:.4f}, B = {rep.upper:.4f}, K-frame: {rep.is_kframe}")
print("but as a plain frame:", frame_bounds(fs))

S = frame_operator(fs)
print("min eig of S - A KK^T:", np.linalg.eigvalsh(S - rep.lower * K @ K.T)[0])
print("same with A enlarged by 0.1%:", np.linalg.eigvalsh(S - 1.001 * rep.lower * K @ K.T)[0])

report = synthesis_characterization(fs, K)
print("\nK-frame iff inclusion:", report.checks)
