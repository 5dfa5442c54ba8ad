"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

The lines are also collected and echoed in the terminal summary.
"""
import json

import numpy as np
import pytest

from nframe import (
    AmbientSpace,
    FrameSequence,
    axiom_report,
    dual_bessel_theorem_4_5,
    frame_bounds,
    frame_operator,
    kframe_bounds,
    scale_to_parseval,
    tightness,
)
from nframe.certify import run_verification
from nframe.cli import main
from nframe.generate import (
    DEFAULT_GRID,
    KINDS,
    instance_rng,
    orthonormal_rows,
    random_kframe,
    random_operator,
    random_quotient,
    random_tight_kframe,
    uniform,
    with_anchor_noise,
)

from conftest import ACCEPTANCE_LINES
from oracles import bisect_lower_bound, min_eig


def record(number, title, ok, detail):
    line = f"criterion {number:>2} {'PASS' if ok else 'FAIL'}  {title}: {detail}"
    print(line)
    ACCEPTANCE_LINES[number] = line
    assert ok, line


def max_resid(report, key):
    return report["max_residuals"].get(key, 0.0)


def test_criterion_01_axioms():
    worst = 0.0
    for i, (d, n) in enumerate(DEFAULT_GRID):
        anchors = uniform(instance_rng(1, i), n - 1, d)
        rep = axiom_report(AmbientSpace(d, n), anchors, samples=1000, seed=i)
        worst = max(worst, max(rep.violations.values()))
    record(1, "n-inner product axioms", worst <= 1e-9, f"{len(DEFAULT_GRID)} (d,n) x 1000 tuples, max violation {worst:.2e}")


def test_criterion_02_douglas_and_range_sum():
    parts = []
    ok = True
    for tid in ("douglas", "range-sum"):
        rep = run_verification(tid, seed=2, count=500)
        holds = sum(c["flags"]["holds"] for c in rep["cases"])
        mixed = 50 <= holds <= 450
        ok &= rep["all_passed"] and mixed and max_resid(rep, "factorization") <= 1e-8
        parts.append(f"{tid} {rep['passed']}/500 ({holds} inclusions), factorization {max_resid(rep, 'factorization'):.1e}")
    record(2, "Douglas and range-sum equivalence", ok, "; ".join(parts))


def test_criterion_03_pseudo_inverse():
    rep = run_verification("pinv", seed=3, count=200)
    worst = max(rep["max_residuals"].values())
    record(3, "pseudo-inverse contract", rep["all_passed"] and worst <= 1e-9, f"{rep['passed']}/200, max residual {worst:.1e}")


def test_criterion_04_exact_bounds():
    worst = 0.0
    for i, (d, n) in enumerate(DEFAULT_GRID):
        rng = instance_rng(4, i)
        qs = random_quotient(rng, d, n)
        q = qs.q
        basis = FrameSequence.from_coords(qs, np.eye(q))
        doubled = with_anchor_noise(rng, qs, FrameSequence.from_coords(qs, np.vstack([np.eye(q)[:1], np.eye(q)])))
        b1, b2 = frame_bounds(basis), frame_bounds(doubled)
        if q == 1:
            # {b1, b1} in a line has both bounds 2
            target = (2.0, 2.0)
        else:
            target = (1.0, 2.0)
        worst = max(worst, abs(b1.lower - 1), abs(b1.upper - 1), abs(b2.lower - target[0]), abs(b2.upper - target[1]))
    record(4, "optimal bounds exact", worst <= 1e-10, f"{len(DEFAULT_GRID)} spaces, max error {worst:.1e}")


def test_criterion_05_kframe_optimality():
    failures = 0
    count = 200
    for i in range(count):
        rng = instance_rng(5, i)
        d, n = DEFAULT_GRID[i % len(DEFAULT_GRID)]
        qs = random_quotient(rng, d, n)
        q = qs.q
        K = random_operator(rng, q, int(rng.integers(1, q + 1)))
        m = int(rng.integers(q, 2 * q + 3))
        if i % 3 == 2:
            k = int(rng.integers(1, q + 1))
            fs = FrameSequence.from_coords(qs, uniform(rng, m, k) @ uniform(rng, k, q))
        else:
            fs = random_kframe(rng, qs, K, m, "range" if i % 3 else "frame")
        r = kframe_bounds(fs, K)
        S = frame_operator(fs)
        M = K @ K.T
        scale = np.linalg.norm(S, 2)
        oracle = bisect_lower_bound(S, K)
        ok = r.is_kframe == (oracle * np.linalg.norm(M, 2) > 1e-8 * scale)
        if r.is_kframe:
            ok &= min_eig(S - r.lower * M) >= -1e-9 * scale
            ok &= min_eig(S - (1 + 1e-6) * r.lower * M) < 0
        failures += not ok
    record(5, "K-frame optimality and biconditional", failures == 0, f"{count - failures}/{count} instances")


def test_criterion_06_closed_range_sandwiches():
    rep = run_verification("note-3.2", seed=6, count=200)
    worst = max(rep["max_residuals"].values())
    record(6, "closed-range sandwiches", rep["all_passed"] and worst <= 1e-8, f"{rep['passed']}/200, max violation {worst:.1e}")


def test_criterion_07_constructions():
    parts = []
    ok = True
    for tid in ("3.3", "3.4", "3.5", "3.6", "3.7", "3.8"):
        rep = run_verification(tid, seed=7, count=200)
        ok &= rep["all_passed"]
        parts.append(f"{tid} {rep['passed']}/200")
    rep = run_verification("3.8", seed=8, count=200)
    ident = max_resid(rep, "operator_identity")
    ok &= ident <= 1e-9
    record(7, "K-frame constructions", ok, ", ".join(parts) + f"; operator identity {ident:.1e}")


def test_criterion_08_synthesis_biconditional():
    rep = run_verification("3.6", seed=8, count=500)
    kframes = sum(c["flags"]["is_kframe"] for c in rep["cases"])
    disagree = sum(c["flags"]["is_kframe"] != c["flags"]["inclusion"] for c in rep["cases"])
    ok = rep["all_passed"] and disagree == 0 and 50 <= kframes <= 450
    record(8, "synthesis-range biconditional", ok, f"500 instances, {kframes} K-frames, {disagree} disagreements")


def test_criterion_09_tight_kframes():
    ok = True
    # Parseval round trip
    worst_rt = 0.0
    for i in range(200):
        rng = instance_rng(9, i)
        d, n = DEFAULT_GRID[i % len(DEFAULT_GRID)]
        qs = random_quotient(rng, d, n)
        K = random_operator(rng, qs.q, int(rng.integers(1, qs.q + 1)))
        fs = random_tight_kframe(rng, qs, K, qs.q + int(rng.integers(0, 3)), rng.uniform(0.5, 3.0))
        worst_rt = max(worst_rt, abs(tightness(scale_to_parseval(fs, K), K).constant - 1.0))
    ok &= worst_rt <= 1e-10
    parts = [f"round trip {worst_rt:.1e}"]

    for tid in ("4.3", "4.4"):
        rep = run_verification(tid, seed=9, count=200)
        drift = max(abs(c["achieved"]["constant"] - c["predicted"]["constant"]) / c["predicted"]["constant"] for c in rep["cases"])
        ok &= rep["all_passed"] and drift <= 1e-9
        parts.append(f"{tid} {rep['passed']}/200 drift {drift:.1e}")

    rep = run_verification("4.5", seed=9, count=200)
    ab_min = min(c["achieved"]["AB"] for c in rep["cases"])
    recon = max(max_resid(rep, "reconstruction"), max_resid(rep, "adjoint_reconstruction"))
    ok &= rep["all_passed"] and ab_min >= 1 - 1e-8 and recon <= 1e-8
    # Parseval frames (K = I) are their own duals: AB = 1
    worst_ab = 0.0
    for i in range(50):
        rng = instance_rng(10, i)
        qs = random_quotient(rng, *DEFAULT_GRID[i % len(DEFAULT_GRID)])
        fs = FrameSequence.from_coords(qs, orthonormal_rows(rng, qs.q, qs.q + i % 3).T)
        gs, r = dual_bessel_theorem_4_5(fs, np.eye(qs.q), seed=i)
        worst_ab = max(worst_ab, abs(r.achieved["AB"] - 1), float(np.max(np.abs(gs.coeffs - fs.coeffs))))
    ok &= worst_ab <= 1e-9
    parts.append(f"4.5 {rep['passed']}/200 min AB {ab_min:.12f}, self-dual |AB-1| {worst_ab:.1e}")

    rep = run_verification("4.6", seed=1, count=100)
    dev = max(abs(c["achieved"]["constant"] - 2.0) for c in rep["cases"])
    ok &= rep["all_passed"] and dev <= 1e-8
    parts.append(f"4.6 {rep['passed']}/100 |A-2| {dev:.1e}")
    record(9, "tight K-frames", ok, "; ".join(parts))


def test_criterion_10_cli_determinism(tmp_path, capsys):
    out1, out2 = tmp_path / "out1.json", tmp_path / "out2.json"
    codes = [main(["verify", "3.7", "--seed", "42", "--count", "50", "--json", str(p)]) for p in (out1, out2)]
    r1, r2 = json.loads(out1.read_text()), json.loads(out2.read_text())
    r1.pop("timestamp")
    r2.pop("timestamp")
    same = r1 == r2 and json.dumps(r1) == json.dumps(r2)

    failures = 0
    runs = 0
    for kind in KINDS:
        for seed in range(10):
            dim, arity = DEFAULT_GRID[(seed * 7) % len(DEFAULT_GRID)]
            path = tmp_path / f"{kind}-{seed}.json"
            rc = main(["generate", kind, "--seed", str(seed), "--dim", str(dim), "--arity", str(arity), "--out", str(path)])
            rc2 = main(["analyze", str(path)])
            runs += 1
            failures += rc != 0 or rc2 != 0
    capsys.readouterr()
    ok = codes == [0, 0] and same and failures == 0
    record(10, "CLI determinism and round trip", ok, f"reports identical: {same}; generate/analyze {runs - failures}/{runs}")


@pytest.mark.parametrize("tid", ["axioms", "douglas", "range-sum", "pinv", "note-3.2", "3.3", "3.4", "3.5", "3.6", "3.7", "3.8", "4.3", "4.4", "4.5", "4.6"])
def test_every_theorem_id_is_wired(tid):
    rep = run_verification(tid, seed=0, count=3)
    assert rep["all_passed"] and rep["count"] == 3
