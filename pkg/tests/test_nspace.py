import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from nframe import AmbientSpace, AnchorSet, axiom_report, n_inner, n_norm
from nframe.errors import DegenerateAnchorError, InputError
from nframe.nspace import in_anchor_span

from oracles import gram_det_inner

E3 = [[0.0, 0.0, 1.0]]


@pytest.mark.parametrize(
    "x, y, expected",
    [
        ((1, 0, 0), (1, 0, 0), 1.0),
        ((0, 0, 1), (1, 0, 0), 0.0),
        ((1, 0, 1), (1, 0, 0), 1.0),
    ],
)
def test_n_inner_hand_values(x, y, expected):
    assert n_inner(x, y, E3) == pytest.approx(expected, abs=1e-15)


def test_n_norm_hand_values():
    assert n_norm((3, 4, 0), E3) == pytest.approx(5.0)
    assert n_norm((0, 0, 1), E3) == 0.0
    x = np.array([1.0, 0, 0])
    assert n_norm(-2 * x, E3) == pytest.approx(2 * n_norm(x, E3))


def test_n_norm_on_the_anchor_span_is_roundoff():
    # tiny negative determinants are clamped instead of raising
    rng = np.random.default_rng(3)
    A = rng.uniform(-1, 1, (2, 5))
    for c in rng.uniform(-1, 1, (50, 2)):
        assert n_norm(c @ A, A) ** 2 <= 1e-14


@pytest.mark.parametrize("d, n", [(2, 2), (3, 2), (3, 3), (4, 2), (4, 3), (4, 4)])
def test_matches_cofactor_expansion(d, n):
    rng = np.random.default_rng(100 * d + n)
    for _ in range(100):
        A = rng.uniform(-1, 1, (n - 1, d))
        x, y = rng.uniform(-1, 1, (2, d))
        ref = gram_det_inner(x, y, A)
        assert abs(n_inner(x, y, A) - ref) <= 1e-12 * max(1.0, abs(ref))


def test_batched_evaluation_matches_loop():
    rng = np.random.default_rng(5)
    A = rng.uniform(-1, 1, (2, 4))
    X = rng.uniform(-1, 1, (7, 4))
    Y = rng.uniform(-1, 1, (7, 4))
    batch = n_inner(X, Y, A)
    assert batch.shape == (7,)
    np.testing.assert_allclose(batch, [n_inner(x, y, A) for x, y in zip(X, Y)], rtol=1e-13)


def test_permuting_anchors_leaves_value_unchanged():
    rng = np.random.default_rng(9)
    a2, a3 = rng.uniform(-1, 1, (2, 5))
    x, y = rng.uniform(-1, 1, (2, 5))
    assert n_inner(x, y, [a3, a2]) == pytest.approx(n_inner(x, y, [a2, a3]), rel=1e-13)


def test_cauchy_schwarz_equality_at_x_equals_y():
    rng = np.random.default_rng(1)
    A = rng.uniform(-1, 1, (1, 4))
    x = rng.uniform(-1, 1, 4)
    lhs = abs(n_inner(x, x, A))
    assert lhs == pytest.approx(n_norm(x, A) ** 2, rel=1e-13)


def test_axiom_report_passes_on_d4_n3():
    space = AmbientSpace(4, 3)
    A = np.random.default_rng(2).uniform(-1, 1, (2, 4))
    rep = axiom_report(space, A, samples=1000, seed=0)
    assert rep.passed, rep.summary()
    assert max(rep.violations.values()) <= 1e-9


def test_positive_exactly_off_the_anchor_span():
    rng = np.random.default_rng(4)
    A = rng.uniform(-1, 1, (2, 5))
    for k in range(200):
        x = rng.uniform(-1, 1, 2) @ A if k % 2 else rng.uniform(-1, 1, 5)
        val = n_inner(x, x, A)
        in_span = in_anchor_span(x, A)
        assert in_span == (k % 2 == 1)
        if in_span:
            assert abs(val) <= 1e-12
        else:
            assert val > 1e-8


def test_input_errors():
    with pytest.raises(InputError):
        n_inner((1, 0), (1, 0, 0), E3)
    with pytest.raises(DegenerateAnchorError):
        AnchorSet([[1.0, 0, 0], [2.0, 0, 0]])
    with pytest.raises(DegenerateAnchorError):
        AnchorSet(np.eye(3)[:3].tolist() + [[1.0, 1.0, 1.0]])
    with pytest.raises(InputError):
        AmbientSpace(3, 1)
    with pytest.raises(InputError):
        AmbientSpace(2, 3)
    with pytest.raises(InputError):
        n_norm((np.nan, 0, 0), E3)


vec4 = arrays(np.float64, 4, elements=st.floats(-10, 10, allow_nan=False))


@settings(max_examples=200, deadline=None)
@given(x=vec4, y=vec4, z=vec4, a=st.floats(-5, 5), anchor=vec4)
def test_symmetric_and_linear(x, y, z, a, anchor):
    if np.linalg.norm(anchor) < 1e-3:
        anchor = np.array([0.0, 0.0, 0.0, 1.0])
    F = [anchor]
    scale = (np.linalg.norm(x) + np.linalg.norm(y) + np.linalg.norm(z) + 1) ** 2 * (anchor @ anchor) * (1 + abs(a))
    assert abs(n_inner(x, y, F) - n_inner(y, x, F)) <= 1e-12 * scale
    lhs = n_inner(a * x + y, z, F)
    rhs = a * n_inner(x, z, F) + n_inner(y, z, F)
    assert abs(lhs - rhs) <= 1e-12 * scale


@settings(max_examples=200, deadline=None)
@given(x=vec4, y=vec4)
def test_cauchy_schwarz_and_parallelogram(x, y):
    F = [[0.3, -0.2, 0.9, 0.1], [1.0, 0.5, 0.0, -0.4]]
    scale = (np.linalg.norm(x) + np.linalg.norm(y) + 1) ** 2 * 4
    xy = n_inner(x, y, F)
    assert abs(xy) <= n_norm(x, F) * n_norm(y, F) + 1e-12 * scale
    lhs = n_norm(x + y, F) ** 2 + n_norm(x - y, F) ** 2
    assert lhs == pytest.approx(2 * n_norm(x, F) ** 2 + 2 * n_norm(y, F) ** 2, abs=1e-11 * scale)
