import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from pseudobound import pseudodist as pd
from pseudobound.cover import NormalizedMatrix

F3 = np.array([[0.5, 0.5, 0.0], [0.5, 0.0, 0.5], [1.0, 0.0, 0.0]])


def test_modulate():
    (p,) = pd.modulate([0], 5)
    assert (p.re, p.im) == (1.0, 0.0)
    (p,) = pd.modulate([1], 4)
    assert p.re == pytest.approx(0.0, abs=1e-15) and p.im == pytest.approx(1.0)
    (p,) = pd.modulate([1], 2)
    assert p.re == pytest.approx(-1.0) and p.im == pytest.approx(0.0, abs=1e-15)
    for q in (2, 3, 5, 8):
        for pt in pd.modulate(range(q), q):
            assert abs(abs(pt) - 1.0) <= 1e-12


def test_S_V_examples():
    zero = NormalizedMatrix.from_codeword([0, 0, 0], 3)
    assert pd.compute_S(zero) == 0.0
    assert pd.compute_V(zero) == 0.0
    # hand evaluation
    assert pd.compute_S(F3, 3) == pytest.approx(3.0, abs=1e-12)
    assert pd.compute_V(F3, 3) == pytest.approx(1.5, abs=1e-12)
    assert pd.compute_V_termwise(F3, 3) == pytest.approx(1.5, abs=1e-12)


@pytest.mark.parametrize("c", [[1, 0, 0, 0], [1, 1, 0, 1], [1, 1, 1, 1]])
def test_binary_codeword_S_V(c):
    F = NormalizedMatrix.from_codeword(c, 2)
    w = sum(c)
    assert pd.compute_S(F) == pytest.approx(4 * w)
    assert pd.compute_V(F) == pytest.approx(4 * w)


def test_pseudodistance_examples():
    r = pd.pseudodistance_sq(F3, 3)
    assert r.d_squared == pytest.approx(6.0, abs=1e-12)
    r = pd.pseudodistance_sq(NormalizedMatrix.from_codeword([1, 2, 0], 3))
    # direct modulated distance: 2(1 - cos(2pi/3)) + 2(1 - cos(4pi/3))
    assert r.d_squared == pytest.approx(2 * (1 - math.cos(2 * math.pi / 3)) * 2, abs=1e-12)
    r = pd.pseudodistance_sq(NormalizedMatrix.from_codeword([0, 0], 4))
    assert r.is_infinite and r.S == 0 and r.V == 0


def test_support_fractions():
    assert pd.support_fractions(NormalizedMatrix.from_codeword([1, 0, 2], 3)).tolist() == [1.0, 0.0, 1.0]
    assert pd.support_fractions(F3)[0] == 0.5
    assert not pd.support_fractions(NormalizedMatrix.from_codeword([0, 0], 2)).any()


def test_kappa_constants():
    assert pd.kappa(2) == 4.0 == pytest.approx(pd.generic_kappa(2))
    assert pd.kappa(4) == 1.0 == pytest.approx(pd.generic_kappa(4))
    assert pd.kappa(3) == 3.0 and pd.generic_kappa(3) == pytest.approx(2.25)
    assert pd.kappa(5) == pd.generic_kappa(5) == pytest.approx((1 - math.cos(2 * math.pi / 5)) ** 2)


def test_closed_form_examples():
    F = NormalizedMatrix.from_codeword([1, 1, 0, 1, 0], 2)
    assert pd.closed_form_lower(F) == pytest.approx(12.0)
    assert pd.closed_form_lower(F3) == pytest.approx(6.0)
    single = np.zeros((4, 4))
    single[:, 0] = 1
    single[0] = [0, 0.5, 0.25, 0.25]
    assert pd.closed_form_lower(single) == pytest.approx(1.0)
    assert math.isinf(pd.closed_form_lower(NormalizedMatrix.from_codeword([0, 0], 3)))


def _q_quadrature(x: float) -> float:
    mpmath.mp.dps = 40
    val = mpmath.quad(lambda t: mpmath.exp(-t * t / 2), [x, mpmath.inf]) / mpmath.sqrt(2 * mpmath.pi)
    return float(val)


@pytest.mark.parametrize("x", [0.0, 0.1, 0.5, 1.0, 2.5, 4.0, 7.0, 12.0])
def test_gaussian_tail_against_quadrature(x):
    assert pd.gaussian_q(x) == pytest.approx(_q_quadrature(x), rel=1e-12)


def test_error_probability():
    assert pd.pcw_error_probability(0.0, 1.0) == 0.5
    assert pd.pcw_error_probability(math.inf, 1.0) == 0.0
    assert pd.pcw_error_probability(200.0, 1.0) < 1e-300
    ds = np.linspace(0, 10, 50)
    p = [pd.pcw_error_probability(d, 0.7) for d in ds]
    assert all(a > b for a, b in zip(p, p[1:]))
    with pytest.raises(ValueError):
        pd.pcw_error_probability(1.0, 0.0)


def test_union_bound():
    assert pd.union_bound([], 1.0) == 0.0
    assert pd.union_bound([2.0], 0.5) == pd.pcw_error_probability(2.0, 0.5)
    assert pd.union_bound([0.0, 0.0, 0.0], 1.0) == 1.0


@st.composite
def stochastic(draw, q=None):
    q = q or draw(st.integers(2, 7))
    n = draw(st.integers(1, 6))
    w = draw(arrays(np.float64, (n, q), elements=st.floats(0, 1)))
    zero_rows = draw(arrays(np.bool_, (n,)))
    w[zero_rows] = 0
    w[:, 0] += 1e-3  # keep every row normalisable
    return w / w.sum(axis=1, keepdims=True)


@settings(max_examples=300, deadline=None)
@given(stochastic())
def test_centroid_identity(F):
    assert abs(pd.compute_V(F) - pd.compute_V_termwise(F)) <= 1e-10


@settings(max_examples=300, deadline=None)
@given(stochastic())
def test_V_between_zero_and_S(F):
    S, V = pd.compute_S(F), pd.compute_V(F)
    assert -1e-12 <= V <= S + 1e-12


@settings(max_examples=300, deadline=None)
@given(stochastic())
def test_closed_form_is_a_lower_bound(F):
    r = pd.pseudodistance_sq(F)
    if r.is_infinite:
        return
    assert pd.closed_form_lower(F) <= r.d_squared + 1e-9
    assert pd.closed_form_lower(F, generic=True) <= r.d_squared + 1e-9


@settings(max_examples=200, deadline=None)
@given(stochastic(q=2))
def test_binary_exactness(F):
    r = pd.pseudodistance_sq(F)
    if not r.is_infinite:
        x = pd.support_fractions(F)
        assert abs(r.d_squared - 4 * x.sum() ** 2 / (x * x).sum()) <= 1e-10 * max(1.0, r.d_squared)


def test_V_zero_iff_all_zero_symbol():
    F = np.zeros((3, 5))
    F[:, 0] = 1
    assert pd.compute_V(F) == 0
    F[2] = [0.9, 0.1, 0, 0, 0]
    assert pd.compute_V(F) > 0


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 7), st.lists(st.integers(0, 6), min_size=1, max_size=8))
def test_codeword_identity(q, word):
    c = [v % q for v in word]
    r = pd.pseudodistance_sq(NormalizedMatrix.from_codeword(c, q))
    direct = sum(2 * (1 - math.cos(2 * math.pi * v / q)) for v in c)
    if any(c):
        assert abs(r.d_squared - direct) <= 1e-12 * max(1.0, direct)
        assert abs(pd.modulated_distance_sq(c, q) - direct) <= 1e-12
