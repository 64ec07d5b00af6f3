import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gausscpc.errors import AbsoluteContinuityViolation
from gausscpc.numerics import (binary_entropy, kl_divergence, log_laguerre_neg,
                               log_laguerre_neg_seq, shannon_entropy,
                               thermal_entropy_g)

from oracles import laguerre_neg_exact


def test_log_laguerre_examples():
    assert log_laguerre_neg(0, 7.3) == 0.0
    assert log_laguerre_neg(1, 2.0) == pytest.approx(math.log(3.0), rel=1e-15)
    # L_2(t) = (t^2 - 4t + 2)/2 at t = -3 gives 23/2
    assert log_laguerre_neg(2, 3.0) == pytest.approx(math.log(11.5), rel=1e-15)


@pytest.mark.parametrize("x", [0.1, 1.0, 10.0])
def test_log_laguerre_matches_exact_expansion(x):
    seq = log_laguerre_neg_seq(30, x)
    for k in range(31):
        exact = laguerre_neg_exact(k, x)
        assert math.exp(seq[k]) == pytest.approx(float(exact), rel=1e-12)


def test_log_laguerre_weighted():
    x, w = 3.0, 0.25
    seq = log_laguerre_neg_seq(20, x, weight=w)
    for k in (0, 1, 7, 20):
        ref = math.log(float(laguerre_neg_exact(k, x))) + k * math.log(w)
        assert seq[k] == pytest.approx(ref, rel=1e-13, abs=1e-13)


def test_log_laguerre_no_overflow_extremes():
    v = log_laguerre_neg(10**6, 1e6)
    assert math.isfinite(v)
    # L_k(-x) ~ exp(2 sqrt(k x)) up to subexponential factors
    assert 1e6 < v < 4e6


def test_shannon_entropy_examples():
    assert shannon_entropy([1.0]) == 0.0
    assert shannon_entropy([0.5, 0.5]) == pytest.approx(1.0)
    assert shannon_entropy([0.25] * 4) == pytest.approx(2.0)
    assert shannon_entropy([0.0, 1.0, 0.0]) == 0.0


def test_kl_examples():
    p = np.array([0.2, 0.3, 0.5])
    assert kl_divergence(p, p) == 0.0
    assert kl_divergence([1, 0], [0.5, 0.5]) == pytest.approx(1.0)
    # 0.75 log2 1.5 + 0.25 log2 0.5, mpmath: 0.18872187554086713609
    assert kl_divergence([0.75, 0.25], [0.5, 0.5]) == pytest.approx(0.18872187554086714, rel=1e-14)
    with pytest.raises(AbsoluteContinuityViolation):
        kl_divergence([0.5, 0.5], [1.0, 0.0])


def test_thermal_entropy_examples():
    assert thermal_entropy_g(0) == 0.0
    assert thermal_entropy_g(1) == pytest.approx(2.0, rel=1e-15)
    # 8 - 3 log2 3, mpmath: 3.2451124978365314556
    assert thermal_entropy_g(3) == pytest.approx(3.2451124978365314, rel=1e-14)
    x = 1e8
    assert thermal_entropy_g(x) == pytest.approx(math.log2(x) + 1 / math.log(2), abs=1e-7)


def test_binary_entropy_examples():
    assert binary_entropy(0) == 0.0
    assert binary_entropy(1) == 0.0
    assert binary_entropy(0.5) == 1.0
    # mpmath: 0.49991595816452799965
    assert binary_entropy(0.11) == pytest.approx(0.499915958164528, rel=1e-13)


prob_lists = st.lists(st.floats(0.0, 1.0), min_size=1, max_size=12).filter(
    lambda v: sum(v) > 1e-3)


def _normalize(v):
    v = np.asarray(v, dtype=float)
    return v / v.sum()


@given(prob_lists, st.data())
def test_kl_nonnegative(raw_p, data):
    p = _normalize(raw_p)
    raw_q = data.draw(st.lists(st.floats(0.01, 1.0), min_size=len(p), max_size=len(p)))
    q = _normalize(raw_q)
    d = kl_divergence(p, q)
    assert d >= 0
    if np.allclose(p, q, atol=1e-15, rtol=0):
        assert d < 1e-12


@given(prob_lists)
def test_entropy_at_most_log_length(raw):
    p = _normalize(raw)
    assert shannon_entropy(p) <= math.log2(len(p)) + 1e-12


@settings(max_examples=200)
@given(st.floats(0, 1e4), st.floats(0, 1e4))
def test_thermal_entropy_concave(x, y):
    mid = thermal_entropy_g((x + y) / 2)
    assert mid >= (thermal_entropy_g(x) + thermal_entropy_g(y)) / 2 - 1e-12


def test_thermal_entropy_monotone():
    xs = np.geomspace(1e-12, 1e12, 200)
    g = [thermal_entropy_g(x) for x in xs]
    assert all(b > a for a, b in zip(g, g[1:]))


@given(st.floats(0, 1))
def test_binary_entropy_symmetric(p):
    assert binary_entropy(p) == pytest.approx(binary_entropy(1 - p), abs=1e-12)
