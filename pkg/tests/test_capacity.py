import math

import numpy as np
import pytest

from gausscpc.capacity import (CPCResult, Infinite, OOKParams, Scheme, cross_entropy_term,
                               default_threshold, generic_cpc, is_infinite,
                               ook_mutual_information, pnr_cpc, quantum_cpc_bound,
                               threshold_cpc, threshold_probs)
from gausscpc.channel import OutputNoise, fiducial_from_noise, output_noise
from gausscpc.errors import ZeroNoiseChannel
from gausscpc.numerics import thermal_entropy_g
from gausscpc.photostats import photon_distribution

import mpmath as mp

from oracles import photon_prob_mp



def test_bound_examples():
    assert quantum_cpc_bound(OutputNoise(1.0, 1.0, 0.0), 1.0) == pytest.approx(1.0)
    assert quantum_cpc_bound(OutputNoise(0.1, 2.0, math.log(2) / 2), 1.0) == \
        pytest.approx(2 * math.log2(11), rel=1e-15)
    assert quantum_cpc_bound(OutputNoise(0.0, 1.0, 0.0), 0.5) is Infinite
    assert is_infinite(Infinite) and not is_infinite(1e300)


def test_infinite_has_no_arithmetic():
    with pytest.raises(TypeError):
        Infinite / 2
    with pytest.raises(TypeError):
        Infinite < 3


def test_cross_entropy_examples():
    assert cross_entropy_term(0, 1) == pytest.approx(2.0, rel=1e-15)
    assert cross_entropy_term(0, 1) == pytest.approx(thermal_entropy_g(1), rel=1e-15)
    assert cross_entropy_term(4, 1) == pytest.approx(6.0, rel=1e-15)
    # mpmath: 10.1 log2 11 + log2 1.1 = 35.077762871986637196
    assert cross_entropy_term(10, 0.1) == pytest.approx(35.07776287198664, rel=1e-14)
    with pytest.raises(ZeroNoiseChannel):
        cross_entropy_term(1, 0)


def _brute_cross(gamma2, n_b):
    d = photon_distribution(gamma2, n_b, 1e-15)
    k = np.arange(d.cutoff + 1)
    minus_log2_vac = ((k + 1) * math.log1p(n_b) - k * math.log(n_b)) / math.log(2)
    return float(np.sum(d.probs * minus_log2_vac))


@pytest.mark.parametrize("gamma2, n_b", [(0, 1), (4, 1), (10, 0.1), (2.5, 3.0)])
def test_cross_entropy_matches_brute_sum(gamma2, n_b):
    assert cross_entropy_term(gamma2, n_b) == pytest.approx(_brute_cross(gamma2, n_b), rel=1e-9)


# frozen from a 40-digit mpmath evaluation of the photocount sums
@pytest.mark.parametrize("n_b, ratio", [
    (1.0, 0.7530743734555230),
    (0.1, 0.9033742149490125),
    (0.01, 0.9455010135650531),
])
def test_pnr_value_at_output_cost_ten(n_b, ratio):
    f = fiducial_from_noise(1.0, n_b)
    res = pnr_cpc(10.0, f)
    bound = quantum_cpc_bound(output_noise(f), f.eta)
    assert res.value / bound == pytest.approx(ratio, rel=1e-10)


def test_pnr_phase_sensitive_value():
    # n_b = 0.1, omega = 2 at |eta| n_s = 10; mpmath: 6.5338977138378811036
    f = fiducial_from_noise(0.4, 0.1, 2.0)
    assert pnr_cpc(25.0, f).value / 0.4 == pytest.approx(6.533897713837881, rel=1e-10)


def test_pnr_result_fields():
    f = fiducial_from_noise(1.0, 1.0)
    res = pnr_cpc(100.0, f)
    assert isinstance(res, CPCResult) and res.scheme is Scheme.PNR
    assert res.gamma2 == pytest.approx(100.0)
    # (n_b + gamma2) log2(1 + 1/n_b) + log2(1 + n_b) = 101 + 1
    assert res.cross_entropy_term == pytest.approx(102.0, rel=1e-14)
    H = res.entropy_term
    assert res.value == pytest.approx((102.0 - H) / 100, rel=1e-14)
    gap = (H - 1.0 * math.log2(2) - math.log2(2)) / 100
    assert 1.0 - res.value == pytest.approx(gap, abs=1e-12)


def test_pnr_small_ns_nonnegative():
    f = fiducial_from_noise(0.7, 0.4, 1.3)
    for n_s in (1e-8, 1e-4, 1e-2):
        assert pnr_cpc(n_s, f).value >= 0


def test_pnr_rejects_noiseless():
    f = fiducial_from_noise(0.5, 0.0)
    with pytest.raises(ZeroNoiseChannel):
        pnr_cpc(1.0, f)
    with pytest.raises(ValueError):
        pnr_cpc(0.0, fiducial_from_noise(1.0, 1.0))


GRID = [(g, nb) for g in (0.1, 1, 10, 100) for nb in (0.01, 0.1, 1)]


@pytest.mark.parametrize("gamma2, n_b", GRID)
def test_entropy_below_thermal_maximum(gamma2, n_b):
    d = photon_distribution(gamma2, n_b, 1e-15)
    from gausscpc.numerics import entropy_from_logs
    assert entropy_from_logs(d.log_probs) <= thermal_entropy_g(n_b + gamma2) + 1e-9


def test_threshold_probs_examples():
    p0, p1 = threshold_probs(3, 0.0, 1.0)
    assert p1 == pytest.approx(1 / 16, rel=1e-15)
    p0, p1 = threshold_probs(0, 0.0, 0.1)
    assert p0 == pytest.approx(1 / 1.1, rel=1e-15)
    p0, p1 = threshold_probs(10**5, 4.0, 1.0)
    assert p1 < 1e-15 and p0 == pytest.approx(1.0)


def test_threshold_probs_signal_against_mpmath():
    k_th, gamma2, n_b = 6, 4.0, 1.0
    ref = mp.fsum(photon_prob_mp(k, gamma2, n_b) for k in range(k_th + 1))
    p0, p1 = threshold_probs(k_th, gamma2, n_b)
    assert p0 == pytest.approx(float(ref), rel=1e-12)
    assert p1 == pytest.approx(float(1 - ref), rel=1e-11)


def test_default_threshold_examples():
    assert default_threshold(100, 0.1) == 90
    assert default_threshold(0.5, 0.1) == 0
    assert default_threshold(1000, 0.01) == 990


def test_threshold_cpc_value_at_1000():
    # 40-digit mpmath evaluation of the binary divergence: 0.89944672470352477
    f = fiducial_from_noise(1.0, 0.1)
    res = threshold_cpc(1000.0, default_threshold(1000.0, 0.1), f)
    assert res.k_th == 900 and res.scheme is Scheme.THRESHOLD
    assert res.value / math.log2(11) == pytest.approx(0.8994467247035248, rel=1e-10)
    assert res.value == pytest.approx((res.cross_entropy_term - res.entropy_term) / 1000, rel=1e-12)


def test_threshold_small_ns_nonnegative():
    f = fiducial_from_noise(1.0, 1.0)
    assert threshold_cpc(0.01, 0, f).value >= 0


@pytest.mark.parametrize("n_s", [0.3, 2.0, 17.0, 150.0])
@pytest.mark.parametrize("k_th", [0, 3, 40])
def test_threshold_below_pnr(n_s, k_th):
    f = fiducial_from_noise(0.8, 0.2, 1.5)
    assert threshold_cpc(n_s, k_th, f).value <= pnr_cpc(n_s, f).value + 1e-12


def test_generic_cpc():
    q = photon_distribution(0.0, 1.0)
    p = photon_distribution(4.0, 1.0)
    assert generic_cpc(q, q, 1.0) == 0.0
    f = fiducial_from_noise(1.0, 1.0)
    assert generic_cpc(p, q, 4.0) == pytest.approx(pnr_cpc(4.0, f).value, abs=1e-9)
    assert generic_cpc(q, p, 4.0) >= 0


def test_ook_mi_examples():
    f = fiducial_from_noise(1.0, 1.0)
    assert ook_mutual_information(OOKParams(1.0, 4.0), f) == (0.0, 0.0)
    I, pie = ook_mutual_information(OOKParams(0.3, 1e-9), f)
    assert I == pytest.approx(0.0, abs=1e-12)
    p, q = photon_distribution(4.0, 1.0), photon_distribution(0.0, 1.0)
    D = generic_cpc(p, q, 4.0)
    _, pie = ook_mutual_information(OOKParams(1e-4, 4.0), f)
    assert abs(pie - D) <= 0.01 * D


def test_ook_mi_matches_entropy_form():
    f = fiducial_from_noise(1.0, 0.5)
    lam, n_s = 0.2, 3.0
    I, pie = ook_mutual_information(OOKParams(lam, n_s), f)
    q = photon_distribution(0.0, 0.5).probs
    p = photon_distribution(3.0, 0.5).probs
    K = max(len(p), len(q))
    p = np.pad(p, (0, K - len(p)))
    q = np.pad(q, (0, K - len(q)))
    h = lambda v: -np.sum(v[v > 0] * np.log2(v[v > 0]))
    ref = h((1 - lam) * q + lam * p) - (1 - lam) * h(q) - lam * h(p)
    assert I == pytest.approx(ref, rel=1e-10)
    assert pie == pytest.approx(I / (lam * n_s))


def test_ook_params():
    assert OOKParams(0.25, 8.0).n_a == 2.0
    with pytest.raises(ValueError):
        OOKParams(0.0, 1.0)
    with pytest.raises(ValueError):
        OOKParams(0.5, 0.0)
