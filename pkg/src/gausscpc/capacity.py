"""
Capacity per unit cost of generalized on-off keying over Gaussian channels.

The signal is a coherent state of mean photon number ``n_s``, sent with
probability ``lam``; otherwise the time bin stays empty. The receiver
projects onto the squeezed-number eigenbasis of the vacuum output, either
resolving the count (PNR) or only comparing it with a threshold.
"""
import enum
import math
from dataclasses import dataclass

import numpy as np

from . import channel as _channel
from .errors import DegenerateThreshold, ZeroNoiseChannel
from .numerics import (LN2, binary_entropy, entropy_from_logs,
                       kl_divergence_logs, thermal_entropy_g)
from .photostats import (DEFAULT_EPS_TAIL, extend, log_mass,
                         photon_distribution)

# slack on the maximum-entropy bound check in pnr_cpc
ENTROPY_BOUND_SLACK = 1e-9


class _Infinite:
    """Marker for a divergent capacity. Deliberately supports no arithmetic."""
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "Infinite"

    __str__ = __repr__

    def __reduce__(self):
        return (_Infinite, ())


Infinite = _Infinite()


def is_infinite(value):
    return value is Infinite


class Scheme(enum.Enum):
    PNR = "pnr"
    THRESHOLD = "threshold"


@dataclass(frozen=True)
class CPCResult:
    """Capacity per unit cost in bits per photon plus its two components.

    For PNR ``value = (cross_entropy_term - entropy_term) / n_s``. For the
    threshold receiver the same split holds with the binary outcome
    distribution, ``entropy_term`` being ``h2(p0)`` of the signal.
    """
    value: float
    cross_entropy_term: float
    entropy_term: float
    n_s: float
    scheme: Scheme
    gamma2: float
    k_th: int = None


@dataclass(frozen=True)
class OOKParams:
    lam: float
    n_s: float

    def __post_init__(self):
        if not 0 < self.lam <= 1:
            raise ValueError("lambda must lie in (0, 1]")
        if not self.n_s > 0:
            raise ValueError("n_s must be positive")

    @property
    def n_a(self):
        return self.lam * self.n_s


def quantum_cpc_bound(noise, eta):
    """Ultimate CPC ``|eta| omega_max log2(1 + 1/n_b)``; ``Infinite`` if ``n_b = 0``."""
    if noise.n_b == 0:
        return Infinite
    return abs(eta) * noise.omega_max * math.log1p(1.0 / noise.n_b) / LN2


def cross_entropy_term(gamma2, n_b):
    """Closed form of ``sum_k p(k|signal) log2(1 / p(k|vacuum))`` in bits."""
    if not n_b > 0:
        raise ZeroNoiseChannel("cross-entropy against a noiseless vacuum diverges")
    return ((n_b + gamma2) * math.log1p(1.0 / n_b) + math.log1p(n_b)) / LN2


def _noise_for(f):
    noise = _channel.output_noise(f)
    if noise.n_b == 0:
        raise ZeroNoiseChannel(
            "vacuum output is noiseless (n_b = 0); the CPC is unbounded, "
            "see quantum_cpc_bound")
    return noise


def pnr_cpc(n_s, f, eps_tail=DEFAULT_EPS_TAIL):
    """CPC of OOK with a photon-number-resolving squeezed-basis receiver."""
    if not n_s > 0:
        raise ValueError("n_s must be positive")
    noise = _noise_for(f)
    gamma2 = _channel.gamma_displacement(f, n_s)
    cross = cross_entropy_term(gamma2, noise.n_b)
    d = photon_distribution(gamma2, noise.n_b, eps_tail)
    H = entropy_from_logs(d.log_probs)
    bound = thermal_entropy_g(noise.n_b + gamma2)
    if H > bound + ENTROPY_BOUND_SLACK:
        raise ArithmeticError(
            f"photocount entropy {H!r} exceeds the thermal maximum {bound!r}")
    return CPCResult(value=(cross - H) / n_s, cross_entropy_term=cross,
                     entropy_term=H, n_s=float(n_s), scheme=Scheme.PNR,
                     gamma2=gamma2)


def _threshold_log_probs(k_th, gamma2, n_b, eps_tail=DEFAULT_EPS_TAIL):
    """``(ln p0, ln p1)`` for the threshold split at ``k_th``."""
    k_th = int(k_th)
    if k_th < 0:
        raise ValueError("k_th must be nonnegative")
    if not n_b > 0:
        raise ZeroNoiseChannel("threshold statistics need n_b > 0")
    if gamma2 == 0:
        # geometric tail of the thermal law
        log_p1 = (k_th + 1) * (math.log(n_b) - math.log1p(n_b))
        return math.log(-math.expm1(log_p1)), log_p1
    d = photon_distribution(gamma2, n_b, eps_tail)
    if k_th >= d.cutoff:
        return math.log1p(-min(d.tail_bound, 0.5)), d.log_tail
    log_p0 = log_mass(d, k_th)
    if log_p0 < -LN2:
        return log_p0, math.log1p(-math.exp(log_p0))
    # p1 is the smaller mass; sum it directly instead of 1 - p0
    upper = d.log_probs[k_th + 1:]
    log_p1 = float(np.logaddexp.reduce(np.append(upper, d.log_tail)))
    return math.log1p(-math.exp(log_p1)), log_p1


def threshold_probs(k_th, gamma2, n_b, eps_tail=DEFAULT_EPS_TAIL):
    """Probabilities of counting at most ``k_th`` (``p0``) or more (``p1``)."""
    log_p0, log_p1 = _threshold_log_probs(k_th, gamma2, n_b, eps_tail)
    return math.exp(log_p0), math.exp(log_p1)


def default_threshold(gamma2_s, eps=0.1):
    """``floor((1 - eps) |gamma_s|^2)``."""
    if not 0 < eps < 1:
        raise ValueError("eps must lie in (0, 1)")
    return int(math.floor((1 - eps) * gamma2_s))


def threshold_cpc(n_s, k_th, f, eps_tail=DEFAULT_EPS_TAIL):
    """CPC of OOK with a threshold detector, via the binary KL divergence."""
    if not n_s > 0:
        raise ValueError("n_s must be positive")
    noise = _noise_for(f)
    gamma2 = _channel.gamma_displacement(f, n_s)
    sig = _threshold_log_probs(k_th, gamma2, noise.n_b, eps_tail)
    vac = _threshold_log_probs(k_th, 0.0, noise.n_b, eps_tail)
    if not np.isfinite(vac[1]):
        raise DegenerateThreshold(f"k_th={k_th} leaves no vacuum mass above threshold")
    D = kl_divergence_logs(sig, vac)
    p0s = math.exp(sig[0])
    cross = -(math.exp(sig[0]) * vac[0] + math.exp(sig[1]) * vac[1]) / LN2
    return CPCResult(value=D / n_s, cross_entropy_term=cross,
                     entropy_term=binary_entropy(p0s), n_s=float(n_s),
                     scheme=Scheme.THRESHOLD, gamma2=gamma2, k_th=int(k_th))


def _common_support(a, b):
    """Log-probability vectors of ``a`` and ``b`` on a shared cutoff.

    Mass above the cutoff is pooled into one extra outcome carrying each
    distribution's tail bound.
    """
    K = max(a.cutoff, b.cutoff)
    a, b = extend(a, K), extend(b, K)
    la = np.append(a.log_probs, a.log_tail)
    lb = np.append(b.log_probs, b.log_tail)
    return la, lb


def generic_cpc(signal, vacuum, n_s):
    """``D(signal || vacuum) / n_s`` in bits per photon."""
    if not n_s > 0:
        raise ValueError("n_s must be positive")
    ls, lv = _common_support(signal, vacuum)
    return kl_divergence_logs(ls, lv) / n_s


def ook_mutual_information(params, f, eps_tail=DEFAULT_EPS_TAIL):
    """Mutual information per channel use and bits per photon of OOK.

    ``I = H(m) - (1 - lam) H(q) - lam H(p)`` for the vacuum law ``q``, the
    signal law ``p`` and their mixture ``m``. It is evaluated in the
    equivalent form ``(1 - lam) D(q || m) + lam D(p || m)``, which keeps
    its accuracy when ``I`` is small next to the entropies.

    Returns
    -------
    (float, float)
        ``I`` in bits per channel use and ``I / n_a`` in bits per photon.
    """
    noise = _noise_for(f)
    gamma2 = _channel.gamma_displacement(f, params.n_s)
    q = photon_distribution(0.0, noise.n_b, eps_tail)
    p = photon_distribution(gamma2, noise.n_b, eps_tail)
    lq, lp = _common_support(q, p)
    lam = params.lam
    if lam == 1.0:
        return 0.0, 0.0
    lm = np.logaddexp(math.log1p(-lam) + lq, math.log(lam) + lp)
    I = (1 - lam) * kl_divergence_logs(lq, lm) + lam * kl_divergence_logs(lp, lm)
    return I, I / params.n_a
