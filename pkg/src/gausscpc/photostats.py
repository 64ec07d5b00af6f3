"""
Photocount statistics of a displaced squeezed thermal state measured in
the squeezed-number basis of the vacuum output.

In that basis the count law only depends on the squared displacement
``gamma2`` and the thermal photon number ``n_b``:

    p(k) = n_b^k / (n_b+1)^(k+1) exp(-gamma2/(n_b+1)) L_k(-gamma2/(n_b(n_b+1)))

Entries are built in the log domain. The distribution is truncated at a
cutoff ``K`` whose discarded mass is bounded by a geometric majorant.
"""
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln, logsumexp

from .numerics import log_laguerre_neg_seq

# below this n_b the Laguerre argument is unusable; use the Poisson limit
POISSON_SWITCH = 1e-10
DEFAULT_EPS_TAIL = 1e-15


@dataclass(frozen=True)
class PhotonDistribution:
    """Truncated photocount law ``p(k)``, ``k = 0..cutoff``.

    ``log_tail`` is the natural log of ``tail_bound``; it stays finite even
    when the bound underflows a double.
    """
    log_probs: np.ndarray
    cutoff: int
    log_tail: float
    gamma2: float
    n_b: float

    @property
    def probs(self):
        return np.exp(self.log_probs)

    @property
    def tail_bound(self):
        return math.exp(self.log_tail)

    @property
    def poisson(self):
        return self.n_b < POISSON_SWITCH


def mean_closed_form(gamma2, n_b):
    return n_b + gamma2


def variance_closed_form(gamma2, n_b):
    return gamma2 * (1 + 2 * n_b) + n_b * (n_b + 1)


def log_photon_probs(kmax, gamma2, n_b):
    """Natural-log photocount probabilities for ``k = 0..kmax``."""
    gamma2 = float(gamma2)
    n_b = float(n_b)
    if gamma2 < 0 or n_b < 0:
        raise ValueError("gamma2 and n_b must be nonnegative")
    k = np.arange(kmax + 1, dtype=float)
    if n_b < POISSON_SWITCH:
        if gamma2 == 0.0:
            out = np.full(kmax + 1, -np.inf)
            out[0] = 0.0
            return out
        return k * math.log(gamma2) - gamma2 - gammaln(k + 1)
    log_q = math.log(n_b) - math.log1p(n_b)
    if gamma2 == 0.0:
        return k * log_q - math.log1p(n_b)
    x = gamma2 / (n_b * (n_b + 1))
    # q^k L_k(-x) with q = n_b/(n_b+1) carried by the recurrence itself
    weighted = log_laguerre_neg_seq(kmax, x, weight=math.exp(log_q))
    return weighted - math.log1p(n_b) - gamma2 / (n_b + 1)


def _certify(log_p, start):
    """Smallest ``K >= start`` with a geometric tail certificate.

    Past ``K`` the successive ratios ``p(k+1)/p(k)`` must be non-increasing
    over the remaining computed window and below 1, so that
    ``sum_{k>K} p(k) <= p(K) r / (1 - r)`` with ``r = p(K)/p(K-1)``.
    Returns ``(K, log_bound)`` arrays for every admissible ``K``, or None.
    """
    n = len(log_p)
    if n < 3:
        return None
    log_r = np.diff(log_p)  # log_r[j] = log p(j+1)/p(j)
    # a K is admissible when log_r[K-1:] is non-increasing and < 0
    incr = np.diff(log_r) > 1e-13 * np.maximum(1.0, np.abs(log_r[1:]))
    bad_after = np.zeros(len(log_r), dtype=bool)
    # bad_after[j]: some increase occurs at or beyond index j
    bad_after[:-1] = np.flip(np.cumsum(np.flip(incr))) > 0
    K = np.arange(1, n)
    lr = log_r[K - 1]
    ok = (K >= start) & (lr < 0) & ~bad_after[K - 1]
    if not np.any(ok):
        return None
    K = K[ok]
    lr = lr[ok]
    # log(r / (1 - r)) with r = exp(lr)
    log_bound = log_p[K] + lr - np.log(-np.expm1(lr))
    return K, log_bound


def _thermal_log_tail(K, n_b):
    return (K + 1) * (math.log(n_b) - math.log1p(n_b))


def _scan(gamma2, n_b, eps_tail, min_cutoff=0):
    if not 0 < eps_tail < 1:
        raise ValueError("eps_tail must lie in (0, 1)")
    log_eps = math.log(eps_tail)
    mean = mean_closed_form(gamma2, n_b)
    sd = math.sqrt(variance_closed_form(gamma2, n_b))
    guess = max(int(math.ceil(mean + 12 * sd)), int(min_cutoff), 1)

    if n_b < POISSON_SWITCH and gamma2 == 0.0:
        K = max(int(min_cutoff), 0)
        return K, log_photon_probs(K, gamma2, n_b), -np.inf

    if gamma2 == 0.0:
        # thermal law: exact geometric tail
        K = int(min_cutoff)
        while _thermal_log_tail(K, n_b) >= log_eps:
            K = max(2 * K, 1)
        # tighten to the smallest K that certifies
        lo = int(min_cutoff)
        hi = K
        while lo < hi:
            mid = (lo + hi) // 2
            if _thermal_log_tail(mid, n_b) < log_eps:
                hi = mid
            else:
                lo = mid + 1
        K = lo
        return K, log_photon_probs(K, gamma2, n_b), _thermal_log_tail(K, n_b)

    # start the certificate search at the bulk, not at the 12-sigma guess,
    # so the returned cutoff is not larger than it needs to be
    start = max(int(mean), int(min_cutoff), 1)
    span = guess + 64
    while True:
        lp = log_photon_probs(span, gamma2, n_b)
        cert = _certify(lp, start)
        if cert is not None:
            Ks, bounds = cert
            hit = np.flatnonzero(bounds < log_eps)
            # leave room past K so the monotone-ratio check sees a window
            hit = hit[Ks[hit] <= span - 16]
            if hit.size:
                j = hit[0]
                K = int(Ks[j])
                return K, lp[: K + 1], float(bounds[j])
        span *= 2


def cutoff_for(gamma2, n_b, eps_tail):
    """Cutoff ``K`` whose certified tail mass above ``K`` is below ``eps_tail``."""
    return _scan(float(gamma2), float(n_b), eps_tail)[0]


def photon_distribution(gamma2, n_b, eps_tail=DEFAULT_EPS_TAIL, cutoff=None):
    """Build the truncated photocount distribution.

    Parameters
    ----------
    gamma2 : float
        Squared displacement ``|gamma|^2 >= 0``.
    n_b : float
        Thermal photon number of the vacuum output, ``n_b >= 0``. Values
        below ``POISSON_SWITCH`` use the Poisson limit.
    eps_tail : float
        Bound on the discarded probability mass.
    cutoff : int, optional
        Minimum cutoff; the distribution is extended to at least this many
        terms (used to place two distributions on a common support).
    """
    gamma2 = float(gamma2)
    n_b = float(n_b)
    if gamma2 < 0 or n_b < 0:
        raise ValueError("gamma2 and n_b must be nonnegative")
    K, lp, log_tail = _scan(gamma2, n_b, eps_tail, min_cutoff=cutoff or 0)
    lp = np.asarray(lp, dtype=float)
    lp.flags.writeable = False
    return PhotonDistribution(log_probs=lp, cutoff=K, log_tail=float(log_tail),
                              gamma2=gamma2, n_b=n_b)


def extend(d, cutoff):
    """Recompute ``d`` on a support of at least ``cutoff + 1`` terms."""
    if cutoff <= d.cutoff:
        return d
    K = int(cutoff)
    lp = log_photon_probs(K, d.gamma2, d.n_b)
    if d.n_b >= POISSON_SWITCH and d.gamma2 == 0.0:
        log_tail = _thermal_log_tail(K, d.n_b)
    elif d.n_b < POISSON_SWITCH and d.gamma2 == 0.0:
        log_tail = -np.inf
    else:
        # the tail beyond the old cutoff is already bounded; the extended
        # part only removes mass from it
        log_tail = d.log_tail
        cert = _certify(log_photon_probs(K + 64, d.gamma2, d.n_b), K)
        if cert is not None and cert[0][0] == K:
            log_tail = min(log_tail, float(cert[1][0]))
    lp.flags.writeable = False
    return PhotonDistribution(log_probs=lp, cutoff=K, log_tail=float(log_tail),
                              gamma2=d.gamma2, n_b=d.n_b)


def moments(d):
    """Empirical mean and variance of a truncated distribution."""
    p = d.probs
    k = np.arange(d.cutoff + 1, dtype=float)
    mean = float(np.sum(k * p))
    var = float(np.sum((k - mean) ** 2 * p))
    return mean, var


def log_mass(d, upto):
    """Natural log of ``sum_{k <= upto} p(k)``."""
    upto = min(int(upto), d.cutoff)
    return float(logsumexp(d.log_probs[: upto + 1]))
