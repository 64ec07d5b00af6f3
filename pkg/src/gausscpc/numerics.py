"""
Special functions and information measures.

All entropies and divergences are returned in bits. Internally natural logs
are used and converted at the end. ``0 log 0`` is taken as 0 throughout.
"""
import math

import numpy as np

from .errors import AbsoluteContinuityViolation

LN2 = math.log(2.0)

# rescale the recurrence by an exact power of two (~1e100)
_RESCALE_EXP = 332
_RESCALE = 2.0 ** _RESCALE_EXP
_LOG_RESCALE = _RESCALE_EXP * LN2


def log_laguerre_neg_seq(kmax, x, weight=1.0):
    """Natural logs of ``weight^k L_k(-x)`` for ``k = 0..kmax``.

    Runs the three-term recurrence
    ``(k+1) L_{k+1}(t) = (2k+1-t) L_k(t) - k L_{k-1}(t)`` at ``t = -x`` on
    the weighted sequence ``u_k = weight^k L_k(-x)``; every term stays
    positive since all coefficients of ``L_k(-x)`` are nonnegative. The
    live pair is divided by ``2**332`` whenever it exceeds that value and
    the number of divisions is kept as an integer, so the log scale adds
    no rounding of its own.

    A weight below one keeps the magnitudes close to those of the final
    quantity of interest (e.g. a probability), which is what limits the
    rounding error in its log for large ``x``.

    Parameters
    ----------
    kmax : int
        Highest degree, ``kmax >= 0``.
    x : float
        Nonnegative argument (the polynomial is evaluated at ``-x``).
    weight : float
        Positive geometric weight.

    Returns
    -------
    numpy.ndarray
        Array of length ``kmax + 1``.
    """
    kmax = int(kmax)
    x = float(x)
    w = float(weight)
    if kmax < 0:
        raise ValueError("kmax must be nonnegative")
    if x < 0:
        raise ValueError("x must be nonnegative")
    if not w > 0:
        raise ValueError("weight must be positive")
    out = np.empty(kmax + 1)
    out[0] = 0.0
    if kmax == 0:
        return out
    w2 = w * w
    prev, cur = 1.0, w * (1.0 + x)
    n_scale = 0
    out[1] = math.log(w) + math.log1p(x)
    for k in range(1, kmax):
        cur, prev = ((2 * k + 1 + x) * w * cur - k * w2 * prev) / (k + 1), cur
        if cur > _RESCALE:
            prev /= _RESCALE
            cur /= _RESCALE
            n_scale += 1
        elif cur < 1.0 / _RESCALE and cur > 0.0:
            prev *= _RESCALE
            cur *= _RESCALE
            n_scale -= 1
        out[k + 1] = math.log(cur) + n_scale * _LOG_RESCALE
    return out


def log_laguerre_neg(k, x):
    """``ln L_k(-x)`` for integer ``k >= 0`` and real ``x >= 0``."""
    return float(log_laguerre_neg_seq(k, x)[-1])


def _as_prob_vector(p):
    p = np.asarray(p, dtype=float)
    if p.ndim != 1:
        raise ValueError("probability vector must be one-dimensional")
    if np.any(p < 0) or np.any(~np.isfinite(p)):
        raise ValueError("probabilities must be finite and nonnegative")
    if p.sum() > 1 + 1e-10:
        raise ValueError("probabilities sum to more than one")
    return p


def shannon_entropy(p):
    """Shannon entropy ``-sum p log2 p`` in bits."""
    p = _as_prob_vector(p)
    nz = p[p > 0]
    return max(0.0, float(-np.sum(nz * np.log(nz))) / LN2)


def entropy_from_logs(log_p):
    """Entropy in bits of a distribution given by natural-log entries.

    Entries equal to ``-inf`` are zero-probability outcomes.
    """
    log_p = np.asarray(log_p, dtype=float)
    mask = np.isfinite(log_p)
    lp = log_p[mask]
    return max(0.0, float(-np.sum(np.exp(lp) * lp)) / LN2)


def kl_divergence_logs(log_p, log_q):
    """Kullback-Leibler divergence in bits from natural-log entries.

    Works directly on logs so that probabilities below the smallest
    representable double (deep thermal tails) keep their weight.
    """
    log_p = np.asarray(log_p, dtype=float)
    log_q = np.asarray(log_q, dtype=float)
    if log_p.shape != log_q.shape:
        raise ValueError("distributions must have equal length")
    support = np.isfinite(log_p)
    bad = support & ~np.isfinite(log_q)
    if np.any(bad):
        i = int(np.flatnonzero(bad)[0])
        raise AbsoluteContinuityViolation(
            f"p[{i}] > 0 but q[{i}] = 0")
    lp = log_p[support]
    d = float(np.sum(np.exp(lp) * (lp - log_q[support]))) / LN2
    return max(0.0, d)


def kl_divergence(p, q):
    """``D(p || q) = sum p log2(p / q)`` in bits.

    Raises
    ------
    AbsoluteContinuityViolation
        If some ``p_i > 0`` while ``q_i = 0``.
    """
    p = _as_prob_vector(p)
    q = _as_prob_vector(q)
    if p.shape != q.shape:
        raise ValueError("distributions must have equal length")
    with np.errstate(divide="ignore"):
        return kl_divergence_logs(np.log(p), np.log(q))


def thermal_entropy_g(x):
    """Entropy in bits of a thermal state with mean photon number ``x``.

    ``g(x) = (x + 1) log2(x + 1) - x log2 x``.
    """
    x = float(x)
    if x < 0:
        raise ValueError("x must be nonnegative")
    if x == 0:
        return 0.0
    if x < 1.0:
        return ((x + 1) * math.log1p(x) - x * math.log(x)) / LN2
    # x log(1 + 1/x) avoids the cancellation of the large-x form
    return (x * math.log1p(1.0 / x) + math.log1p(x)) / LN2


def binary_entropy(p):
    """Binary entropy ``h2(p)`` in bits."""
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    h = 0.0
    if 0.0 < p:
        h -= p * math.log(p)
    if p < 1.0:
        h -= (1.0 - p) * math.log1p(-p)
    return h / LN2
