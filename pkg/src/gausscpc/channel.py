"""
Single-mode Gaussian channels.

A channel acts on first moments and covariance matrices as
``d -> X d`` and ``V -> X V X^T + Y``, in the convention where the vacuum
covariance is ``I / 2``. Any such channel factors as ``X = M X_F Theta``,
``Y = M Y_F M^T`` with a fiducial pair ``(X_F, Y_F)`` fixed by
``eta = det X``, ``y = sqrt(det Y)`` and an intrinsic squeezing ``s``.
"""
import math
from dataclasses import dataclass

import numpy as np

from .errors import NotCompletelyPositive, NotPSD, NotSymmetric, SingularX

SYM_TOL = 1e-12
CP_TOL = 1e-12
SINGULAR_TOL = 1e-14


@dataclass(frozen=True)
class ChannelMatrices:
    X: np.ndarray
    Y: np.ndarray

    @property
    def eta(self):
        return float(np.linalg.det(self.X))


@dataclass(frozen=True)
class FiducialParams:
    """Canonical parameters of a channel plus its decomposition factors.

    ``M`` is the output symplectic matrix and ``theta`` the angle of the
    input rotation. Both default to the identity for channels that are
    already in fiducial form.
    """
    eta: float
    y: float
    s: float
    M: np.ndarray = None
    theta: float = 0.0

    def __post_init__(self):
        if self.M is None:
            object.__setattr__(self, "M", np.eye(2))


@dataclass(frozen=True)
class OutputNoise:
    n_b: float
    omega_max: float
    r: float


def rotation(phi):
    c, s = math.cos(phi), math.sin(phi)
    return np.array([[c, -s], [s, c]])


def fiducial_x(eta):
    return math.sqrt(abs(eta)) * np.diag([1.0, math.copysign(1.0, eta)])


def fiducial_y(y, s):
    return y * np.diag([math.exp(2 * s), math.exp(-2 * s)])


def _sym_eig(A):
    """Closed-form eigen-decomposition of a symmetric 2x2 matrix.

    Returns ``(l1, l2, phi)`` with ``l1 >= l2`` and
    ``A = R(phi) diag(l1, l2) R(phi)^T``.
    """
    a, b, c = A[0, 0], 0.5 * (A[0, 1] + A[1, 0]), A[1, 1]
    mean = 0.5 * (a + c)
    rad = math.hypot(0.5 * (a - c), b)
    l1 = mean + rad
    det = a * c - b * b
    # smaller root from the determinant avoids cancellation
    l2 = det / l1 if l1 > 0 else mean - rad
    phi = 0.5 * math.atan2(2 * b, a - c)
    return l1, l2, phi


def validate_channel(X, Y):
    """Check that ``(X, Y)`` defines a physical single-mode channel.

    Complete positivity in the vacuum-variance-1/2 convention reads
    ``sqrt(det Y) >= |1 - det X| / 2``.

    Raises
    ------
    NotSymmetric, NotPSD, NotCompletelyPositive
    """
    X = np.array(X, dtype=float).reshape(2, 2)
    Y = np.array(Y, dtype=float).reshape(2, 2)
    if not (np.all(np.isfinite(X)) and np.all(np.isfinite(Y))):
        raise ValueError("channel matrices must have finite entries")
    if abs(Y[0, 1] - Y[1, 0]) > SYM_TOL:
        raise NotSymmetric(f"Y is not symmetric: Y01={Y[0, 1]!r}, Y10={Y[1, 0]!r}")
    Y = 0.5 * (Y + Y.T)
    l1, l2, _ = _sym_eig(Y)
    if l2 < -SYM_TOL:
        raise NotPSD(f"Y has negative eigenvalue {l2:.6g}")
    detX = float(np.linalg.det(X))
    sqrt_detY = math.sqrt(max(np.linalg.det(Y), 0.0))
    need = abs(1.0 - detX) / 2
    if sqrt_detY < need - CP_TOL:
        raise NotCompletelyPositive(
            f"sqrt(det Y) = {sqrt_detY:.6g} < |1 - det X|/2 = {need:.6g}")
    X.flags.writeable = False
    Y.flags.writeable = False
    return ChannelMatrices(X, Y)


def fiducial_decompose(ch):
    """Factor a channel into its fiducial form.

    ``M0 = sqrt(X X^T / |eta|)`` has unit determinant. The rotation that
    diagonalizes ``M0^-1 Y M0^-T`` with the larger eigenvalue first gives
    ``M = M0 R`` and ``s >= 0``; the input rotation is
    ``Theta = X_F^-1 M^-1 X``.
    """
    X, Y = ch.X, ch.Y
    eta = float(np.linalg.det(X))
    if abs(eta) < SINGULAR_TOL:
        raise SingularX(f"det X = {eta!r} is too close to zero")
    P = X @ X.T / abs(eta)
    # sqrt of a 2x2 SPD matrix with det 1: (P + I) / sqrt(tr P + 2)
    M0 = (P + np.eye(2)) / math.sqrt(np.trace(P) + 2.0)
    M0_inv = np.array([[M0[1, 1], -M0[0, 1]], [-M0[1, 0], M0[0, 0]]])
    M0_inv /= np.linalg.det(M0)
    l1, l2, phi = _sym_eig(M0_inv @ Y @ M0_inv.T)
    y = math.sqrt(max(np.linalg.det(Y), 0.0))
    if y == 0.0 or l2 <= 0.0:
        s, phi = 0.0, 0.0
    else:
        s = 0.25 * math.log(l1 / l2)
    M = M0 @ rotation(phi)
    Theta = np.linalg.solve(fiducial_x(eta), np.linalg.solve(M, X))
    theta = math.atan2(Theta[1, 0], Theta[0, 0])
    return FiducialParams(eta=eta, y=y, s=s, M=M, theta=theta)


def reconstruct(f):
    """Return ``(X, Y)`` rebuilt from fiducial parameters and factors."""
    X = f.M @ fiducial_x(f.eta) @ rotation(f.theta)
    Y = f.M @ fiducial_y(f.y, f.s) @ f.M.T
    return X, Y


def output_noise(f):
    """Thermal photon number and squeezing of the fiducial vacuum output."""
    half = abs(f.eta) / 2
    a = half + f.y * math.exp(2 * f.s)
    b = half + f.y * math.exp(-2 * f.s)
    n_b = math.sqrt(a * b) - 0.5
    if n_b < 0:
        # CP guarantees a*b >= 1/4; anything below is rounding
        n_b = 0.0
    omega = math.sqrt(a / b)
    return OutputNoise(n_b=n_b, omega_max=omega, r=0.5 * math.log(omega))


def gamma_displacement(f, n_s):
    """Squared displacement ``|eta| n_s omega_max`` seen by the receiver."""
    if n_s < 0:
        raise ValueError("n_s must be nonnegative")
    return abs(f.eta) * n_s * output_noise(f).omega_max


def fiducial_from_noise(eta, n_b, omega_max=1.0):
    """Fiducial channel with a prescribed vacuum output.

    Inverts the output-noise relations: with ``a = (n_b + 1/2) omega`` and
    ``b = (n_b + 1/2) / omega`` one needs ``y e^{2s} = a - |eta|/2`` and
    ``y e^{-2s} = b - |eta|/2``.

    >>> f = fiducial_from_noise(1.0, 0.1)
    >>> round(f.y, 12), f.s
    (0.1, 0.0)
    """
    if omega_max < 1:
        raise ValueError("omega_max must be >= 1")
    a = (n_b + 0.5) * omega_max - abs(eta) / 2
    b = (n_b + 0.5) / omega_max - abs(eta) / 2
    if b < 0:
        raise ValueError(
            f"no fiducial channel with |eta|={abs(eta)} reaches n_b={n_b}, "
            f"omega_max={omega_max}; lower |eta|")
    if a * b == 0:
        y, s = 0.0, 0.0
    else:
        y = math.sqrt(a * b)
        s = 0.25 * math.log(a / b)
    f = FiducialParams(eta=float(eta), y=y, s=s)
    validate_channel(fiducial_x(f.eta), fiducial_y(f.y, f.s))
    return f


# -- channel specification records

def _square(values, name):
    arr = np.asarray(values, dtype=float)
    if arr.size != 4:
        raise ValueError(f"{name} needs 4 entries (row-major 2x2), got {arr.size}")
    return arr.reshape(2, 2)


def _field(rec, key, kind):
    if not isinstance(rec, dict) or key not in rec:
        raise ValueError(f"{kind}: missing field '{key}'")
    return float(rec[key])


def channel_from_spec(spec):
    """Turn a channel specification record into validated matrices.

    Accepted forms::

        {"matrices": {"X": [x11, x12, x21, x22], "Y": [...]}}
        {"fiducial": {"eta": ..., "y": ..., "s": ...}}
        {"output_noise": {"eta": ..., "n_b": ..., "omega_max": ...}}
        {"pure_loss": tau}  or  {"pure_loss": {"tau": tau}}
        {"thermal_loss": {"tau": ..., "nth": ...}}
        {"amplifier": {"gain": ..., "nth": ...}}
    """
    if not isinstance(spec, dict) or len(spec) != 1:
        raise ValueError(
            "channel spec must be a record with exactly one of: matrices, "
            "fiducial, output_noise, pure_loss, thermal_loss, amplifier")
    (kind, rec), = spec.items()
    eye = np.eye(2)
    if kind == "matrices":
        if not isinstance(rec, dict) or "X" not in rec or "Y" not in rec:
            raise ValueError("matrices: fields 'X' and 'Y' are required")
        return validate_channel(_square(rec["X"], "X"), _square(rec["Y"], "Y"))
    if kind == "fiducial":
        eta = _field(rec, "eta", kind)
        y = _field(rec, "y", kind)
        s = float(rec.get("s", 0.0))
        return validate_channel(fiducial_x(eta), fiducial_y(y, s))
    if kind == "output_noise":
        eta = float(rec.get("eta", 1.0)) if isinstance(rec, dict) else 1.0
        n_b = _field(rec, "n_b", kind)
        if "r" in rec:
            omega = math.exp(2 * float(rec["r"]))
        else:
            omega = float(rec.get("omega_max", 1.0))
        f = fiducial_from_noise(eta, n_b, omega)
        return validate_channel(fiducial_x(f.eta), fiducial_y(f.y, f.s))
    if kind == "pure_loss":
        tau = float(rec["tau"]) if isinstance(rec, dict) else float(rec)
        return validate_channel(math.sqrt(tau) * eye, (1 - tau) / 2 * eye)
    if kind == "thermal_loss":
        tau = _field(rec, "tau", kind)
        nth = _field(rec, "nth", kind)
        return validate_channel(math.sqrt(tau) * eye, (1 - tau) * (nth + 0.5) * eye)
    if kind == "amplifier":
        gain = _field(rec, "gain", kind)
        nth = _field(rec, "nth", kind)
        return validate_channel(math.sqrt(gain) * eye, (gain - 1) * (nth + 0.5) * eye)
    raise ValueError(f"unknown channel kind '{kind}'")
