# %% [markdown]
# Gaussian channels, their fiducial form and the ultimate CPC
#
# A single-mode Gaussian channel is a pair of 2x2 matrices (X, Y). Only
# three numbers survive the reduction to fiducial form: eta = det X,
# y = sqrt(det Y) and the intrinsic squeezing s. From them follow the
# thermal photon number n_b and the squeezing omega_max of the vacuum
# output, which fix the quantum limit on bits per photon.

# %%
import math

import numpy as np

import gausscpc as gc

presets = {
    "pure loss 0.5": {"pure_loss": 0.5},
    "thermal loss 0.5, nth=0.2": {"thermal_loss": {"tau": 0.5, "nth": 0.2}},
    "amplifier G=2, nth=0": {"amplifier": {"gain": 2.0, "nth": 0.0}},
    "squeezing channel": {"fiducial": {"eta": 0.8, "y": 0.3, "s": 0.4}},
}

for name, spec in presets.items():
    f = gc.fiducial_decompose(gc.channel_from_spec(spec))
    noise = gc.output_noise(f)
    bound = gc.quantum_cpc_bound(noise, f.eta)
    print(f"{name:28s} eta={f.eta:.3f} y={f.y:.3f} s={f.s:.3f} "
          f"n_b={noise.n_b:.4f} omega={noise.omega_max:.4f} bound={bound}")

# %% [markdown]
# An arbitrary channel: hide the fiducial form behind a random symplectic
# output map and an input rotation, then recover it.

# %%
rng = np.random.default_rng(1)
M = gc.channel.rotation(0.7) @ np.diag([1.6, 1 / 1.6]) @ gc.channel.rotation(-0.2)
X = M @ gc.channel.fiducial_x(-0.6) @ gc.channel.rotation(1.1)
Y = M @ gc.channel.fiducial_y(0.9, 0.25) @ M.T
f = gc.fiducial_decompose(gc.validate_channel(X, Y))
print("recovered eta, y, s:", round(f.eta, 12), round(f.y, 12), round(f.s, 12))

# %% [markdown]
# Unphysical pairs are rejected with the violated condition named.

# %%
try:
    gc.validate_channel(math.sqrt(2) * np.eye(2), 0.25 * np.eye(2))
except gc.NotCompletelyPositive as exc:
    print("rejected:", exc)
