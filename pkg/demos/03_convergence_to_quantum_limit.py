# %% [markdown]
# Convergence of OOK to the quantum limit
#
# CPC normalized to |eta| against the output signal cost |eta| n_s for the
# PNR receiver (solid), the threshold receiver with k_th = floor(0.9
# |gamma_s|^2) (dotted) and the quantum bound (dashed). Three
# phase-insensitive channels and one phase-sensitive channel with
# n_b = 0.1 and r = ln 2 / 2.
#
# The same table is produced on the command line by, e.g.
#
#     gausscpc sweep --thermal-loss 0.5 0.2 --points 41

# %%
import math

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

import gausscpc as gc
from gausscpc.cli import sweep_rows

curves = {
    "n_b=1": ({"thermal_loss": {"tau": 0.5, "nth": 2.0}}, "k"),
    "n_b=0.1": ({"thermal_loss": {"tau": 0.5, "nth": 0.2}}, "r"),
    "n_b=0.01": ({"thermal_loss": {"tau": 0.5, "nth": 0.02}}, "orange"),
    "n_b=0.1, r=ln2/2": ({"output_noise": {"eta": 0.4, "n_b": 0.1, "r": math.log(2) / 2}},
                         "y"),
}
grid = np.geomspace(0.1, 1e4, 61)

fig, ax = plt.subplots(figsize=(6, 4))
for label, (spec, color) in curves.items():
    f = gc.fiducial_decompose(gc.channel_from_spec(spec))
    rows = np.array(sweep_rows(f, grid, ["pnr", "threshold"], 0.1, 1e-15), dtype=float)
    ax.plot(rows[:, 0], rows[:, 1], "-", color=color, label=label)
    ax.plot(rows[:, 0], rows[:, 2], ":", color=color)
    ax.plot(rows[:, 0], rows[:, 4], "--", color=color)
    i10 = np.argmin(abs(rows[:, 0] - 10))
    print(f"{label:18s} CPC/bound at |eta|n_s=10: {rows[i10, 1] / rows[i10, 4]:.3f}, "
          f"at 1e4: {rows[-1, 1] / rows[-1, 4]:.4f}")

ax.set_xscale("log")
ax.set_xlabel(r"$|\eta| n_s$")
ax.set_ylabel(r"CPC / $|\eta|$ [bits/photon]")
ax.legend(fontsize=8)
fig.tight_layout()
fig.savefig("convergence.png", dpi=150)
print("wrote convergence.png")
