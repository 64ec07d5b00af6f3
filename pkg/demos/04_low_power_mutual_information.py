# %% [markdown]
# Finite signalling probability
#
# The capacity per unit cost is the lambda -> 0 limit of the photon
# information efficiency I / (lambda n_s). Here the approach is shown for
# n_b = 1 and |gamma_s|^2 = 4.

# %%
import gausscpc as gc

f = gc.fiducial_decompose(gc.channel_from_spec({"fiducial": {"eta": 1.0, "y": 1.0, "s": 0.0}}))
n_s = 4.0
cpc = gc.pnr_cpc(n_s, f).value
print(f"CPC at n_s={n_s}: {cpc:.6f} bits/photon")
for lam in (0.3, 0.1, 1e-2, 1e-3, 1e-4, 1e-5):
    I, pie = gc.ook_mutual_information(gc.OOKParams(lam, n_s), f)
    print(f"lambda={lam:7g}  n_a={lam * n_s:8.2e}  I={I:.3e} bits/use  PIE={pie:.6f}"
          f"  ({pie / cpc:.4f} of CPC)")
