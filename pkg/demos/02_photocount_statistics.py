# %% [markdown]
# Photocount statistics in the squeezed-number basis
#
# After undoing the output squeezing, a signal looks like a displaced
# thermal state. Its count distribution follows a Laguerre-polynomial law
# whose mean is n_b + |gamma|^2 and whose variance is
# |gamma|^2 (1 + 2 n_b) + n_b (n_b + 1).

# %%
import numpy as np

from gausscpc.photostats import moments, photon_distribution, variance_closed_form

for gamma2, n_b in [(0.0, 1.0), (4.0, 1.0), (100.0, 0.01), (1e4, 0.1)]:
    d = photon_distribution(gamma2, n_b)
    mean, var = moments(d)
    print(f"gamma2={gamma2:8g} n_b={n_b:5g}: cutoff={d.cutoff:6d} tail<={d.tail_bound:.1e} "
          f"mean={mean:.6f} ({n_b + gamma2:.6f}) var={var:.6f} "
          f"({variance_closed_form(gamma2, n_b):.6f})")

# %% [markdown]
# As n_b goes to zero the law tends to a Poisson distribution.

# %%
from scipy.stats import poisson

for n_b in (1e-2, 1e-4, 1e-8):
    d = photon_distribution(3.0, n_b)
    dev = np.abs(d.probs - poisson.pmf(np.arange(d.cutoff + 1), 3.0)).max()
    print(f"n_b={n_b:g}: max |p - Poisson| = {dev:.2e}")
