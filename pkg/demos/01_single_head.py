# %% [markdown]
# # One AOA head: currents, least-squares direction, noise covariance
#
# A head of four tilted photodiodes sits on the floor at (0, 2, 0) and looks
# at a ceiling LED at (2, 2, 4). We compute the noise-free photocurrents,
# add receiver noise, recover the incidence vector, and compare the spread
# of the recovered direction with the closed-form covariance.

# %%
import numpy as np

from beaconloc import aoa
from beaconloc.channel import NoiseModel, OpticalParams, noise_variance

optics = OpticalParams()
noise = NoiseModel()
head = aoa.AoaEstimator((0.0, 2.0, 0.0))
led = np.array([2.0, 2.0, 4.0])

print("photodiode normals:\n", head.normals.round(4))

# %% [markdown]
# All four photodiodes see the LED along the same line of sight, so their
# currents are the head's peak current scaled by ``v_q . r``.

# %%
r, d, cos_theta = aoa.true_geometry(head, led)
mu, mu_max = aoa.mean_currents(head, optics, led)
print(f"distance {d:.3f} m, cos(theta) {cos_theta:.3f}, mu_max {mu_max:.4e} A")
print("mean currents (A):", mu)
print("noise std per PD (A):", np.sqrt(noise_variance(noise, mu)))

# %%
rng = np.random.default_rng(0)
currents = aoa.simulate_currents(head, optics, noise, led, rng=rng, size=200_000)
r_hat = aoa.estimate_incidence(head, currents, mu_max)
err = r_hat - r
print("true r:", r.round(5), " mean r_hat:", r_hat.mean(axis=0).round(5))

# %% [markdown]
# Empirical covariance of the direction error against the closed form.

# %%
cov, _ = aoa.head_covariance(head, optics, noise, led)
emp = err.T @ err / len(err)
np.set_printoptions(precision=3)
print("closed form:\n", cov)
print("Monte Carlo:\n", emp)
