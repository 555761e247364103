# %% [markdown]
# # Two rays, one LED: triangulation and its sensitivity
#
# Two heads 4 m apart each report a direction. The LED estimate is the
# midpoint of the least-squares foot points on the two rays. The Jacobians
# of that estimate with respect to each direction tell us how direction
# noise turns into position error.

# %%
import numpy as np

from beaconloc.linalg import unit
from beaconloc.localizer import TriangulationInputs, triangulate
from beaconloc.propagation import estimate_jacobians

a1, a2 = np.array([0.0, 2.0, 0.0]), np.array([4.0, 2.0, 0.0])
t = np.array([1.0, 3.0, 4.0])
inp = TriangulationInputs(a1, a2, unit(t - a1), unit(t - a2))
res = triangulate(inp)
print("estimate:", res.t_hat, " ray parameters:", res.d1, res.d2)

# %% [markdown]
# Tilt the first ray by 10 mrad. The rays no longer meet; the estimate moves
# to the midpoint of their closest approach.

# %%
theta = 0.01
rot_x = np.array([[1, 0, 0], [0, np.cos(theta), -np.sin(theta)], [0, np.sin(theta), np.cos(theta)]])
skew = triangulate(TriangulationInputs(a1, a2, rot_x @ inp.r1, inp.r2))
gap = np.linalg.norm((a1 + skew.d1 * rot_x @ inp.r1) - (a2 + skew.d2 * inp.r2))
print(f"moved by {np.linalg.norm(skew.t_hat - t) * 100:.2f} cm, rays {gap * 100:.2f} cm apart")

# %% [markdown]
# The first-order prediction of that shift from the Jacobian.

# %%
jac = estimate_jacobians(inp)
predicted = t + jac.dt_dr1 @ (rot_x @ inp.r1 - inp.r1)
print("first-order estimate:", predicted, " exact:", skew.t_hat)

# %% [markdown]
# Moving the heads together shrinks ``c1*c3 - c2^2`` and the Jacobians grow.

# %%
for half_gap in (2.0, 1.0, 0.5, 0.25):
    b1, b2 = np.array([2 - half_gap, 2, 0.0]), np.array([2 + half_gap, 2, 0.0])
    i = TriangulationInputs(b1, b2, unit(t - b1), unit(t - b2))
    j = estimate_jacobians(i)
    print(f"separation {2 * half_gap:4.2f} m: discriminant {triangulate(i).discriminant:.4f}, "
          f"|J1| {np.linalg.norm(j.dt_dr1):6.2f} m")
