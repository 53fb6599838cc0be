"""
Boundary curves between the named states
========================================

Six one-parameter families of states join the points O, B, W and G. Each
family is traced over the parameter interval between its two named points.
"""
import matplotlib.pyplot as plt
import numpy as np

from triqubit import compute_invariants
from triqubit.states import FAMILY_CORRECTIONS, FAMILY_ENDPOINTS, boundary_state, family_thetas

curves = {}
for family, (start, end) in FAMILY_ENDPOINTS.items():
    pts = []
    for theta in family_thetas(family, 100):
        inv = compute_invariants(boundary_state(family, theta))
        pts.append((inv.ip123, inv.ip4, inv.ip5))
    curves[family] = np.array(pts)
    print(f"{family}: {start} -> {end}, ends at {np.round(curves[family][[0, -1]], 4).tolist()}")

###############################################################################
# Two families use repaired amplitude formulas:

for family, note in FAMILY_CORRECTIONS.items():
    print(f"  {family}: {note}")

fig = plt.figure(figsize=(7, 6))
ax = fig.add_subplot(projection="3d")
for family, pts in curves.items():
    ax.plot(*pts.T, label=family)
ax.set_xlabel("ip123")
ax.set_ylabel("ip4")
ax.set_zlabel("ip5")
ax.legend()
plt.show()
