"""
Random three-qubit states in rescaled invariant coordinates
===========================================================

Draw Haar-random pure states, compute their local-unitary invariants and
plot the rescaled triple (ip123, ip4, ip5). The named states O, B, W and
G sit at corners of the cloud.
"""
import matplotlib.pyplot as plt
import numpy as np

from triqubit import compute_invariants, haar_random_state, named_state

###############################################################################
# Sample the cloud
# ----------------
# Each state is a deterministic function of (seed, index), so the cloud can
# be regenerated piecewise.

seed, count = 42, 5000
pts = np.array([
    (inv.ip123, inv.ip4, inv.ip5)
    for inv in (compute_invariants(haar_random_state(seed, k)) for k in range(count))
])
print(f"{count} states, coordinate ranges:")
for name, col in zip(("ip123", "ip4", "ip5"), pts.T):
    print(f"  {name:6s} [{col.min():.4f}, {col.max():.4f}]")

###############################################################################
# Reference states
# ----------------

refs = {}
for name in "OBWG":
    inv = compute_invariants(named_state(name))
    refs[name] = (inv.ip123, inv.ip4, inv.ip5)
    print(name, np.round(refs[name], 6))

###############################################################################
# Plot
# ----

fig = plt.figure(figsize=(7, 6))
ax = fig.add_subplot(projection="3d")
ax.scatter(*pts.T, s=1, alpha=0.3)
for name, p in refs.items():
    ax.scatter(*p, color="crimson", s=30)
    ax.text(*p, f" {name}")
ax.set_xlabel("ip123")
ax.set_ylabel("ip4")
ax.set_zlabel("ip5")
plt.show()
