"""
Invariants from single-qubit measurements
=========================================

Measure one qubit along every Bloch direction, weight the squared
concurrence of the remaining pair by powers of the outcome probability, and
integrate over the sphere. The integrals are polynomials in the invariants,
which can be recovered from them.
"""
import math

from triqubit import (
    MeasurementDirection,
    closedform_cset,
    compute_invariants,
    haar_random_state,
    invert_invariants,
    named_state,
    quadrature_cset,
    residual_concurrence,
)
from triqubit.measurement import PAIRS

###############################################################################
# One measurement
# ---------------
# Measuring qubit A of the GHZ state along x leaves a Bell pair; along z it
# leaves a product state.

ghz = named_state("G")
for label, d in (("z", MeasurementDirection(0.0)), ("x", MeasurementDirection(math.pi / 2))):
    w, c = residual_concurrence(ghz, "A", d)
    print(f"GHZ, measure A along {label}: probability {w:.3f}, concurrence {c:.3f}")

###############################################################################
# Sphere integrals vs closed forms
# --------------------------------

s = haar_random_state(seed=7, index=0)
inv = compute_invariants(s)
for pair in PAIRS:
    q = quadrature_cset(s, pair)
    c = closedform_cset(inv, pair)
    print(pair, " ".join(f"{k}={getattr(q, k):.12f} (|diff| {abs(getattr(q, k) - getattr(c, k)):.1e})"
                         for k in ("c4", "c6", "c8", "c8p")))

###############################################################################
# Back to the invariants
# ----------------------
# The norm (i0) is the only input not carried by the integrals.

res = invert_invariants(*(quadrature_cset(s, p) for p in PAIRS), i0=inv.i0)
for name in ("i1", "i2", "i3", "i4", "i5"):
    print(f"{name}: direct {getattr(inv, name):.12f}  from integrals {getattr(res.invariants, name):.12f}")
print(f"spread of the three i4 expressions: {res.i4_spread:.1e}")
