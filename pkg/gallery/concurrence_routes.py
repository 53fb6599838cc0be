"""
Three ways to compute two-qubit concurrence
===========================================

For a pure state the coefficient formula, the reduced-state determinant and
the mixed-state spin-flip construction agree. The spin-flip route also
handles mixed states, e.g. a Werner family.
"""
import numpy as np

from triqubit import concurrence_mixed, concurrence_pure_coeff, concurrence_pure_reduced
from triqubit.states import TwoQubitPure

rng = np.random.default_rng(0)
z = rng.normal(size=4) + 1j * rng.normal(size=4)
psi = TwoQubitPure(z / np.linalg.norm(z))
print("coefficients:", concurrence_pure_coeff(psi))
print("reduced det :", concurrence_pure_reduced(psi))
print("spin flip   :", concurrence_mixed(psi.density()))

bell = TwoQubitPure(np.array([1, 0, 0, 1]) / np.sqrt(2)).density()
for p in np.linspace(0, 1, 6):
    rho = p * bell + (1 - p) * np.eye(4) / 4
    print(f"Werner p={p:.1f}: C={concurrence_mixed(rho):.4f}")
