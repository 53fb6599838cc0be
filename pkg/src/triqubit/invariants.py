"""
Local-unitary invariants of three-qubit pure states and two-qubit concurrence.

The invariants ``i0 ... i5`` are homogeneous polynomials in the amplitudes
of degree 2, 4, 4, 4, 6 and 8. They are reported for the state as given,
without normalizing; the rescaled coordinates ``ip123, ip4, ip5`` always
refer to the normalized state.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from . import smallmat
from .errors import InputError
from .states import ThreeQubitPure, TwoQubitDensity, TwoQubitPure

SPIN_FLIP = np.kron(smallmat.pauli("Y"), smallmat.pauli("Y"))

# Eigenvalues of sqrt(rho) rho_tilde sqrt(rho) below this are rounding noise;
# left in, they would surface as ~1e-8 after the square root.
EIGEN_NOISE_FLOOR = 1e-14

# Polynomial degree of each invariant in the amplitudes.
DEGREES = {"i0": 2, "i1": 4, "i2": 4, "i3": 4, "i4": 6, "i5": 8}


@dataclass(frozen=True)
class InvariantSet:
    i0: float
    i1: float
    i2: float
    i3: float
    i4: float
    i5: float
    i123: float
    ip123: float
    ip4: float
    ip5: float

    def as_dict(self) -> dict[str, float]:
        return asdict(self)

    def normalized(self) -> "InvariantSet":
        """Values the same state would have after scaling to unit norm."""
        return _assemble(*_normalized_values(self.i0, self.i1, self.i2, self.i3, self.i4, self.i5))


def _normalized_values(i0, i1, i2, i3, i4, i5):
    return (1.0, i1 / i0**2, i2 / i0**2, i3 / i0**2, i4 / i0**3, i5 / i0**4)


def _rescale(i123: float, i4: float, i5: float) -> tuple[float, float, float]:
    return 2.0 * (3.0 - i123) / 3.0, 9.0 * (1.0 - i4) / 7.0, i5


def rescaled_coords(inv: InvariantSet) -> tuple[float, float, float]:
    """``(ip123, ip4, ip5)`` for the normalized version of the state."""
    _, n1, n2, n3, n4, n5 = _normalized_values(inv.i0, inv.i1, inv.i2, inv.i3, inv.i4, inv.i5)
    return _rescale(n1 + n2 + n3, n4, n5)


def _assemble(i0, i1, i2, i3, i4, i5) -> InvariantSet:
    i123 = i1 + i2 + i3
    _, n1, n2, n3, n4, n5 = _normalized_values(i0, i1, i2, i3, i4, i5)
    ip123, ip4, ip5 = _rescale(n1 + n2 + n3, n4, n5)
    return InvariantSet(i0, i1, i2, i3, i4, i5, i123, ip123, ip4, ip5)


def i5_polynomial(amp) -> float:
    """Degree-8 invariant evaluated directly from the eight amplitudes."""
    m = np.asarray(amp, dtype=np.complex128).reshape(2, 2, 2)
    a000, a001, a010, a011 = m[0, 0, 0], m[0, 0, 1], m[0, 1, 0], m[0, 1, 1]
    a100, a101, a110, a111 = m[1, 0, 0], m[1, 0, 1], m[1, 1, 0], m[1, 1, 1]
    x = a000 * a111
    y = a001 * a110
    z = a010 * a101
    w = a011 * a100
    inner = (
        x * x + y * y + z * z + w * w
        - 2.0 * (x * w + x * z + x * y + w * z + w * y + z * y)
        + 4.0 * (a000 * a011 * a101 * a110 + a111 * a001 * a010 * a100)
    )
    return float(16.0 * abs(inner) ** 2)


def compute_invariants(s: ThreeQubitPure) -> InvariantSet:
    i0 = s.norm_squared()
    if not i0 > 1e-24:
        raise InputError("invariants are undefined for the zero state")
    rho = s.density()
    rho_a = smallmat.partial_trace(rho, "A")
    rho_b = smallmat.partial_trace(rho, "B")
    rho_c = smallmat.partial_trace(rho, "C")
    rho_ab = smallmat.partial_trace(rho, "AB")

    def tr(m):
        return float(np.trace(m).real)

    i1 = tr(rho_a @ rho_a)
    i2 = tr(rho_b @ rho_b)
    i3 = tr(rho_c @ rho_c)
    i4 = (
        3.0 * tr(np.kron(rho_a, rho_b) @ rho_ab)
        - tr(rho_a @ rho_a @ rho_a)
        - tr(rho_b @ rho_b @ rho_b)
    )
    i5 = i5_polynomial(s.amp)
    return _assemble(i0, i1, i2, i3, i4, i5)


# -- concurrence ------------------------------------------------------------


def _two_qubit_amp(s) -> np.ndarray:
    amp = s.amp if isinstance(s, TwoQubitPure) else TwoQubitPure(s).amp
    n2 = float(np.vdot(amp, amp).real)
    if not n2 > 1e-24:
        raise InputError("concurrence is undefined for the zero state")
    return amp / math.sqrt(n2)


def concurrence_pure_coeff(s) -> float:
    """Concurrence ``2|m00 m11 - m01 m10|`` of a pure two-qubit state."""
    m = _two_qubit_amp(s)
    return min(1.0, 2.0 * abs(m[0] * m[3] - m[1] * m[2]))


def concurrence_pure_reduced(s) -> float:
    """Concurrence from the determinant of the one-qubit reduced state."""
    m = _two_qubit_amp(s)
    rho_a = smallmat.partial_trace(np.outer(m, m.conj()), "A")
    det = (rho_a[0, 0] * rho_a[1, 1] - rho_a[0, 1] * rho_a[1, 0]).real
    return min(1.0, 2.0 * math.sqrt(max(det, 0.0)))


def concurrence_mixed(rho) -> float:
    """Wootters concurrence of a two-qubit density matrix.

    The square roots of the eigenvalues of ``rho @ rho_tilde`` are obtained
    from the Hermitian matrix ``sqrt(rho) @ rho_tilde @ sqrt(rho)``, which is
    similar to it.
    """
    if not isinstance(rho, TwoQubitDensity):
        rho = TwoQubitDensity(rho)
    m = rho.mat
    rho_tilde = SPIN_FLIP @ m.conj() @ SPIN_FLIP
    root = smallmat.psd_sqrt(m)
    herm = root @ rho_tilde @ root
    w = smallmat.hermitian_eigen(0.5 * (herm + herm.conj().T)).eigenvalues
    w = np.where(w < EIGEN_NOISE_FLOOR, 0.0, w)
    lam = np.sqrt(w)[::-1]
    return float(min(1.0, max(lam[0] - lam[1] - lam[2] - lam[3], 0.0)))
