"""
Dense complex linear algebra for 2x2, 4x4 and 8x8 matrices.

Matrices are plain ``numpy`` arrays of dtype ``complex128``. Qubit ordering
follows the big-endian convention: for three qubits the basis index of
``|ijk>`` is ``4*i + 2*j + k`` with qubit A as ``i``.

The Hermitian eigensolver is a cyclic complex Jacobi iteration. At these
sizes it converges in a handful of sweeps and gives eigenvectors that are
unitary to machine precision.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import InputError

SUPPORTED_DIMS = (2, 4, 8)
HERMITIAN_TOL = 1e-10
PSD_TOL = 1e-10

_QUBIT_LABELS = {"A": 0, "B": 1, "C": 2}


def as_matrix(a, dims=SUPPORTED_DIMS) -> np.ndarray:
    """Validate ``a`` and return it as a complex square matrix."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise InputError(f"expected a square matrix, got shape {m.shape}")
    if m.shape[0] not in dims:
        raise InputError(f"unsupported dimension {m.shape[0]}; expected one of {dims}")
    if not np.all(np.isfinite(m)):
        raise InputError("matrix has non-finite entries")
    return m


def matmul(a, b) -> np.ndarray:
    a, b = as_matrix(a), as_matrix(b)
    if a.shape != b.shape:
        raise InputError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return a @ b


def adjoint(a) -> np.ndarray:
    return as_matrix(a).conj().T


def conjugate(a) -> np.ndarray:
    """Entrywise complex conjugate (no transpose)."""
    return as_matrix(a).conj()


def trace(a) -> complex:
    return complex(np.trace(as_matrix(a)))


def kron(a, b) -> np.ndarray:
    """Kronecker product with ``a`` on the most significant qubits."""
    a, b = as_matrix(a), as_matrix(b)
    if a.shape[0] * b.shape[0] not in (4, 8):
        raise InputError(
            f"kron of dims {a.shape[0]} and {b.shape[0]} gives unsupported dim"
        )
    return np.kron(a, b)


def _qubit_indices(keep: Iterable, n_qubits: int) -> list[int]:
    out = set()
    for q in keep:
        if isinstance(q, str):
            if q.upper() not in _QUBIT_LABELS:
                raise InputError(f"unknown qubit label {q!r}")
            q = _QUBIT_LABELS[q.upper()]
        q = int(q)
        if not 0 <= q < n_qubits:
            raise InputError(f"qubit index {q} out of range for {n_qubits} qubits")
        out.add(q)
    return sorted(out)


def partial_trace(rho, keep) -> np.ndarray:
    """Reduced density matrix on the qubits in ``keep``.

    ``keep`` holds qubit indices (0 = A) or labels ``"A"``, ``"B"``, ``"C"``;
    a string such as ``"AB"`` also works. The kept qubits stay in their
    original order.
    """
    rho = as_matrix(rho, dims=(4, 8))
    n = rho.shape[0].bit_length() - 1
    kept = _qubit_indices(keep, n)
    if not kept or len(kept) == n:
        raise InputError("keep must be a nonempty proper subset of the qubits")

    letters = "abcdefgh"
    row = [letters[q] for q in range(n)]
    col = [letters[q] if q not in kept else letters[q].upper() for q in range(n)]
    out = [letters[q] for q in kept] + [letters[q].upper() for q in kept]
    spec = "".join(row) + "".join(col) + "->" + "".join(out)
    d = 2 ** len(kept)
    return np.einsum(spec, rho.reshape((2,) * (2 * n))).reshape(d, d)


@dataclass(frozen=True)
class HermitianEigenResult:
    eigenvalues: np.ndarray  # ascending
    eigenvectors: np.ndarray  # columns


def _check_hermitian(a: np.ndarray) -> np.ndarray:
    scale = max(1.0, float(np.max(np.abs(a))))
    if np.max(np.abs(a - a.conj().T)) > HERMITIAN_TOL * scale:
        raise InputError("matrix is not Hermitian")
    return 0.5 * (a + a.conj().T)


def hermitian_eigen(a, max_sweeps: int = 100) -> HermitianEigenResult:
    """Eigen-decomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Each rotation first removes the phase of the pivot ``a[p, q]`` and then
    applies the real symmetric Jacobi rotation that zeroes it. Sweeps stop
    once every off-diagonal modulus is below ``1e-14 * ||a||_F``.
    """
    a = _check_hermitian(as_matrix(a))
    n = a.shape[0]
    v = np.eye(n, dtype=np.complex128)
    threshold = 1e-14 * np.linalg.norm(a)

    for _ in range(max_sweeps):
        off = np.abs(a - np.diag(np.diag(a)))
        if off.max() <= threshold:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                r = abs(apq)
                if r <= threshold * 1e-3 or r == 0.0:
                    continue
                phase = apq / r
                tau = (a[q, q].real - a[p, p].real) / (2.0 * r)
                t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + np.hypot(1.0, tau))
                c = 1.0 / np.hypot(1.0, t)
                s = t * c
                # g = diag(1, conj(phase)) @ [[c, s], [-s, c]]
                g = np.array([[c, s], [-s * phase.conjugate(), c * phase.conjugate()]])
                idx = [p, q]
                a[:, idx] = a[:, idx] @ g
                a[idx, :] = g.conj().T @ a[idx, :]
                a[p, q] = a[q, p] = 0.0
                v[:, idx] = v[:, idx] @ g
    else:
        raise RuntimeError("Jacobi iteration did not converge")

    w = np.diag(a).real
    order = np.argsort(w, kind="stable")
    return HermitianEigenResult(w[order], v[:, order])


def psd_sqrt(a) -> np.ndarray:
    """Principal square root of a Hermitian positive semidefinite matrix.

    Eigenvalues in ``[-1e-10, 0)`` are clamped to zero; anything more
    negative is rejected.
    """
    res = hermitian_eigen(a)
    w = res.eigenvalues
    if w.min() < -PSD_TOL:
        raise InputError(f"matrix is not positive semidefinite (eigenvalue {w.min():.3e})")
    root = np.sqrt(np.clip(w, 0.0, None))
    vecs = res.eigenvectors
    s = (vecs * root) @ vecs.conj().T
    return 0.5 * (s + s.conj().T)


def pauli(name: str) -> np.ndarray:
    mats = {
        "I": [[1, 0], [0, 1]],
        "X": [[0, 1], [1, 0]],
        "Y": [[0, -1j], [1j, 0]],
        "Z": [[1, 0], [0, -1]],
    }
    return np.array(mats[name.upper()], dtype=np.complex128)
