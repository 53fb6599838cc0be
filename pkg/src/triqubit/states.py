"""
Two- and three-qubit pure states: construction, local unitaries, qubit
permutations, seeded sampling, and the state file format.

Amplitudes are stored in big-endian order, ``amp[4*i + 2*j + k]`` for
``|ijk>`` with ``i`` the A qubit. States are not normalized implicitly, so
homogeneous invariants can be checked at any scale.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import InputError

PARTIES = ("A", "B", "C")

# (low, high) range of the boundary parameter theta for each family.
FAMILY_RANGES = {
    "OG": (0.0, math.pi / 2),
    "OB": (0.0, math.pi / 2),
    "OW": (0.0, math.pi / 2),
    "BW": (0.0, math.pi),
    "BG": (math.atan(math.sqrt(2.0)), math.pi / 2),
    "WG": (2 * math.pi / 3, 5 * math.pi / 6),
}

# Sub-interval of each family's range running between its two named points,
# and those points in order. The printed OG and OB ranges run out and back
# (O -> G -> O); the BW and BG formulas join G-B and W-B respectively.
FAMILY_SEGMENTS = {
    "OG": (0.0, math.pi / 4),
    "OB": (0.0, math.pi / 4),
    "OW": (0.0, math.pi / 2),
    "BW": (0.0, math.pi / 4),
    "BG": (math.atan(math.sqrt(2.0)), math.pi / 2),
    "WG": (2 * math.pi / 3, 5 * math.pi / 6),
}
FAMILY_ENDPOINTS = {
    "OG": ("O", "G"),
    "OB": ("O", "B"),
    "OW": ("W", "O"),
    "BW": ("G", "B"),
    "BG": ("W", "B"),
    "WG": ("G", "W"),
}

# Families whose printed amplitude formula is repaired when corrected=True.
FAMILY_CORRECTIONS = {
    "OG": "second ket read as |111> (printed |000>)",
    "BW": "second coefficient read as sin(theta)/sqrt(2) (printed cos)",
}

_RANGE_SLACK = 1e-12


def _as_amplitudes(values, size: int) -> np.ndarray:
    amp = np.array(values, dtype=np.complex128).reshape(-1)
    if amp.shape != (size,):
        raise InputError(f"expected {size} amplitudes, got {amp.size}")
    if not np.all(np.isfinite(amp)):
        raise InputError("amplitudes must be finite")
    amp.setflags(write=False)
    return amp


@dataclass(frozen=True, eq=False)
class ThreeQubitPure:
    """Eight complex amplitudes ``mu_ijk`` indexed as ``4*i + 2*j + k``."""

    amp: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "amp", _as_amplitudes(self.amp, 8))

    @property
    def tensor(self) -> np.ndarray:
        return self.amp.reshape(2, 2, 2)

    def norm_squared(self) -> float:
        return float(np.vdot(self.amp, self.amp).real)

    def density(self) -> np.ndarray:
        return np.outer(self.amp, self.amp.conj())

    def scaled(self, t: complex) -> "ThreeQubitPure":
        return ThreeQubitPure(t * self.amp)

    def overlap(self, other: "ThreeQubitPure") -> complex:
        return complex(np.vdot(self.amp, other.amp))


@dataclass(frozen=True, eq=False)
class TwoQubitPure:
    """Four complex amplitudes ``mu_pq`` indexed as ``2*p + q``."""

    amp: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "amp", _as_amplitudes(self.amp, 4))

    def norm_squared(self) -> float:
        return float(np.vdot(self.amp, self.amp).real)

    def density(self) -> np.ndarray:
        return np.outer(self.amp, self.amp.conj())


@dataclass(frozen=True, eq=False)
class TwoQubitDensity:
    """A validated two-qubit density matrix (Hermitian, unit trace, PSD)."""

    mat: np.ndarray

    def __post_init__(self):
        m = np.array(self.mat, dtype=np.complex128)
        if m.shape != (4, 4) or not np.all(np.isfinite(m)):
            raise InputError("two-qubit density must be a finite 4x4 matrix")
        if np.max(np.abs(m - m.conj().T)) > 1e-10:
            raise InputError("density matrix is not Hermitian")
        if abs(np.trace(m) - 1.0) > 1e-10:
            raise InputError("density matrix does not have unit trace")
        m = 0.5 * (m + m.conj().T)
        if np.linalg.eigvalsh(m).min() < -1e-10:
            raise InputError("density matrix has a negative eigenvalue")
        m.setflags(write=False)
        object.__setattr__(self, "mat", m)


@dataclass(frozen=True)
class MeasurementDirection:
    """Bloch angles of the measured projector, theta in [0, pi], phi in [0, 2pi)."""

    theta: float
    phi: float = 0.0

    def __post_init__(self):
        theta, phi = float(self.theta), float(self.phi)
        if not (math.isfinite(theta) and math.isfinite(phi)):
            raise InputError("angles must be finite")
        if not -_RANGE_SLACK <= theta <= math.pi + _RANGE_SLACK:
            raise InputError(f"theta={theta} outside [0, pi]")
        if not -_RANGE_SLACK <= phi < 2 * math.pi + _RANGE_SLACK:
            raise InputError(f"phi={phi} outside [0, 2pi)")
        object.__setattr__(self, "theta", min(max(theta, 0.0), math.pi))
        object.__setattr__(self, "phi", phi % (2 * math.pi))

    def ket(self) -> np.ndarray:
        """Single-qubit state cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>."""
        return np.array(
            [math.cos(self.theta / 2), math.sin(self.theta / 2) * np.exp(1j * self.phi)]
        )


@dataclass(frozen=True, eq=False)
class LocalUnitaryTriple:
    u_a: np.ndarray
    u_b: np.ndarray
    u_c: np.ndarray

    def __post_init__(self):
        for name in ("u_a", "u_b", "u_c"):
            u = np.array(getattr(self, name), dtype=np.complex128)
            if u.shape != (2, 2):
                raise InputError(f"{name} must be 2x2")
            if np.max(np.abs(u.conj().T @ u - np.eye(2))) > 1e-12:
                raise InputError(f"{name} is not unitary")
            u.setflags(write=False)
            object.__setattr__(self, name, u)

    @classmethod
    def identity(cls) -> "LocalUnitaryTriple":
        return cls(np.eye(2), np.eye(2), np.eye(2))


def normalize(s: ThreeQubitPure) -> ThreeQubitPure:
    n2 = s.norm_squared()
    if not n2 > 1e-24:
        raise InputError("cannot normalize the zero state")
    return ThreeQubitPure(s.amp / math.sqrt(n2))


def basis_state(bits: str) -> ThreeQubitPure:
    """Computational basis state from a bit string such as ``"011"``."""
    if len(bits) != 3 or set(bits) - {"0", "1"}:
        raise InputError(f"invalid basis label {bits!r}")
    amp = np.zeros(8, dtype=np.complex128)
    amp[int(bits, 2)] = 1.0
    return ThreeQubitPure(amp)


def _superpose(terms: dict[str, complex]) -> ThreeQubitPure:
    amp = np.zeros(8, dtype=np.complex128)
    for bits, c in terms.items():
        amp[int(bits, 2)] += c
    return ThreeQubitPure(amp)


def named_state(name: str) -> ThreeQubitPure:
    """The reference states O (product), B (biseparable), W and G (GHZ)."""
    r2, r3 = 1 / math.sqrt(2), 1 / math.sqrt(3)
    table = {
        "O": {"000": 1.0},
        "B": {"000": r2, "011": r2},
        "W": {"001": r3, "010": r3, "100": r3},
        "G": {"000": r2, "111": r2},
    }
    key = name.upper()
    if key == "GHZ":
        key = "G"
    if key not in table:
        raise InputError(f"unknown named state {name!r}; expected O, B, W or G")
    return _superpose(table[key])


def boundary_state(family: str, theta: float, corrected: bool = True) -> ThreeQubitPure:
    """A point on one of the six boundary curves OG, OB, OW, BW, BG, WG.

    The returned state is normalized. With ``corrected=False`` the OG and BW
    formulas are evaluated exactly as printed (see ``FAMILY_CORRECTIONS``),
    which for BW can produce the zero vector and raise.
    """
    fam = family.upper()
    if fam not in FAMILY_RANGES:
        raise InputError(f"unknown family {family!r}")
    lo, hi = FAMILY_RANGES[fam]
    theta = float(theta)
    if not lo - _RANGE_SLACK <= theta <= hi + _RANGE_SLACK:
        raise InputError(f"theta={theta} outside [{lo}, {hi}] for family {fam}")
    c, s = math.cos(theta), math.sin(theta)
    r2, r3, r6 = math.sqrt(2), math.sqrt(3), math.sqrt(6)

    if fam == "OG":
        terms = {"000": c, "111": s} if corrected else {"000": c + s}
    elif fam == "OB":
        terms = {"000": c, "011": s}
    elif fam == "OW":
        terms = {"011": c / r3, "101": c / r3, "110": c / r3, "111": s}
    elif fam == "BW":
        second = s if corrected else c
        terms = {"000": c / r2, "111": c / r2}
        terms.update({"100": second / r2, "011": second / r2})
    elif fam == "BG":
        terms = {"101": s / r2, "000": s / r2, "110": c}
    else:  # WG
        terms = {b: s / r6 for b in ("001", "010", "100", "011", "101", "110")}
        terms.update({"000": c / r2, "111": c / r2})
    return normalize(_superpose(terms))


def family_thetas(family: str, steps: int, span: str = "segment") -> np.ndarray:
    """``steps`` evenly spaced parameters over a family's segment or full range."""
    fam = family.upper()
    if fam not in FAMILY_RANGES:
        raise InputError(f"unknown family {family!r}")
    if steps < 2:
        raise InputError("need at least 2 steps")
    if span not in ("segment", "full"):
        raise InputError("span must be 'segment' or 'full'")
    lo, hi = (FAMILY_SEGMENTS if span == "segment" else FAMILY_RANGES)[fam]
    return np.linspace(lo, hi, steps)


# -- sampling ---------------------------------------------------------------

_STATE_STREAM = 0
_UNITARY_STREAM = 1


def _generator(seed: int, index: int, stream: int) -> np.random.Generator:
    # Counter-based: each (seed, index) pair hashes to its own Philox key.
    seed = int(seed) & (2**64 - 1)
    index = int(index)
    if index < 0:
        raise InputError("sample index must be non-negative")
    ss = np.random.SeedSequence([seed & 0xFFFFFFFF, seed >> 32, index, stream])
    return np.random.Generator(np.random.Philox(ss))


def _box_muller(rng: np.random.Generator, count: int) -> np.ndarray:
    pairs = (count + 1) // 2
    u1 = 1.0 - rng.random(pairs)  # (0, 1]
    u2 = rng.random(pairs)
    radius = np.sqrt(-2.0 * np.log(u1))
    z = np.concatenate([radius * np.cos(2 * np.pi * u2), radius * np.sin(2 * np.pi * u2)])
    return z[:count]


def haar_random_state(seed: int, index: int = 0) -> ThreeQubitPure:
    """Uniformly distributed unit vector in C^8, fixed by ``(seed, index)``."""
    z = _box_muller(_generator(seed, index, _STATE_STREAM), 16)
    return normalize(ThreeQubitPure(z[:8] + 1j * z[8:]))


def _haar_u2(z: np.ndarray) -> np.ndarray:
    g = (z[:4] + 1j * z[4:]).reshape(2, 2)
    # Gram-Schmidt on the columns; keeps the diagonal of R positive.
    e0 = g[:, 0] / np.linalg.norm(g[:, 0])
    v1 = g[:, 1] - np.vdot(e0, g[:, 1]) * e0
    e1 = v1 / np.linalg.norm(v1)
    return np.column_stack([e0, e1])


def random_local_unitary(seed: int, index: int = 0) -> LocalUnitaryTriple:
    z = _box_muller(_generator(seed, index, _UNITARY_STREAM), 24)
    return LocalUnitaryTriple(*(_haar_u2(z[8 * k : 8 * k + 8]) for k in range(3)))


def apply_local_unitaries(s: ThreeQubitPure, u: LocalUnitaryTriple) -> ThreeQubitPure:
    out = np.einsum("ai,bj,ck,ijk->abc", u.u_a, u.u_b, u.u_c, s.tensor)
    return ThreeQubitPure(out.reshape(8))


def _parse_perm(perm) -> tuple[int, int, int]:
    if isinstance(perm, str):
        try:
            perm = [PARTIES.index(p) for p in perm.upper()]
        except ValueError:
            raise InputError(f"invalid permutation {perm!r}") from None
    perm = tuple(int(p) for p in perm)
    if sorted(perm) != [0, 1, 2]:
        raise InputError(f"invalid permutation {perm!r}")
    return perm


def permute_qubits(s: ThreeQubitPure, perm) -> ThreeQubitPure:
    """Relabel qubits so that slot ``k`` of the result holds old qubit ``perm[k]``.

    ``perm`` is a sequence of indices or a string of party letters, e.g.
    ``"BAC"`` swaps A and B.
    """
    p = _parse_perm(perm)
    return ThreeQubitPure(np.transpose(s.tensor, p).reshape(8))


# -- file format ------------------------------------------------------------


def state_to_json(s: ThreeQubitPure) -> str:
    return json.dumps({"amps": [[a.real, a.imag] for a in s.amp.tolist()]})


def state_from_text(text: str) -> ThreeQubitPure:
    """Parse a state from JSON ``{"amps": [[re, im], ...]}`` or a CSV row.

    The CSV form is one row of 16 numbers ``re000,im000,...,re111,im111``;
    a non-numeric header row is skipped.
    """
    stripped = text.strip()
    if not stripped:
        raise InputError("empty state file")
    if stripped[0] in "{[":
        try:
            doc = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise InputError(f"invalid JSON state: {exc}") from None
        pairs = doc.get("amps") if isinstance(doc, dict) else None
        if not isinstance(pairs, list) or len(pairs) != 8:
            raise InputError('JSON state needs "amps" with 8 [re, im] pairs')
        try:
            values = [complex(float(re), float(im)) for re, im in pairs]
        except (TypeError, ValueError):
            raise InputError("amplitudes must be [re, im] number pairs") from None
        return ThreeQubitPure(values)

    rows = [r for r in csv.reader(io.StringIO(stripped)) if r]
    numeric = []
    for row in rows:
        try:
            numeric.append([float(x) for x in row])
        except ValueError:
            if numeric:
                raise InputError("non-numeric CSV row after data") from None
    if len(numeric) != 1 or len(numeric[0]) != 16:
        raise InputError("CSV state must be a single row of 16 numbers")
    x = np.array(numeric[0])
    return ThreeQubitPure(x[0::2] + 1j * x[1::2])


def load_state(path) -> ThreeQubitPure:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read state file {path}: {exc}") from None
    return state_from_text(text)


def save_state(s: ThreeQubitPure, path) -> None:
    Path(path).write_text(state_to_json(s) + "\n")
