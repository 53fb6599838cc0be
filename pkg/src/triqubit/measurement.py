"""
Projective measurement of one qubit and the sphere integrals built from it.

Measuring party X of a three-qubit state along a Bloch direction leaves the
other two qubits (the "pair") in a pure state with probability ``W``. The
integrals

    c4  = int W^2 C^2,   c6 = int W^3 C^2,   c8 = int W^4 C^4,
    c8p = int W^4 C^2

over the sphere of directions (measure ``sin(theta) dtheta dphi``) are local
unitary invariants with closed forms in terms of ``i0 ... i5``.

The integrands never divide by ``W``: with ``nu`` the unnormalized collapsed
amplitudes, ``W = |nu|^2`` and ``W^2 C^2 = 4 |det nu|^2``.

Normalization: the closed forms hold when ``C`` inside the integrals is
``|m00 m11 - m01 m10|``, half the usual concurrence. That is the default
(``normalization="half"``). With ``normalization="standard"`` the full
concurrence is used and every integral carries an extra ``4**(b/2)`` for
``C**b``; ``closedform_cset`` accepts the same switch.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InconsistencyError, InputError
from .invariants import DEGREES, InvariantSet, _assemble, compute_invariants, concurrence_pure_coeff
from .states import PARTIES, MeasurementDirection, ThreeQubitPure, TwoQubitPure

PAIRS = ("AB", "AC", "BC")
QUANTITIES = ("c4", "c6", "c8", "c8p")
PROB_FLOOR = 1e-12

NORMALIZATIONS = ("half", "standard")
# Power of C in each integrand.
C_POWER = {"c4": 2, "c6": 2, "c8": 4, "c8p": 2}

MIN_NODES_THETA = 9
MIN_NODES_PHI = 17


def measured_party(pair: str) -> str:
    pair = _check_pair(pair)
    return next(p for p in PARTIES if p not in pair)


def _check_pair(pair: str) -> str:
    key = "".join(sorted(str(pair).upper()))
    if key not in PAIRS:
        raise InputError(f"invalid pair {pair!r}; expected one of {PAIRS}")
    return key


def _check_party(party: str) -> int:
    key = str(party).upper()
    if key not in PARTIES:
        raise InputError(f"invalid party {party!r}; expected A, B or C")
    return PARTIES.index(key)


def _collapse(s: ThreeQubitPure, axis: int, bra: np.ndarray) -> np.ndarray:
    """Unnormalized 2x2 amplitudes left after contracting ``bra`` on ``axis``."""
    return np.tensordot(bra, np.moveaxis(s.tensor, axis, 0), axes=(0, 0))


@dataclass(frozen=True)
class ProjectionOutcome:
    prob: float
    collapsed: TwoQubitPure | None  # None when prob <= PROB_FLOOR

    @property
    def defined(self) -> bool:
        return self.collapsed is not None


def project(s: ThreeQubitPure, party: str, d: MeasurementDirection) -> ProjectionOutcome:
    """Project ``party`` onto the Bloch direction ``d``.

    The remaining two qubits keep their original relative order.
    """
    axis = _check_party(party)
    if not s.norm_squared() > 1e-24:
        raise InputError("cannot measure the zero state")
    nu = _collapse(s, axis, d.ket().conj())
    prob = float(np.vdot(nu, nu).real)
    if prob <= PROB_FLOOR:
        return ProjectionOutcome(prob, None)
    return ProjectionOutcome(prob, TwoQubitPure(nu.reshape(4) / math.sqrt(prob)))


def residual_concurrence(s: ThreeQubitPure, party: str, d: MeasurementDirection) -> tuple[float, float]:
    """``(W, C)``: outcome probability and concurrence of the collapsed pair."""
    out = project(s, party, d)
    if not out.defined:
        return out.prob, 0.0
    return out.prob, concurrence_pure_coeff(out.collapsed)


@dataclass(frozen=True)
class QuadratureSpec:
    """Gauss-Legendre nodes in cos(theta) times a uniform grid in phi."""

    n_theta: int = 12
    n_phi: int = 33

    def __post_init__(self):
        if int(self.n_theta) < MIN_NODES_THETA or int(self.n_phi) < MIN_NODES_PHI:
            raise InputError(
                f"quadrature needs n_theta >= {MIN_NODES_THETA} and n_phi >= {MIN_NODES_PHI} "
                f"for exactness, got ({self.n_theta}, {self.n_phi})"
            )

    def nodes(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """Flattened ``(theta, phi, weight)`` arrays plus the grid shape."""
        u, wu = np.polynomial.legendre.leggauss(int(self.n_theta))
        phi = 2.0 * np.pi * np.arange(int(self.n_phi)) / int(self.n_phi)
        wphi = 2.0 * np.pi / int(self.n_phi)
        return u, wu, phi, wphi


@dataclass(frozen=True)
class CSet:
    pair: str
    c4: float
    c6: float
    c8: float
    c8p: float

    def as_dict(self) -> dict[str, float]:
        return {q: getattr(self, q) for q in QUANTITIES}


def _check_normalization(normalization: str) -> float:
    """Factor multiplying ``C**2`` relative to the half-concurrence convention."""
    if normalization not in NORMALIZATIONS:
        raise InputError(f"normalization must be one of {NORMALIZATIONS}")
    return 1.0 if normalization == "half" else 4.0


def quadrature_cset(
    s: ThreeQubitPure,
    pair: str,
    q: QuadratureSpec | None = None,
    normalization: str = "half",
) -> CSet:
    """Evaluate the four sphere integrals for ``pair`` by exact product quadrature."""
    pair = _check_pair(pair)
    c2_factor = _check_normalization(normalization)
    q = q or QuadratureSpec()
    if not s.norm_squared() > 1e-24:
        raise InputError("cannot integrate for the zero state")
    axis = PARTIES.index(measured_party(pair))
    m = np.moveaxis(s.tensor, axis, 0)
    m0, m1 = m[0], m[1]

    u, wu, phi, wphi = q.nodes()
    half_c = np.sqrt(0.5 * (1.0 + u))[:, None]
    half_s = np.sqrt(0.5 * (1.0 - u))[:, None]
    rot = np.exp(-1j * phi)[None, :]
    # <psi_dir| = cos(t/2) <0| + e^{-i phi} sin(t/2) <1|
    a = half_c + 0j * rot
    b = half_s * rot
    nu = a[..., None, None] * m0 + b[..., None, None] * m1  # (n_theta, n_phi, 2, 2)
    w = np.sum(np.abs(nu) ** 2, axis=(-2, -1))
    det = nu[..., 0, 0] * nu[..., 1, 1] - nu[..., 0, 1] * nu[..., 1, 0]
    wc2 = c2_factor * np.abs(det) ** 2  # W^2 C^2

    weights = wu[:, None] * wphi
    integrands = {
        "c4": wc2,
        "c6": w * wc2,
        "c8": wc2 * wc2,
        "c8p": w * w * wc2,
    }
    vals = {k: float(np.sum(weights * f)) for k, f in integrands.items()}
    return CSet(pair, **vals)


# -- closed forms -----------------------------------------------------------


def _ordered(inv: InvariantSet, pair: str) -> tuple[float, float, float]:
    """``(i_special, i_x, i_y)`` where ``i_special`` belongs to the measured party."""
    idx = PARTIES.index(measured_party(pair))
    i = (inv.i1, inv.i2, inv.i3)
    others = [i[k] for k in range(3) if k != idx]
    return i[idx], others[0], others[1]


def _c4_core(inv: InvariantSet, pair: str) -> float:
    special, x, y = _ordered(inv, pair)
    return special - x - y + inv.i0**2


# Monomial basis for degree-8 invariants, written relative to the pair:
# "s" is the measured party's purity, "x"/"y" the pair's.
C8P_MONOMIALS = (
    "i5", "i4*i0", "s^2", "x^2", "y^2", "s*i0^2", "x*i0^2", "y*i0^2",
    "x*y", "s*x", "s*y", "i0^4",
)

# Integer coefficients times pi/480, in C8P_MONOMIALS order. The symmetric
# form is shared by all pairs.
C8P_COEFFS = (1, -64, 28, -4, -4, 136, -24, -24, 8, -24, -24, -4)


def _c8p_monomials(inv: InvariantSet, pair: str) -> np.ndarray:
    s, x, y = _ordered(inv, pair)
    i0 = inv.i0
    return np.array(
        [inv.i5, inv.i4 * i0, s * s, x * x, y * y, s * i0**2, x * i0**2, y * i0**2,
         x * y, s * x, s * y, i0**4]
    )


def c8p_printed(inv: InvariantSet, pair: str) -> float:
    """The degree-8 ``c8p`` closed form transcribed literally, per pair."""
    pair = _check_pair(pair)
    i0, i1, i2, i3, i4, i5 = inv.i0, inv.i1, inv.i2, inv.i3, inv.i4, inv.i5
    head = i5 - 64 * i4 * i0 - 4 * i0**4
    if pair == "AB":
        body = (4 * (-i1**2 - i2**2 + 7 * i3**2) + 8 * (-3 * i1 - 3 * i2 + 17 * i3) * i0**2
                + 8 * (i1 * i2 - 3 * i1 * i3 - i2 * i3))
    elif pair == "AC":
        body = (4 * (-i1**2 + 7 * i2**2 - i3**2) + 8 * (-3 * i1 + 17 * i2 - 3 * i3) * i0**2
                + 8 * (-3 * i1 * i2 + i1 * i3 - 3 * i2 * i3))
    else:
        body = (4 * (7 * i1**2 - i2**2 - i3**2) + 8 * (-3 * i1 + 17 * i2 - 3 * i3) * i0**2
                + 8 * (-3 * i1 * i2 + i1 * i3 - 3 * i2 * i3))
    return math.pi / 480.0 * (head + body)


def c8p_closedform(inv: InvariantSet, pair: str, coeffs=C8P_COEFFS) -> float:
    return math.pi / 480.0 * float(np.dot(coeffs, _c8p_monomials(inv, _check_pair(pair))))


def closedform_cset(inv: InvariantSet, pair: str, normalization: str = "half") -> CSet:
    """The four integrals for ``pair`` from the invariants alone."""
    pair = _check_pair(pair)
    f = _check_normalization(normalization)
    core = _c4_core(inv, pair)
    special, x, y = _ordered(inv, pair)
    i0 = inv.i0
    c4 = math.pi / 3.0 * core
    c6 = math.pi / 18.0 * (2 * i0**3 - 3 * i0 * (x + y - 2 * special) - 2 * inv.i4)
    c8 = math.pi / 240.0 * (12 * core**2 - inv.i5)
    return CSet(pair, f * c4, f * c6, f * f * c8, f * c8p_closedform(inv, pair))


def fit_c8p_coefficients(states, pair: str = "BC", q: QuadratureSpec | None = None) -> np.ndarray:
    """Least-squares fit of quadrature ``c8p`` onto ``C8P_MONOMIALS``.

    Returns the real coefficients in units of ``pi/480``.
    """
    rows, rhs = [], []
    for s in states:
        rows.append(_c8p_monomials(compute_invariants(s), pair))
        rhs.append(quadrature_cset(s, pair, q).c8p)
    coef, *_ = np.linalg.lstsq(np.array(rows), np.array(rhs), rcond=None)
    return coef * 480.0 / math.pi


@dataclass
class C8PAdjudication:
    fitted: dict[str, np.ndarray]  # raw least-squares coefficients per pair
    rounded: dict[str, tuple[int, ...]]
    printed_max_dev: dict[str, float]  # printed form vs quadrature, held-out states
    corrected_max_dev: dict[str, float]  # C8P_COEFFS vs quadrature, held-out states

    def printed_ok(self, pair: str, tol: float = 1e-10) -> bool:
        return self.printed_max_dev[pair] <= tol


def adjudicate_c8p(seed: int = 2024, n_fit: int = 60, n_holdout: int = 200,
                   q: QuadratureSpec | None = None) -> C8PAdjudication:
    """Check the printed ``c8p`` forms and re-derive the coefficients.

    The fit uses ``n_fit`` random states; both the printed forms and
    ``C8P_COEFFS`` are then compared with quadrature on ``n_holdout``
    different states.
    """
    from .states import haar_random_state

    fit_states = [haar_random_state(seed, k) for k in range(n_fit)]
    held = [haar_random_state(seed, n_fit + k) for k in range(n_holdout)]
    fitted, rounded = {}, {}
    for pair in PAIRS:
        fitted[pair] = fit_c8p_coefficients(fit_states, pair, q)
        rounded[pair] = tuple(int(round(c)) for c in fitted[pair])
    printed = dict.fromkeys(PAIRS, 0.0)
    corrected = dict.fromkeys(PAIRS, 0.0)
    for s in held:
        inv = compute_invariants(s)
        for pair in PAIRS:
            ref = quadrature_cset(s, pair, q).c8p
            printed[pair] = max(printed[pair], abs(c8p_printed(inv, pair) - ref))
            corrected[pair] = max(corrected[pair], abs(c8p_closedform(inv, pair) - ref))
    return C8PAdjudication(fitted, rounded, printed, corrected)


# -- inversion --------------------------------------------------------------


@dataclass(frozen=True)
class Inversion:
    invariants: InvariantSet
    i4_candidates: tuple[float, float, float]
    i5_candidates: tuple[float, float, float]

    @property
    def i4_spread(self) -> float:
        return max(self.i4_candidates) - min(self.i4_candidates)

    @property
    def i5_spread(self) -> float:
        return max(self.i5_candidates) - min(self.i5_candidates)


def invert_invariants(c_ab: CSet, c_ac: CSet, c_bc: CSet, i0: float, tol: float = 1e-8) -> Inversion:
    """Recover ``i1 ... i5`` from the integrals of all three pairs.

    ``i4`` and ``i5`` each have three equivalent expressions; their mean is
    returned and the spread (compared at unit norm) must stay below ``tol``.
    """
    for c, want in ((c_ab, "AB"), (c_ac, "AC"), (c_bc, "BC")):
        if _check_pair(c.pair) != want:
            raise InputError(f"expected the {want} integrals, got {c.pair}")
    if not i0 > 0:
        raise InputError("i0 must be positive")
    k = 3.0 / (2.0 * math.pi)
    i1 = i0**2 - k * (c_ab.c4 + c_ac.c4)
    i2 = i0**2 - k * (c_ab.c4 + c_bc.c4)
    i3 = i0**2 - k * (c_ac.c4 + c_bc.c4)

    g = 9.0 / (4.0 * math.pi)
    i4s = (
        i0**3 - g * (4 * c_ab.c6 + i0 * (-2 * c_ab.c4 + c_ac.c4 + c_bc.c4)),
        i0**3 - g * (4 * c_ac.c6 + i0 * (c_ab.c4 - 2 * c_ac.c4 + c_bc.c4)),
        i0**3 - g * (4 * c_bc.c6 + i0 * (c_ab.c4 + c_ac.c4 - 2 * c_bc.c4)),
    )
    i5s = (
        12.0 / math.pi * (math.pi * (-i1 - i2 + i3 + i0**2) ** 2 - 20 * c_ab.c8),
        12.0 / math.pi * (math.pi * (-i1 + i2 - i3 + i0**2) ** 2 - 20 * c_ac.c8),
        12.0 / math.pi * (math.pi * (i1 - i2 - i3 + i0**2) ** 2 - 20 * c_bc.c8),
    )
    result = Inversion(
        _assemble(i0, i1, i2, i3, float(np.mean(i4s)), float(np.mean(i5s))),
        i4s,
        i5s,
    )
    if result.i4_spread / i0**3 > tol or result.i5_spread / i0**4 > tol:
        raise InconsistencyError(
            f"redundant expressions disagree: i4 spread {result.i4_spread:.3e}, "
            f"i5 spread {result.i5_spread:.3e}"
        )
    return result


# -- verification -----------------------------------------------------------


@dataclass
class IdentityReport:
    """Absolute deviations between quadrature and closed forms for one state.

    Deviations are divided by ``i0**(degree/2)`` so they are quoted at unit
    norm.
    """

    deviations: dict[str, dict[str, float]] = field(default_factory=dict)
    printed_c8p: dict[str, float] = field(default_factory=dict)
    roundtrip: dict[str, float] = field(default_factory=dict)
    i4_spread: float = 0.0
    i5_spread: float = 0.0

    def max_deviation(self, quantities=("c4", "c6", "c8")) -> float:
        return max(self.deviations[p][k] for p in self.deviations for k in quantities)

    def passed(self, tol: float) -> bool:
        return (
            self.max_deviation(QUANTITIES) <= tol
            and max(self.roundtrip.values()) <= tol
        )


_DEGREE = {"c4": 4, "c6": 6, "c8": 8, "c8p": 8}


def verify_identities(s: ThreeQubitPure, q: QuadratureSpec | None = None) -> IdentityReport:
    q = q or QuadratureSpec()
    inv = compute_invariants(s)
    report = IdentityReport()
    quad = {}
    for pair in PAIRS:
        qc = quadrature_cset(s, pair, q)
        cf = closedform_cset(inv, pair)
        quad[pair] = qc
        report.deviations[pair] = {
            k: abs(getattr(qc, k) - getattr(cf, k)) / inv.i0 ** (_DEGREE[k] / 2)
            for k in QUANTITIES
        }
        report.printed_c8p[pair] = abs(qc.c8p - c8p_printed(inv, pair)) / inv.i0**4

    back = invert_invariants(quad["AB"], quad["AC"], quad["BC"], inv.i0, tol=math.inf)
    for name in ("i1", "i2", "i3", "i4", "i5"):
        scale = inv.i0 ** (DEGREES[name] // 2)
        report.roundtrip[name] = abs(getattr(back.invariants, name) - getattr(inv, name)) / scale
    report.i4_spread = back.i4_spread / inv.i0**3
    report.i5_spread = back.i5_spread / inv.i0**4
    return report
