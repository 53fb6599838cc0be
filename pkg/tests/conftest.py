"""Shared helpers.

Tolerances in this suite are absolute and quoted at unit norm: quantities of
polynomial degree ``d`` computed on unnormalized states are divided by
``i0 ** (d / 2)`` before comparison.
"""
import math

import numpy as np
import pytest

from triqubit.states import ThreeQubitPure, haar_random_state

PI = math.pi
SEED = 20240611


def at_unit_norm(value: float, i0: float, degree: int) -> float:
    return value / i0 ** (degree / 2)


def same_ray(a: ThreeQubitPure, b: ThreeQubitPure, tol: float = 1e-12) -> bool:
    """True when the normalized states agree up to a global phase."""
    na, nb = math.sqrt(a.norm_squared()), math.sqrt(b.norm_squared())
    return abs(abs(a.overlap(b)) / (na * nb) - 1.0) < tol


@pytest.fixture(scope="session")
def random_states():
    return [haar_random_state(SEED, k) for k in range(40)]


@pytest.fixture
def rng():
    return np.random.default_rng(7)


ACCEPTANCE_LINES: dict[int, str] = {}


def record_criterion(number: int, passed: bool, detail: str) -> None:
    ACCEPTANCE_LINES[number] = f"criterion {number:2d}: {'PASS' if passed else 'FAIL'}  {detail}"
    print(ACCEPTANCE_LINES[number])


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[n])
