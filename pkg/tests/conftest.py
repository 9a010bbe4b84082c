import math

import numpy as np
import pytest

from spinstat.states import ProductState, SingleParticleState

PI = math.pi


def basis(k, d=2):
    return np.eye(d)[k]


def slot(orbital, two_m, chi=0.0, two_s=1):
    return SingleParticleState(orbital, two_s, two_m, chi)


def product(*slots, coeff=1.0):
    return ProductState(tuple(slots), coeff)


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


ACCEPTANCE = {}


@pytest.fixture
def acceptance():
    """Record one criterion's outcome for the end-of-run summary."""

    def record(number, title, passed, detail):
        ACCEPTANCE[number] = (title, bool(passed), detail)
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        title, passed, detail = ACCEPTANCE[number]
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  criterion {number}: {title}  ({detail})")
