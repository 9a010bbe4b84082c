"""Random instances for the verification suites.

Orbitals are complex Gaussian vectors normalised to one, angles are uniform
on ``[0, 2*pi)`` and spin components uniform over the allowed values. Each
trial gets its own generator seeded with ``seed ^ trial`` so results do not
depend on the order in which trials run.
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from .states import ProductState, SingleParticleState, Superposition, allowed_two_m


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    return np.random.default_rng((seed ^ trial) & 0xFFFFFFFFFFFFFFFF)


def random_orbital(rng: np.random.Generator, d: int) -> np.ndarray:
    v = rng.normal(size=d) + 1j * rng.normal(size=d)
    return v / np.linalg.norm(v)


def random_chi(rng: np.random.Generator) -> float:
    return float(rng.uniform(0.0, 2 * math.pi))


def random_slot(rng: np.random.Generator, d: int, two_s: int, two_m: int | None = None) -> SingleParticleState:
    if two_m is None:
        two_m = int(rng.choice(allowed_two_m(two_s)))
    return SingleParticleState(random_orbital(rng, d), two_s, two_m, random_chi(rng))


def random_product(
    rng: np.random.Generator, n: int, d: int, two_s: int, two_ms: Sequence[int] | int | None = None, coeff: complex = 1.0
) -> ProductState:
    """Random product state; ``two_ms`` fixes all spin components (an int) or each one (a sequence)."""
    if isinstance(two_ms, int):
        two_ms = [two_ms] * n
    ms = list(two_ms) if two_ms is not None else [None] * n
    return ProductState(tuple(random_slot(rng, d, two_s, m) for m in ms), coeff)


def random_coeff(rng: np.random.Generator) -> complex:
    return complex(rng.normal(), rng.normal())


def random_superposition(
    rng: np.random.Generator, n_terms: int, n: int, d: int, two_s: int, two_ms: Sequence[int] | int | None = None
) -> Superposition:
    terms = [random_product(rng, n, d, two_s, two_ms, random_coeff(rng)) for _ in range(n_terms)]
    return Superposition(tuple(terms), n, d, two_s)


def random_mixed_ms(rng: np.random.Generator, n: int, two_s: int) -> list[int]:
    """Spin components with at least two different values (needs ``two_s >= 1``)."""
    allowed = allowed_two_m(two_s)
    if len(allowed) < 2 or n < 2:
        raise ValueError("mixed spin components need two_s >= 1 and n >= 2")
    while True:
        ms = [int(m) for m in rng.choice(allowed, size=n)]
        if len(set(ms)) > 1:
            return ms


def resample_chis(rng: np.random.Generator, state: ProductState | Superposition):
    """Same state with every angle redrawn."""
    if isinstance(state, Superposition):
        return Superposition(tuple(resample_chis(rng, t) for t in state.terms), *state.shape())
    return state.with_slots(s.replace(chi=random_chi(rng)) for s in state.slots)
