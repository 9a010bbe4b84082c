"""Permutation sums over product states.

Two families live here. The rotation-built sums attach the exchange factor of
each permutation to its term; nothing is normalised. The textbook
symmetrizer ``S`` and antisymmetrizer ``A`` are the projectors
``(1/N!) sum_p (+-1)^k P_p`` with whole slot contents permuted and no
rotations.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .exchange import RotationSense, eta, exchange_factor_F
from .permutations import Permutation, apply_full, apply_params_only, check_cap, enumerate_all, parity
from .states import ProductState, Superposition, as_superposition, pair_overlaps


class Kind(enum.Enum):
    BOSE = "bose"
    FERMI = "fermi"
    SPIN_DERIVED = "spin_derived"
    GENERAL_ETA = "general_eta"


@dataclass(frozen=True)
class Statistics:
    kind: Kind
    two_s: int | None = None

    def __post_init__(self):
        if self.kind is Kind.SPIN_DERIVED and self.two_s is None:
            raise ValueError("spin-derived statistics need two_s")

    @classmethod
    def bose(cls) -> Statistics:
        return cls(Kind.BOSE)

    @classmethod
    def fermi(cls) -> Statistics:
        return cls(Kind.FERMI)

    @classmethod
    def from_spin(cls, two_s: int) -> Statistics:
        return cls(Kind.SPIN_DERIVED, two_s)

    @classmethod
    def general(cls) -> Statistics:
        return cls(Kind.GENERAL_ETA)

    def reduce(self) -> Statistics:
        """Resolve spin-derived statistics to Bose or Fermi."""
        if self.kind is Kind.SPIN_DERIVED:
            return Statistics.fermi() if self.two_s % 2 else Statistics.bose()
        return self

    @property
    def projector(self) -> str:
        kind = self.reduce().kind
        if kind is Kind.BOSE:
            return "S"
        if kind is Kind.FERMI:
            return "A"
        raise ValueError("general exchange factors define no projector")


def _check(state: Superposition) -> None:
    check_cap(state.n)


def symmetrize_prime(state: ProductState) -> Superposition:
    """Sum of ``P_p state`` over all ``p`` with the angles left on their slots."""
    check_cap(state.n)
    terms = [apply_params_only(p, state) for p in enumerate_all(state.n)]
    return Superposition(tuple(terms), *state.shape())


def build_superposed(state: ProductState, sense: RotationSense) -> Superposition:
    """Rotation-built permutation sum: term ``p`` is ``eta_p * P_p state``."""
    check_cap(state.n)
    terms = []
    for p in enumerate_all(state.n):
        factor, moved = eta(p, state, sense)
        terms.append(moved.with_coeff(moved.coeff * factor))
    return Superposition(tuple(terms), *state.shape())


def build_superposed_general(state: ProductState | Superposition, sense: RotationSense) -> Superposition:
    state = as_superposition(state)
    _check(state)
    terms: list[ProductState] = []
    for t in state.terms:
        terms.extend(build_superposed(t, sense).terms)
    return Superposition(tuple(terms), *state.shape())


def _projector_signs(which: str, perms: list[Permutation]) -> list[int]:
    if which == "S":
        return [1] * len(perms)
    if which == "A":
        return [parity(p).sign for p in perms]
    raise ValueError(f"projector must be 'S' or 'A', got {which!r}")


def apply_projector(state: ProductState | Superposition, which: str) -> Superposition:
    """``S`` or ``A`` applied termwise, including the ``1/N!`` prefactor."""
    state = as_superposition(state)
    _check(state)
    perms = enumerate_all(state.n)
    signs = _projector_signs(which, perms)
    scale = 1.0 / math.factorial(state.n)
    terms = []
    for t in state.terms:
        for p, sign in zip(perms, signs):
            moved = apply_full(p, t)
            terms.append(moved.with_coeff(moved.coeff * sign * scale))
    return Superposition(tuple(terms), *state.shape())


def extract_overall_phase(state: Superposition) -> tuple[complex, Superposition]:
    """Pull the common ``exp(i m sum(chi))`` out of an equal-m permutation sum.

    The phase is read from the first (identity) term. Every term of the
    reduced superposition has its angles set to zero, with the leftover ratio
    of its own angle phase to the common one moved into its coefficient, so
    ``phase * reduced`` is the input term by term.
    """
    ms = {m for t in state.terms for m in t.two_ms}
    if len(ms) > 1:
        raise ValueError(
            f"overall phase extraction needs a single spin component, found 2m values {sorted(ms)}"
        )
    if not state.terms:
        return 1 + 0j, state
    two_m = ms.pop()

    def angle_phase(t: ProductState) -> complex:
        return np.exp(0.5j * two_m * sum(t.chis)) if two_m else 1 + 0j

    phase = complex(angle_phase(state.terms[0]))
    reduced = []
    for t in state.terms:
        ratio = complex(angle_phase(t)) / phase
        reduced.append(ProductState(tuple(s.replace(chi=0.0) for s in t.slots), t.coeff * ratio))
    return phase, Superposition(tuple(reduced), *state.shape())


def _spanning_set(state: Superposition, others: list[Superposition]) -> Superposition:
    terms = {}
    for sup in [state, *others]:
        for t in sup.terms:
            terms.setdefault(t.key(), t.with_coeff(1.0))
    return Superposition(tuple(terms.values()), *state.shape())


def _is_eigen(state: Superposition, signed: bool, tol: float) -> bool:
    state = as_superposition(state)
    _check(state)
    if not state.terms:
        return True
    perms = enumerate_all(state.n)
    images = []
    for p in perms[1:]:
        sign = parity(p).sign if signed else 1
        moved = Superposition(tuple(apply_full(p, t) for t in state.terms), *state.shape())
        images.append((moved, sign))
    probes = _spanning_set(state, [m for m, _ in images])
    base = pair_overlaps(probes, state).sum(axis=1)
    scale = max(1.0, float(np.max(np.abs(base))))
    for moved, sign in images:
        diff = pair_overlaps(probes, moved).sum(axis=1) - sign * base
        if np.max(np.abs(diff)) > tol * scale:
            return False
    return True


def is_symmetric(state: ProductState | Superposition, tol: float = 1e-10) -> bool:
    """``P state == state`` for every permutation, tested against a spanning set."""
    return _is_eigen(as_superposition(state), signed=False, tol=tol)


def is_antisymmetric(state: ProductState | Superposition, tol: float = 1e-10) -> bool:
    """``P state == (-1)^k state`` for every permutation, tested against a spanning set."""
    return _is_eigen(as_superposition(state), signed=True, tol=tol)


def spin_sign(two_s: int, k: int) -> int:
    """``(-1)**(2 s k)``."""
    return exchange_factor_F(two_s) ** k


def apply_eta_operator(state: ProductState | Superposition, sense: RotationSense) -> Superposition:
    """``(1/N!) sum_p eta_p P_p`` applied termwise.

    This is what the projectors become if their signs are replaced by the
    general exchange factors. For equal spin components it coincides with
    ``S`` or ``A``; for mixed components it is not a projector at all.
    """
    state = as_superposition(state)
    scale = 1.0 / math.factorial(state.n)
    return build_superposed_general(state, sense).scaled(scale)
