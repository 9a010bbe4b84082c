"""Transition amplitudes, Feynman form against the textbook form.

In the Feynman form only the final (bra) state is summed over permutations,
with the rotation-derived factor on each term and no normalisation. The
standard form projects both sides with ``S`` or ``A`` and rescales by
``sqrt(N!)``.
"""

from __future__ import annotations

import enum
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

from .exchange import RotationSense, eta, split_by_spin
from .permutations import Permutation, enumerate_all, parity
from .states import (
    IncompatibleStates,
    ProductState,
    Superposition,
    as_superposition,
    norm,
    product_inner,
    superposition_inner,
)
from .symmetrization import Kind, Statistics, apply_projector, build_superposed_general, spin_sign

INTERMEDIATE_NORM_TOL = 1e-10


class TermCase(enum.Enum):
    ALL_EQUAL_M = "all_equal_m"
    ALL_DISTINCT_M = "all_distinct_m"
    MIXED = "mixed"
    ZERO = "zero"


def classify(bra_ms: Sequence[int], ket_ms: Sequence[int]) -> TermCase:
    """Case of a bra/ket product pair from their 2m values alone."""
    if Counter(bra_ms) != Counter(ket_ms):
        return TermCase.ZERO
    distinct = len(set(ket_ms))
    if distinct == 1:
        return TermCase.ALL_EQUAL_M
    if distinct == len(ket_ms):
        return TermCase.ALL_DISTINCT_M
    return TermCase.MIXED


@dataclass(frozen=True)
class Member:
    """One surviving permutation in a term's permutation sum."""

    perm: Permutation
    eta: complex
    common: complex  # eta with the equal-m supplement's (-1)^(2s k) removed
    overlap: complex  # <P bra, ket>


@dataclass(frozen=True)
class TermEvaluation:
    value: complex
    case: TermCase
    members: tuple[Member, ...] = ()


@dataclass(frozen=True)
class AmplitudeResult:
    f: complex
    method: str
    cases: tuple[TermCase, ...] = field(default=())

    @property
    def probability(self) -> float:
        return self.f.real ** 2 + self.f.imag ** 2

    def to_json(self) -> dict:
        return {
            "f": [self.f.real, self.f.imag],
            "probability": self.probability,
            "method": self.method,
            "cases": [c.value for c in self.cases],
        }


def _shapes(bra: Superposition, ket: Superposition) -> None:
    if bra.shape() != ket.shape():
        raise IncompatibleStates(f"incompatible state spaces (N, D, 2s): {bra.shape()} vs {ket.shape()}")


def _cases(bra: Superposition, ket: Superposition) -> tuple[TermCase, ...]:
    return tuple(classify(b.two_ms, k.two_ms) for b in bra.terms for k in ket.terms)


def feynman_amplitude(
    bra: ProductState | Superposition, ket: ProductState | Superposition, sense: RotationSense
) -> AmplitudeResult:
    """``f = (sum_p eta_p P_p bra, ket)``: only the bra is summed over permutations."""
    bra, ket = as_superposition(bra), as_superposition(ket)
    _shapes(bra, ket)
    summed = build_superposed_general(bra, sense)
    return AmplitudeResult(superposition_inner(summed, ket), "feynman", _cases(bra, ket))


def standard_amplitude(
    bra: ProductState | Superposition, ket: ProductState | Superposition, stats: Statistics
) -> AmplitudeResult:
    """``f = (sqrt(N!) X bra, sqrt(N!) X ket)`` with ``X`` the S or A projector."""
    bra, ket = as_superposition(bra), as_superposition(ket)
    _shapes(bra, ket)
    if stats.kind is Kind.GENERAL_ETA:
        raise ValueError("general exchange factors break the projector identities; no standard amplitude exists")
    which = stats.projector
    scale = math.factorial(bra.n)
    f = scale * superposition_inner(apply_projector(bra, which), apply_projector(ket, which))
    return AmplitudeResult(f, "standard", _cases(bra, ket))


def t_term(bra: ProductState, ket: ProductState, sense: RotationSense) -> TermEvaluation:
    """Permutation sum ``sum_p eta_p^* (P_p bra, ket)`` for a single pair of products.

    Only permutations that line every bra m value up with the ket m value in
    the same slot survive. They are recorded as members together with their
    factor and the part of it not explained by equal-m swaps.
    """
    if bra.shape() != ket.shape():
        raise IncompatibleStates(f"incompatible state spaces (N, D, 2s): {bra.shape()} vs {ket.shape()}")
    case = classify(bra.two_ms, ket.two_ms)
    if case is TermCase.ZERO:
        return TermEvaluation(0j, case)
    value = 0j
    members = []
    target = list(ket.two_ms)
    for p in enumerate_all(bra.n):
        if p.permute(bra.two_ms) != target:
            continue
        factor, moved = eta(p, bra, sense)
        supplement, _ = split_by_spin(p, bra)
        common = factor * spin_sign(bra.two_s, parity(supplement).k)
        overlap = product_inner(moved, ket)
        value += factor.conjugate() * overlap
        members.append(Member(p, factor, common, overlap))
    return TermEvaluation(value, case, tuple(members))


def chained_amplitude(
    bra: ProductState | Superposition,
    intermediates: Sequence[ProductState | Superposition],
    ket: ProductState | Superposition,
    sense: RotationSense,
    observed: bool = False,
) -> complex | float:
    """Transition through intermediate states.

    Unobserved: ``sum_l (bra_S, l)(l, ket)``, the amplitudes add. Observed:
    ``sum_l |(bra_S, l)|^2 |(l, ket)|^2``, the probabilities add.
    Intermediates must be unit-normalised.
    """
    if not intermediates:
        raise ValueError("chained amplitude needs at least one intermediate state")
    bra, ket = as_superposition(bra), as_superposition(ket)
    _shapes(bra, ket)
    summed = build_superposed_general(bra, sense)
    total: complex | float = 0.0 if observed else 0j
    for inter in intermediates:
        inter = as_superposition(inter)
        _shapes(bra, inter)
        if abs(norm(inter) - 1.0) > INTERMEDIATE_NORM_TOL:
            raise ValueError(f"intermediate states must have unit norm, got {norm(inter)!r}")
        first = superposition_inner(summed, inter)
        second = superposition_inner(inter, ket)
        if observed:
            total += abs(first) ** 2 * abs(second) ** 2
        else:
            total += first * second
    return total
