"""Sense-controlled spin-angle rotations and the exchange factors they produce.

Exchanging two slots swaps their orbitals and spin components directly, but
the spin angles are carried across by continuous rotation about the
quantization axis. All rotations of a computation run in one sense, so the
path, and hence the sign for half-integral ``m``, is fixed. Winding is decided
by comparing the stored angles, never by inspecting a phase.
"""

from __future__ import annotations

import cmath
import enum
from dataclasses import dataclass

from .permutations import Permutation, decompose_canonical, parity
from .states import TWO_PI, IncompatibleStates, ProductState, SingleParticleState, canonical_chi, check_spin


class RotationSense(enum.Enum):
    COUNTERCLOCKWISE = "ccw"
    CLOCKWISE = "cw"

    @classmethod
    def parse(cls, value: str | RotationSense) -> RotationSense:
        if isinstance(value, RotationSense):
            return value
        try:
            return cls(value.lower())
        except ValueError:
            aliases = {"counterclockwise": cls.COUNTERCLOCKWISE, "clockwise": cls.CLOCKWISE}
            if value.lower() in aliases:
                return aliases[value.lower()]
            raise ValueError(f"unknown rotation sense {value!r}; expected 'ccw' or 'cw'") from None

    @property
    def sign(self) -> int:
        """+1 for counterclockwise (increasing angle), -1 for clockwise."""
        return 1 if self is RotationSense.COUNTERCLOCKWISE else -1


CCW = RotationSense.COUNTERCLOCKWISE
CW = RotationSense.CLOCKWISE


@dataclass(frozen=True)
class RotationResult:
    state: SingleParticleState
    factor: complex
    winding: int
    path: float  # unsigned angle traversed, in [0, 2*pi]


def rotate_chi(s: SingleParticleState, target: float, sense: RotationSense, full_turn: bool = False) -> RotationResult:
    """Rotate the spin part of ``s`` to angle ``target`` along ``sense``.

    ``s`` at the target equals ``factor`` times ``s`` at the source. When
    target and source coincide the path is empty, unless ``full_turn`` asks
    for the whole circle.
    """
    sense = RotationSense.parse(sense)
    target = canonical_chi(target)
    source = s.chi
    if target == source:
        winding = 1 if full_turn else 0
        path = TWO_PI if full_turn else 0.0
    else:
        ahead = target > source if sense is CCW else target < source
        winding = 0 if ahead else 1
        path = sense.sign * (target - source) + winding * TWO_PI
    factor = cmath.exp(0.5j * sense.sign * s.two_m * path) if s.two_m else 1 + 0j
    return RotationResult(s.replace(chi=target), factor, winding, path)


def exchange_rotations(state: ProductState, i: int, j: int, sense: RotationSense) -> tuple[RotationResult, RotationResult]:
    """The two rotations that carry the spin angles across in a swap of slots ``i`` and ``j``.

    After the orbitals and m values have been swapped, slot ``i`` holds the
    content of ``j`` at angle ``chi_i`` and is rotated to ``chi_j``; slot ``j``
    is rotated the remaining way round, so the two paths add up to one turn.
    """
    if i == j:
        raise ValueError(f"slots {i} and {j} do not form a transposition")
    n = state.n
    if not (0 <= i < n and 0 <= j < n):
        raise IncompatibleStates(f"slots ({i}, {j}) out of range for a {n}-slot state")
    a, b = state.slots[i], state.slots[j]
    first = rotate_chi(b.replace(chi=a.chi), b.chi, sense)
    second = rotate_chi(a.replace(chi=b.chi), a.chi, sense, full_turn=first.path == 0.0)
    return first, second


def transpose_pair(state: ProductState, i: int, j: int, sense: RotationSense) -> tuple[ProductState, complex]:
    """Exchange slots ``i`` and ``j`` completely.

    Returns the exchanged product and the factor ``F`` such that the exchange
    function built by rotation equals ``F`` times that product.
    """
    first, second = exchange_rotations(state, i, j, sense)
    slots = list(state.slots)
    slots[i], slots[j] = first.state, second.state
    factor = (first.factor * second.factor).conjugate()
    return state.with_slots(slots), factor


def exchange_factor_F(two_s: int) -> int:
    """``(-1)**(2s)``: +1 for integral spin, -1 for half-integral."""
    if two_s < 0:
        raise ValueError(f"total spin must be non-negative, got two_s={two_s}")
    return -1 if two_s % 2 else 1


def exchange_factor_Fchi(two_s: int, two_m_a: int, two_m_b: int, chi_a: float, chi_b: float) -> complex:
    """Closed form of the swap factor for two slots with spin components ``m_a``, ``m_b``."""
    check_spin(two_s, two_m_a)
    check_spin(two_s, two_m_b)
    dm = two_m_a - two_m_b
    if dm == 0:
        return complex(exchange_factor_F(two_s))
    return exchange_factor_F(two_s) * cmath.exp(-0.5j * dm * (chi_a - chi_b))


def split_by_spin(p: Permutation, state: ProductState) -> tuple[Permutation, Permutation]:
    """Factor ``p = supplement * sorting`` for the contents of ``state``.

    ``sorting`` moves every slot to the place where ``p`` puts its m value,
    keeping the relative order of slots with equal m. ``supplement`` then only
    shuffles contents with equal m among themselves.
    """
    if p.n != state.n:
        raise IncompatibleStates(f"permutation of size {p.n} applied to a {state.n}-slot state")
    ms = state.two_ms
    target = p.permute(ms)
    free: dict[int, list[int]] = {}
    for pos, m in enumerate(target):
        free.setdefault(m, []).append(pos)
    sorting = Permutation(tuple(free[m].pop(0) for m in ms))
    supplement = p * sorting.inverse()
    return supplement, sorting


def exchange_steps(p: Permutation, state: ProductState) -> list[tuple[int, int]]:
    """Transposition sequence used for the permutation factor of ``p`` on ``state``.

    The m-sorting part goes first and the equal-m supplement after it, each
    in cycle-walk order. When all m agree, or all differ, this is just the
    cycle walk of ``p``.
    """
    supplement, sorting = split_by_spin(p, state)
    return decompose_canonical(sorting) + decompose_canonical(supplement)


def eta_along(steps, state: ProductState, sense: RotationSense) -> tuple[complex, ProductState]:
    """Accumulate swap factors over ``steps``, each taken on the evolving state."""
    value = 1 + 0j
    for i, j in steps:
        state, factor = transpose_pair(state, i, j, sense)
        value *= factor
    return value, state


def eta(p: Permutation, state: ProductState, sense: RotationSense) -> tuple[complex, ProductState]:
    """Permutation factor of ``p`` on ``state`` and the fully permuted state.

    For equal spin components this is ``(-1)**(2s k)``; in general it is a
    product of swap factors, one per transposition.
    """
    return eta_along(exchange_steps(p, state), state, sense)


def supplement_sign(p: Permutation, state: ProductState) -> int:
    """``(-1)**(2s k)`` for the equal-m supplement of ``p``."""
    supplement, _ = split_by_spin(p, state)
    return exchange_factor_F(state.two_s) ** parity(supplement).k
