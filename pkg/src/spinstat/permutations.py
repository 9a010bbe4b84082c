"""Symmetric-group machinery acting on the slots of product states.

A permutation is stored in one-line image notation: ``mapping[i]`` is the slot
that the contents of slot ``i`` move to. Composition follows function
composition, ``(p * q)[i] == p[q[i]]``, so applying ``q`` first and then ``p``
is the same as applying ``p * q``.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from typing import NamedTuple, Sequence, TypeVar

from .states import IncompatibleStates, ProductState

T = TypeVar("T")

DEFAULT_MAX_N = 7


def max_particles() -> int:
    """Enumeration cap, overridable through ``SPINSTAT_MAX_N``."""
    raw = os.environ.get("SPINSTAT_MAX_N")
    if raw is None:
        return DEFAULT_MAX_N
    try:
        cap = int(raw)
    except ValueError:
        raise ValueError(f"SPINSTAT_MAX_N must be an integer, got {raw!r}") from None
    if cap < 1:
        raise ValueError(f"SPINSTAT_MAX_N must be >= 1, got {cap}")
    return cap


class CapExceeded(ValueError):
    """Raised when N! enumeration would exceed the configured cap."""


def check_cap(n: int, cap: int | None = None) -> None:
    cap = max_particles() if cap is None else cap
    if n < 1:
        raise ValueError(f"need at least one particle, got N={n}")
    if n > cap:
        raise CapExceeded(f"N={n} exceeds the enumeration cap of {cap} (set SPINSTAT_MAX_N to raise it)")


@dataclass(frozen=True)
class Permutation:
    mapping: tuple[int, ...]

    def __post_init__(self):
        mapping = tuple(int(i) for i in self.mapping)
        if sorted(mapping) != list(range(len(mapping))):
            raise ValueError(f"{list(mapping)} is not a permutation of 0..{len(mapping) - 1}")
        object.__setattr__(self, "mapping", mapping)

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(n)))

    @classmethod
    def transposition(cls, n: int, i: int, j: int) -> Permutation:
        if i == j:
            raise ValueError("a transposition needs two distinct slots")
        mapping = list(range(n))
        mapping[i], mapping[j] = j, i
        return cls(tuple(mapping))

    @property
    def n(self) -> int:
        return len(self.mapping)

    def __len__(self):
        return len(self.mapping)

    def __getitem__(self, i: int) -> int:
        return self.mapping[i]

    def __mul__(self, other: Permutation) -> Permutation:
        if self.n != other.n:
            raise ValueError(f"cannot compose permutations of sizes {self.n} and {other.n}")
        return Permutation(tuple(self.mapping[j] for j in other.mapping))

    def inverse(self) -> Permutation:
        inv = [0] * self.n
        for i, j in enumerate(self.mapping):
            inv[j] = i
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.mapping))

    def cycles(self) -> list[tuple[int, ...]]:
        """Cycles ordered by their smallest element, each starting at it; fixed points included."""
        seen = [False] * self.n
        out = []
        for start in range(self.n):
            if seen[start]:
                continue
            cycle = []
            i = start
            while not seen[i]:
                seen[i] = True
                cycle.append(i)
                i = self.mapping[i]
            out.append(tuple(cycle))
        return out

    def permute(self, items: Sequence[T]) -> list[T]:
        """Move ``items[i]`` to position ``mapping[i]``."""
        if len(items) != self.n:
            raise IncompatibleStates(f"permutation of size {self.n} applied to {len(items)} items")
        out: list = [None] * self.n
        for i, item in enumerate(items):
            out[self.mapping[i]] = item
        return out

    def __str__(self):
        return "[" + " ".join(map(str, self.mapping)) + "]"


class Parity(NamedTuple):
    sign: int
    k: int

    @property
    def is_even(self) -> bool:
        return self.sign == 1


def parity(p: Permutation) -> Parity:
    """Sign and minimal transposition count ``k = N - #cycles``."""
    k = p.n - len(p.cycles())
    return Parity(-1 if k % 2 else 1, k)


def enumerate_all(n: int, cap: int | None = None) -> list[Permutation]:
    """All ``n!`` permutations in lexicographic order, identity first."""
    check_cap(n, cap)
    return [Permutation(m) for m in itertools.permutations(range(n))]


def decompose_canonical(p: Permutation) -> list[tuple[int, int]]:
    """Transpositions that, applied left to right to slot contents, realise ``p``.

    Cycle walk: for each cycle ``(c0 c1 ... ck)`` taken in increasing order of
    ``c0 = min``, emit ``(c0, c1), (c0, c2), ..., (c0, ck)``.
    """
    steps = []
    for cycle in p.cycles():
        head = cycle[0]
        steps.extend((head, c) for c in cycle[1:])
    return steps


def recompose(n: int, steps: Sequence[tuple[int, int]]) -> Permutation:
    """Inverse of :func:`decompose_canonical`: the product of ``steps`` applied in order."""
    p = Permutation.identity(n)
    for i, j in steps:
        p = Permutation.transposition(n, i, j) * p
    return p


def _check_n(p: Permutation, state: ProductState) -> None:
    if p.n != state.n:
        raise IncompatibleStates(f"permutation of size {p.n} applied to a {state.n}-slot state")


def apply_full(p: Permutation, state: ProductState) -> ProductState:
    """Redistribute whole slot contents (orbital, m and chi) according to ``p``."""
    _check_n(p, state)
    return state.with_slots(p.permute(state.slots))


def apply_params_only(p: Permutation, state: ProductState) -> ProductState:
    """Redistribute orbitals and m values but leave each chi attached to its slot."""
    _check_n(p, state)
    moved = p.permute(state.slots)
    return state.with_slots(m.replace(chi=fixed.chi) for m, fixed in zip(moved, state.slots))
