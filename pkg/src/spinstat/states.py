"""Spin arithmetic and the finite-dimensional state model.

Half-integers are stored as twice their value so that spin bookkeeping stays
in exact integer arithmetic. A single-particle state is an orbital amplitude
vector over an abstract orthonormal basis together with a spin component
``m`` and an azimuthal spin angle ``chi``; the ``exp(i m chi)`` phase is kept
as a parameter and never folded into the vector.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

TWO_PI = 2.0 * math.pi


class IncompatibleStates(ValueError):
    """Raised when states live in different spaces (N, D or total spin differ)."""


@dataclass(frozen=True, order=True)
class HalfInt:
    """An integer or half-odd-integer, stored as ``twice`` its value."""

    twice: int

    def __post_init__(self):
        if not isinstance(self.twice, (int, np.integer)) or isinstance(self.twice, bool):
            raise TypeError(f"twice must be an integer, got {self.twice!r}")
        object.__setattr__(self, "twice", int(self.twice))

    @classmethod
    def of(cls, value) -> HalfInt:
        """Build from a number such as ``1``, ``0.5`` or ``Fraction(3, 2)``."""
        twice = Fraction(value) * 2
        if twice.denominator != 1:
            raise ValueError(f"{value!r} is not an integer or half-integer")
        return cls(int(twice))

    @property
    def value(self) -> Fraction:
        return Fraction(self.twice, 2)

    @property
    def is_integral(self) -> bool:
        return self.twice % 2 == 0

    def __float__(self) -> float:
        return self.twice / 2

    def __str__(self) -> str:
        return str(self.twice // 2) if self.is_integral else f"{self.twice}/2"


def check_spin(two_s: int, two_m: int) -> None:
    """Validate a (2s, 2m) pair: ``|m| <= s`` and ``m - s`` integral."""
    if two_s < 0:
        raise ValueError(f"total spin must be non-negative, got two_s={two_s}")
    if abs(two_m) > two_s:
        raise ValueError(f"|m| exceeds s: two_m={two_m}, two_s={two_s}")
    if (two_s - two_m) % 2:
        raise ValueError(f"s and m must both be integral or both half-integral: two_s={two_s}, two_m={two_m}")


def allowed_two_m(two_s: int) -> list[int]:
    """All ``2m`` values for spin ``s``, from ``-2s`` up to ``2s``."""
    return list(range(-two_s, two_s + 1, 2))


def canonical_chi(angle: float) -> float:
    """Map an angle to ``[0, 2*pi)``; ``2*pi`` itself is identified with 0."""
    chi = math.fmod(float(angle), TWO_PI)
    if chi < 0.0:
        chi += TWO_PI
    if chi >= TWO_PI:
        chi = 0.0
    return chi


def phase_factor(two_m: int, chi: float) -> complex:
    """The spin-angle phase ``exp(i m chi)`` with ``m = two_m / 2``."""
    if two_m == 0:
        return 1 + 0j
    return cmath.exp(0.5j * two_m * chi)


@dataclass(frozen=True, eq=False)
class SingleParticleState:
    """One-particle state ``exp(i m chi) * orbital ⊗ |s, m>``."""

    orbital: np.ndarray
    two_s: int
    two_m: int
    chi: float = 0.0

    def __post_init__(self):
        orb = np.array(self.orbital, dtype=complex).reshape(-1)
        if orb.size < 1:
            raise ValueError("orbital vector must have dimension >= 1")
        orb.flags.writeable = False
        object.__setattr__(self, "orbital", orb)
        object.__setattr__(self, "two_s", int(self.two_s))
        object.__setattr__(self, "two_m", int(self.two_m))
        check_spin(self.two_s, self.two_m)
        object.__setattr__(self, "chi", canonical_chi(self.chi))

    @property
    def dim(self) -> int:
        return self.orbital.shape[0]

    @property
    def spin(self) -> HalfInt:
        return HalfInt(self.two_s)

    @property
    def m(self) -> HalfInt:
        return HalfInt(self.two_m)

    def replace(self, **changes) -> SingleParticleState:
        fields = {"orbital": self.orbital, "two_s": self.two_s, "two_m": self.two_m, "chi": self.chi}
        fields.update(changes)
        return SingleParticleState(**fields)

    def key(self) -> tuple:
        """Hashable identity of all stored fields (exact, no tolerance)."""
        return (self.orbital.tobytes(), self.two_s, self.two_m, self.chi)

    def __eq__(self, other):
        if not isinstance(other, SingleParticleState):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"SingleParticleState(orbital={self.orbital.tolist()}, two_s={self.two_s}, two_m={self.two_m}, chi={self.chi!r})"


@dataclass(frozen=True, eq=False)
class ProductState:
    """``coeff * slot_0 ⊗ slot_1 ⊗ ... ⊗ slot_{N-1}``."""

    slots: tuple[SingleParticleState, ...]
    coeff: complex = 1 + 0j

    def __post_init__(self):
        slots = tuple(self.slots)
        if not slots:
            raise ValueError("a product state needs at least one slot")
        d, two_s = slots[0].dim, slots[0].two_s
        for s in slots[1:]:
            if s.dim != d:
                raise IncompatibleStates(f"orbital dimensions differ within a product: {d} vs {s.dim}")
            if s.two_s != two_s:
                raise IncompatibleStates(f"total spin differs within a product: {two_s} vs {s.two_s}")
        object.__setattr__(self, "slots", slots)
        object.__setattr__(self, "coeff", complex(self.coeff))

    @property
    def n(self) -> int:
        return len(self.slots)

    @property
    def dim(self) -> int:
        return self.slots[0].dim

    @property
    def two_s(self) -> int:
        return self.slots[0].two_s

    @property
    def two_ms(self) -> tuple[int, ...]:
        return tuple(s.two_m for s in self.slots)

    @property
    def chis(self) -> tuple[float, ...]:
        return tuple(s.chi for s in self.slots)

    def shape(self) -> tuple[int, int, int]:
        return (self.n, self.dim, self.two_s)

    def with_coeff(self, coeff: complex) -> ProductState:
        return ProductState(self.slots, coeff)

    def with_slots(self, slots: Iterable[SingleParticleState]) -> ProductState:
        return ProductState(tuple(slots), self.coeff)

    def key(self) -> tuple:
        return tuple(s.key() for s in self.slots)

    def __eq__(self, other):
        if not isinstance(other, ProductState):
            return NotImplemented
        return self.coeff == other.coeff and self.key() == other.key()

    def __hash__(self):
        return hash((self.coeff, self.key()))

    def __repr__(self):
        return f"ProductState(coeff={self.coeff!r}, slots={list(self.slots)!r})"


@dataclass(frozen=True, eq=False)
class Superposition:
    """Complex-weighted sum of product states sharing (N, D, 2s).

    The weights live in each term's ``coeff``. An empty term list is the zero
    vector; it still carries its shape so it can be combined with others.
    """

    terms: tuple[ProductState, ...]
    n: int
    dim: int
    two_s: int

    def __post_init__(self):
        terms = tuple(self.terms)
        for t in terms:
            if t.shape() != (self.n, self.dim, self.two_s):
                raise IncompatibleStates(
                    f"term shape {t.shape()} does not match superposition shape {(self.n, self.dim, self.two_s)}"
                )
        object.__setattr__(self, "terms", terms)

    @classmethod
    def of(cls, terms: Sequence[ProductState]) -> Superposition:
        terms = tuple(terms)
        if not terms:
            raise ValueError("cannot infer a shape from an empty term list; use Superposition.zero")
        n, dim, two_s = terms[0].shape()
        return cls(terms, n, dim, two_s)

    @classmethod
    def zero(cls, n: int, dim: int, two_s: int) -> Superposition:
        return cls((), n, dim, two_s)

    def shape(self) -> tuple[int, int, int]:
        return (self.n, self.dim, self.two_s)

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def scaled(self, factor: complex) -> Superposition:
        return Superposition(tuple(t.with_coeff(t.coeff * factor) for t in self.terms), *self.shape())

    def __add__(self, other: Superposition) -> Superposition:
        _check_shapes(self.shape(), other.shape())
        return Superposition(self.terms + other.terms, *self.shape())

    def __sub__(self, other: Superposition) -> Superposition:
        return self + other.scaled(-1)

    @cached_property
    def packed(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """Terms as arrays: coeffs (T,), orbitals (T,N,D), two_m (T,N), chi (T,N)."""
        t = len(self.terms)
        coeffs = np.array([x.coeff for x in self.terms], dtype=complex).reshape(t)
        orbs = np.array([[s.orbital for s in x.slots] for x in self.terms], dtype=complex).reshape(t, self.n, self.dim)
        ms = np.array([x.two_ms for x in self.terms], dtype=int).reshape(t, self.n)
        chis = np.array([x.chis for x in self.terms], dtype=float).reshape(t, self.n)
        return coeffs, orbs, ms, chis

    def compact(self) -> Superposition:
        """Merge terms whose slots are identical, dropping exact zeros."""
        merged: dict[tuple, list] = {}
        for t in self.terms:
            k = t.key()
            if k in merged:
                merged[k][1] += t.coeff
            else:
                merged[k] = [t, t.coeff]
        terms = tuple(t.with_coeff(c) for t, c in merged.values() if c != 0)
        return Superposition(terms, *self.shape())


def as_superposition(state: ProductState | Superposition) -> Superposition:
    if isinstance(state, Superposition):
        return state
    return Superposition((state,), *state.shape())


def _check_shapes(a: tuple, b: tuple) -> None:
    if a != b:
        raise IncompatibleStates(f"incompatible state spaces (N, D, 2s): {a} vs {b}")


def single_inner(bra: SingleParticleState, ket: SingleParticleState) -> complex:
    """``<bra|ket>``, conjugate-linear in ``bra``.

    Different spin components are orthogonal whatever the orbitals and
    angles are; otherwise the angle enters only via ``ket.chi - bra.chi``.
    """
    if bra.dim != ket.dim or bra.two_s != ket.two_s:
        raise IncompatibleStates(
            f"incompatible one-particle spaces: (D={bra.dim}, 2s={bra.two_s}) vs (D={ket.dim}, 2s={ket.two_s})"
        )
    if bra.two_m != ket.two_m:
        return 0j
    spin = phase_factor(bra.two_m, bra.chi).conjugate() * phase_factor(ket.two_m, ket.chi)
    return spin * complex(np.vdot(bra.orbital, ket.orbital))


def product_inner(bra: ProductState, ket: ProductState) -> complex:
    _check_shapes(bra.shape(), ket.shape())
    value = bra.coeff.conjugate() * ket.coeff
    for b, k in zip(bra.slots, ket.slots):
        if value == 0:
            break
        value *= single_inner(b, k)
    return value


def pair_overlaps(bra: Superposition, ket: Superposition) -> np.ndarray:
    """Matrix of ``product_inner(bra.terms[i], ket.terms[j])``, vectorised."""
    _check_shapes(bra.shape(), ket.shape())
    if not bra.terms or not ket.terms:
        return np.zeros((len(bra.terms), len(ket.terms)), dtype=complex)
    bc, bo, bm, bchi = bra.packed
    kc, ko, km, kchi = ket.packed
    orb = np.einsum("ind,jnd->ijn", bo.conj(), ko)
    same_m = bm[:, None, :] == km[None, :, :]
    # exp(i m (chi_ket - chi_bra)); only read where the m values agree
    half_m = 0.5 * km[None, :, :]
    spin = np.exp(1j * half_m * (kchi[None, :, :] - bchi[:, None, :]))
    slot = np.where(same_m, orb * spin, 0)
    return bc.conj()[:, None] * kc[None, :] * np.prod(slot, axis=2)


def superposition_inner(bra: ProductState | Superposition, ket: ProductState | Superposition) -> complex:
    """Inner product of two superpositions, summed in fixed term order."""
    bra, ket = as_superposition(bra), as_superposition(ket)
    return complex(pair_overlaps(bra, ket).sum())


def norm(state: ProductState | Superposition) -> float:
    return math.sqrt(max(superposition_inner(state, state).real, 0.0))
