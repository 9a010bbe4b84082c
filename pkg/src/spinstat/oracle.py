"""Deliberately naive reference computations for checking the main code path.

Nothing here calls into the exchange, permutation or inner-product helpers
of the package; only the stored fields of states are read. States are
expanded into explicit tensor-product vectors, permutations into explicit
matrices, and rotations are tracked in many small steps.

Dense basis ordering is slot-major; within a slot the orbital index runs
slowest and the spin index ``(2m + 2s) / 2`` fastest.
"""

from __future__ import annotations

import cmath
import itertools
import math

import numpy as np

MAX_DENSE_DIM = 4096


class DenseTooLarge(ValueError):
    pass


def dense_dim(n: int, d: int, two_s: int) -> int:
    return (d * (two_s + 1)) ** n


def _check_dim(n: int, d: int, two_s: int, cap: int) -> int:
    dim = dense_dim(n, d, two_s)
    if dim > cap:
        raise DenseTooLarge(f"dense dimension {dim} exceeds cap {cap} (N={n}, D={d}, 2s={two_s})")
    return dim


def slot_vector(orbital, two_s: int, two_m: int, chi: float) -> np.ndarray:
    spin = np.zeros(two_s + 1, dtype=complex)
    spin[(two_m + two_s) // 2] = cmath.exp(1j * (two_m / 2) * chi)
    return np.kron(np.asarray(orbital, dtype=complex), spin)


def densify(state, cap: int = MAX_DENSE_DIM) -> np.ndarray:
    """Expand a product state or superposition into a dense vector."""
    terms = state.terms if hasattr(state, "terms") else (state,)
    if hasattr(state, "terms"):
        n, d, two_s = state.n, state.dim, state.two_s
    else:
        n, d, two_s = len(state.slots), len(state.slots[0].orbital), state.slots[0].two_s
    dim = _check_dim(n, d, two_s, cap)
    out = np.zeros(dim, dtype=complex)
    for term in terms:
        vec = np.array([term.coeff], dtype=complex)
        for s in term.slots:
            vec = np.kron(vec, slot_vector(s.orbital, s.two_s, s.two_m, s.chi))
        out += vec
    return out


def dense_inner(bra: np.ndarray, ket: np.ndarray) -> complex:
    return complex(sum(b.conjugate() * k for b, k in zip(bra, ket)))


def _perm_sign(mapping) -> int:
    inversions = sum(1 for i in range(len(mapping)) for j in range(i + 1, len(mapping)) if mapping[i] > mapping[j])
    return -1 if inversions % 2 else 1


def dense_permutation(mapping, n: int, local: int) -> np.ndarray:
    """Matrix moving the tensor factor in slot ``i`` to slot ``mapping[i]``."""
    dim = local ** n
    mat = np.zeros((dim, dim), dtype=complex)
    for src in itertools.product(range(local), repeat=n):
        dst = [0] * n
        for i in range(n):
            dst[mapping[i]] = src[i]
        r = c = 0
        for k in range(n):
            r = r * local + dst[k]
            c = c * local + src[k]
        mat[r, c] = 1.0
    return mat


def dense_projector(which: str, n: int, d: int, two_s: int, cap: int = MAX_DENSE_DIM, dtype=complex) -> np.ndarray:
    """``(1/N!) sum_p (+-1)^k P_p`` as an explicit matrix.

    Entries are multiples of ``1/N!``, so ``dtype=float`` loses nothing and
    halves the cost of products at the larger sizes.
    """
    if which not in ("S", "A"):
        raise ValueError(f"projector must be 'S' or 'A', got {which!r}")
    dim = _check_dim(n, d, two_s, cap)
    local = d * (two_s + 1)
    out = np.zeros((dim, dim), dtype=dtype)
    cols = np.arange(dim)
    # column index -> per-slot digits, slot 0 most significant
    digits = np.stack(np.unravel_index(cols, (local,) * n))
    perms = list(itertools.permutations(range(n)))
    for mapping in perms:
        sign = 1 if which == "S" else _perm_sign(mapping)
        moved = np.empty_like(digits)
        moved[list(mapping)] = digits
        rows = np.ravel_multi_index(tuple(moved), (local,) * n)
        out[rows, cols] += sign
    out /= len(perms)
    return out


def incremental_rotation(two_m: int, source: float, target: float, sense: str, steps: int, full_turn: bool = False) -> complex:
    """Track ``exp(i m chi)`` along the rotation path in ``steps`` equal increments."""
    if steps < 1:
        raise ValueError("steps must be >= 1")
    tau = 2 * math.pi
    sense = getattr(sense, "value", sense)
    if sense not in ("ccw", "cw"):
        raise ValueError(f"unknown rotation sense {sense!r}")
    direction = 1.0 if sense == "ccw" else -1.0
    if source == target:
        length = tau if full_turn else 0.0
    else:
        length = (direction * (target - source)) % tau
    delta = direction * length / steps
    step = cmath.exp(1j * (two_m / 2) * delta)
    value = 1 + 0j
    for _ in range(steps):
        value *= step
    return value


def replay_exchange(state, steps, sense, rotation_steps: int = 1000):
    """Recompute the permutation factor of a transposition sequence by path tracking.

    Returns the accumulated factor and the final arrangement as a list of
    ``(orbital, two_m, chi)`` tuples.
    """
    contents = [(s.orbital, s.two_m, s.chi) for s in state.slots]
    total = 1 + 0j
    for i, j in steps:
        (oa, ma, ca), (ob, mb, cb) = contents[i], contents[j]
        # slot i receives b's parameters at angle ca and turns to cb;
        # slot j receives a's parameters at angle cb and turns the rest of the way to ca
        r1 = incremental_rotation(mb, ca, cb, sense, rotation_steps)
        r2 = incremental_rotation(ma, cb, ca, sense, rotation_steps, full_turn=ca == cb)
        total /= r1 * r2
        contents[i], contents[j] = (ob, mb, cb), (oa, ma, ca)
    return total, contents


def brute_force_eta_mixed_formula(two_s: int, pairs) -> complex:
    """Product of ``(-1)^(2s) exp(-i (m_a - m_b)(chi_a - chi_b))`` over given swap pairs."""
    value = 1 + 0j
    for (ma, ca), (mb, cb) in pairs:
        value *= (-1) ** two_s * cmath.exp(-1j * ((ma - mb) / 2) * (ca - cb))
    return value
