import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spinstat import oracle
from spinstat.exchange import (
    CCW,
    CW,
    RotationSense,
    eta,
    eta_along,
    exchange_factor_F,
    exchange_factor_Fchi,
    exchange_rotations,
    exchange_steps,
    rotate_chi,
    split_by_spin,
    transpose_pair,
)
from spinstat.permutations import Permutation, apply_full, decompose_canonical, enumerate_all, parity, recompose
from spinstat.sampling import random_mixed_ms, random_product
from spinstat.states import TWO_PI, allowed_two_m, phase_factor

from conftest import PI, basis, product, slot

angles = st.floats(0, 2 * math.pi, exclude_max=True)


def test_sense_parsing():
    assert RotationSense.parse("ccw") is CCW
    assert RotationSense.parse("clockwise") is CW
    with pytest.raises(ValueError):
        RotationSense.parse("sideways")


def test_rotate_chi_examples():
    half = slot(basis(0), 1, 0.0)
    r = rotate_chi(half, PI, CCW)
    assert abs(r.factor - 1j) < 1e-15 and r.winding == 0 and r.state.chi == PI
    assert abs(r.factor - oracle.incremental_rotation(1, 0.0, PI, "ccw", 1000)) < 1e-9

    for two_m in (-3, -1, 1, 3):
        s = slot(basis(0), two_m, 1.3, two_s=3)
        r = rotate_chi(s, 1.3, CCW)
        assert r.factor == 1 and r.winding == 0 and r.path == 0

    seam = rotate_chi(slot(basis(0), 1, 3 * PI / 2), PI / 2, CCW)
    assert seam.winding == 1
    assert abs(seam.path - PI) < 1e-15
    assert abs(seam.factor - 1j) < 1e-15
    ratio = phase_factor(1, PI / 2) / phase_factor(1, 3 * PI / 2)
    assert abs(seam.factor + ratio) < 1e-15
    assert abs(seam.factor - oracle.incremental_rotation(1, 3 * PI / 2, PI / 2, "ccw", 1000)) < 1e-9


def test_rotate_chi_clockwise():
    r = rotate_chi(slot(basis(0), 1, 0.5), 1.5, CW)
    assert r.winding == 1
    assert abs(r.path - (TWO_PI - 1.0)) < 1e-15
    assert abs(r.factor - cmath.exp(-0.5j * (TWO_PI - 1.0))) < 1e-15


@given(st.sampled_from([-4, -3, -2, -1, 0, 1, 2, 3, 4]), angles, angles, st.sampled_from([CCW, CW]))
def test_rotation_factor_law(two_m, source, target, sense):
    two_s = 4 if two_m % 2 == 0 else 3
    r = rotate_chi(slot(basis(0), two_m, source, two_s=two_s), target, sense)
    ratio = phase_factor(two_m, r.state.chi) / phase_factor(two_m, source)
    seam_sign = (-1) ** (two_m * r.winding)
    assert abs(r.factor - ratio * seam_sign) < 1e-12
    assert abs(abs(r.factor) - 1) < 1e-15


def test_rotate_matches_incremental_oracle(rng):
    for _ in range(100):
        two_m = int(rng.choice(allowed_two_m(3)))
        source, target = rng.uniform(0, TWO_PI, size=2)
        sense = CCW if rng.random() < 0.5 else CW
        r = rotate_chi(slot(basis(0), two_m, source, two_s=3), target, sense)
        assert abs(r.factor - oracle.incremental_rotation(two_m, source, target, sense.value, 1000)) < 1e-9


@pytest.mark.parametrize("sense", [CCW, CW])
def test_transpose_pair_half_integral_gives_minus_one(sense):
    for chi_a, chi_b in [(0.2, 1.7), (1.7, 0.2), (3.0, 3.0), (0.0, 6.2)]:
        x = product(slot(basis(0), 1, chi_a), slot(basis(1), 1, chi_b))
        swapped, factor = transpose_pair(x, 0, 1, sense)
        assert abs(factor + 1) < 1e-12 and factor.real < 0
        assert swapped == apply_full(Permutation((1, 0)), x)


def test_transpose_pair_integral_gives_plus_one():
    x = product(slot(basis(0), 2, 0.4, two_s=2), slot(basis(1), 2, 5.0, two_s=2))
    for sense in (CCW, CW):
        assert abs(transpose_pair(x, 0, 1, sense)[1] - 1) < 1e-12


def test_transpose_pair_mixed_example():
    x = product(slot(basis(0), 1, 0.7), slot(basis(1), -1, 2.1))
    expected = -cmath.exp(1.4j)
    _, factor = transpose_pair(x, 0, 1, CCW)
    assert abs(factor - expected) < 1e-12
    closed = exchange_factor_Fchi(1, 1, -1, 0.7, 2.1)
    assert abs(closed - expected) < 1e-12
    first, second = exchange_rotations(x, 0, 1, CCW)
    assert abs((first.factor * second.factor).conjugate() - expected) < 1e-12


def test_transpose_pair_rejects_same_slot():
    x = product(slot(basis(0), 1), slot(basis(1), 1))
    with pytest.raises(ValueError):
        transpose_pair(x, 1, 1, CCW)


def test_exchange_factor_F():
    assert exchange_factor_F(0) == 1
    assert exchange_factor_F(1) == -1
    assert exchange_factor_F(4) == 1
    assert exchange_factor_F(3) == -1


def test_exchange_factor_Fchi_examples():
    for two_s in range(5):
        for m in allowed_two_m(two_s):
            assert exchange_factor_Fchi(two_s, m, m, 0.3, 4.0) == exchange_factor_F(two_s)
    assert abs(exchange_factor_Fchi(1, 1, -1, 0.9, 0.9) + 1) < 1e-15
    assert abs(exchange_factor_Fchi(1, 1, -1, 1.0, 0.0) + cmath.exp(-1j)) < 1e-15
    with pytest.raises(ValueError):
        exchange_factor_Fchi(1, 3, 1, 0.0, 0.0)


def test_Fchi_closed_form_matches_rotations(rng):
    for _ in range(200):
        two_s = int(rng.integers(1, 5))
        ms = random_mixed_ms(rng, 2, two_s)
        x = random_product(rng, 2, 2, two_s, ms)
        a, b = x.slots
        closed = exchange_factor_Fchi(two_s, a.two_m, b.two_m, a.chi, b.chi)
        for sense in (CCW, CW):
            assert abs(transpose_pair(x, 0, 1, sense)[1] - closed) < 1e-12


@given(st.integers(0, 4), angles, angles, st.sampled_from([CCW, CW]), st.data())
@settings(max_examples=200)
def test_equal_m_factor_is_chi_and_sense_independent(two_s, chi_a, chi_b, sense, data):
    two_m = data.draw(st.sampled_from(allowed_two_m(two_s)))
    x = product(slot(basis(0), two_m, chi_a, two_s), slot(basis(1), two_m, chi_b, two_s))
    first, second = exchange_rotations(x, 0, 1, sense)
    assert abs(first.path + second.path - TWO_PI) < 1e-12
    _, factor = transpose_pair(x, 0, 1, sense)
    assert abs(factor - exchange_factor_F(two_s)) < 1e-12


def test_path_sum_for_mixed_pairs(rng):
    for _ in range(100):
        x = random_product(rng, 2, 2, 3)
        for sense in (CCW, CW):
            first, second = exchange_rotations(x, 0, 1, sense)
            assert abs(first.path + second.path - TWO_PI) < 1e-12
            assert first.winding + second.winding == 1


def test_double_exchange(rng):
    for two_s in range(5):
        for two_m in allowed_two_m(two_s):
            x = random_product(rng, 2, 2, two_s, two_m)
            once, f1 = transpose_pair(x, 0, 1, CCW)
            back, f2 = transpose_pair(once, 0, 1, CCW)
            assert back == x
            assert abs(f1 * f2 - 1) < 1e-12


def test_double_exchange_mixed_m_is_not_trivial():
    x = product(slot(basis(0), 1, 0.4), slot(basis(1), -1, 2.0))
    once, f1 = transpose_pair(x, 0, 1, CCW)
    _, f2 = transpose_pair(once, 0, 1, CCW)
    assert abs(f1 * f2 - cmath.exp(-2j * (0.4 - 2.0))) < 1e-12


def test_eta_identity_and_equal_m(rng):
    x = random_product(rng, 3, 2, 1, [1, -1, 1])
    value, moved = eta(Permutation.identity(3), x, CCW)
    assert value == 1 and moved == x
    for two_s in range(5):
        for two_m in allowed_two_m(two_s):
            x = random_product(rng, 3, 2, two_s, two_m)
            for p in enumerate_all(3):
                value, moved = eta(p, x, CCW)
                assert abs(value - exchange_factor_F(two_s) ** parity(p).k) < 1e-12
                assert moved == apply_full(p, x)


def test_eta_mixed_against_path_tracking_oracle():
    x = product(slot(basis(0), 1, 0.4), slot(basis(1), 1, 2.5), slot(basis(0), -1, 5.1))
    p = Permutation((1, 2, 0))
    steps = exchange_steps(p, x)
    assert recompose(3, steps) == p
    value, moved = eta(p, x, CCW)
    tracked, contents = oracle.replay_exchange(x, steps, "ccw", rotation_steps=1000)
    assert abs(value - tracked) < 1e-9
    assert [(c[1], c[2]) for c in contents] == [(s.two_m, s.chi) for s in moved.slots]
    assert moved == apply_full(p, x)


def test_eta_random_against_oracle(rng):
    for _ in range(40):
        n = int(rng.integers(2, 5))
        two_s = int(rng.integers(0, 5))
        x = random_product(rng, n, 2, two_s)
        p = enumerate_all(n)[int(rng.integers(math.factorial(n)))]
        sense = CCW if rng.random() < 0.5 else CW
        value, moved = eta(p, x, sense)
        tracked, _ = oracle.replay_exchange(x, exchange_steps(p, x), sense.value, rotation_steps=1000)
        assert abs(value - tracked) < 1e-9
        assert abs(abs(value) - 1) < 1e-12
        assert moved == apply_full(p, x)


def test_split_by_spin(rng):
    for _ in range(50):
        n = int(rng.integers(2, 6))
        x = random_product(rng, n, 1, 3)
        for p in enumerate_all(n)[:: max(1, math.factorial(n) // 17)]:
            supplement, sorting = split_by_spin(p, x)
            assert supplement * sorting == p
            after_sort = sorting.permute(x.two_ms)
            assert after_sort == p.permute(x.two_ms)
            assert supplement.permute(after_sort) == after_sort
            # order of equal-m contents preserved by the sorting part
            for m in set(x.two_ms):
                src = [i for i, v in enumerate(x.two_ms) if v == m]
                assert [sorting[i] for i in src] == sorted(sorting[i] for i in src)


def test_steps_reduce_to_cycle_walk_for_uniform_or_distinct_m(rng):
    equal = random_product(rng, 4, 2, 1, 1)
    distinct = random_product(rng, 4, 2, 3, [-3, -1, 1, 3])
    for p in enumerate_all(4):
        assert exchange_steps(p, equal) == decompose_canonical(p)
        assert exchange_steps(p, distinct) == decompose_canonical(p)


def test_cycle_walk_eta_is_decomposition_dependent_for_mixed_m():
    # same permutation, two transposition sequences, different factors
    x = product(slot(basis(0), 1, 0.3), slot(basis(1), 1, 1.9), slot(basis(0), -1, 4.0))
    p = Permutation((2, 1, 0))
    assert decompose_canonical(p) == [(0, 2)]
    assert exchange_steps(p, x) == [(0, 1), (0, 2), (1, 2)]
    walk, _ = eta_along(decompose_canonical(p), x, CCW)
    sorted_first, _ = eta(p, x, CCW)
    assert abs(walk - sorted_first) > 1e-3
    assert abs(abs(walk) - 1) < 1e-12
