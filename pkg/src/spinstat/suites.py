"""Named verification suites and the report they produce.

Every suite is a deterministic function of its :class:`SuiteConfig`. Each
trial draws from its own generator, so reports are reproducible byte for
byte.
"""

from __future__ import annotations

import math
import platform
from dataclasses import dataclass
from datetime import datetime, timezone
from typing import Callable

import numpy as np

from . import __version__, oracle
from .amplitudes import TermCase, chained_amplitude, classify, feynman_amplitude, standard_amplitude, t_term
from .exchange import CCW, CW, RotationSense, exchange_factor_F, exchange_factor_Fchi, transpose_pair
from .fixtures import complex_pair
from .permutations import check_cap
from .sampling import random_chi, random_mixed_ms, random_product, random_superposition, resample_chis, trial_rng
from .states import ProductState, SingleParticleState, Superposition, allowed_two_m, norm, superposition_inner
from .symmetrization import Statistics, apply_eta_operator, build_superposed, is_antisymmetric, is_symmetric

EXACT_TOL = 1e-12
AMPLITUDE_TOL = 1e-10
BREAKDOWN_THRESHOLD = 1e-6


@dataclass(frozen=True)
class SuiteConfig:
    suite: str
    n_particles: int = 2
    two_s: int = 1
    orbital_dim: int = 2
    trials: int = 20
    seed: int = 0
    tolerance: float | None = None
    sense: RotationSense = CCW
    out_path: str | None = None

    def __post_init__(self):
        if self.suite not in SUITES and self.suite != "all":
            raise ValueError(f"unknown suite {self.suite!r}; choose from {', '.join([*SUITES, 'all'])}")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.tolerance is not None and not self.tolerance > 0:
            raise ValueError("tolerance must be positive")
        if self.two_s < 0:
            raise ValueError("two_s must be >= 0")
        if self.orbital_dim < 1:
            raise ValueError("orbital_dim must be >= 1")
        check_cap(self.n_particles)

    def tol(self, default: float) -> float:
        return default if self.tolerance is None else self.tolerance

    def echo(self) -> dict:
        return {
            "suite": self.suite,
            "n_particles": self.n_particles,
            "two_s": self.two_s,
            "orbital_dim": self.orbital_dim,
            "trials": self.trials,
            "seed": self.seed,
            "tolerance": self.tolerance,
            "sense": self.sense.value,
        }


def _jsonable(value):
    if isinstance(value, complex):
        return complex_pair(value)
    if isinstance(value, (np.floating, np.integer)):
        return value.item()
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    return value


def case(name: str, params: dict, expected, actual, passed: bool) -> dict:
    return {
        "name": name,
        "params": _jsonable(params),
        "expected": _jsonable(expected),
        "actual": _jsonable(actual),
        "pass": bool(passed),
    }


def _flip(sense: RotationSense) -> RotationSense:
    return CW if sense is CCW else CCW


def suite_projectors(cfg: SuiteConfig) -> list[dict]:
    tol = cfg.tol(EXACT_TOL)
    n, d, two_s = cfg.n_particles, cfg.orbital_dim, cfg.two_s
    params = {"n": n, "d": d, "two_s": two_s}
    out = []
    for which in ("S", "A"):
        mat = oracle.dense_projector(which, n, d, two_s)
        idem = float(np.max(np.abs(mat @ mat - mat)))
        herm = float(np.max(np.abs(mat.conj().T - mat)))
        out.append(case(f"{which}^2 = {which}", params, f"< {tol}", idem, idem < tol))
        out.append(case(f"{which}^dagger = {which}", params, f"< {tol}", herm, herm < tol))
    return out


def suite_exchange_factor(cfg: SuiteConfig) -> list[dict]:
    """Swap factor of two equal-m slots against ``(-1)^(2s)``."""
    tol = cfg.tol(EXACT_TOL)
    n, d, two_s = max(cfg.n_particles, 2), cfg.orbital_dim, cfg.two_s
    expected = exchange_factor_F(two_s)
    out = []
    for trial in range(cfg.trials):
        rng = trial_rng(cfg.seed, trial)
        two_m = int(rng.choice(allowed_two_m(two_s)))
        state = random_product(rng, n, d, two_s, two_m)
        chi_a, chi_b = state.slots[0].chi, state.slots[1].chi
        if trial % 3 == 0:
            chi_b = chi_a
        elif trial % 3 == 1:
            chi_a, chi_b = max(chi_a, chi_b), min(chi_a, chi_b)
        state = state.with_slots([state.slots[0].replace(chi=chi_a), state.slots[1].replace(chi=chi_b), *state.slots[2:]])
        _, factor = transpose_pair(state, 0, 1, cfg.sense)
        err = abs(factor - expected)
        sign_ok = (factor.real > 0) == (expected > 0)
        out.append(
            case(
                f"trial {trial}",
                {"two_m": two_m, "chi_a": chi_a, "chi_b": chi_b, "sense": cfg.sense.value},
                expected,
                factor,
                sign_ok and err < tol,
            )
        )
    return out


def suite_sense_invariance(cfg: SuiteConfig) -> list[dict]:
    """Both senses give the same swap factor, for equal and for mixed m."""
    tol = cfg.tol(EXACT_TOL)
    n, d, two_s = max(cfg.n_particles, 2), cfg.orbital_dim, cfg.two_s
    out = []
    for trial in range(cfg.trials):
        rng = trial_rng(cfg.seed, trial)
        ms = [int(m) for m in rng.choice(allowed_two_m(two_s), size=2)]
        state = random_product(rng, n, d, two_s, ms + [ms[0]] * (n - 2))
        _, f_ccw = transpose_pair(state, 0, 1, CCW)
        _, f_cw = transpose_pair(state, 0, 1, CW)
        a, b = state.slots[0], state.slots[1]
        closed = exchange_factor_Fchi(two_s, a.two_m, b.two_m, a.chi, b.chi)
        err = max(abs(f_ccw - f_cw), abs(f_ccw - closed))
        out.append(case(f"trial {trial}", {"two_m": ms, "chi": [a.chi, b.chi]}, closed, [f_ccw, f_cw], err < tol))
    return out


def suite_equivalence(cfg: SuiteConfig) -> list[dict]:
    """Feynman amplitude against the projector form for equal-m states."""
    tol = cfg.tol(AMPLITUDE_TOL)
    n, d, two_s = cfg.n_particles, cfg.orbital_dim, cfg.two_s
    stats = Statistics.from_spin(two_s)
    out = []
    for trial in range(cfg.trials):
        rng = trial_rng(cfg.seed, trial)
        two_m = int(rng.choice(allowed_two_m(two_s)))
        bra = random_superposition(rng, 2, n, d, two_s, two_m)
        ket = random_superposition(rng, 2, n, d, two_s, two_m)
        f_feyn = feynman_amplitude(bra, ket, cfg.sense).f
        f_std = standard_amplitude(bra, ket, stats).f
        err = abs(f_feyn - f_std)
        out.append(case(f"trial {trial}", {"two_m": two_m}, f_std, f_feyn, err < tol))
    return out


def _matched_pair(rng, n: int, d: int, two_s: int, mixed: bool) -> tuple[ProductState, ProductState]:
    """Bra and ket products whose m values are permutations of each other."""
    if mixed and two_s >= 1 and n >= 2:
        ms = random_mixed_ms(rng, n, two_s)
    else:
        ms = [int(rng.choice(allowed_two_m(two_s)))] * n
    bra = random_product(rng, n, d, two_s, ms)
    ket = random_product(rng, n, d, two_s, [int(m) for m in rng.permutation(ms)])
    return bra, ket


def suite_chi_independence(cfg: SuiteConfig) -> list[dict]:
    """``|f|^2`` survives redrawing every angle and reversing the rotation sense."""
    tol = cfg.tol(AMPLITUDE_TOL)
    n, d, two_s = cfg.n_particles, cfg.orbital_dim, cfg.two_s
    out = []
    for trial in range(cfg.trials):
        rng = trial_rng(cfg.seed, trial)
        bra, ket = _matched_pair(rng, n, d, two_s, mixed=True)
        p0 = feynman_amplitude(bra, ket, cfg.sense).probability
        p1 = feynman_amplitude(resample_chis(rng, bra), resample_chis(rng, ket), cfg.sense).probability
        p2 = feynman_amplitude(bra, ket, _flip(cfg.sense)).probability
        err = max(abs(p1 - p0), abs(p2 - p0))
        out.append(case(f"trial {trial}", {"bra_two_m": bra.two_ms, "ket_two_m": ket.two_ms}, p0, [p1, p2], err < tol))
    return out


def suite_exclusion(cfg: SuiteConfig) -> list[dict]:
    """Symmetry type of the rotation-built sum, and Pauli exclusion for half-integral spin."""
    tol = cfg.tol(AMPLITUDE_TOL)
    n, d, two_s = max(cfg.n_particles, 2), cfg.orbital_dim, cfg.two_s
    fermi = two_s % 2 == 1
    out = []
    for trial in range(cfg.trials):
        rng = trial_rng(cfg.seed, trial)
        two_m = int(rng.choice(allowed_two_m(two_s)))
        state = random_product(rng, n, d, two_s, two_m)
        summed = build_superposed(state, cfg.sense)
        sym, anti = is_symmetric(summed, tol), is_antisymmetric(summed, tol)
        ok = anti if fermi else sym
        out.append(
            case(f"trial {trial} symmetry", {"two_m": two_m}, "antisymmetric" if fermi else "symmetric",
                 {"symmetric": sym, "antisymmetric": anti}, ok)
        )
        dup = state.with_slots([state.slots[0], state.slots[0], *state.slots[2:]])
        dup_norm = norm(build_superposed(dup, cfg.sense).compact())
        if fermi:
            out.append(case(f"trial {trial} duplicate slots", {"two_m": two_m}, f"< {EXACT_TOL}", dup_norm, dup_norm < EXACT_TOL))
        else:
            out.append(case(f"trial {trial} duplicate slots", {"two_m": two_m}, "> 0", dup_norm, dup_norm > EXACT_TOL))
    return out


def suite_case_analysis(cfg: SuiteConfig) -> list[dict]:
    """Zero / all-equal / all-distinct / mixed classification and what each implies."""
    n, d, two_s = max(cfg.n_particles, 2), cfg.orbital_dim, cfg.two_s
    tol_amp, tol_exact = cfg.tol(AMPLITUDE_TOL), cfg.tol(EXACT_TOL)
    out = []
    for trial in range(cfg.trials):
        rng = trial_rng(cfg.seed, trial)
        allowed = allowed_two_m(two_s)
        bra_ms = [int(m) for m in rng.choice(allowed, size=n)]
        if trial % 2 and len(allowed) > 1:
            ket_ms = list(bra_ms)
            k = int(rng.integers(n))
            ket_ms[k] = int(rng.choice([m for m in allowed if m != bra_ms[k]]))
        else:
            ket_ms = [int(m) for m in rng.permutation(bra_ms)]
        bra = random_product(rng, n, d, two_s, bra_ms)
        ket = random_product(rng, n, d, two_s, ket_ms)
        res = t_term(bra, ket, cfg.sense)
        params = {"bra_two_m": bra_ms, "ket_two_m": ket_ms}
        expected_case = classify(bra_ms, ket_ms)
        if res.case is not expected_case:
            out.append(case(f"trial {trial}", params, expected_case.value, res.case.value, False))
            continue
        if res.case is TermCase.ZERO:
            out.append(case(f"trial {trial} zero", params, 0j, res.value, res.value == 0 and not res.members))
        elif res.case is TermCase.ALL_DISTINCT_M:
            overlap = res.members[0].overlap if res.members else 0j
            prob = abs(res.value) ** 2
            ok = len(res.members) == 1 and abs(prob - abs(overlap) ** 2) < tol_amp
            out.append(case(f"trial {trial} all distinct", params, abs(overlap) ** 2, prob, ok))
        else:
            commons = [mem.common for mem in res.members]
            spread = max(abs(c - commons[0]) for c in commons)
            out.append(case(f"trial {trial} {res.case.value}", params, commons[0], spread, spread < tol_exact))
    return out


def eta_idempotence_defect(state: ProductState, sense: RotationSense) -> float:
    """Max-abs entry of ``densify(E(E x)) - densify(E x)`` for the eta-weighted operator ``E``."""
    once = apply_eta_operator(state, sense)
    twice = apply_eta_operator(once, sense)
    return float(np.max(np.abs(oracle.densify(twice) - oracle.densify(once))))


def suite_breakdown(cfg: SuiteConfig) -> list[dict]:
    """The eta-weighted operator is no projector for mixed m, yet ``|f|^2`` stays angle-free.

    Every trial must keep ``|f|^2`` invariant; for ``2s >= 1`` at least one
    trial must show an idempotence defect above the threshold (some draws
    give a zero image, e.g. more equal-m fermions than orbitals). For
    ``2s = 0`` the operator is the symmetrizer and must stay idempotent.
    """
    tol = cfg.tol(AMPLITUDE_TOL)
    n, d, two_s = max(cfg.n_particles, 2), cfg.orbital_dim, cfg.two_s
    mixed = two_s >= 1
    out = []
    worst = 0.0
    for trial in range(cfg.trials):
        rng = trial_rng(cfg.seed, trial)
        bra, ket = _matched_pair(rng, n, d, two_s, mixed=mixed)
        defect = eta_idempotence_defect(bra, cfg.sense)
        worst = max(worst, defect)
        p0 = feynman_amplitude(bra, ket, cfg.sense).probability
        p1 = feynman_amplitude(resample_chis(rng, bra), resample_chis(rng, ket), _flip(cfg.sense)).probability
        ok = abs(p1 - p0) < tol and (mixed or defect < EXACT_TOL)
        out.append(case(f"trial {trial}", {"two_m": bra.two_ms, "idempotence_defect": defect}, p0, p1, ok))
    if mixed:
        out.append(case("breakdown found", {}, f"> {BREAKDOWN_THRESHOLD}", worst, worst > BREAKDOWN_THRESHOLD))
    else:
        out.append(case("projector (no breakdown for integral spin)", {}, f"< {EXACT_TOL}", worst, worst < EXACT_TOL))
    return out


def _basis_products(n: int, d: int, two_s: int) -> list[ProductState]:
    singles = [SingleParticleState(np.eye(d)[o], two_s, m) for o in range(d) for m in allowed_two_m(two_s)]
    out = [()]
    for _ in range(n):
        out = [prev + (s,) for prev in out for s in singles]
    return [ProductState(slots) for slots in out]


def suite_chained(cfg: SuiteConfig) -> list[dict]:
    """Completeness of intermediates and the observed/unobserved difference."""
    tol = cfg.tol(AMPLITUDE_TOL)
    n, d, two_s = cfg.n_particles, cfg.orbital_dim, cfg.two_s
    basis = _basis_products(n, d, two_s) if oracle.dense_dim(n, d, two_s) <= 256 else None
    out = []
    for trial in range(cfg.trials):
        rng = trial_rng(cfg.seed, trial)
        bra, ket = _matched_pair(rng, n, d, two_s, mixed=True)
        direct = feynman_amplitude(bra, ket, cfg.sense).f
        if basis is not None:
            via = chained_amplitude(bra, basis, ket, cfg.sense)
            out.append(case(f"trial {trial} completeness", {"intermediates": len(basis)}, direct, via, abs(via - direct) < tol))
        l1, l2 = _orthogonal_pair(rng, n, d, two_s)
        amp = chained_amplitude(bra, [l1, l2], ket, cfg.sense)
        prob = chained_amplitude(bra, [l1, l2], ket, cfg.sense, observed=True)
        summed = build_superposed(bra, cfg.sense)
        a1 = superposition_inner(summed, l1) * superposition_inner(l1, ket)
        a2 = superposition_inner(summed, l2) * superposition_inner(l2, ket)
        cross = 2 * (a1 * a2.conjugate()).real
        err = abs(abs(amp) ** 2 - prob - cross)
        out.append(case(f"trial {trial} interference", {}, cross, abs(amp) ** 2 - prob, err < tol))
    return out


def _orthogonal_pair(rng, n: int, d: int, two_s: int) -> tuple[Superposition, Superposition]:
    first = random_product(rng, n, d, two_s)
    slots = list(first.slots)
    if two_s >= 1:
        other = [m for m in allowed_two_m(two_s) if m != slots[0].two_m][0]
        slots[0] = slots[0].replace(two_m=other, chi=random_chi(rng))
    else:
        v = rng.normal(size=d) + 1j * rng.normal(size=d)
        u = slots[0].orbital
        v = v - np.vdot(u, v) * u
        slots[0] = slots[0].replace(orbital=v / np.linalg.norm(v))
    second = first.with_slots(slots)
    return Superposition((first,), *first.shape()), Superposition((second,), *first.shape())


SUITES: dict[str, Callable[[SuiteConfig], list[dict]]] = {
    "projectors": suite_projectors,
    "exchange-factor": suite_exchange_factor,
    "sense-invariance": suite_sense_invariance,
    "equivalence": suite_equivalence,
    "chi-independence": suite_chi_independence,
    "exclusion": suite_exclusion,
    "case-analysis": suite_case_analysis,
    "breakdown": suite_breakdown,
    "chained": suite_chained,
}


def run_suite(cfg: SuiteConfig, timestamp: bool = False) -> dict:
    """Run one suite (or ``all``) and assemble the report.

    The timestamp is left null unless requested, keeping reports
    byte-identical across runs with the same configuration.
    """
    names = list(SUITES) if cfg.suite == "all" else [cfg.suite]
    cases = []
    for name in names:
        for c in SUITES[name](cfg):
            if cfg.suite == "all":
                c = {**c, "name": f"{name}: {c['name']}"}
            cases.append(c)
    passed = sum(c["pass"] for c in cases)
    return {
        "suite": cfg.suite,
        "config": cfg.echo(),
        "cases": cases,
        "summary": {"total": len(cases), "passed": passed, "failed": len(cases) - passed},
        "versions": {"spinstat": __version__, "numpy": np.__version__, "python": platform.python_version()},
        "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds") if timestamp else None,
    }
