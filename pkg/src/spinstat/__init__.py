"""Rotation-based construction of the spin-statistics connection, checked by brute force."""

__version__ = "0.1.0"

from .states import (  # noqa: E402
    HalfInt,
    IncompatibleStates,
    ProductState,
    SingleParticleState,
    Superposition,
    phase_factor,
    product_inner,
    single_inner,
    superposition_inner,
)
from .permutations import Permutation, apply_full, apply_params_only, decompose_canonical, enumerate_all, parity  # noqa: E402
from .exchange import (  # noqa: E402
    CCW,
    CW,
    RotationSense,
    eta,
    exchange_factor_F,
    exchange_factor_Fchi,
    rotate_chi,
    transpose_pair,
)
from .symmetrization import (  # noqa: E402
    Statistics,
    apply_projector,
    build_superposed,
    build_superposed_general,
    extract_overall_phase,
    is_antisymmetric,
    is_symmetric,
    symmetrize_prime,
)
from .amplitudes import AmplitudeResult, TermCase, chained_amplitude, feynman_amplitude, standard_amplitude, t_term  # noqa: E402
