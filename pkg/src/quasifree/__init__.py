"""Gauge-invariant quasi-free fermionic states and channels.

Symbol-level (polynomial-cost) entropies, channel actions and Choi /
Jamiolkowski objects, cross-verified against a dense Fock-space oracle at
small mode number.
"""

from .channels import (
    AffineSymbolMap,
    QuasiFreeChannel,
    ScaledExponential,
    apply_heisenberg_exp,
    apply_heisenberg_state,
    apply_schrodinger,
    classify_affine_map,
    compose,
    new_channel,
)
from .choi import (
    ChoiExponentialForm,
    JamiolkowskiSymbol,
    choi_exponential_form,
    dense_choi,
    dense_jamiolkowski,
    jamiolkowski_symbol,
    stinespring_heisenberg,
    stinespring_schrodinger,
)
from .entropy import (
    EntropyResult,
    relative_entropy,
    renyi_entropy,
    von_neumann_entropy,
)
from .errors import (
    DimensionCap,
    DimensionMismatch,
    InconsistentB,
    InvalidOrder,
    KernelConditionViolated,
    NotCompletelyPositive,
    NotEvenState,
    NotHermitian,
    NotOrthonormal,
    NotQuasiFreeMixture,
    QuasifreeError,
    SingularB,
    SingularPivot,
    SpectrumOutOfRange,
    ZeroVector,
)
from .fock import (
    HARD_ORACLE_CAP,
    FockBasis,
    creation_operator,
    annihilation_operator,
    density_matrix,
    exp_element,
    exp_spectrum,
    fock_basis,
    is_elementary,
    k_particle_projector,
    number_operator,
    oracle_cap,
    parity_operator,
    partial_trace,
    particle_hole_unitary,
    split_isomorphism,
    wedge_state_product,
)
from .symbols import (
    SpectralSymbol,
    Symbol,
    conjugate_matrix,
    mix_symbols,
    spectral,
    validate_symbol,
)

__version__ = "0.1.0"

__all__ = [
    "AffineSymbolMap",
    "ChoiExponentialForm",
    "DimensionCap",
    "DimensionMismatch",
    "EntropyResult",
    "FockBasis",
    "HARD_ORACLE_CAP",
    "InconsistentB",
    "InvalidOrder",
    "JamiolkowskiSymbol",
    "KernelConditionViolated",
    "NotCompletelyPositive",
    "NotEvenState",
    "NotHermitian",
    "NotOrthonormal",
    "NotQuasiFreeMixture",
    "QuasiFreeChannel",
    "QuasifreeError",
    "ScaledExponential",
    "SingularB",
    "SingularPivot",
    "SpectralSymbol",
    "SpectrumOutOfRange",
    "Symbol",
    "ZeroVector",
    "annihilation_operator",
    "apply_heisenberg_exp",
    "apply_heisenberg_state",
    "apply_schrodinger",
    "choi_exponential_form",
    "classify_affine_map",
    "compose",
    "conjugate_matrix",
    "creation_operator",
    "dense_choi",
    "dense_jamiolkowski",
    "density_matrix",
    "exp_element",
    "exp_spectrum",
    "fock_basis",
    "is_elementary",
    "jamiolkowski_symbol",
    "k_particle_projector",
    "mix_symbols",
    "new_channel",
    "number_operator",
    "oracle_cap",
    "parity_operator",
    "partial_trace",
    "particle_hole_unitary",
    "relative_entropy",
    "renyi_entropy",
    "spectral",
    "split_isomorphism",
    "stinespring_heisenberg",
    "stinespring_schrodinger",
    "validate_symbol",
    "von_neumann_entropy",
    "wedge_state_product",
]
