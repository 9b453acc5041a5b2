"""Resonances and separatrix-splitting asymptotics for quadratic frequency ratios."""

from .surd import (
    CFExpansion,
    PeriodicCF,
    QuadSurd,
    cf_expand,
    cf_value,
    rint_surd,
    surd_normalize,
)
from .resonance import (
    IntMat2,
    IntVec2,
    ResonanceAnalysis,
    ResonantSequence,
    analyze,
    brute_force_scan,
    build_U,
    classify,
    gamma_k,
)
from .splitting import (
    HarmonicEntry,
    SplittingProfile,
    TransitionPoint,
    asymptotic_estimates,
    constants,
    dominant_harmonics,
    enumerate_candidates,
    g_of_eps,
    profile,
    transition_solve,
)
from .melnikov import (
    MelnikovModel,
    ZeroReport,
    build_model,
    find_zeros,
    harmonic_coeff,
    max_splitting,
    melnikov_observables,
    potential_eval,
    quadrature_oracle,
    transversality,
)

__version__ = "0.1.0"

__all__ = [
    "CFExpansion",
    "HarmonicEntry",
    "IntMat2",
    "IntVec2",
    "MelnikovModel",
    "PeriodicCF",
    "QuadSurd",
    "ResonanceAnalysis",
    "ResonantSequence",
    "SplittingProfile",
    "TransitionPoint",
    "ZeroReport",
    "analyze",
    "asymptotic_estimates",
    "brute_force_scan",
    "build_U",
    "build_model",
    "cf_expand",
    "cf_value",
    "classify",
    "constants",
    "dominant_harmonics",
    "enumerate_candidates",
    "find_zeros",
    "g_of_eps",
    "gamma_k",
    "harmonic_coeff",
    "max_splitting",
    "melnikov_observables",
    "potential_eval",
    "profile",
    "quadrature_oracle",
    "rint_surd",
    "surd_normalize",
    "transition_solve",
    "transversality",
    "__version__",
]
