"""Dephasing dynamics of a four-qubit GHZ-class state in classical channels
driven by fractional Gaussian noise.

The package evaluates the exact dephasing map of a GHZ-class Werner state
whose qubits couple longitudinally to classical stochastic phases, one phase
per channel block, for the four standard channel topologies (CLCQ, BLCQ,
TLCQ, ILCQ). It reports an entanglement witness, the N-partite negativity,
purity, and von Neumann entropy as functions of the accumulated noise
variance beta(tau, H) of fractional Gaussian noise, and cross-checks the
exact map against closed-form expressions, structural zero patterns, and a
Monte Carlo average over sampled noise trajectories.
"""

from .channels import (
    COHERENCE_SUPPORT_XORS,
    PRESET_BLOCKS,
    ChannelPartition,
    InitialStateSpec,
    apply_fgn_map,
    dephasing_exponent,
    initial_state,
    mc_map,
    support_mask,
)
from .closedform import CONFIGS, MEASURES, ClosedFormId, asymptote, eval_closed
from .densemat import (
    ComplexMatrix,
    DensityMatrix,
    hermitian_eigvals,
    kron,
    partial_transpose,
    trace_product,
)
from .errors import (
    CholeskyFailure,
    ConfigError,
    DimensionMismatch,
    DomainError,
    EmptyInput,
    FgnsimError,
    IndexOutOfRange,
    MapNumericsError,
    NegativeEigenvalue,
    NoConvergence,
    NotHermitian,
)
from .measures import (
    Bipartition,
    MeasureRecord,
    evaluate_all,
    negativity_bipartition,
    npartite_negativity,
    purity,
    vn_entropy,
    witness,
)
from .noise import (
    BetaValue,
    NoiseParams,
    beta_fgn,
    beta_quadrature,
    fbm_covariance,
    integrated_phase,
    sample_fbm_path,
    sample_phase,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "FgnsimError",
    "DimensionMismatch",
    "IndexOutOfRange",
    "NotHermitian",
    "NoConvergence",
    "DomainError",
    "CholeskyFailure",
    "MapNumericsError",
    "NegativeEigenvalue",
    "ConfigError",
    "EmptyInput",
    "ComplexMatrix",
    "DensityMatrix",
    "kron",
    "hermitian_eigvals",
    "partial_transpose",
    "trace_product",
    "BetaValue",
    "NoiseParams",
    "beta_fgn",
    "beta_quadrature",
    "sample_phase",
    "fbm_covariance",
    "sample_fbm_path",
    "integrated_phase",
    "ChannelPartition",
    "InitialStateSpec",
    "PRESET_BLOCKS",
    "COHERENCE_SUPPORT_XORS",
    "initial_state",
    "dephasing_exponent",
    "apply_fgn_map",
    "mc_map",
    "support_mask",
    "Bipartition",
    "MeasureRecord",
    "witness",
    "negativity_bipartition",
    "npartite_negativity",
    "purity",
    "vn_entropy",
    "evaluate_all",
    "ClosedFormId",
    "CONFIGS",
    "MEASURES",
    "asymptote",
    "eval_closed",
]
