"""Entanglement and mixedness quantifiers for four-qubit states.

Entanglement witness relative to the initial state, partial-transpose
negativity per bipartition, the bipartition-averaged N-partite negativity,
purity, and von Neumann entropy. All functions are pure.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .densemat import DIM, N_QUBITS, hermitian_eigvals, partial_transpose, trace_product
from .errors import DomainError, IndexOutOfRange, NegativeEigenvalue

EIG_CLAMP = -1e-10
NEG_CLAMP = -1e-10
PURITY_MIN = 1.0 / DIM
ENTROPY_MAX = float(np.log(DIM))
RECORD_TOL = 1e-10

ALL_QUBITS = frozenset(range(N_QUBITS))

# the 7 distinct cuts: 4 single-qubit and 3 complement-deduplicated two-two
SINGLE_CUTS = tuple(frozenset({n}) for n in range(N_QUBITS))
DOUBLE_CUTS = (frozenset({0, 1}), frozenset({0, 2}), frozenset({0, 3}))


@dataclass(frozen=True)
class Bipartition:
    """One cut of the four qubits; stored in canonical (lexicographic) form."""

    side_a: frozenset
    side_b: frozenset = None

    def __post_init__(self):
        side_a = frozenset(self.side_a)
        for n in side_a:
            if not isinstance(n, (int, np.integer)) or n < 0 or n > N_QUBITS - 1:
                raise IndexOutOfRange(f"qubit index {n!r} outside 0..{N_QUBITS - 1}")
        if not side_a or side_a == ALL_QUBITS:
            raise DomainError("side_a must be a nonempty proper subset of the qubits")
        side_b = ALL_QUBITS - side_a
        if self.side_b is not None and frozenset(self.side_b) not in (side_b, side_a):
            raise DomainError("side_b must be the complement of side_a")
        if tuple(sorted(side_b)) < tuple(sorted(side_a)):
            side_a, side_b = side_b, side_a
        object.__setattr__(self, "side_a", side_a)
        object.__setattr__(self, "side_b", side_b)

    @classmethod
    def from_subset(cls, subset) -> "Bipartition":
        return cls(side_a=frozenset(subset))


@dataclass(frozen=True)
class MeasureRecord:
    """One sweep row: parameter point plus the four measures."""

    config: str
    hurst: float
    p: float
    tau: float
    beta: float
    er: float
    ny: float
    py: float
    ve: float

    def __post_init__(self):
        if not PURITY_MIN - RECORD_TOL <= self.py <= 1.0 + RECORD_TOL:
            raise DomainError(f"purity {self.py} outside [{PURITY_MIN}, 1]")
        if not -RECORD_TOL <= self.ve <= ENTROPY_MAX + RECORD_TOL:
            raise DomainError(f"entropy {self.ve} outside [0, ln 16]")
        if self.ny < -RECORD_TOL:
            raise DomainError(f"negativity {self.ny} below 0")


def witness(rho_t, rho_0) -> float:
    """Tr(rho_0 rho_t) - 1/2; positive certifies entanglement relative to rho_0."""
    return trace_product(rho_0, rho_t).real - 0.5


def negativity_bipartition(rho, cut: Bipartition) -> float:
    """Sum of absolute partial-transpose eigenvalues minus one, clamped at 0."""
    ev = hermitian_eigvals(partial_transpose(rho, cut.side_a))
    value = float(np.abs(ev).sum()) - 1.0
    if NEG_CLAMP <= value < 0.0:
        return 0.0
    return value


def npartite_negativity(rho) -> float:
    """Bipartition-averaged negativity, normalized so the GHZ state scores 1.

    (2/4) [ (1/4) sum over the 4 single-qubit cuts
          + (1/3) sum over the 3 distinct two-two cuts ].
    """
    singles = sum(negativity_bipartition(rho, Bipartition(side_a=c)) for c in SINGLE_CUTS)
    doubles = sum(negativity_bipartition(rho, Bipartition(side_a=c)) for c in DOUBLE_CUTS)
    return (2.0 / N_QUBITS) * (singles / len(SINGLE_CUTS) + doubles / len(DOUBLE_CUTS))


def purity(rho) -> float:
    """Tr(rho^2); 1 for pure states, 1/16 at maximal mixedness."""
    return trace_product(rho, rho).real


def vn_entropy(rho) -> float:
    """-Tr(rho ln rho) over clamped eigenvalues, natural logarithm."""
    ev = hermitian_eigvals(rho)
    if ev[0] < EIG_CLAMP:
        raise NegativeEigenvalue(f"eigenvalue {ev[0]:.3e} below {EIG_CLAMP}")
    ev = np.clip(ev, 0.0, None)
    pos = ev[ev > 0.0]
    return float(-(pos * np.log(pos)).sum())


def evaluate_all(rho_t, rho_0, *, config: str, hurst: float, p: float, tau: float, beta: float) -> MeasureRecord:
    """Bundle the four measures of rho_t with its parameter point."""
    return MeasureRecord(
        config=config,
        hurst=hurst,
        p=p,
        tau=tau,
        beta=beta,
        er=witness(rho_t, rho_0),
        ny=npartite_negativity(rho_t),
        py=purity(rho_t),
        ve=vn_entropy(rho_t),
    )
