"""System-channel configurations and the dephasing dynamics.

The four qubit-to-channel partitions, the GHZ/Werner-like initial state,
the exact noise-averaged map in the Hadamard frame, and a Monte Carlo
trajectory average over explicitly sampled Gaussian phases.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .densemat import DIM, N_QUBITS, ComplexMatrix, DensityMatrix, as_array
from .errors import (
    DomainError,
    IndexOutOfRange,
    MapNumericsError,
    NegativeEigenvalue,
    NotHermitian,
)
from .noise import BetaValue

PRESET_BLOCKS = {
    # qubits a, b, c, d are indices 0, 1, 2, 3 (a = most significant bit)
    "CLCQ": ({0, 1, 2, 3},),
    "BLCQ": ({0, 2}, {1, 3}),
    "TLCQ": ({0}, {1}, {2, 3}),
    "ILCQ": ({0}, {1}, {2}, {3}),
}

MC_CHUNK = 2500


def _hadamard_frame() -> np.ndarray:
    # W = H tensor 4 has exact entries +-1/4 and is involutory
    w1 = np.array([[1.0, 1.0], [1.0, -1.0]])
    w = w1
    for _ in range(N_QUBITS - 1):
        w = np.kron(w, w1)
    w = w / DIM**0.5
    w.setflags(write=False)
    return w


W16 = _hadamard_frame()


@dataclass(frozen=True)
class ChannelPartition:
    """A partition of the qubit index set {0,1,2,3} into noise channels."""

    blocks: tuple[frozenset, ...]
    kind: str

    def __post_init__(self):
        blocks = tuple(frozenset(b) for b in self.blocks)
        object.__setattr__(self, "blocks", blocks)
        seen = set()
        for block in blocks:
            if not block:
                raise DomainError("partition blocks must be nonempty")
            for n in block:
                if not isinstance(n, (int, np.integer)) or n < 0 or n > N_QUBITS - 1:
                    raise IndexOutOfRange(f"qubit index {n!r} outside 0..{N_QUBITS - 1}")
                if n in seen:
                    raise DomainError(f"qubit {n} appears in more than one block")
                seen.add(n)
        if seen != set(range(N_QUBITS)):
            raise DomainError(f"blocks must cover all qubits, got {sorted(seen)}")
        if self.kind in PRESET_BLOCKS:
            expect = tuple(frozenset(b) for b in PRESET_BLOCKS[self.kind])
            if set(blocks) != set(expect):
                raise DomainError(f"blocks do not match the {self.kind} preset")
        elif self.kind != "Custom":
            raise DomainError(f"unknown partition kind {self.kind!r}")

    @classmethod
    def preset(cls, kind: str) -> "ChannelPartition":
        if kind not in PRESET_BLOCKS:
            raise DomainError(f"unknown preset {kind!r}, expected one of {sorted(PRESET_BLOCKS)}")
        return cls(blocks=PRESET_BLOCKS[kind], kind=kind)

    @classmethod
    def custom(cls, blocks) -> "ChannelPartition":
        return cls(blocks=tuple(frozenset(b) for b in blocks), kind="Custom")


@dataclass(frozen=True)
class InitialStateSpec:
    """Mixing weight p between the maximally mixed state and the GHZ projector."""

    p: float = 1.0

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise DomainError(f"p must lie in [0, 1], got {self.p}")


def initial_state(spec) -> DensityMatrix:
    """rho_0 = (1-p)/16 I + p |GHZ><GHZ| with |GHZ> = (|0000>+|1111>)/sqrt(2)."""
    if not isinstance(spec, InitialStateSpec):
        spec = InitialStateSpec(float(spec))
    p = spec.p
    rho = np.zeros((DIM, DIM), dtype=np.complex128)
    np.fill_diagonal(rho, (1.0 - p) / DIM)
    half = p / 2.0
    rho[0, 0] += half
    rho[0, DIM - 1] += half
    rho[DIM - 1, 0] += half
    rho[DIM - 1, DIM - 1] += half
    return DensityMatrix(ComplexMatrix(rho), label=f"ghz-werner(p={p:g})")


def dephasing_exponent(u: int, v: int, part: ChannelPartition) -> int:
    """D(u, v) = sum over blocks of (sum_{n in block} s_n(u) - s_n(v))^2.

    s_n(i) is +1 when bit n of i is 0 and -1 otherwise; the noise average
    damps the Hadamard-frame entry (u, v) by exp(-beta D / 2).
    """
    for idx in (u, v):
        if not isinstance(idx, (int, np.integer)) or idx < 0 or idx > DIM - 1:
            raise IndexOutOfRange(f"basis index {idx!r} outside 0..{DIM - 1}")
    total = 0
    for block in part.blocks:
        ds = 0
        for n in block:
            bit = 1 << (N_QUBITS - 1 - n)
            ds += (1 if v & bit else -1) - (1 if u & bit else -1)
        total += ds * ds
    return total


@lru_cache(maxsize=32)
def _exponent_matrix(part: ChannelPartition) -> np.ndarray:
    d = np.empty((DIM, DIM))
    for u in range(DIM):
        for v in range(DIM):
            d[u, v] = dephasing_exponent(u, v, part)
    d.setflags(write=False)
    return d


def _beta_scalar(beta) -> float:
    value = beta.value if isinstance(beta, BetaValue) else float(beta)
    if value < 0.0:
        raise DomainError(f"beta must be nonnegative, got {value}")
    return value


def apply_fgn_map(rho0, part: ChannelPartition, beta) -> DensityMatrix:
    """Exact noise-averaged state W (G o (W rho0 W)) W.

    W is the four-qubit Hadamard frame and G damps entry (u, v) by
    exp(-beta D(u, v) / 2); identical to averaging U rho0 U^dag over
    independent Gaussian phases of variance beta, one per channel.
    """
    value = _beta_scalar(beta)
    rho = as_array(rho0)
    damp = np.exp(-0.5 * value * _exponent_matrix(part))
    out = W16 @ (damp * (W16 @ rho @ W16)) @ W16
    try:
        return DensityMatrix(ComplexMatrix(out), label=f"{part.kind}(beta={value:g})")
    except (NotHermitian, NegativeEigenvalue, DomainError) as exc:
        raise MapNumericsError(f"dephasing map output invalid: {exc}") from exc


def _qubit_block_index(part: ChannelPartition) -> np.ndarray:
    idx = np.zeros(N_QUBITS, dtype=np.intp)
    for b, block in enumerate(part.blocks):
        for n in block:
            idx[n] = b
    return idx


def mc_map(rho0, part: ChannelPartition, beta, samples: int, rng: np.random.Generator) -> DensityMatrix:
    """Average of U rho0 U^dag over `samples` sampled noise trajectories.

    Per trajectory one phase phi_c ~ N(0, beta) is drawn per channel and
    U = kron_n exp(-i phi_block(n) sigma_x). Trajectories are evaluated in
    fixed-size chunks accumulated in a fixed order, so the result is
    deterministic given the seed.
    """
    samples = int(samples)
    if samples < 1:
        raise DomainError(f"samples must be at least 1, got {samples}")
    value = _beta_scalar(beta)
    rho = as_array(rho0)
    qb = _qubit_block_index(part)
    nblocks = len(part.blocks)
    scale = np.sqrt(value)
    acc = np.zeros((DIM, DIM), dtype=np.complex128)
    done = 0
    while done < samples:
        m = min(MC_CHUNK, samples - done)
        phases = rng.normal(0.0, scale, size=(m, nblocks))
        phq = phases[:, qb]
        c = np.cos(phq)
        s = np.sin(phq)
        u = np.zeros((m, N_QUBITS, 2, 2), dtype=np.complex128)
        u[:, :, 0, 0] = c
        u[:, :, 1, 1] = c
        u[:, :, 0, 1] = -1j * s
        u[:, :, 1, 0] = -1j * s
        left = np.einsum("mij,mkl->mikjl", u[:, 0], u[:, 1]).reshape(m, 4, 4)
        right = np.einsum("mij,mkl->mikjl", u[:, 2], u[:, 3]).reshape(m, 4, 4)
        umat = np.einsum("mij,mkl->mikjl", left, right).reshape(m, DIM, DIM)
        rotated = umat @ rho
        acc += np.tensordot(rotated, umat.conj(), axes=([0, 2], [0, 2]))
        done += m
    return DensityMatrix(ComplexMatrix(acc / samples), label=f"{part.kind}-mc(M={samples})")


# XOR classes u ^ v of computational-basis index pairs on which the evolved
# GHZ-class state can retain nonzero entries. Every entry whose index XOR
# falls outside the listed classes vanishes identically, for all beta and all
# mixing weights p; the validation suite asserts exactly that. The TLCQ
# pattern is deliberately the wider weight-parity pattern: it additionally
# admits classes whose entries happen to vanish for this state family, so the
# zero assertion stays valid.
COHERENCE_SUPPORT_XORS = {
    "CLCQ": (0b0000, 0b0011, 0b0101, 0b0110, 0b1001, 0b1010, 0b1100, 0b1111),
    "BLCQ": (0b0000, 0b0101, 0b1010, 0b1111),
    "TLCQ": (0b0000, 0b0011, 0b0101, 0b0110, 0b1001, 0b1010, 0b1100, 0b1111),
    "ILCQ": (0b0000, 0b1111),
}


def support_mask(kind: str) -> np.ndarray:
    """Boolean 16x16 mask of entries allowed to be nonzero for a preset.

    Entry (u, v) is True iff u ^ v lies in the preset's coherence support
    classes; see COHERENCE_SUPPORT_XORS.
    """
    if kind not in COHERENCE_SUPPORT_XORS:
        raise DomainError(f"unknown preset kind {kind!r}")
    allowed = COHERENCE_SUPPORT_XORS[kind]
    mask = np.zeros((DIM, DIM), dtype=bool)
    for u in range(DIM):
        for v in range(DIM):
            mask[u, v] = (u ^ v) in allowed
    mask.setflags(write=False)
    return mask
