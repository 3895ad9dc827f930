"""Dense complex matrix kernel for 16x16 (and smaller) Hermitian matrices.

Tensor products, partial transpose, trace products and a cyclic Jacobi
eigensolver, sized for four-qubit density matrices. All values are
immutable after construction and safe to share between threads.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

from .errors import (
    DimensionMismatch,
    DomainError,
    IndexOutOfRange,
    NegativeEigenvalue,
    NoConvergence,
    NotHermitian,
)

HERMITICITY_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_TOL = -1e-10
EIG_HERMITICITY_TOL = 1e-10
JACOBI_OFFDIAG_TOL = 1e-13
JACOBI_MAX_SWEEPS = 100

N_QUBITS = 4
DIM = 2**N_QUBITS


@dataclass(frozen=True, eq=False)
class ComplexMatrix:
    """Immutable complex matrix with finite double-precision entries."""

    data: np.ndarray

    def __post_init__(self):
        arr = np.array(self.data, dtype=np.complex128, copy=True)
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise DimensionMismatch(f"expected a 2-D matrix, got shape {arr.shape}")
        if not np.all(np.isfinite(arr.real)) or not np.all(np.isfinite(arr.imag)):
            raise DomainError("matrix entries must be finite")
        arr.setflags(write=False)
        object.__setattr__(self, "data", arr)

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @classmethod
    def identity(cls, n: int) -> "ComplexMatrix":
        return cls(np.eye(n, dtype=np.complex128))


def as_array(m) -> np.ndarray:
    """Return the underlying complex ndarray of a matrix-like value."""
    if isinstance(m, DensityMatrix):
        return m.mat.data
    if isinstance(m, ComplexMatrix):
        return m.data
    arr = np.asarray(m, dtype=np.complex128)
    if arr.ndim != 2:
        raise DimensionMismatch(f"expected a 2-D matrix, got shape {arr.shape}")
    return arr


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """16x16 Hermitian, unit-trace, positive semidefinite state."""

    mat: ComplexMatrix
    label: str | None = None

    def __post_init__(self):
        mat = self.mat
        if not isinstance(mat, ComplexMatrix):
            mat = ComplexMatrix(mat)
            object.__setattr__(self, "mat", mat)
        a = mat.data
        if a.shape != (DIM, DIM):
            raise DimensionMismatch(f"density matrix must be {DIM}x{DIM}, got {a.shape}")
        herm_dev = np.abs(a - a.conj().T).max()
        if herm_dev > HERMITICITY_TOL:
            raise NotHermitian(f"hermiticity deviation {herm_dev:.3e} exceeds {HERMITICITY_TOL}")
        trace_dev = abs(np.trace(a) - 1.0)
        if trace_dev > TRACE_TOL:
            raise DomainError(f"trace deviation {trace_dev:.3e} exceeds {TRACE_TOL}")
        min_eig = hermitian_eigvals(a)[0]
        if min_eig < PSD_TOL:
            raise NegativeEigenvalue(f"minimum eigenvalue {min_eig:.3e} below {PSD_TOL}")

    @property
    def data(self) -> np.ndarray:
        return self.mat.data


def kron(a, b) -> ComplexMatrix:
    """Tensor product; entry [(i*b.rows+k),(j*b.cols+l)] = a[i,j]*b[k,l]."""
    return ComplexMatrix(np.kron(as_array(a), as_array(b)))


@njit(cache=True)
def _jacobi_eigvals(a_in, tol, max_sweeps):  # pragma: no cover - jitted
    n = a_in.shape[0]
    a = a_in.copy()
    for sweep in range(max_sweeps):
        off = 0.0
        for i in range(n):
            for j in range(n):
                if i != j:
                    off += abs(a[i, j]) ** 2
        if np.sqrt(off) < tol:
            ev = np.empty(n)
            for i in range(n):
                ev[i] = a[i, i].real
            return np.sort(ev), True
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag == 0.0:
                    continue
                phase = apq / mag
                zeta = (a[q, q].real - a[p, p].real) / (2.0 * mag)
                if zeta >= 0.0:
                    t = 1.0 / (zeta + np.sqrt(1.0 + zeta * zeta))
                else:
                    t = -1.0 / (-zeta + np.sqrt(1.0 + zeta * zeta))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                for k in range(n):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = c * akp - s * np.conj(phase) * akq
                    a[k, q] = s * phase * akp + c * akq
                for k in range(n):
                    apk = a[p, k]
                    aqk = a[q, k]
                    a[p, k] = c * apk - s * phase * aqk
                    a[q, k] = s * np.conj(phase) * apk + c * aqk
                # rotations keep the diagonal real; discard roundoff imaginaries
                a[p, p] = complex(a[p, p].real, 0.0)
                a[q, q] = complex(a[q, q].real, 0.0)
    ev = np.empty(n)
    for i in range(n):
        ev[i] = a[i, i].real
    return np.sort(ev), False


def hermitian_eigvals(m) -> np.ndarray:
    """Ascending real eigenvalues of a Hermitian matrix via cyclic Jacobi.

    Converges when the off-diagonal Frobenius norm drops below 1e-13,
    capped at 100 sweeps.
    """
    a = as_array(m)
    if a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"eigensolver needs a square matrix, got {a.shape}")
    herm_dev = np.abs(a - a.conj().T).max()
    if herm_dev > EIG_HERMITICITY_TOL:
        raise NotHermitian(f"hermiticity deviation {herm_dev:.3e} exceeds {EIG_HERMITICITY_TOL}")
    ev, converged = _jacobi_eigvals(
        np.ascontiguousarray(a), JACOBI_OFFDIAG_TOL, JACOBI_MAX_SWEEPS
    )
    if not converged:
        raise NoConvergence(f"Jacobi sweeps exceeded {JACOBI_MAX_SWEEPS}")
    return ev


def partial_transpose(rho, subset) -> ComplexMatrix:
    """Transpose the bra/ket indices of the qubits in `subset`.

    Qubit 0 is the most significant bit of the 4-bit basis index.
    """
    a = as_array(rho)
    if a.shape != (DIM, DIM):
        raise DimensionMismatch(f"partial transpose needs a {DIM}x{DIM} matrix, got {a.shape}")
    qubits = set(subset)
    for n in qubits:
        if not isinstance(n, (int, np.integer)) or n < 0 or n > N_QUBITS - 1:
            raise IndexOutOfRange(f"qubit index {n!r} outside 0..{N_QUBITS - 1}")
    t = a.reshape([2] * (2 * N_QUBITS))
    perm = list(range(2 * N_QUBITS))
    for n in qubits:
        perm[n], perm[N_QUBITS + n] = perm[N_QUBITS + n], perm[n]
    return ComplexMatrix(t.transpose(perm).reshape(DIM, DIM))


def trace_product(a, b) -> complex:
    """Tr(a.b) accumulated directly, without forming the product matrix."""
    aa = as_array(a)
    bb = as_array(b)
    if aa.shape[0] != aa.shape[1] or aa.shape != bb.shape:
        raise DimensionMismatch(f"trace product needs equal square dims, got {aa.shape} and {bb.shape}")
    return complex(np.einsum("ik,ki->", aa, bb))
