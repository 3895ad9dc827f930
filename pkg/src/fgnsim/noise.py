"""Fractional Gaussian noise model.

Closed-form accumulated phase variance beta, a quadrature oracle for the
defining double integral of the autocorrelation kernel, Gaussian phase
sampling, and fractional Brownian motion path generation by dense Cholesky
factorization. RNG state is owned by the caller and passed explicitly.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import CholeskyFailure, DomainError

QUADRATURE_MIN_GRID = 64
FBM_MIN_STEPS = 2
FBM_MAX_STEPS = 2048
BETA_IDENTITY_RTOL = 1e-12


def _check_hurst(hurst: float) -> float:
    hurst = float(hurst)
    if not 0.0 < hurst < 1.0:
        raise DomainError(f"hurst must lie in (0, 1), got {hurst}")
    return hurst


@dataclass(frozen=True)
class NoiseParams:
    """Noise parameters; the coupling and energy split are fixed by convention.

    The energy split only contributes a global phase and the coupling is
    absorbed into the dimensionless time, so both are pinned.
    """

    hurst: float
    omega: float = 1.0
    energy_split: float = 0.0

    def __post_init__(self):
        _check_hurst(self.hurst)
        if self.omega != 1.0:
            raise DomainError(f"omega is fixed to 1.0, got {self.omega}")
        if self.energy_split != 0.0:
            raise DomainError(f"energy_split is fixed to 0.0, got {self.energy_split}")


@dataclass(frozen=True)
class BetaValue:
    """Accumulated dephasing variance beta = tau^(2H+2)/(2H+2)."""

    value: float
    tau: float
    hurst: float

    def __post_init__(self):
        _check_hurst(self.hurst)
        if self.tau < 0.0:
            raise DomainError(f"tau must be nonnegative, got {self.tau}")
        if self.value < 0.0:
            raise DomainError(f"beta must be nonnegative, got {self.value}")
        expect = self.tau ** (2.0 * self.hurst + 2.0) / (2.0 * self.hurst + 2.0)
        if abs(self.value - expect) > BETA_IDENTITY_RTOL * max(expect, 1.0):
            raise DomainError(
                f"beta {self.value!r} inconsistent with tau={self.tau}, hurst={self.hurst}"
            )

    @classmethod
    def from_value(cls, value: float, hurst: float = 0.5) -> "BetaValue":
        """Wrap a bare beta, deriving the matching tau for the given hurst."""
        value = float(value)
        if value < 0.0:
            raise DomainError(f"beta must be nonnegative, got {value}")
        _check_hurst(hurst)
        expo = 2.0 * hurst + 2.0
        tau = (expo * value) ** (1.0 / expo)
        return cls(value=value, tau=tau, hurst=hurst)


def beta_fgn(tau: float, hurst: float) -> BetaValue:
    """Closed-form beta(tau) = tau^(2H+2)/(2H+2); strictly increasing in tau."""
    hurst = _check_hurst(hurst)
    tau = float(tau)
    if tau < 0.0:
        raise DomainError(f"tau must be nonnegative, got {tau}")
    value = tau ** (2.0 * hurst + 2.0) / (2.0 * hurst + 2.0)
    return BetaValue(value=value, tau=tau, hurst=hurst)


def beta_quadrature(tau: float, hurst: float, n: int) -> float:
    """2-D trapezoid quadrature of the kernel (|x|^2H + |x'|^2H - |x-x'|^2H)/2
    on [0, tau]^2 with an n-interval uniform grid per axis.

    The double sum is contracted in O(n): the first two kernel terms reduce
    to a weighted 1-D sum, and |x-x'|^2H takes only n+1 distinct values whose
    trapezoid weights pair into closed-form run sums. The result is
    algebraically identical to the literal nested trapezoid rule.
    """
    hurst = _check_hurst(hurst)
    tau = float(tau)
    if tau < 0.0:
        raise DomainError(f"tau must be nonnegative, got {tau}")
    if tau == 0.0:
        return 0.0
    n = int(n)
    if n < QUADRATURE_MIN_GRID:
        raise DomainError(f"grid size must be at least {QUADRATURE_MIN_GRID}, got {n}")
    h = tau / n
    powk = (np.arange(n + 1) * h) ** (2.0 * hurst)
    w = np.full(n + 1, h)
    w[0] = w[-1] = h / 2.0
    # sum_ij w_i w_j (t_i^2H + t_j^2H) = 2 tau sum_i w_i t_i^2H
    lin = 2.0 * tau * float(np.dot(w, powk))
    # sum_ij w_i w_j |t_i-t_j|^2H = sum_k powk[k] s_k with run sums
    # s_0 = sum w_i^2, s_k = 2 sum_i w_i w_{i+k} = 2 h^2 (n-k) for 1<=k<n,
    # s_n = h^2/2 (the two half-weight endpoints)
    s = 2.0 * h * h * (n - np.arange(n + 1, dtype=np.float64))
    s[0] = float(np.dot(w, w))
    s[-1] = h * h / 2.0
    toep = float(np.dot(powk, s))
    return 0.5 * (lin - toep)


def sample_phase(beta, rng: np.random.Generator) -> float:
    """One zero-mean normal draw with variance beta; deterministic given seed."""
    value = beta.value if isinstance(beta, BetaValue) else float(beta)
    if value < 0.0:
        raise DomainError(f"beta must be nonnegative, got {value}")
    return float(rng.normal(0.0, np.sqrt(value)))


def fbm_covariance(tau: float, hurst: float, n: int) -> np.ndarray:
    """Covariance K(t_i, t_j) = (t_i^2H + t_j^2H - |t_i-t_j|^2H)/2 at t_i = i tau/n."""
    t = np.arange(1, n + 1) * (tau / n)
    return 0.5 * (
        t[:, None] ** (2.0 * hurst)
        + t[None, :] ** (2.0 * hurst)
        - np.abs(t[:, None] - t[None, :]) ** (2.0 * hurst)
    )


@lru_cache(maxsize=8)
def _cholesky_factor(tau: float, hurst: float, n: int) -> np.ndarray:
    # cached across calls so repeated path draws pay for one factorization
    cov = fbm_covariance(tau, hurst, n)
    try:
        chol = np.linalg.cholesky(cov)
    except np.linalg.LinAlgError as exc:
        raise CholeskyFailure(
            f"covariance not positive definite for n={n}, hurst={hurst}"
        ) from exc
    chol.setflags(write=False)
    return chol


def sample_fbm_path(tau: float, hurst: float, n: int, rng: np.random.Generator) -> np.ndarray:
    """One fractional Brownian motion path (B(t_1)..B(t_n)) at t_i = i tau/n.

    Jointly Gaussian with the fBm covariance, generated by dense Cholesky
    factorization of the n x n covariance matrix; deterministic given seed.
    """
    hurst = _check_hurst(hurst)
    tau = float(tau)
    if tau <= 0.0:
        raise DomainError(f"tau must be positive, got {tau}")
    n = int(n)
    if not FBM_MIN_STEPS <= n <= FBM_MAX_STEPS:
        raise DomainError(f"step count must lie in [{FBM_MIN_STEPS}, {FBM_MAX_STEPS}], got {n}")
    return _cholesky_factor(tau, hurst, n) @ rng.standard_normal(n)


def integrated_phase(path, tau: float) -> float:
    """Trapezoid integral of uniformly sampled path values over [0, tau]."""
    path = np.asarray(path, dtype=np.float64)
    if path.ndim != 1 or path.size < 2:
        raise DomainError(f"path must hold at least 2 samples, got shape {path.shape}")
    dx = float(tau) / (path.size - 1)
    return dx * (float(path.sum()) - 0.5 * (float(path[0]) + float(path[-1])))
