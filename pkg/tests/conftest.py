"""Shared fixtures and helpers for the test suite."""

from __future__ import annotations

import numpy as np
import pytest

from fgnsim import ChannelPartition, initial_state
from fgnsim.closedform import CONFIGS

GHZ_VEC = np.zeros(16, dtype=np.complex128)
GHZ_VEC[0] = GHZ_VEC[15] = 1.0 / np.sqrt(2.0)


def ghz_projector() -> np.ndarray:
    return np.outer(GHZ_VEC, GHZ_VEC.conj())


def max_mixed() -> np.ndarray:
    return np.eye(16, dtype=np.complex128) / 16.0


def random_hermitian(rng: np.random.Generator, n: int) -> np.ndarray:
    a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return (a + a.conj().T) / 2.0


def random_density(rng: np.random.Generator, n: int = 16) -> np.ndarray:
    a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    rho = a @ a.conj().T
    return rho / np.trace(rho).real


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20250819)


@pytest.fixture
def ghz_state():
    return initial_state(1.0)


@pytest.fixture(params=CONFIGS)
def preset(request) -> ChannelPartition:
    return ChannelPartition.preset(request.param)
