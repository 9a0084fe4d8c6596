"""Cayley hyperdeterminant, three-tangle and two-qubit Schmidt quantities."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .context import DEFAULT
from .qstate import LocalOpChain, PureState, require_normalized, require_qubits


def _det2(a, b, c, d):
    return a * d - b * c


def hyperdet3(state: PureState) -> complex:
    """Cayley hyperdeterminant of the 2x2x2 amplitude tensor.

    Homogeneous of degree four, so the input need not be normalized.
    """
    require_qubits(state, 3)
    g = state.tensor
    d1 = _det2(g[0, 0, 0], g[0, 1, 1], g[1, 0, 0], g[1, 1, 1])
    d2 = _det2(g[0, 1, 0], g[0, 0, 1], g[1, 1, 0], g[1, 0, 1])
    d3 = _det2(g[0, 0, 0], g[0, 0, 1], g[1, 0, 0], g[1, 0, 1])
    d4 = _det2(g[0, 1, 0], g[0, 1, 1], g[1, 1, 0], g[1, 1, 1])
    return complex((d1 + d2) ** 2 - 4 * d3 * d4)


def three_tangle(state: PureState, tol: float = DEFAULT.norm_tol) -> float:
    """``4 |hyperdet3|`` of a normalized three-qubit state, in [0, 1]."""
    require_qubits(state, 3)
    require_normalized(state, tol)
    return 4.0 * abs(hyperdet3(state))


def covariance_factor(chain: LocalOpChain, n: int = 3) -> complex:
    """Factor picked up by the hyperdeterminant under ``chain``: prod det(L_s)^2."""
    out = 1.0 + 0j
    for mat in chain.composite(n):
        out *= np.linalg.det(mat) ** 2
    return complex(out)


@dataclass(frozen=True)
class SchmidtPair:
    mu1: float
    mu2: float

    @property
    def chi(self) -> float:
        """Schmidt angle in [0, pi/4]."""
        return float(np.arctan2(self.mu2, self.mu1))

    @property
    def concurrence(self) -> float:
        return 2.0 * self.mu1 * self.mu2


def concurrence2(state: PureState) -> float:
    require_qubits(state, 2)
    require_normalized(state)
    g = state.tensor
    return float(2.0 * abs(g[0, 0] * g[1, 1] - g[0, 1] * g[1, 0]))


def schmidt2(state: PureState) -> SchmidtPair:
    """Schmidt coefficients as the singular values of the 2x2 amplitude matrix."""
    require_qubits(state, 2)
    require_normalized(state)
    s = np.linalg.svd(state.tensor, compute_uv=False)
    return SchmidtPair(float(s[0]), float(s[1]))


def schmidt_from_concurrence(c: float) -> SchmidtPair:
    """Invert C = 2 mu1 mu2 for a normalized pair."""
    return SchmidtPair(0.5 * (np.sqrt(1 + c) + np.sqrt(1 - c)), 0.5 * (np.sqrt(1 + c) - np.sqrt(1 - c)))


def schmidt_state(pair: SchmidtPair) -> PureState:
    return PureState([pair.mu1, 0, 0, pair.mu2])
