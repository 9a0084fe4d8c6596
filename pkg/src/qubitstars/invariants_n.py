"""SLOCC invariants of four and five qubits and the generic four-qubit family.

Four qubits carry four independent invariants: ``H`` (degree 2), the two
4x4 determinants ``L`` and ``M`` (degree 4) and ``D`` (degree 6).  ``D`` is
the determinant of the 3x3 coefficient matrix of the biquadratic form

    g_xt(x, t) = det_{ij} sum_{a,d} Gamma_{a i j d} x_a t_d.

For five qubits the degree-6 invariant ``F`` is a contraction of six copies
of the amplitude tensor with fifteen antisymmetric epsilons.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import InvalidOperationError
from .qstate import DensityMatrix, LocalOpChain, PureState, apply_local, require_qubits

OMEGA = np.exp(2j * np.pi / 3)


@dataclass(frozen=True)
class FourInvariants:
    H: complex
    L: complex
    M: complex
    D: complex


def _g4(state: PureState) -> np.ndarray:
    require_qubits(state, 4)
    return state.tensor


def inv4_H(state: PureState) -> complex:
    g = _g4(state).reshape(16)
    # sum over i of sign(i) G[i] G[15 - i] for i < 8, sign = (-1)^popcount(i)
    return complex(sum((-1) ** bin(i).count("1") * g[i] * g[15 - i] for i in range(8)))


def inv4_L(state: PureState) -> complex:
    g = _g4(state)
    # rows: last two bits (kl); columns: first two bits (ij)
    mat = g.reshape(4, 4).T
    return complex(np.linalg.det(mat))


def inv4_M(state: PureState) -> complex:
    g = _g4(state)
    # rows: qubits (1, 3); columns: qubits (0, 2) with qubit 2 the slow index
    mat = np.transpose(g, (1, 3, 2, 0)).reshape(4, 4)
    return complex(np.linalg.det(mat))


_MONO = np.array([[1.0, 0.0, 0.0], [0.0, 0.0, 1.0], [1.0, 1.0, 1.0]])
_SAMPLES = [np.array([1.0, 0.0]), np.array([0.0, 1.0]), np.array([1.0, 1.0])]


def g_matrix_xt(state: PureState) -> np.ndarray:
    """3x3 coefficient matrix of g_xt in the monomials (x0^2, x0 x1, x1^2)."""
    g = _g4(state)
    vals = np.empty((3, 3), dtype=complex)
    for a, x in enumerate(_SAMPLES):
        for b, t in enumerate(_SAMPLES):
            vals[a, b] = np.linalg.det(np.einsum("aijd,a,d->ij", g, x, t))
    inv = np.linalg.inv(_MONO)
    return inv @ vals @ inv.T


def inv4_D(state: PureState) -> complex:
    return complex(np.linalg.det(g_matrix_xt(state)))


def four_invariants(state: PureState) -> FourInvariants:
    return FourInvariants(inv4_H(state), inv4_L(state), inv4_M(state), inv4_D(state))


def symmetric_D(state: PureState) -> complex:
    """``D`` of a symmetric state from the six quadratic combinations alpha..eta."""
    g = _g4(state)
    g0, g1, g2, g3, g4 = g[0, 0, 0, 0], g[0, 0, 0, 1], g[0, 0, 1, 1], g[0, 1, 1, 1], g[1, 1, 1, 1]
    alpha = g0 * g2 - g1**2
    beta = g0 * g4 - g2**2
    gamma = g2 * g4 - g3**2
    delta = g0 * g3 - g1 * g2
    eps = g1 * g3 - g2**2
    eta = g1 * g4 - g2 * g3
    return complex(np.linalg.det(np.array([[alpha, delta, eps], [delta, beta, eta], [eps, eta, gamma]])))


def symmetric_H(state: PureState) -> complex:
    g = _g4(state)
    beta = g[0, 0, 0, 0] * g[1, 1, 1, 1] - g[0, 0, 1, 1] ** 2
    eps = g[0, 0, 0, 1] * g[0, 1, 1, 1] - g[0, 0, 1, 1] ** 2
    return complex(beta - 4 * eps)


def g_abcd(a: complex, b: complex, c: complex, d: complex) -> PureState:
    """Representative of the generic four-qubit SLOCC class (unnormalized)."""
    amp = np.zeros(16, dtype=complex)
    for bits, val in [
        ("0000", (a + d) / 2), ("1111", (a + d) / 2),
        ("0011", (a - d) / 2), ("1100", (a - d) / 2),
        ("0101", (b + c) / 2), ("1010", (b + c) / 2),
        ("0110", (b - c) / 2), ("1001", (b - c) / 2),
    ]:
        amp[int(bits, 2)] = val
    return PureState(amp)


def bell(name: str) -> np.ndarray:
    s = 1 / np.sqrt(2)
    return {
        "phi+": np.array([s, 0, 0, s]),
        "phi-": np.array([s, 0, 0, -s]),
        "psi+": np.array([0, s, s, 0]),
        "psi-": np.array([0, s, -s, 0]),
    }[name]


def g_abcd_from_bells(a: complex, b: complex, c: complex, d: complex) -> PureState:
    """Same state assembled as a|Phi+Phi+> + b|Psi+Psi+> + c|Psi-Psi-> + d|Phi-Phi->."""
    pair = lambda n: np.kron(bell(n), bell(n))
    return PureState(a * pair("phi+") + b * pair("psi+") + c * pair("psi-") + d * pair("phi-"))


def g_abcd_closed_forms(a: complex, b: complex, c: complex, d: complex) -> FourInvariants:
    return FourInvariants(
        H=0.5 * (a * a + b * b + c * c + d * d),
        L=a * b * c * d,
        M=(((c - d) / 2) ** 2 - ((a - b) / 2) ** 2) * (((a + b) / 2) ** 2 - ((c + d) / 2) ** 2),
        D=-0.25 * (a * d - b * c) * (a * c - b * d) * (a * b - c * d),
    )


def symmetrizable_generic(a: complex, b: complex, c: complex, d: complex, tol: float = 1e-10) -> bool:
    """Necessary conditions for a generic-class state to have a symmetric SL image."""
    if abs(a * b * c * d) > tol:
        return False
    residuals = [abs((c - d) - s * (a - b)) for s in (1, -1)]
    residuals += [abs((a + b) - s * (c + d)) for s in (1, -1)]
    return min(residuals) <= tol


CLUSTER_STATE = PureState(np.array([1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, -1]) / 2)


def cluster_phase_chain() -> LocalOpChain:
    m = np.diag([np.exp(-1j * np.pi / 8), np.exp(1j * np.pi / 8)])
    return LocalOpChain.of(*[(k, m) for k in range(4)])


def cluster_parameters() -> tuple[complex, complex, complex, complex]:
    """``(a, b, c, d)`` for which the phase chain maps G_abcd onto the cluster state."""
    return (1 + 1j) / 2, 0.0, 0.0, (1j - 1) / 2


def l_parameters() -> tuple[complex, complex, complex, complex]:
    s = 1 / np.sqrt(3)
    return s, OMEGA**2 * s, 0.0, OMEGA * s


def l_state() -> PureState:
    return g_abcd(*l_parameters())


def l_state_symmetrized() -> tuple[LocalOpChain, PureState]:
    """Apply ``[[0, 1], [-1, 0]]`` (as a ket map) to the last two qubits of |L>."""
    flip = np.array([[0.0, 1.0], [-1.0, 0.0]]).T
    chain = LocalOpChain.of((2, flip), (3, flip))
    return chain, apply_local(l_state(), chain)


def l_prime_displayed() -> PureState:
    """|L'> with the amplitudes as usually displayed; its norm is 2, not 1."""
    amp = np.full(16, 0j)
    for i in range(16):
        w = bin(i).count("1")
        if w in (0, 4):
            amp[i] = (1 - OMEGA) / np.sqrt(3)
        elif w == 2:
            amp[i] = -(OMEGA**2) / np.sqrt(3)
    return PureState(amp)


def l_prime_roots() -> np.ndarray:
    r = []
    for s1 in (1, -1):
        for s2 in (1, -1):
            r.append(s1 * np.sqrt((3 * OMEGA**2 + s2 * 2 * np.sqrt(3 * OMEGA)) / (1 - OMEGA)))
    return np.array(r)


def special_case_family(b: complex, d: complex) -> PureState:
    """G_{b+d, b, 0, d}: a symmetric member of the generic class (unnormalized)."""
    return g_abcd(b + d, b, 0.0, d)


def special_case_roots(b: complex, d: complex) -> np.ndarray:
    s = b + 2 * d
    if s == 0:
        raise ZeroDivisionError("b + 2d = 0: two roots move to infinity")
    disc = np.sqrt(9 * b * b - s * s + 0j)
    return np.array([s1 * np.sqrt((-3 * b + s2 * disc) / s + 0j) for s1 in (1, -1) for s2 in (1, -1)])


def reduced_density(state: PureState, keep: Iterable[int]) -> DensityMatrix:
    n = state.n
    keep = sorted(set(int(k) for k in keep))
    if not keep or len(keep) >= n or keep[0] < 0 or keep[-1] >= n:
        raise InvalidOperationError(f"keep must be a nonempty proper subset of 0..{n - 1}, got {keep}")
    rest = [k for k in range(n) if k not in keep]
    t = np.transpose(state.tensor, keep + rest).reshape(2 ** len(keep), -1)
    return DensityMatrix(t @ t.conj().T)


# epsilon pairs of the degree-6 five-qubit invariant, as (copy, qubit) endpoints;
# the last pair (j2, j5) closes the only two otherwise free indices
_I, _J, _K, _L, _M = range(5)
F_PAIRS = [
    ((0, _K), (1, _K)), ((0, _M), (1, _M)), ((0, _J), (2, _J)), ((0, _L), (2, _L)),
    ((0, _I), (3, _I)), ((1, _L), (3, _L)), ((2, _M), (3, _M)), ((1, _I), (4, _I)),
    ((4, _L), (5, _L)), ((4, _M), (5, _M)), ((2, _I), (5, _I)), ((2, _K), (5, _K)),
    ((3, _J), (5, _J)), ((3, _K), (4, _K)), ((1, _J), (4, _J)),
]


def _f_tables():
    n = len(F_PAIRS)
    bits = (np.arange(1 << n)[:, None] >> np.arange(n)) & 1
    flat = np.zeros((1 << n, 6), dtype=np.int64)
    for p, ((c1, q1), (c2, q2)) in enumerate(F_PAIRS):
        # bit 0: first endpoint 0, second 1 (eps = +1); bit 1: the reverse (eps = -1)
        flat[:, c1] += bits[:, p] << (4 - q1)
        flat[:, c2] += (1 - bits[:, p]) << (4 - q2)
    sign = 1 - 2 * (bits.sum(axis=1) % 2)
    return flat, sign


_F_FLAT, _F_SIGN = _f_tables()


def f_contraction(amp: np.ndarray) -> np.ndarray:
    """The degree-6 contraction on a raw length-32 amplitude vector.

    Keeps the dtype of ``amp``, so extended precision input gives an extended
    precision result.
    """
    amp = np.asarray(amp)
    if amp.shape != (32,):
        raise InvalidOperationError("expected 32 five-qubit amplitudes")
    vals = amp[_F_FLAT]
    return np.sum(_F_SIGN * np.prod(vals, axis=1))


def inv5_F(state: PureState) -> complex:
    require_qubits(state, 5)
    return complex(f_contraction(state.amp))


F_WITNESS_BITS = ("00010", "01000", "01111", "10100", "10111", "11001")


def f_witness() -> PureState:
    """Equal superposition of six basis strings with F = 1/36 (found by search)."""
    amp = np.zeros(32)
    for bits in F_WITNESS_BITS:
        amp[int(bits, 2)] = 1.0
    return PureState(amp / np.sqrt(len(F_WITNESS_BITS)))
