"""Pure states, local operations, qubit permutations and the symmetric-subspace
dictionary between N qubits and a single spin j = N/2.

Conventions
-----------
* Qubits are numbered from 0; qubit 0 is the most significant bit of the
  amplitude index, so ``amp[0b100]`` is the coefficient of ``|100>``.
* ``SpinState.c`` is ordered by ascending magnetic number, ``c[i]`` is the
  coefficient of ``|j, m=-j+i>``.
* The symmetric Dicke state of weight ``k`` is the equal superposition of all
  weight-``k`` bitstrings divided by ``sqrt(C(N, k))`` and corresponds to
  ``|j, m=j-k>``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

import numpy as np

from .context import DEFAULT
from .errors import InvalidOperationError, InvalidStateError, NotSymmetricError

MAX_QUBITS = 12


def _readonly(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class PureState:
    """Amplitude vector of an ``n``-qubit pure state (not necessarily normalized)."""

    amp: np.ndarray
    n: int = field(init=False)

    def __post_init__(self) -> None:
        amp = np.array(self.amp, dtype=complex).ravel()
        size = amp.size
        n = size.bit_length() - 1
        if size < 2 or (1 << n) != size:
            raise InvalidStateError(f"amplitude vector length {size} is not a power of two")
        if n > MAX_QUBITS:
            raise InvalidStateError(f"{n} qubits exceeds the supported maximum of {MAX_QUBITS}")
        if not np.all(np.isfinite(amp)):
            raise InvalidStateError("amplitudes must be finite")
        object.__setattr__(self, "amp", _readonly(amp))
        object.__setattr__(self, "n", n)

    @classmethod
    def from_tensor(cls, tensor: np.ndarray) -> "PureState":
        return cls(np.asarray(tensor).reshape(-1))

    @classmethod
    def basis(cls, bits: str) -> "PureState":
        """Computational basis state from a bitstring such as ``"010"``."""
        amp = np.zeros(1 << len(bits), dtype=complex)
        amp[int(bits, 2)] = 1.0
        return cls(amp)

    @property
    def tensor(self) -> np.ndarray:
        return self.amp.reshape((2,) * self.n)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amp))

    def is_normalized(self, tol: float = DEFAULT.norm_tol) -> bool:
        return abs(self.norm**2 - 1.0) <= tol

    def normalized(self) -> "PureState":
        nrm = self.norm
        if nrm == 0.0:
            raise InvalidStateError("cannot normalize the zero vector")
        return PureState(self.amp / nrm)

    def __getitem__(self, bits: str) -> complex:
        return complex(self.amp[int(bits, 2)])

    def __add__(self, other: "PureState") -> "PureState":
        return PureState(self.amp + other.amp)

    def __sub__(self, other: "PureState") -> "PureState":
        return PureState(self.amp - other.amp)

    def __mul__(self, scalar: complex) -> "PureState":
        return PureState(self.amp * scalar)

    __rmul__ = __mul__

    def inner(self, other: "PureState") -> complex:
        """``<self|other>``."""
        return complex(np.vdot(self.amp, other.amp))


def require_qubits(state: PureState, n: int) -> None:
    if state.n != n:
        raise InvalidStateError(f"expected a {n}-qubit state, got {state.n} qubits")


def require_normalized(state: PureState, tol: float = DEFAULT.norm_tol) -> None:
    if not state.is_normalized(tol):
        raise InvalidStateError(f"state is not normalized (norm^2 = {state.norm**2:.15g})")


@dataclass(frozen=True)
class LocalOp:
    """A 2x2 matrix acting on one qubit."""

    slot: int
    mat: np.ndarray

    def __post_init__(self) -> None:
        mat = np.array(self.mat, dtype=complex)
        if mat.shape != (2, 2):
            raise InvalidOperationError(f"local operation must be 2x2, got shape {mat.shape}")
        if not np.all(np.isfinite(mat)):
            raise InvalidOperationError("local operation has non-finite entries")
        if int(self.slot) != self.slot or self.slot < 0:
            raise InvalidOperationError(f"invalid slot {self.slot!r}")
        object.__setattr__(self, "slot", int(self.slot))
        object.__setattr__(self, "mat", _readonly(mat))

    @property
    def det(self) -> complex:
        m = self.mat
        return complex(m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0])

    def is_special(self, tol: float = DEFAULT.special_tol) -> bool:
        return abs(self.det - 1.0) <= tol

    def is_unitary(self, tol: float = DEFAULT.unitary_tol) -> bool:
        return float(np.linalg.norm(self.mat @ self.mat.conj().T - np.eye(2))) <= tol


@dataclass(frozen=True)
class LocalOpChain:
    """Ordered list of single-qubit operations; the first entry acts first."""

    ops: tuple[LocalOp, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "ops", tuple(self.ops))

    @classmethod
    def of(cls, *pairs: tuple[int, np.ndarray]) -> "LocalOpChain":
        return cls(tuple(LocalOp(slot, mat) for slot, mat in pairs))

    @classmethod
    def product(cls, mats: Sequence[np.ndarray]) -> "LocalOpChain":
        """One operation per qubit, ``mats[s]`` on slot ``s``."""
        return cls(tuple(LocalOp(s, m) for s, m in enumerate(mats)))

    def then(self, other: "LocalOpChain") -> "LocalOpChain":
        """Chain that applies ``self`` and afterwards ``other``."""
        return LocalOpChain(self.ops + other.ops)

    def __len__(self) -> int:
        return len(self.ops)

    def __iter__(self):
        return iter(self.ops)

    @property
    def dets(self) -> list[complex]:
        return [op.det for op in self.ops]

    def composite(self, n: int) -> list[np.ndarray]:
        """Net 2x2 matrix on each of ``n`` slots (identity where nothing acts)."""
        out = [np.eye(2, dtype=complex) for _ in range(n)]
        for op in self.ops:
            if op.slot >= n:
                raise InvalidOperationError(f"slot {op.slot} out of range for {n} qubits")
            out[op.slot] = op.mat @ out[op.slot]
        return out

    def inverse(self) -> "LocalOpChain":
        return LocalOpChain(tuple(LocalOp(op.slot, np.linalg.inv(op.mat)) for op in reversed(self.ops)))


def apply_local(state: PureState, chain: LocalOpChain) -> PureState:
    """Apply each operation of ``chain`` in order; no renormalization."""
    t = np.array(state.tensor)
    for op in chain:
        if op.slot >= state.n:
            raise InvalidOperationError(f"slot {op.slot} out of range for {state.n} qubits")
        t = np.moveaxis(np.tensordot(op.mat, t, axes=([1], [op.slot])), 0, op.slot)
    return PureState.from_tensor(t)


def _check_permutation(sigma: Sequence[int], n: int) -> tuple[int, ...]:
    sigma = tuple(int(s) for s in sigma)
    if sorted(sigma) != list(range(n)):
        raise InvalidOperationError(f"{sigma!r} is not a permutation of 0..{n - 1}")
    return sigma


def permute_qubits(state: PureState, sigma: Sequence[int]) -> PureState:
    """Move qubit ``k`` to position ``sigma[k]``.

    Composition follows ``permute(permute(s, a), b) == permute(s, b o a)`` with
    ``(b o a)[k] = b[a[k]]``.
    """
    sigma = _check_permutation(sigma, state.n)
    return PureState.from_tensor(np.moveaxis(state.tensor, list(range(state.n)), list(sigma)))


def transposition(n: int, a: int, b: int) -> tuple[int, ...]:
    sigma = list(range(n))
    sigma[a], sigma[b] = sigma[b], sigma[a]
    return tuple(sigma)


def symmetry_defect(state: PureState) -> float:
    """Largest change of the amplitude vector under any swap of two qubits."""
    t = state.tensor
    worst = 0.0
    for a, b in combinations(range(state.n), 2):
        worst = max(worst, float(np.linalg.norm(t - np.swapaxes(t, a, b))))
    return worst


def _weights(n: int) -> np.ndarray:
    return np.array([bin(i).count("1") for i in range(1 << n)])


def dicke_state(n: int, k: int) -> PureState:
    """Normalized equal superposition of all weight-``k`` strings on ``n`` qubits."""
    if not 0 <= k <= n:
        raise InvalidStateError(f"weight {k} out of range for {n} qubits")
    amp = (_weights(n) == k).astype(complex) / np.sqrt(comb(n, k))
    return PureState(amp)


def dicke_coefficients(state: PureState) -> np.ndarray:
    """Overlaps ``a_k = <S_k|state>`` for k = 0..n."""
    w = _weights(state.n)
    return np.array(
        [state.amp[w == k].sum() / np.sqrt(comb(state.n, k)) for k in range(state.n + 1)]
    )


@dataclass(frozen=True)
class SpinState:
    """Spin-j state, ``c[i]`` multiplies ``|j, -j+i>``."""

    c: np.ndarray

    def __post_init__(self) -> None:
        c = np.array(self.c, dtype=complex).ravel()
        if c.size < 2:
            raise InvalidStateError("a spin state needs at least two components")
        if not np.all(np.isfinite(c)):
            raise InvalidStateError("spin amplitudes must be finite")
        object.__setattr__(self, "c", _readonly(c))

    @property
    def twoj(self) -> int:
        return self.c.size - 1

    @property
    def j(self) -> float:
        return self.twoj / 2

    @property
    def ms(self) -> np.ndarray:
        return np.arange(self.c.size) - self.twoj / 2

    def coeff(self, m: float) -> complex:
        """Coefficient of ``|j, m>``."""
        return complex(self.c[int(round(m + self.j))])

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.c))

    def normalized(self) -> "SpinState":
        return SpinState(self.c / self.norm)


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, unit-trace, positive semidefinite matrix."""

    rho: np.ndarray

    def __post_init__(self) -> None:
        rho = np.array(self.rho, dtype=complex)
        if rho.ndim != 2 or rho.shape[0] != rho.shape[1] or rho.shape[0] < 1:
            raise InvalidStateError(f"density matrix must be square, got shape {rho.shape}")
        if not np.all(np.isfinite(rho)):
            raise InvalidStateError("density matrix has non-finite entries")
        object.__setattr__(self, "rho", _readonly(rho))

    @property
    def dim(self) -> int:
        return self.rho.shape[0]

    @classmethod
    def from_pure(cls, vec: np.ndarray) -> "DensityMatrix":
        vec = np.asarray(vec, dtype=complex)
        return cls(np.outer(vec, vec.conj()))

    def validate(self, tol: float = DEFAULT.norm_tol, psd_tol: float = 1e-10) -> None:
        rho = self.rho
        if np.abs(rho - rho.conj().T).max() > tol:
            raise InvalidStateError("density matrix is not Hermitian")
        if abs(np.trace(rho) - 1.0) > tol:
            raise InvalidStateError(f"density matrix trace is {np.trace(rho).real:.15g}, not 1")
        if np.linalg.eigvalsh((rho + rho.conj().T) / 2).min() < -psd_tol:
            raise InvalidStateError("density matrix has a negative eigenvalue")


def symmetric_to_spin(state: PureState, tol: float = DEFAULT.symmetry_tol) -> SpinState:
    defect = symmetry_defect(state)
    if defect > tol:
        raise NotSymmetricError(f"symmetry defect {defect:.3g} exceeds tolerance {tol:.3g}")
    a = dicke_coefficients(state)
    # |S_k> <-> |j, j-k>, so ascending m is descending k
    return SpinState(a[::-1])


def spin_to_symmetric(spin: SpinState) -> PureState:
    n = spin.twoj
    a = spin.c[::-1]
    w = _weights(n)
    norms = np.sqrt(np.array([comb(n, k) for k in range(n + 1)], dtype=float))
    return PureState(a[w] / norms[w])


def coherent_overlap(spin: SpinState, theta: float, phi: float) -> complex:
    """Coherent-state amplitude

        sum_m sqrt(C(2j, j+m)) cos(theta/2)^(j-m) (sin(theta/2) e^{i phi})^(j+m) c_m

    It vanishes exactly at the antipodes of the Majorana stars returned by
    :func:`qubitstars.majorana.constellation_of`.
    """
    twoj = spin.twoj
    cth, sth = np.cos(theta / 2), np.sin(theta / 2) * np.exp(1j * phi)
    total = 0j
    for i, cm in enumerate(spin.c):
        # i = j + m
        total += np.sqrt(comb(twoj, i)) * cth ** (twoj - i) * sth**i * cm
    return complex(total)


def coherent_state(twoj: int, theta: float, phi: float) -> SpinState:
    """Spin coherent state pointing along (theta, phi).

    Uses the phase convention dual to :func:`coherent_overlap`, so that
    ``coherent_overlap(coherent_state(2j, th, ph), th, ph) == 1``.
    """
    i = np.arange(twoj + 1)
    binom = np.sqrt([comb(twoj, int(k)) for k in i])
    c = binom * np.cos(theta / 2) ** (twoj - i) * (np.sin(theta / 2) * np.exp(-1j * phi)) ** i
    return SpinState(c)


def random_state(n: int, rng: np.random.Generator) -> PureState:
    v = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
    return PureState(v / np.linalg.norm(v))


def random_symmetric_state(n: int, rng: np.random.Generator) -> PureState:
    c = rng.normal(size=n + 1) + 1j * rng.normal(size=n + 1)
    return spin_to_symmetric(SpinState(c / np.linalg.norm(c)))


def random_sl2(rng: np.random.Generator) -> np.ndarray:
    """Complex Gaussian 2x2 matrix rescaled to determinant 1 (principal root)."""
    m = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    return m / np.sqrt(np.linalg.det(m))


def random_unitary(rng: np.random.Generator) -> np.ndarray:
    m = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    q, r = np.linalg.qr(m)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_sl_chain(n: int, rng: np.random.Generator) -> LocalOpChain:
    return LocalOpChain.product([random_sl2(rng) for _ in range(n)])


def kron_all(vectors: Iterable[np.ndarray]) -> np.ndarray:
    out = np.ones(1, dtype=complex)
    for v in vectors:
        out = np.kron(out, v)
    return out
