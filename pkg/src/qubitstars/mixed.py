"""Spherical tensor (Fano) decomposition of spin-j density matrices.

``rho = sum_{k,q} rho_kq T_kq`` with ``rho_kq = Tr(rho T_kq^dagger)``.  Each rank
``k >= 1`` with nonzero ``r_k = |rho_k|`` gives a sphere of radius ``r_k``
carrying the ``2k`` roots of

    P^(k)(z) = sum_q (-1)^(k+q) sqrt(C(2k, k+q)) rho_kq z^(k+q).

Hermiticity makes every such constellation closed under the antipodal map.
Matrices use the ascending-m basis, like :class:`qubitstars.qstate.SpinState`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, sqrt

import numpy as np

from .context import DEFAULT, NumericContext
from .errors import InvalidOperationError, InvalidStateError
from .majorana import Constellation, constellation_from_polynomial
from .qstate import DensityMatrix


def _twice(x: float) -> int:
    t = round(2 * x)
    if abs(2 * x - t) > 1e-9:
        raise InvalidOperationError(f"{x} is not a half-integer")
    return int(t)


@lru_cache(maxsize=None)
def _cg_doubled(tj1: int, tm1: int, tj2: int, tm2: int, tJ: int, tM: int) -> float:
    # all arguments are twice the quantum numbers
    if tm1 + tm2 != tM:
        return 0.0
    if not (abs(tj1 - tj2) <= tJ <= tj1 + tj2) or (tj1 + tj2 + tJ) % 2:
        return 0.0
    if abs(tm1) > tj1 or abs(tm2) > tj2 or abs(tM) > tJ:
        return 0.0
    if (tj1 + tm1) % 2 or (tj2 + tm2) % 2 or (tJ + tM) % 2:
        return 0.0
    h = lambda *xs: [x // 2 for x in xs]
    a, b, c = h(tJ + tj1 - tj2, tJ - tj1 + tj2, tj1 + tj2 - tJ)
    d = (tj1 + tj2 + tJ) // 2 + 1
    jm = h(tJ + tM, tJ - tM, tj1 - tm1, tj1 + tm1, tj2 - tm2, tj2 + tm2)
    radicand = Fraction((tJ + 1) * factorial(a) * factorial(b) * factorial(c), factorial(d))
    for x in jm:
        radicand *= factorial(x)
    n1, n2, n3 = c, (tj1 - tm1) // 2, (tj2 + tm2) // 2
    o1, o2 = (tJ - tj2 + tm1) // 2, (tJ - tj1 - tm2) // 2
    total = Fraction(0)
    for k in range(max(0, -o1, -o2), min(n1, n2, n3) + 1):
        den = factorial(k) * factorial(n1 - k) * factorial(n2 - k) * factorial(n3 - k)
        den *= factorial(o1 + k) * factorial(o2 + k)
        total += Fraction((-1) ** k, den)
    if total == 0:
        return 0.0
    return float(np.sign(float(total))) * sqrt(total * total * radicand)


def clebsch_gordan(j1: float, m1: float, j2: float, m2: float, J: float, M: float) -> float:
    """<j1 m1; j2 m2 | J M> in the Condon-Shortley convention (exact sum, then one sqrt)."""
    args = [_twice(x) for x in (j1, m1, j2, m2, J, M)]
    if min(args[0], args[2], args[4]) < 0:
        raise InvalidOperationError("angular momenta must be nonnegative")
    return _cg_doubled(*args)


def _spin_from_dim(dim: int) -> float:
    if dim < 2:
        raise InvalidStateError("a spin density matrix needs dimension >= 2")
    return (dim - 1) / 2


def tensor_op(j: float, k: int, q: int) -> np.ndarray:
    """T_kq as a (2j+1) x (2j+1) matrix in the ascending-m basis."""
    tj = _twice(j)
    if not (0 <= k <= tj) or abs(q) > k:
        raise InvalidOperationError(f"need 0 <= k <= 2j and |q| <= k, got k={k}, q={q}")
    dim = tj + 1
    out = np.zeros((dim, dim))
    for a in range(dim):
        tm = -tj + 2 * a
        for b in range(dim):
            tmp = -tj + 2 * b
            if tm - tmp != 2 * q:
                continue
            sign = -1.0 if ((tj - tmp) // 2) % 2 else 1.0
            out[a, b] = sign * _cg_doubled(tj, tm, tj, -tmp, 2 * k, 2 * q)
    return out


@lru_cache(maxsize=None)
def _basis(tj: int) -> tuple[tuple[int, int, np.ndarray], ...]:
    j = tj / 2
    return tuple((k, q, tensor_op(j, k, q)) for k in range(tj + 1) for q in range(-k, k + 1))


@dataclass(frozen=True)
class SphericalDecomp:
    j: float
    components: tuple[np.ndarray, ...]  # components[k][q + k] = rho_kq

    def rho_kq(self, k: int, q: int) -> complex:
        return complex(self.components[k][q + k])

    @property
    def radii(self) -> np.ndarray:
        return np.array([np.linalg.norm(c) for c in self.components])

    def unit(self, k: int) -> np.ndarray | None:
        r = np.linalg.norm(self.components[k])
        return None if r == 0 else self.components[k] / r

    def reconstruct(self) -> np.ndarray:
        tj = _twice(self.j)
        out = np.zeros((tj + 1, tj + 1), dtype=complex)
        for k, q, t in _basis(tj):
            out += self.components[k][q + k] * t
        return out

    def conjugation_defect(self) -> float:
        """max |rho_kq^* - (-1)^q rho_{k,-q}|."""
        worst = 0.0
        for k, comp in enumerate(self.components):
            for q in range(-k, k + 1):
                worst = max(worst, abs(np.conj(comp[q + k]) - (-1) ** q * comp[-q + k]))
        return worst


def spherical_decompose(rho: DensityMatrix | np.ndarray, j: float | None = None) -> SphericalDecomp:
    mat = rho.rho if isinstance(rho, DensityMatrix) else np.asarray(rho, dtype=complex)
    jj = _spin_from_dim(mat.shape[0]) if j is None else j
    tj = _twice(jj)
    if mat.shape != (tj + 1, tj + 1):
        raise InvalidOperationError(f"dimension {mat.shape[0]} does not match j = {jj}")
    comps = [np.zeros(2 * k + 1, dtype=complex) for k in range(tj + 1)]
    for k, q, t in _basis(tj):
        # Tr(rho T^dagger) = sum_ab rho_ab conj(T_ab)
        comps[k][q + k] = np.sum(mat * np.conj(t))
    return SphericalDecomp(tj / 2, tuple(comps))


def rank_polynomial(decomp: SphericalDecomp, k: int) -> np.ndarray:
    """Coefficients of P^(k) in ascending powers of z (length 2k + 1)."""
    if not 1 <= k <= 2 * decomp.j + 1e-9:
        raise InvalidOperationError(f"rank {k} outside 1..2j")
    comp = decomp.components[k]
    p = np.arange(2 * k + 1)
    signs = (-1.0) ** p
    return signs * np.sqrt([comb(2 * k, int(i)) for i in p]) * comp


def antipodal_defect(c: Constellation) -> float:
    """Largest distance in a greedy pairing of the stars with their antipodes."""
    stars = c.vectors()
    targets = [-v for v in stars]
    free = list(range(len(stars)))
    worst = 0.0
    for t in targets:
        dists = [np.linalg.norm(stars[i] - t) for i in free]
        i = int(np.argmin(dists))
        worst = max(worst, dists[i])
        free.pop(i)
    return float(worst)


@dataclass(frozen=True)
class MixedConstellation:
    k: int
    radius: float
    constellation: Constellation
    antipodal_defect: float


def mixed_constellations(
    rho: DensityMatrix | np.ndarray, j: float | None = None, ctx: NumericContext = DEFAULT
) -> list[MixedConstellation]:
    """One sphere per rank with ``r_k`` above ``ctx.radius_tol``."""
    if isinstance(rho, DensityMatrix):
        rho.validate(ctx.norm_tol)
    decomp = spherical_decompose(rho, j)
    out = []
    for k in range(1, _twice(decomp.j) + 1):
        r = float(np.linalg.norm(decomp.components[k]))
        if r <= ctx.radius_tol:
            continue
        c = constellation_from_polynomial(rank_polynomial(decomp, k) / r, ctx)
        defect = antipodal_defect(c)
        if defect > ctx.antipodal_tol:
            raise InvalidStateError(f"rank-{k} constellation is not antipodal (defect {defect:.3g})")
        out.append(MixedConstellation(k, r, c, defect))
    return out


PAULI = {
    # ascending-m basis: index 0 is m = -1/2
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "y": np.array([[0, 1j], [-1j, 0]]),
    "z": np.array([[-1, 0], [0, 1]], dtype=complex),
}


def bloch_density(r) -> DensityMatrix:
    rx, ry, rz = (float(x) for x in r)
    if rx * rx + ry * ry + rz * rz > 1 + 1e-12:
        raise InvalidStateError("Bloch vector longer than 1")
    return DensityMatrix(0.5 * (np.eye(2) + rx * PAULI["x"] + ry * PAULI["y"] + rz * PAULI["z"]))


def nghz_density(n: int) -> DensityMatrix:
    """|NGHZ><NGHZ| with |NGHZ> = (|j, j> + |j, -j>)/sqrt 2 and 2j = n."""
    if n < 1:
        raise InvalidOperationError("N must be positive")
    v = np.zeros(n + 1)
    v[0] = v[-1] = 1 / np.sqrt(2)
    return DensityMatrix.from_pure(v)


def nghz_rank_polynomial(n: int) -> np.ndarray:
    """P^(2j) for the N-GHZ projector as usually displayed (projective)."""
    p = np.zeros(2 * n + 1)
    p[2 * n] = 0.5
    p[n] = 0.5 * (1 + (-1) ** n)
    p[0] = 0.5 * (-1) ** n
    return p


def nghz_top_roots(n: int) -> tuple[np.ndarray, int]:
    """Roots of the top-rank polynomial and their common multiplicity."""
    if n % 2:
        return np.exp(2j * np.pi * np.arange(2 * n) / (2 * n)), 1
    return np.exp(1j * np.pi * (2 * np.arange(n) + 1) / n), 2

