"""Majorana polynomials, their roots on the Riemann sphere, and star geometry.

A spin state ``sum_m c_m |j m>`` has the polynomial

    P(z) = sum_m (-1)^(j+m) sqrt(C(2j, j+m)) c_m z^(j+m)

whose roots ``z = cot(theta/2) e^{i phi}`` are projected from the north pole
onto unit vectors.  Missing top-degree terms count as roots at infinity, which
land on the north pole; ``z = 0`` is the south pole.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb, factorial
from typing import Iterable, Sequence

import numpy as np

from .context import DEFAULT, NumericContext
from .errors import InvalidStateError, ZeroPolynomialError
from .qstate import PureState, SpinState

INFINITY = complex("inf")
TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class Star:
    theta: float
    phi: float
    multiplicity: int = 1

    @property
    def vector(self) -> np.ndarray:
        st = np.sin(self.theta)
        return np.array([st * np.cos(self.phi), st * np.sin(self.phi), np.cos(self.theta)])

    @classmethod
    def from_vector(cls, v: Sequence[float], multiplicity: int = 1) -> "Star":
        v = np.asarray(v, dtype=float)
        v = v / np.linalg.norm(v)
        theta = float(np.arccos(np.clip(v[2], -1.0, 1.0)))
        phi = float(np.arctan2(v[1], v[0])) % TWO_PI if np.hypot(v[0], v[1]) > 0 else 0.0
        return cls(theta, phi, multiplicity)

    def antipode(self) -> "Star":
        return Star.from_vector(-self.vector, self.multiplicity)


def _sort_key(s: Star) -> tuple[float, float]:
    return (-round(float(np.cos(s.theta)), 10), round(s.phi, 10))


@dataclass(frozen=True)
class Constellation:
    """Multiset of stars in canonical order (north to south, then by azimuth)."""

    stars: tuple[Star, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "stars", tuple(sorted(self.stars, key=_sort_key)))

    @property
    def degree(self) -> int:
        return sum(s.multiplicity for s in self.stars)

    def expanded(self) -> list[Star]:
        """One entry per unit of multiplicity."""
        return [Star(s.theta, s.phi) for s in self.stars for _ in range(s.multiplicity)]

    def vectors(self) -> np.ndarray:
        return np.array([s.vector for s in self.expanded()]).reshape(-1, 3)


def majorana_polynomial(spin: SpinState) -> np.ndarray:
    """Coefficients of P(z) in ascending powers (length 2j + 1)."""
    twoj = spin.twoj
    k = np.arange(twoj + 1)
    signs = (-1.0) ** k
    binom = np.sqrt([comb(twoj, int(i)) for i in k])
    return signs * binom * spin.c


def _polish(desc: np.ndarray, z: complex, steps: int = 2) -> complex:
    """Newton steps on the monic polynomial ``desc`` (descending powers)."""
    d = np.polyder(desc)
    for _ in range(steps):
        dp = np.polyval(d, z)
        if dp == 0:
            break
        step = np.polyval(desc, z) / dp
        if not np.isfinite(step) or abs(step) > 0.5 * max(1.0, abs(z)):
            break
        z = z - step
    return complex(z)


def _eig_roots(desc: np.ndarray) -> np.ndarray:
    degree = desc.size - 1
    companion = np.zeros((degree, degree), dtype=complex)
    companion[0, :] = -desc[1:] / desc[0]
    companion[1:, :-1] = np.eye(degree - 1)
    return np.linalg.eigvals(companion)


def _taylor_head(asc: np.ndarray, z: complex, k: int) -> np.ndarray:
    """First ``k`` Taylor coefficients of the polynomial at ``z`` (repeated Horner)."""
    work = np.array(asc[::-1], dtype=complex)
    out = []
    for _ in range(k):
        acc = np.empty_like(work)
        acc[0] = work[0]
        for i in range(1, work.size):
            acc[i] = acc[i - 1] * z + work[i]
        out.append(acc[-1])
        work = acc[:-1]
        if work.size == 0:
            break
    return np.array(out)


def _is_multiple_root(asc: np.ndarray, z: complex, k: int, tol: float) -> bool:
    # evaluate where |z| <= 1 so that the test has a uniform scale
    if abs(z) > 1.0:
        asc, z = asc[::-1], 1.0 / z
    head = _taylor_head(asc / np.abs(asc).max(), z, k)
    return bool(np.abs(head).max() <= tol)


def _cluster(roots: Sequence[complex], radius: float) -> list[tuple[complex, int]]:
    """Single-linkage clustering on relative distance; each cluster becomes (mean, size)."""
    remaining = list(roots)
    out = []
    while remaining:
        group = [remaining.pop(0)]
        grew = True
        while grew:
            grew = False
            for r in list(remaining):
                if min(abs(r - g) for g in group) <= radius * max(1.0, abs(r)):
                    group.append(r)
                    remaining.remove(r)
                    grew = True
        out.append((complex(np.mean(group)), len(group)))
    return out


def _components(clusters: list[tuple[complex, int]], radius: float) -> list[list[int]]:
    parent = list(range(len(clusters)))

    def find(i: int) -> int:
        while parent[i] != i:
            i = parent[i]
        return i

    for i, j in combinations(range(len(clusters)), 2):
        zi, zj = clusters[i][0], clusters[j][0]
        if abs(zi - zj) <= radius * max(1.0, abs(zi), abs(zj)):
            parent[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in range(len(clusters)):
        groups.setdefault(find(i), []).append(i)
    return list(groups.values())


def _merge_split_roots(
    asc: np.ndarray, clusters: list[tuple[complex, int]], start: float, reach: float, tol: float
) -> list[tuple[complex, int]]:
    """Join nearby clusters whose weighted mean is a root of the combined multiplicity.

    A k-fold root perturbed by rounding splits by about eps^(1/k), which is far
    more than a fixed clustering radius can absorb for k >= 3.  Radii grow by
    decades from ``start`` to ``reach``; a group is merged only as a whole.
    """
    radius = start
    while radius < reach * (1 + 1e-9):
        radius = min(radius * 10.0, reach)
        merged = []
        for group in _components(clusters, radius):
            if len(group) == 1:
                merged.append(clusters[group[0]])
                continue
            k = sum(clusters[i][1] for i in group)
            z = sum(clusters[i][0] * clusters[i][1] for i in group) / k
            if _is_multiple_root(asc, z, k, tol):
                merged.append((complex(z), k))
            else:
                merged.extend(clusters[i] for i in group)
        clusters = merged
        if radius >= reach:
            break
    return clusters


def roots_with_infinity(
    coeffs: Sequence[complex], ctx: NumericContext = DEFAULT
) -> tuple[list[tuple[complex, int]], int]:
    """Finite roots with multiplicities, and the multiplicity of the root at infinity.

    ``coeffs`` are in ascending powers; ``len(coeffs) - 1`` is the nominal degree.
    Simple roots get Newton steps; those outside the unit disk are polished as
    roots ``1/z`` of the reversed polynomial.
    """
    c = np.asarray(coeffs, dtype=complex)
    scale = np.abs(c).max() if c.size else 0.0
    if scale <= ctx.zero_poly_tol:
        raise ZeroPolynomialError("the zero polynomial has no constellation")
    nominal = c.size - 1
    big = np.nonzero(np.abs(c) > ctx.leading_cutoff * scale)[0]
    top, low = int(big[-1]), int(big[0])
    at_infinity = nominal - top
    roots: list[tuple[complex, int]] = []
    if low > 0:
        roots.append((0j, low))
    core = c[low : top + 1]
    if core.size > 1:
        desc = core[::-1] / core[-1]
        rev = core / core[0]
        # cluster the raw eigenvalues: their mean keeps the trace exact, while
        # Newton steps would scatter the members of a split multiple root
        clusters = _cluster(list(_eig_roots(desc)), ctx.cluster_radius)
        clusters = _merge_split_roots(
            core, clusters, ctx.cluster_radius, ctx.multiplicity_reach, ctx.multiplicity_tol
        )
        for z, k in clusters:
            if k == 1 and abs(z) > 1.0:
                w = _polish(rev, 1.0 / z)
                z = 1.0 / w if w != 0 else z
            elif k == 1:
                z = _polish(desc, z)
            roots.append((complex(z), k))
    return roots, at_infinity


def star_from_root(z: complex) -> Star:
    """Inverse stereographic projection from the north pole."""
    if z is None or not np.isfinite(z):
        return Star(0.0, 0.0)
    r = abs(z)
    if r == 0.0:
        return Star(np.pi, 0.0)
    theta = 2.0 * np.arctan2(1.0, r)
    phi = float(np.angle(z)) % TWO_PI
    if TWO_PI - phi < 1e-12:
        phi = 0.0
    return Star(float(theta), phi)


def root_from_star(star: Star) -> complex:
    if star.theta <= 0.0:
        return INFINITY
    return complex(np.exp(1j * star.phi) / np.tan(star.theta / 2))


def _merge(stars: Iterable[Star], tol: float = 1e-9) -> list[Star]:
    merged: list[Star] = []
    for s in stars:
        for i, m in enumerate(merged):
            if np.linalg.norm(m.vector - s.vector) <= tol:
                merged[i] = Star(m.theta, m.phi, m.multiplicity + s.multiplicity)
                break
        else:
            merged.append(s)
    return merged


def constellation_from_polynomial(coeffs: Sequence[complex], ctx: NumericContext = DEFAULT) -> Constellation:
    roots, at_inf = roots_with_infinity(coeffs, ctx)
    stars = []
    for z, k in roots:
        s = star_from_root(z)
        stars.append(Star(s.theta, s.phi, k))
    if at_inf:
        stars.append(Star(0.0, 0.0, at_inf))
    return Constellation(tuple(_merge(stars)))


def constellation_of(spin: SpinState, ctx: NumericContext = DEFAULT) -> Constellation:
    return constellation_from_polynomial(majorana_polynomial(spin), ctx)


def chordal_distance(s1: Star, s2: Star) -> float:
    """``2 sin(angle/2)``, computed as the Euclidean distance of the unit vectors."""
    return float(min(np.linalg.norm(s1.vector - s2.vector), 2.0))


def angle_between(s1: Star, s2: Star) -> float:
    return float(np.arccos(np.clip(np.dot(s1.vector, s2.vector), -1.0, 1.0)))


def _require_degree(c: Constellation, n: int) -> list[Star]:
    if c.degree != n:
        raise InvalidStateError(f"expected {n} stars counting multiplicity, got {c.degree}")
    return c.expanded()


def tangle_from_stars(c: Constellation) -> float:
    """Three-tangle of a symmetric three-qubit state from its chordal distances."""
    s = _require_degree(c, 3)
    d = [chordal_distance(a, b) for a, b in combinations(s, 2)]
    return float((np.prod(d) / (12.0 - sum(x * x for x in d))) ** 2 / 3.0)


def tangle_from_star_angles(c: Constellation) -> float:
    """Same quantity written with half-angle sines and cosines."""
    s = _require_degree(c, 3)
    ang = [angle_between(a, b) for a, b in combinations(s, 2)]
    num = np.prod([np.sin(t / 2) for t in ang])
    den = sum(np.cos(t / 2) ** 2 for t in ang)
    return float(4.0 / 3.0 * (num / den) ** 2)


def concurrence_from_stars(c: Constellation) -> float:
    a, b = _require_degree(c, 2)
    d2 = chordal_distance(a, b) ** 2
    sin2 = d2 / 4.0
    return float(sin2 / (2.0 - sin2))


def _spinor(star: Star) -> np.ndarray:
    """Single-qubit state whose one-star constellation is ``star``."""
    return np.array([np.sin(star.theta / 2) * np.exp(-1j * star.phi), np.cos(star.theta / 2)])


def permanent(a: np.ndarray) -> complex:
    """Ryser's formula, O(2^n n)."""
    a = np.asarray(a, dtype=complex)
    n = a.shape[0]
    if n == 0:
        return 1.0 + 0j
    total = 0j
    for mask in range(1, 1 << n):
        cols = [j for j in range(n) if mask >> j & 1]
        rowsums = a[:, cols].sum(axis=1)
        total += (-1) ** len(cols) * np.prod(rowsums)
    return complex((-1) ** n * total)


def symmetric_state_from_stars(c: Constellation, tol: float = 1e-13) -> PureState:
    """Normalized symmetrization of the product of the stars' single-qubit states.

    The Dicke coefficients come from expanding ``prod_k (u_k + v_k t)``; the
    normalization ``N! A_N`` is the permanent of the Gram matrix.
    """
    stars = c.expanded()
    n = len(stars)
    if n == 0:
        raise InvalidStateError("empty constellation")
    vecs = [_spinor(s) for s in stars]
    poly = np.array([1.0 + 0j])
    for u, v in vecs:
        poly = np.convolve(poly, [u, v])
    # amplitude of a weight-w string in sum_sigma (x) |n_sigma(k)>
    amp_w = np.array([factorial(w) * factorial(n - w) * poly[w] for w in range(n + 1)])
    gram = np.array([[np.vdot(a, b) for b in vecs] for a in vecs])
    a_n = permanent(gram).real
    norm2 = factorial(n) * a_n
    if norm2 <= tol:
        raise InvalidStateError("stars symmetrize to the zero vector")
    weights = np.array([bin(i).count("1") for i in range(1 << n)])
    return PureState(amp_w[weights] / np.sqrt(norm2))
