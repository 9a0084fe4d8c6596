"""Generalized Schmidt decomposition of three-qubit pure states.

Any normalized three-qubit state is local-unitarily equivalent to

    l0|000> + l1 e^{i phi}|100> + l2|101> + l3|110> + l4|111>

with nonnegative ``l_i`` and ``phi`` in [0, pi].  The construction first finds a
combination ``x T0 + y T1`` of the two slices ``(T_i)_{jk} = Gamma_{ijk}`` that
is singular, rotates qubit 0 so that this combination becomes the new ``T0``,
then diagonalizes it with unitaries on qubits 1 and 2 and finally pushes the
leftover phases into the diagonal freedom of all three unitaries.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .context import DEFAULT, NumericContext
from .errors import DegenerateInputError
from .qstate import LocalOpChain, PureState, apply_local, require_normalized, require_qubits


@dataclass(frozen=True)
class AcinForm:
    lambdas: tuple[float, float, float, float, float]
    phi: float = 0.0

    def __post_init__(self) -> None:
        lam = tuple(float(x) for x in self.lambdas)
        if len(lam) != 5:
            raise ValueError("an Acin form has exactly five lambdas")
        object.__setattr__(self, "lambdas", lam)
        object.__setattr__(self, "phi", float(self.phi))

    @property
    def l0(self) -> float:
        return self.lambdas[0]

    @property
    def l1(self) -> float:
        return self.lambdas[1]

    @property
    def l2(self) -> float:
        return self.lambdas[2]

    @property
    def l3(self) -> float:
        return self.lambdas[3]

    @property
    def l4(self) -> float:
        return self.lambdas[4]

    @property
    def delta(self) -> complex:
        """``l1 l4 e^{i phi} - l2 l3``."""
        return self.l1 * self.l4 * np.exp(1j * self.phi) - self.l2 * self.l3

    def state(self) -> PureState:
        amp = np.zeros(8, dtype=complex)
        amp[0b000] = self.l0
        amp[0b100] = self.l1 * np.exp(1j * self.phi)
        amp[0b101] = self.l2
        amp[0b110] = self.l3
        amp[0b111] = self.l4
        return PureState(amp)


@dataclass(frozen=True)
class AcinResult:
    form: AcinForm
    chain: LocalOpChain  # three unitaries, slots 0, 1, 2

    def residual(self, state: PureState) -> float:
        return float(np.linalg.norm(apply_local(state, self.chain).amp - self.form.state().amp))


def tangle_from_acin(form: AcinForm) -> float:
    return 4.0 * form.l0**2 * form.l4**2


def _completion(v: np.ndarray) -> np.ndarray:
    """Unitary with first row ``v`` (unit vector)."""
    return np.array([[v[0], v[1]], [-np.conj(v[1]), np.conj(v[0])]])


def _pencil_roots(t0: np.ndarray, t1: np.ndarray, ctx: NumericContext) -> list[np.ndarray]:
    """Unit vectors (x, y) with det(x T0 + y T1) = 0."""
    a = np.linalg.det(t0)
    c = np.linalg.det(t1)
    b = np.linalg.det(t0 + t1) - a - c
    scale = max(abs(a), abs(b), abs(c))
    if scale <= ctx.zero_poly_tol:
        # singular pencil: every combination is singular; keep the heaviest one
        stack = np.stack([t0.ravel(), t1.ravel()], axis=1)
        _, _, vh = np.linalg.svd(stack)
        return [vh[0].conj()]
    disc = b * b - 4 * a * c
    double = abs(disc) <= ctx.root_merge_tol * scale**2
    vecs = []
    if abs(c) >= abs(a):
        # roots y/x of c y^2 + b y + a
        ys = [-b / (2 * c)] if double else np.roots([c, b, a])
        vecs = [np.array([1.0, y], dtype=complex) for y in ys]
    else:
        xs = [-b / (2 * a)] if double else np.roots([a, b, c])
        vecs = [np.array([x, 1.0], dtype=complex) for x in xs]
    return [v / np.linalg.norm(v) for v in vecs]


def _phase_fix(m: np.ndarray, lam0: float, tol: float) -> tuple[np.ndarray, np.ndarray, complex, complex]:
    """Diagonal phases making ``m[0,1], m[1,0], m[1,1]`` (and ``m[0,0]`` when
    possible) real and nonnegative.

    Returns ``(p2, p3, r0, r1)``: column phases for U2 and U3 and the row phases
    of the qubit-0 rotation.
    """
    # unknowns: theta2 (row phase of T1'), a1 (U2 col 1), c0, c1 (U3 cols); a0 = 0
    rows = {(0, 0): [1, 0, 1, 0], (0, 1): [1, 0, 0, 1], (1, 0): [1, -1, 1, 0], (1, 1): [1, -1, 0, 1]}
    eqs, rhs = [], []
    for key in [(0, 1), (1, 0), (1, 1), (0, 0)]:
        if abs(m[key]) > tol:
            eqs.append(rows[key])
            rhs.append(-np.angle(m[key]))
    if eqs:
        # any three of the four equations are independent, the fourth fixes phi
        sol = np.linalg.lstsq(np.array(eqs[:3], float), np.array(rhs[:3]), rcond=None)[0]
    else:
        sol = np.zeros(4)
    theta2, a1, c0, c1 = sol
    theta1 = -c0 if lam0 > tol else 0.0
    return (
        np.array([1.0, np.exp(1j * a1)]),
        np.array([np.exp(1j * c0), np.exp(1j * c1)]),
        np.exp(1j * theta1),
        np.exp(1j * theta2),
    )


def _candidate(gamma: np.ndarray, v: np.ndarray, ctx: NumericContext) -> AcinResult:
    u1d = _completion(v)
    tp = np.einsum("il,ljk->ijk", u1d, gamma)
    w, s, vh = np.linalg.svd(tp[0])
    lam0 = float(s[0])
    if lam0 <= ctx.norm_tol:
        # T0' vanishes: qubit 0 is |1>, diagonalize T1' instead
        w, _, vh = np.linalg.svd(tp[1])
        lam0 = 0.0
    u2, u3 = w, vh.conj().T
    m = u2.conj().T @ tp[1] @ u3
    p2, p3, r0, r1 = _phase_fix(m, lam0, ctx.norm_tol)
    u2 = u2 * p2
    u3 = u3 * p3
    u1d = np.diag([r0, r1]) @ u1d
    chain = LocalOpChain.product([u1d, u2.conj().T, u3.T])
    # read the form off the transformed state so that chain and form agree exactly
    g = apply_local(PureState.from_tensor(gamma), chain).tensor
    l1c = g[1, 0, 0]
    phi = float(np.angle(l1c)) if abs(l1c) > ctx.norm_tol else 0.0
    if abs(phi) <= 1e-15:
        phi = 0.0
    elif phi <= -np.pi + 1e-12:
        phi = np.pi
    lam = (abs(g[0, 0, 0]), abs(l1c), abs(g[1, 0, 1]), abs(g[1, 1, 0]), abs(g[1, 1, 1]))
    return AcinResult(AcinForm(lam, phi), chain)


def acin_canonical(state: PureState, ctx: NumericContext = DEFAULT) -> AcinResult:
    """Canonical form plus the local unitaries ``chain`` with
    ``apply_local(state, chain) == form.state()``.

    Of the two singular combinations, the one giving ``phi`` in [0, pi] is
    kept; if both qualify, larger ``l0`` wins and then smaller ``l1``.
    """
    require_qubits(state, 3)
    require_normalized(state, ctx.norm_tol)
    gamma = np.array(state.tensor)
    cands = [_candidate(gamma, v, ctx) for v in _pencil_roots(gamma[0], gamma[1], ctx)]
    cands = [c for c in cands if c.residual(state) <= 1e-8]
    if not cands:
        raise DegenerateInputError("no singular combination of the slices reproduced the state")

    def key(c: AcinResult):
        ok = -1e-12 <= c.form.phi <= np.pi + 1e-12
        return (not ok, -round(c.form.l0, 12), round(c.form.l1, 12))

    best = min(cands, key=key)
    if not (-1e-12 <= best.form.phi <= np.pi + 1e-12):
        raise DegenerateInputError(f"phase {best.form.phi:.6g} outside [0, pi] for every root")
    if best.form.phi < 0:
        best = AcinResult(AcinForm(best.form.lambdas, 0.0), best.chain)
    return best
