"""SL(2,C) chains that map three-qubit states onto permutation-symmetric ones
without changing the three-tangle.

GHZ class (nonzero tangle), starting from the canonical form:

1. ``M`` on qubit 2 makes the state symmetric in qubits 1 and 2;
2. ``M'`` on qubit 0 makes it fully symmetric, ``A(|000> + y|nnn>)``;
3. ``M''`` on every qubit rotates ``|n>`` to ``|1>`` and leaves
   ``cos(t)|000> + sin(t)|111>`` with ``sin^2(2t)`` equal to the tangle.

W class: ``c|001> + d|010> + e|100>`` is balanced by diagonal squeezes on
qubits 0 and 2.

The builders return the matrices in the column convention of
:func:`qubitstars.qstate.apply_local`; the conventional row form
``|i> -> sum_j M_ij |j>`` is their transpose.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .acin import AcinForm, AcinResult, acin_canonical, tangle_from_acin
from .context import DEFAULT, NumericContext
from .errors import NotSymmetrizableError, WrongClassError
from .invariants3 import three_tangle
from .qstate import LocalOp, LocalOpChain, PureState, apply_local, require_normalized, require_qubits


class ClassTag(str, enum.Enum):
    GHZ_CLASS = "GHZ_CLASS"
    W_CLASS = "W_CLASS"


@dataclass(frozen=True)
class SymmetrizationResult:
    """Outcome of a symmetrization.

    ``apply_local(input, chain) == scale * output`` holds exactly; ``output``
    is normalized and ``scale`` carries the global phase (and, for the W
    branch, the norm change produced by the squeezes).
    """

    input_form: AcinForm | None
    chain: LocalOpChain
    output: PureState
    vartheta: float
    class_tag: ClassTag
    scale: complex = 1.0
    renormalized: bool = False

    def composite(self) -> list[np.ndarray]:
        return self.chain.composite(3)

    def max_det_defect(self) -> float:
        return max(abs(np.linalg.det(m) - 1.0) for m in self.composite())


def build_M(form: AcinForm, gamma: float) -> LocalOpChain:
    if form.l4 <= 0:
        raise WrongClassError("M needs l4 > 0 (W-class input)")
    if gamma <= 0:
        raise ValueError("gamma must be positive")
    g = (form.l2 / gamma - form.l3 * gamma) / form.l4
    return LocalOpChain.of((2, np.array([[gamma, 0.0], [g, 1.0 / gamma]]).T))


def build_Mprime(form: AcinForm) -> LocalOpChain:
    l0, l2, l4 = form.l0, form.l2, form.l4
    if l0 <= 0 or l4 <= 0:
        raise WrongClassError("M' needs l0 l4 > 0")
    delta = form.delta
    a = 1.0 / l4**2 - delta * l2 / l0
    b = -delta * l4 / l0
    return LocalOpChain.of((0, np.array([[a, b], [l2 * l4, l4**2]]).T))


def build_Mdoubleprime(form: AcinForm) -> LocalOpChain:
    if form.l4 <= 0:
        raise WrongClassError("M'' needs l4 > 0")
    mat = np.array([[1.0, 0.0], [-form.l2 / form.l4, 1.0]]).T
    return LocalOpChain.of((0, mat), (1, mat), (2, mat))


def gamma_and_nu(form: AcinForm) -> tuple[float, float, float]:
    """``(gamma, nu1, nu2)`` with ``nu1^2 + nu2^2 = 1`` and ``nu1 nu2 = l0 l4``."""
    l0, l4 = form.l0, form.l4
    if l0 <= 0 or l4 <= 0:
        raise WrongClassError("gamma is defined only for l0 l4 > 0")
    # 1 - 4 l0^2 l4^2 written without cancellation (uses sum l^2 = 1)
    rest = form.l1**2 + form.l2**2 + form.l3**2
    rad = (l0**2 - l4**2) ** 2 + 2.0 * (l0**2 + l4**2) * rest + rest**2
    if rad < -1e-12:
        raise ValueError(f"1 - 4 l0^2 l4^2 = {rad:.3g} is negative")
    root = np.sqrt(max(rad, 0.0))
    nu1 = np.sqrt(0.5 + 0.5 * root)
    # nu2 from the product keeps full relative accuracy when the tangle is small
    nu2 = l0 * l4 / nu1
    return float(l4**2 * nu1 / l0), float(nu1), float(nu2)


def _ghz_output(vartheta: float) -> PureState:
    amp = np.zeros(8, dtype=complex)
    amp[0], amp[7] = np.cos(vartheta), np.sin(vartheta)
    return PureState(amp)


def _finish(image: PureState, target: PureState) -> tuple[complex, float]:
    """Global factor between the chain image and the normalized target, and the
    distance left over after removing it."""
    scale = target.inner(image)
    drift = float(np.linalg.norm(image.amp - scale * target.amp))
    return scale, drift


def symmetrize_ghz_class(form: AcinForm, ctx: NumericContext = DEFAULT) -> SymmetrizationResult:
    if tangle_from_acin(form) <= ctx.tangle_min:
        raise WrongClassError(f"three-tangle {tangle_from_acin(form):.3g} is below the GHZ-class threshold")
    gamma, nu1, nu2 = gamma_and_nu(form)
    chain = build_M(form, gamma).then(build_Mprime(form)).then(build_Mdoubleprime(form))
    image = apply_local(form.state(), chain)
    vartheta = float(np.arctan2(nu2, nu1))
    target = _ghz_output(vartheta)
    scale, drift = _finish(image, target)
    renorm = drift > 1e-9
    return SymmetrizationResult(form, chain, target, vartheta, ClassTag.GHZ_CLASS, scale, renorm)


def _w_chain(c: float, d: float, e: float) -> LocalOpChain:
    alpha = np.sqrt(e / d)
    beta = np.sqrt(c / d)
    return LocalOpChain.of((0, np.diag([alpha, 1 / alpha])), (2, np.diag([beta, 1 / beta])))


W_STATE = PureState(np.array([0, 1, 1, 0, 1, 0, 0, 0]) / np.sqrt(3))


def symmetrize_w_class(c: float, d: float, e: float) -> SymmetrizationResult:
    """Symmetrize ``c|001> + d|010> + e|100>`` (all amplitudes positive)."""
    if min(c, d, e) <= 0:
        raise ValueError("generalized W amplitudes must be positive")
    chain = _w_chain(c, d, e)
    image = apply_local(PureState([0, c, d, 0, e, 0, 0, 0]), chain)
    scale = W_STATE.inner(image)
    return SymmetrizationResult(None, chain, W_STATE, 0.0, ClassTag.W_CLASS, scale, True)


def _special(chain: LocalOpChain) -> LocalOpChain:
    """Rescale every operation by det^{-1/2}; changes the state by a global phase."""
    return LocalOpChain(tuple(LocalOp(op.slot, op.mat / np.sqrt(op.det)) for op in chain))


def _describe_degenerate(form: AcinForm, tol: float) -> str:
    l = np.array(form.lambdas)
    if np.count_nonzero(l > tol) <= 1 or (l[0] <= tol and abs(l[1] * l[4]) <= tol):
        return "product state"
    if l[0] <= tol:
        return "biseparable state (qubit 0 factors out)"
    if l[2] <= tol and l[4] <= tol:
        return "biseparable state (qubit 2 factors out)"
    if l[3] <= tol and l[4] <= tol:
        return "biseparable state (qubit 1 factors out)"
    return "zero-tangle state outside the generalized-W pattern"


def symmetrize(state: PureState, ctx: NumericContext = DEFAULT) -> SymmetrizationResult:
    """Canonical form, then the GHZ- or W-class chain.

    The recorded chain is special linear on every slot: the canonical-form
    unitaries are rescaled by ``det^{-1/2}``.
    """
    require_qubits(state, 3)
    require_normalized(state, ctx.norm_tol)
    acin: AcinResult = acin_canonical(state, ctx)
    form = acin.form
    lead = _special(acin.chain)
    if three_tangle(state) > ctx.tangle_min and tangle_from_acin(form) > ctx.tangle_min:
        res = symmetrize_ghz_class(form, ctx)
        chain = lead.then(res.chain)
        image = apply_local(state, chain)
        scale = res.output.inner(image)
        return SymmetrizationResult(form, chain, res.output, res.vartheta, ClassTag.GHZ_CLASS, scale, res.renormalized)

    tol = ctx.w_pattern_tol
    l0, l1, l2, l3, l4 = form.lambdas
    if l4 > tol or min(l0, l2, l3) <= tol:
        raise NotSymmetrizableError(
            f"three-tangle vanishes and no construction applies: {_describe_degenerate(form, tol)}"
        )
    # clear the |100> term, then flip qubit 0: l0|100> + l2|001> + l3|010>
    shear = [[1.0, 0.0], [-l1 * np.exp(1j * form.phi) / l0, 1.0]]
    flip = [[0.0, 1j], [1j, 0.0]]
    cleanup = LocalOpChain.of((0, shear), (0, flip))
    gw = apply_local(form.state(), cleanup)
    ref = 1j * PureState([0, l2, l3, 0, l0, 0, 0, 0]).amp
    if np.linalg.norm(gw.amp - ref) > tol:
        raise NotSymmetrizableError("canonical form did not reduce to the generalized-W pattern")
    w = symmetrize_w_class(l2, l3, l0)
    chain = lead.then(cleanup).then(w.chain)
    image = apply_local(state, chain)
    scale = W_STATE.inner(image)
    return SymmetrizationResult(form, chain, W_STATE, 0.0, ClassTag.W_CLASS, scale, True)
