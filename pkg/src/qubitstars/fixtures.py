"""Named states used throughout the docs, tests and the command line.

Names take optional colon-separated parameters, for example ``gghz:0.314``
or ``gabcd:1,0,0,1``.  Every pure fixture is returned normalized.
"""

from __future__ import annotations

import numpy as np

from .errors import InvalidOperationError
from .invariants_n import CLUSTER_STATE, f_witness, g_abcd, l_state
from .mixed import nghz_density
from .qstate import DensityMatrix, PureState, dicke_state


def ghz(n: int) -> PureState:
    amp = np.zeros(2**n, dtype=complex)
    amp[0] = amp[-1] = 1 / np.sqrt(2)
    return PureState(amp)


def generalized_ghz(vartheta: float) -> PureState:
    """cos(t)|000> + sin(t)|111>."""
    amp = np.zeros(8, dtype=complex)
    amp[0], amp[7] = np.cos(vartheta), np.sin(vartheta)
    return PureState(amp)


def generalized_w(c: float, d: float, e: float) -> PureState:
    """c|001> + d|010> + e|100>, normalized."""
    return PureState([0, c, d, 0, e, 0, 0, 0]).normalized()


def _floats(args: list[str], count: int, name: str) -> list[float]:
    if len(args) != count:
        raise InvalidOperationError(f"{name} takes {count} parameter(s), got {len(args)}")
    try:
        return [float(a) for a in args]
    except ValueError as exc:
        raise InvalidOperationError(f"bad parameter for {name}: {exc}") from None


def _complexes(args: list[str], count: int, name: str) -> list[complex]:
    if len(args) != count:
        raise InvalidOperationError(f"{name} takes {count} parameter(s), got {len(args)}")
    try:
        return [complex(a.replace("i", "j").replace(" ", "")) for a in args]
    except ValueError as exc:
        raise InvalidOperationError(f"bad parameter for {name}: {exc}") from None


FIXTURE_NAMES = ("ghz3", "w3", "gghz", "gw", "ghz4", "cluster4", "l4", "gabcd", "nghz", "f5")


def fixture(text: str) -> PureState | DensityMatrix:
    """Build a named fixture; ``nghz:N`` yields a spin-N/2 density matrix."""
    name, _, params = text.strip().partition(":")
    args = [p for p in params.split(",")] if params else []
    if name == "ghz3":
        return ghz(3)
    if name == "w3":
        return dicke_state(3, 1)
    if name == "gghz":
        (t,) = _floats(args, 1, name)
        return generalized_ghz(t)
    if name == "gw":
        c, d, e = _floats(args, 3, name)
        return generalized_w(c, d, e)
    if name == "ghz4":
        return ghz(4)
    if name == "cluster4":
        return CLUSTER_STATE
    if name == "l4":
        return l_state()
    if name == "gabcd":
        return g_abcd(*_complexes(args, 4, name)).normalized()
    if name == "nghz":
        (n,) = _floats(args, 1, name)
        if n != int(n) or n < 1:
            raise InvalidOperationError("nghz needs a positive integer N")
        return nghz_density(int(n))
    if name == "f5":
        return f_witness()
    raise InvalidOperationError(f"unknown fixture {name!r}; known: {', '.join(FIXTURE_NAMES)}")
