"""Entanglement invariants and Majorana star constellations for few-qubit states."""

from .acin import AcinForm, AcinResult, acin_canonical, tangle_from_acin
from .context import DEFAULT, NumericContext
from .errors import (
    DegenerateInputError,
    InvalidOperationError,
    InvalidStateError,
    NotSymmetricError,
    NotSymmetrizableError,
    QubitStarsError,
    WrongClassError,
    ZeroPolynomialError,
)
from .fixtures import fixture
from .invariants3 import concurrence2, hyperdet3, schmidt2, three_tangle
from .invariants_n import FourInvariants, four_invariants, inv5_F, reduced_density, symmetrizable_generic
from .majorana import (
    Constellation,
    Star,
    constellation_from_polynomial,
    constellation_of,
    majorana_polynomial,
    symmetric_state_from_stars,
    tangle_from_stars,
)
from .mixed import mixed_constellations, spherical_decompose
from .qstate import (
    DensityMatrix,
    LocalOp,
    LocalOpChain,
    PureState,
    SpinState,
    apply_local,
    spin_to_symmetric,
    symmetric_to_spin,
    symmetry_defect,
)
from .symmetrize import ClassTag, SymmetrizationResult, symmetrize

__version__ = "0.1.0"
