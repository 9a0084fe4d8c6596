"""Numerical tolerances used across the package.

A single :class:`NumericContext` carries every threshold so that callers (and
the command line front end) can override them in one place.
"""

from __future__ import annotations

from dataclasses import dataclass, replace


@dataclass(frozen=True)
class NumericContext:
    norm_tol: float = 1e-12
    symmetry_tol: float = 1e-8
    special_tol: float = 1e-10
    unitary_tol: float = 1e-10
    # below this three-tangle the GHZ-class pipeline is not attempted
    tangle_min: float = 1e-10
    # discriminant of det(x T0 + y T1) below this counts as a double root
    root_merge_tol: float = 1e-14
    w_pattern_tol: float = 1e-9
    cluster_radius: float = 1e-6
    multiplicity_reach: float = 0.2
    multiplicity_tol: float = 1e-12
    leading_cutoff: float = 1e-12
    zero_poly_tol: float = 1e-14
    radius_tol: float = 1e-12
    antipodal_tol: float = 1e-7

    def with_overrides(self, **kwargs: float) -> "NumericContext":
        return replace(self, **{k: v for k, v in kwargs.items() if v is not None})


DEFAULT = NumericContext()
