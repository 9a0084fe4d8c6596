"""
Three qubits: from an arbitrary state to its star triangle
==========================================================

A random three-qubit state is pushed through the canonical form and the
symmetrizing chain, and the three-tangle is read off three different ways.
"""

# %%
import numpy as np

from qubitstars import acin_canonical, constellation_of, hyperdet3, symmetric_to_spin, symmetrize, tangle_from_stars
from qubitstars.acin import tangle_from_acin
from qubitstars.fixtures import fixture
from qubitstars.qstate import random_state

rng = np.random.default_rng(7)
psi = random_state(3, rng)
print("amplitudes:", np.round(psi.amp, 3))

# %%
# Canonical form by local unitaries: five real weights and one phase.
form = acin_canonical(psi).form
print("lambdas:", np.round(form.lambdas, 4), "phi:", round(form.phi, 4))

# %%
# Symmetrize with determinant-one local maps, then place the stars.
res = symmetrize(psi)
stars = constellation_of(symmetric_to_spin(res.output))
for s in stars.stars:
    print(f"theta={s.theta:.4f}  phi={s.phi:.4f}  mult={s.multiplicity}")

# %%
# Three independent routes to the same number.
print("4|hyperdet|  ", 4 * abs(hyperdet3(psi)))
print("4 l0^2 l4^2  ", tangle_from_acin(form))
print("from stars   ", tangle_from_stars(stars))

# %%
# The W class collapses two stars onto one point, so the tangle vanishes.
w = symmetrize(fixture("gw:0.2,0.5,0.8")).output
print([(round(s.theta, 6), s.multiplicity) for s in constellation_of(symmetric_to_spin(w)).stars])
