"""
Four and five qubits: polynomial invariants
===========================================
"""

# %%
import numpy as np

from qubitstars import constellation_of, four_invariants, inv5_F, symmetric_to_spin
from qubitstars.fixtures import fixture
from qubitstars.invariants_n import f_witness, g_abcd, l_parameters, l_state_symmetrized, symmetrizable_generic
from qubitstars.qstate import random_symmetric_state

# %%
# H, L, M and D on a member of the generic family.
inv = four_invariants(g_abcd(1, 0.5j, 0.2, -0.3))
for name in "HLMD":
    print(name, np.round(getattr(inv, name), 6))

# %%
# GHZ on four qubits: four stars evenly spaced on the equator.
for s in constellation_of(symmetric_to_spin(fixture("ghz4"))).stars:
    print(f"theta={s.theta:.4f}  phi={s.phi / np.pi:.3f} pi")

# %%
# |L> is locally equivalent to a symmetric state, so it has a constellation too.
_, lp = l_state_symmetrized()
print("symmetrizable:", symmetrizable_generic(*l_parameters()))
for s in constellation_of(symmetric_to_spin(lp)).stars:
    print(f"theta={s.theta:.4f}  phi={s.phi:.4f}")

# %%
# The five-qubit invariant F is odd under swaps, so it dies on symmetric states.
print("F(witness) =          ", inv5_F(f_witness()))
print("F(random symmetric) =", inv5_F(random_symmetric_state(5, np.random.default_rng(3))))
