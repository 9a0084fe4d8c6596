"""
Mixed states: one constellation per multipole rank
==================================================
"""

# %%
import numpy as np

from qubitstars import mixed_constellations, spherical_decompose
from qubitstars.mixed import bloch_density, nghz_density

# %%
# A single qubit: one rank and two antipodal stars. With this pole convention
# they lie on the Bloch axis reflected through the equatorial plane.
rho = bloch_density([0.3, -0.4, 0.5])
(sphere,) = mixed_constellations(rho)
print("radius", sphere.radius, "vs |r|/sqrt2", np.linalg.norm([0.3, -0.4, 0.5]) / np.sqrt(2))
print(np.round(sphere.constellation.vectors(), 4))

# %%
# Projector onto an N-GHZ state of spin 3/2: ranks 2 and 3 survive.
d = spherical_decompose(nghz_density(3))
print("radii by rank:", np.round(d.radii, 4))
for s in mixed_constellations(nghz_density(3)):
    print(f"k={s.k} r={s.radius:.4f} stars={len(s.constellation.stars)} antipodal defect={s.antipodal_defect:.1e}")

# %%
# Reconstruction from the multipoles is exact.
print("roundtrip error", np.abs(d.reconstruct() - nghz_density(3).rho).max())
