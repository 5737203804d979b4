"""Bell-diagonal states as points in a tetrahedron.

A Bell-diagonal two-qubit state is a mixture of the four Bell states, so a
weight vector lambda on the probability simplex.  In correlation coordinates
(-<xx>, -<yy>, -<zz>) the simplex becomes a regular tetrahedron whose corners
are the Bell states; the state is entangled exactly when one weight exceeds
1/2, i.e. outside the central octahedron.
"""

import numpy as np

from slocc import (canonical_order, coords_to_weights, density_to_weights,
                   is_entangled_bd, weights_to_coords, weights_to_density)

rng = np.random.default_rng(0)

print("Bell-state corners of the tetrahedron:")
for k in range(4):
    e = np.zeros(4)
    e[k] = 1.0
    print(f"  Phi_{k + 1} -> {tuple(int(c) for c in weights_to_coords(e))}")

lam = np.array([0.7, 0.1, 0.1, 0.1])
rho = weights_to_density(lam)
print(f"\nworked state lambda = {lam}")
print(f"  density matrix diagonal: {np.real(np.diag(rho)).round(3)}")
print(f"  coordinates: {weights_to_coords(lam).round(3)}")
print(f"  entangled: {is_entangled_bd(lam)}")

back = density_to_weights(rho)
print(f"  weights recovered from the density matrix: {back.round(12)}")

print("\nrandom points and the octahedron boundary:")
for _ in range(5):
    lam = rng.dirichlet(np.ones(4))
    ordered, perm = canonical_order(lam)
    xyz = weights_to_coords(lam)
    tag = "entangled" if is_entangled_bd(lam) else "separable"
    print(f"  lambda={lam.round(3)}  max weight {ordered[0]:.3f}  {tag}")
    assert np.abs(coords_to_weights(xyz) - lam).max() < 1e-9

# the maximally mixed state sits at the tetrahedron centroid
print(f"\ncentroid check: {weights_to_coords(np.full(4, 0.25))}")
