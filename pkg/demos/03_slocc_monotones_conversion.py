"""Deciding Bell-diagonal SLOCC conversions with three monotones.

For ordered entangled weight vectors the conversion lambda -> lambda' is
possible exactly when E1 = lambda_1, E2 = (1-2 lambda_2)/(lambda_3+lambda_4)
and E3 = (1-2 lambda_2-2 lambda_3)/lambda_4 all refuse to increase.  A YES
comes with an explicit separable map (an r-matrix acting linearly on the
weights); the decision is cross-checked against an LP over the reachable
polytope's vertices.
"""

import numpy as np

from slocc import (can_convert_bd, lp_oracle_membership, map_action_bd,
                   monotones, plambda_vertices)

src = np.array([0.7, 0.1, 0.1, 0.1])
dst = np.array([0.6, 0.2, 0.1, 0.1])

for name, lam in (("source", src), ("target", dst)):
    e1, e2, e3 = monotones(lam).as_floats()
    print(f"{name} {lam}: E1={e1:.3f}  E2={e2:.3f}  E3={e3:.3f}")

decision = can_convert_bd(src, dst)
print(f"\nsource -> target: {'YES' if decision.convertible else 'NO'}")
print("realizing r-matrix:")
print(decision.rmatrix.round(6))
image, weight = map_action_bd(decision.rmatrix, src)
print(f"replayed image: {image.round(12)} (success weight {weight:.3f})")

reverse = can_convert_bd(dst, src)
print(f"\ntarget -> source: {'YES' if reverse.convertible else 'NO'}, "
      f"violated monotone: {reverse.violated_monotone}")

# the monotone decision coincides with polytope membership
print(f"\nreachable polytope of the source has "
      f"{len(plambda_vertices(src))} vertices")
rng = np.random.default_rng(1)
agree = 0
for _ in range(200):
    lam = np.sort(rng.dirichlet(np.ones(4)))[::-1]
    if lam[0] <= 0.5:
        lam[0], lam[3] = lam[0] + 0.3, max(lam[3] - 0.3, 0.0)
        lam = np.sort(lam / lam.sum())[::-1]
    mono = can_convert_bd(src, lam, with_map=False).convertible
    agree += mono == lp_oracle_membership(src, lam)
print(f"monotones vs LP oracle on 200 random targets: {agree}/200 agree")
