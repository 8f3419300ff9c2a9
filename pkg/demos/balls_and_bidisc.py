"""
Several variables
=================

In the unit ball the norm of restricting to a smaller ball B(p, r) sits
between (r/R)^n and (delta/R)^((n-1)/2), where delta is the distance from p
to the boundary.  The product region {|z1| < rho1, rho2 < |z2| < 1} of the
bidisc is Reinhardt, so its spectrum is explicit and its norm is rho1 even
though the region touches the distinguished boundary.
"""

import math

import numpy as np

from bergman_lab import AmbientDomain, DilatedCopy, ProductRegion, ball_bounds, compress

for n in (1, 2, 3, 4):
    b = ball_bounds(n, 1.0, 0.5, 0.5)
    print(f"n={n}: tangent ball of radius 1/2, {b.lo:.4f} <= ||R|| <= {b.hi:.4f}")

ball = AmbientDomain.unit_ball(2)
g = compress(DilatedCopy(0.5), 10, ball)
print("concentric ball of radius 1/2 in C^2, eigenvalues by degree:")
for alpha, lam in zip(g.index_list, np.diag(g.entries).real):
    print(f"  alpha={alpha}  {lam:.6g}")

bidisc = AmbientDomain.polydisc((1.0, 1.0))
region = ProductRegion(((0.0, 0.6), (0.4, 1.0)))
diag = np.diag(compress(region, 41 * 42 // 2, bidisc).entries).real
print(f"bidisc product region: sup of eigenvalues {diag.max():.15f}, norm {math.sqrt(diag.max()):.15f}")
