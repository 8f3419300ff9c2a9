"""
Subdiscs of the unit disc
=========================

A disc compactly inside the unit disc is a hyperbolic disc, so a disc
automorphism moves it to a centered disc of radius q and the spectrum is
q^2, q^4, q^6, ...  The Galerkin compression sees the same numbers even
though the off-center Gram matrix is dense.
"""

import numpy as np

from bergman_lab import Disc, MoebiusMap, compress, eigensolve, offcenter_disc_spectrum
from bergman_lab.toeplitz import moebius_image

region = Disc(0.3, 0.2)
g = compress(region, 80)
print("Gram entries above 1e-12:", np.count_nonzero(np.abs(g.entries) > 1e-12), "of", 80 * 80)

numeric = eigensolve(g).eigenvalues[:5]
exact = offcenter_disc_spectrum(region.center, region.radius).values(5)
for k, (a, b) in enumerate(zip(numeric, exact)):
    print(f"  k={k}  galerkin {a:.12e}  closed form {b:.12e}  rel dev {abs(a - b) / b:.1e}")

# move the disc around with automorphisms; the top eigenvalue stays put
for a in (0.2, 0.5j, -0.6 + 0.1j):
    img = moebius_image(region, MoebiusMap(a, 0.0))
    top = eigensolve(compress(img, 80)).top
    print(f"image under a={a}: center {img.center:.3f}, radius {img.radius:.3f}, top eigenvalue {top:.10f}")
