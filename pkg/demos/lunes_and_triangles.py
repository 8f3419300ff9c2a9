"""
Lunes, crescents and ideal triangles
====================================

A lune between two hypercycles with common endpoints becomes a wedge
pi*a < arg w < pi*b in the half-plane.  Its norm is the supremum of
(xi^b - xi^a)/(xi - 1) over xi > 0, which stays below 1 unless the lune
reaches the boundary circle (a crescent).

An ideal triangle has finite hyperbolic area pi, and the trace of its
Toeplitz operator is area / (4 pi) = 1/4.
"""

import numpy as np

from bergman_lab import HypercyclicLune, IdealPolygon, compress, eigensolve, lune_norm, trace_by_formula

print("lune norms c(a, b)")
grid = np.round(np.linspace(0.1, 0.9, 5), 2)
print("  a\\b " + "".join(f"{b:>9.2f}" for b in grid))
for a in grid:
    row = "".join(f"{lune_norm(a, b).hi:9.5f}" if a < b else " " * 9 for b in grid)
    print(f"  {a:4.2f}" + row)

for b in (0.5, 0.1, 0.05):
    c = lune_norm(0.0, b)
    print(f"crescent (0, {b}): grid sup {c.extras['grid_sup']:.6f}, within 1e-3 of 1: "
          f"{c.extras['grid_approaches_one']}")

lune = HypercyclicLune(-1, 1, 0.2 * np.pi, 0.7 * np.pi)
for n in (16, 32, 48):
    print(f"lune (0.2, 0.7) Galerkin top eigenvalue N={n}: {eigensolve(compress(lune, n)).top:.6f}"
          f"  (norm {lune_norm(0.2, 0.7).hi:.6f})")

tri = IdealPolygon.regular(3)
value, err = trace_by_formula(tri)
print(f"ideal triangle trace {value:.8f} +- {err:.1e}")
eig = eigensolve(compress(tri, 48, method="slice")).eigenvalues
print(f"sum of the first 48 compression eigenvalues {eig.sum():.6f}")
