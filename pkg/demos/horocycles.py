"""
Horodiscs and horocyclic strips
===============================

A horodisc touches the unit circle, so no automorphism shrinks it into a
compact piece of the disc.  Its compressions keep producing eigenvalues all
over [0, 1) as the truncation grows.  A strip between two horocycles at the
same point has spectrum [0, c] with c given in closed form by the height ratio
of the strip in the half-plane picture.

Pass a directory as the first argument to also write SVG eigenvalue plots.
"""

import sys
from pathlib import Path

import numpy as np

from bergman_lab import Horodisc, HorocyclicStrip, horostrip_interval
from bergman_lab.io import eigenvalue_svg
from bergman_lab.toeplitz import sweep_spectra

out = Path(sys.argv[1]) if len(sys.argv) > 1 else None

print("horodisc of radius 1/2")
specs = sweep_spectra(Horodisc(0.0, 0.5), (32, 64, 128))
for s in specs:
    counts, _ = np.histogram(s.eigenvalues, bins=10, range=(0.0, s.top))
    print(f"  N={s.order:4d}  top {s.top:.6f}  bins {counts.tolist()}")

print("horocyclic strip between radii 1/4 and 1/2")
oracle = horostrip_interval(0.25, 0.5)
print(f"  closed-form endpoint {oracle.hi:.15f} (2/(3 sqrt 3) = {2 / 3 ** 1.5:.15f})")
strip = sweep_spectra(HorocyclicStrip(0.0, 0.25, 0.5), (32, 64, 128))
for s in strip:
    print(f"  N={s.order:4d}  top {s.top:.6f}  gap to endpoint {oracle.hi - s.top:.2e}")

if out:
    out.mkdir(parents=True, exist_ok=True)
    (out / "horodisc.svg").write_text(eigenvalue_svg(specs[-1].eigenvalues, "horodisc, N = 128",
                                                     [(1.0, "spectrum fills [0, 1]")]))
    (out / "strip.svg").write_text(eigenvalue_svg(strip[-1].eigenvalues, "strip, N = 128",
                                                  [(oracle.hi, "endpoint")]))
    print("plots written to", out)
