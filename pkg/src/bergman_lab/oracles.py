"""Closed-form spectral data used as ground truth for the Galerkin engine.

Includes the multiplier functions of strips and wedges in the upper
half-plane picture, their suprema, and norm bounds for balls.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import DomainError

INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class OracleResult:
    """Closed-form spectral data.

    ``kind`` is ``"sequence"`` (``generator`` maps an index to an eigenvalue),
    ``"interval"`` (``lo``, ``hi``) or ``"bounds"`` (``lo`` = lower and
    ``hi`` = upper norm bound).
    """

    kind: str
    provenance: str
    lo: float = 0.0
    hi: float = 0.0
    generator: Callable | None = field(default=None, compare=False, repr=False)
    extras: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.kind == "interval" and not 0.0 <= self.lo <= self.hi <= 1.0:
            raise DomainError("interval must satisfy 0 <= lo <= hi <= 1", lo=self.lo, hi=self.hi)
        if self.kind == "bounds" and not 0.0 < self.lo <= self.hi <= 1.0:
            raise DomainError("bounds must satisfy 0 < lower <= upper <= 1", lo=self.lo, hi=self.hi)

    def values(self, count: int) -> np.ndarray:
        if self.generator is None:
            raise DomainError("oracle has no eigenvalue sequence")
        return np.array([self.generator(k) for k in range(count)])

    def to_json(self, count: int = 8) -> dict:
        out = {"kind": self.kind, "provenance": self.provenance}
        if self.kind == "sequence":
            out["eigenvalues"] = [float(v) for v in self.values(count)]
        elif self.kind == "interval":
            out["lo"], out["hi"] = float(self.lo), float(self.hi)
        else:
            out["lower"], out["upper"] = float(self.lo), float(self.hi)
        out.update({k: v for k, v in self.extras.items()})
        return out


def golden_section_max(f: Callable, a: float, b: float, tol: float = 1e-12, max_iter: int = 200):
    """Maximize a unimodal ``f`` on ``[a, b]``; returns ``(x, f(x))``."""
    c = b - INVPHI * (b - a)
    d = a + INVPHI * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(max_iter):
        if abs(b - a) <= tol * max(1.0, abs(c) + abs(d)):
            break
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - INVPHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INVPHI * (b - a)
            fd = f(d)
    x = 0.5 * (a + b)
    return float(x), float(f(x))


def _grid_then_golden(f: Callable, grid: np.ndarray, tol: float = 1e-12):
    """Maximize ``f`` over a grid, then polish inside the bracketing cell."""
    vals = np.array([f(x) for x in grid])
    i = int(np.argmax(vals))
    lo = grid[max(i - 1, 0)]
    hi = grid[min(i + 1, len(grid) - 1)]
    x, fx = golden_section_max(f, lo, hi, tol)
    if fx < vals[i]:
        return float(grid[i]), float(vals[i]), float(vals[i])
    return x, fx, float(vals[i])


# ---------------------------------------------------------------------------
# Eigenvalue sequences.


def dilation_spectrum(n: int, rho: float) -> OracleResult:
    """Eigenvalues ``rho^(2(|alpha| + n))`` of a dilated complete Reinhardt domain, by degree."""
    if not 0.0 < rho < 1.0:
        raise DomainError("rho must be in (0, 1)", rho=rho)
    if n < 1:
        raise DomainError("dimension must be >= 1", n=n)
    return OracleResult("sequence", "dilation of a complete Reinhardt domain",
                        generator=lambda k: rho ** (2 * (k + n)),
                        extras={"restriction_norm": rho ** n})


def offcenter_disc_spectrum(z0: complex, r: float) -> OracleResult:
    """Eigenvalues ``((A-1)/(A+1))^(2k+2)`` of a disc compactly inside the unit disc."""
    m = abs(complex(z0))
    if not r > 0:
        raise DomainError("radius must be positive", r=r)
    if m + r >= 1.0:
        raise DomainError("disc must be compactly contained in the unit disc", z0=complex(z0), r=r)
    big_a = math.sqrt((1 + m + r) * (1 - m + r) / ((1 - m - r) * (1 + m - r)))
    q = (big_a - 1) / (big_a + 1)
    return OracleResult("sequence", "subdisc of the unit disc via hyperbolic recentering",
                        generator=lambda k: q ** (2 * k + 2), extras={"A": big_a, "ratio": q})


# ---------------------------------------------------------------------------
# Horocyclic strips.


def gamma_strip(a_lo: float, a_hi: float, x: float) -> float:
    """Multiplier ``exp(-2x a_lo) - exp(-2x a_hi)`` of the strip ``a_lo < Im z < a_hi``."""
    if not 0.0 < a_lo < a_hi:
        raise DomainError("need 0 < a_lo < a_hi", a_lo=a_lo, a_hi=a_hi)
    if not x > 0:
        raise DomainError("x must be positive", x=x)
    head = math.exp(-2.0 * x * a_lo)
    if math.isinf(a_hi):
        return head
    return -head * math.expm1(-2.0 * x * (a_hi - a_lo))


def horostrip_ratio(rho1: float, rho2: float) -> float:
    if not 0.0 < rho1 < rho2 < 1.0:
        raise DomainError("need 0 < rho1 < rho2 < 1", rho1=rho1, rho2=rho2)
    return (1.0 / rho1 - 1.0) / (1.0 / rho2 - 1.0)


def horostrip_endpoint(rho1: float, rho2: float) -> float:
    """``alpha^(-1/(alpha-1)) - alpha^(-alpha/(alpha-1))`` with ``alpha`` the height ratio."""
    al = horostrip_ratio(rho1, rho2)
    la = math.log(al) / (al - 1.0)
    return math.exp(-la) - math.exp(-al * la)


def horostrip_numeric_sup(rho1: float, rho2: float, tol: float = 1e-12) -> tuple[float, float]:
    """Golden-section supremum of the strip multiplier (heights scaled to ``a_lo = 1``)."""
    al = horostrip_ratio(rho1, rho2)

    def f(u):
        return gamma_strip(1.0, al, math.exp(u))

    grid = np.linspace(-40.0, 40.0, 8001) * math.log(10.0)
    u, fx, _ = _grid_then_golden(f, grid, tol)
    return math.exp(u), fx


def horostrip_interval(rho1: float, rho2: float, check: bool = True) -> OracleResult:
    """Spectrum ``[0, hi]`` of a horocyclic strip, cross-checked numerically."""
    al = horostrip_ratio(rho1, rho2)
    hi = horostrip_endpoint(rho1, rho2)
    x_crit = math.log(al) / (2.0 * (al - 1.0))
    extras = {"alpha": al, "x_crit": x_crit}
    if check:
        x_num, sup = horostrip_numeric_sup(rho1, rho2)
        extras.update(numeric_sup=sup, x_numeric=x_num)
        if abs(sup - hi) > 1e-10:
            raise DomainError("closed-form and numeric strip suprema disagree", closed=hi, numeric=sup)
    return OracleResult("interval", "horocyclic strip multiplier supremum", 0.0, hi, extras=extras)


# ---------------------------------------------------------------------------
# Hypercyclic lunes.


def _check_ab(a: float, b: float):
    if not 0.0 <= a < b <= 1.0:
        raise DomainError("need 0 <= a < b <= 1", a=a, b=b)


def gamma_wedge_log(a: float, b: float, t: float) -> float:
    """``(xi^b - xi^a)/(xi - 1)`` as a function of ``t = ln xi``."""
    if t > 0:
        return math.exp((b - 1.0) * t) * (-math.expm1((a - b) * t)) / (-math.expm1(-t))
    if t < 0:
        return math.exp(a * t) * (-math.expm1((b - a) * t)) / (-math.expm1(t))
    return b - a


def gamma_wedge(a: float, b: float, lam: float) -> float:
    """Multiplier of the wedge ``pi*a < arg w < pi*b`` at spectral parameter ``lam``.

    Equals ``(xi^b - xi^a)/(xi - 1)`` with ``xi = exp(-2 pi lam)``; the value at
    ``lam = 0`` is the limit ``b - a``.
    """
    _check_ab(a, b)
    return gamma_wedge_log(a, b, -2.0 * math.pi * lam)


def lune_norm(a: float, b: float) -> OracleResult:
    """Spectrum ``[0, c]`` of a lune with normalized wedge angles ``a < b``.

    ``c`` is the supremum of the wedge multiplier over ``xi > 0``, located on
    a grid of ``log10 xi`` in ``[-40, 40]`` with step 0.01 and polished by
    golden section.  Crescents (``a = 0`` or ``b = 1``) have spectrum
    ``[0, 1]``; their grid supremum is reported alongside, with a flag telling
    whether it is within 1e-3 of 1.  Very thin crescents (``b - a`` below about
    0.075) cannot reach that on a finite grid since the approach is like
    ``xi^(b-a)``.
    """
    _check_ab(a, b)
    grid = np.linspace(-40.0, 40.0, 8001) * math.log(10.0)

    def f(t):
        return gamma_wedge_log(a, b, t)

    t, c, grid_sup = _grid_then_golden(f, grid)
    extras = {"a": a, "b": b, "numeric_sup": c, "grid_sup": grid_sup, "argmax_log_xi": t}
    if a == 0.0 or b == 1.0:
        extras["grid_approaches_one"] = grid_sup >= 1.0 - 1e-3
        return OracleResult("interval", "hypercyclic crescent", 0.0, 1.0, extras=extras)
    return OracleResult("interval", "hypercyclic lune multiplier supremum", 0.0, min(c, 1.0),
                        extras=extras)


# ---------------------------------------------------------------------------
# Balls.


def ball_bounds(n: int, big_r: float, r: float, delta: float) -> OracleResult:
    """Bounds ``(r/R)^n <= ||R_U|| <= (delta/R)^((n-1)/2)`` for a ball inside a ball.

    ``r`` and ``R`` are the radii of the inner and outer balls, ``delta`` the
    distance from the inner center to the outer boundary.  Concentric balls
    have ``delta = R``; internally tangent balls have ``delta = r``.
    """
    if n < 1:
        raise DomainError("dimension must be >= 1", n=n)
    if not 0.0 < r <= delta <= big_r:
        raise DomainError("need 0 < r <= delta <= R", r=r, delta=delta, R=big_r)
    lower = (r / big_r) ** n
    upper = (delta / big_r) ** ((n - 1) / 2.0)
    return OracleResult("bounds", "ball inside a ball", lower, upper)


def slice_norm(n: int, r: float, delta: float, z: complex) -> float:
    """Norm of the one-variable slice operator at ``z`` (outer ball normalized to radius 1)."""
    z = complex(z)
    if abs(z - delta) >= r:
        raise DomainError("point outside the projected disc", z=z, r=r, delta=delta)
    ratio = (r * r - abs(z - delta) ** 2) / (1.0 - abs(z - 1.0) ** 2)
    return ratio ** ((n - 1) / 2.0)
