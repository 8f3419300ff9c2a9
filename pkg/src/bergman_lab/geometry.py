"""Ambient domains, subregions of the unit disc, and conformal maps.

Regions are immutable descriptions.  For planar ambients each region compiles
to a small boolean tree of *atoms* (open discs, disc exteriors, half-planes,
opaque predicates).  The tree answers three questions used elsewhere:

* pointwise membership (vectorized over complex arrays),
* conservative classification of axis-aligned boxes (inside / outside / mixed),
  which drives the adaptive cell quadrature,
* the exact set of angles ``theta`` with ``s*exp(i*theta)`` in the region,
  which drives the radial trace integral and slice-based Gram matrices.

All sets are open; points on a defining circle are classified as outside.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Callable, ClassVar, Sequence

import numpy as np

from .errors import DiameterCase, DimensionMismatch, DomainError

TWO_PI = 2.0 * math.pi

# Box classification codes, ordered so that AND = min and OR = max.
OUT, MIX, IN = 0, 1, 2

_UNIT_TOL = 1e-12
_SLICE_SAMPLES = 4096
_BOX_SAMPLES = 9


# ---------------------------------------------------------------------------
# Angular interval sets on a circle |z| = s, stored as sorted disjoint
# (a, b) pairs inside [0, 2*pi].

FULL = ((0.0, TWO_PI),)
EMPTY = ()


def _arc(center: float, half: float):
    if half <= 0.0:
        return EMPTY
    if half >= math.pi:
        return FULL
    a = (center - half) % TWO_PI
    b = a + 2.0 * half
    if b <= TWO_PI:
        return ((a, b),)
    return ((0.0, b - TWO_PI), (a, TWO_PI))


def interval_complement(iv):
    out = []
    prev = 0.0
    for a, b in iv:
        if a > prev:
            out.append((prev, a))
        prev = max(prev, b)
    if prev < TWO_PI:
        out.append((prev, TWO_PI))
    return tuple(out)


def interval_intersection(i1, i2):
    out = []
    p = q = 0
    while p < len(i1) and q < len(i2):
        a = max(i1[p][0], i2[q][0])
        b = min(i1[p][1], i2[q][1])
        if a < b:
            out.append((a, b))
        if i1[p][1] < i2[q][1]:
            p += 1
        else:
            q += 1
    return tuple(out)


def interval_union(i1, i2):
    return interval_complement(
        interval_intersection(interval_complement(i1), interval_complement(i2))
    )


def interval_measure(iv) -> float:
    return float(sum(b - a for a, b in iv))


def angular_moments(iv, m: np.ndarray) -> np.ndarray:
    """Integrals of ``exp(i*m*theta)`` over an interval set, for integer array ``m``."""
    m = np.asarray(m)
    out = np.zeros(m.shape, dtype=complex)
    nz = m != 0
    for a, b in iv:
        out[~nz] += b - a
        mm = m[nz]
        out[nz] += (np.exp(1j * mm * b) - np.exp(1j * mm * a)) / (1j * mm)
    return out


# ---------------------------------------------------------------------------
# Atoms and boolean combinators.


class _Disc:
    """Open disc ``|z - c| < r`` (inside) or open exterior ``|z - c| > r``."""

    __slots__ = ("c", "r", "inside")

    def __init__(self, c: complex, r: float, inside: bool = True):
        self.c, self.r, self.inside = complex(c), float(r), inside

    def contains(self, z):
        d = np.abs(z - self.c)
        return d < self.r if self.inside else d > self.r

    def classify(self, x0, x1, y0, y1):
        cx, cy = self.c.real, self.c.imag
        dx = np.maximum(np.maximum(x0 - cx, cx - x1), 0.0)
        dy = np.maximum(np.maximum(y0 - cy, cy - y1), 0.0)
        dmin = np.hypot(dx, dy)
        dmax = np.hypot(np.maximum(abs(x0 - cx), abs(x1 - cx)),
                        np.maximum(abs(y0 - cy), abs(y1 - cy)))
        out = np.full(np.shape(x0), MIX, dtype=np.int8)
        if self.inside:
            out[dmax < self.r] = IN
            out[dmin >= self.r] = OUT
        else:
            out[dmin > self.r] = IN
            out[dmax <= self.r] = OUT
        return out

    def slices(self, s: float):
        m = abs(self.c)
        if m == 0.0:
            iv = FULL if s < self.r else EMPTY
        else:
            cosd = (s * s + m * m - self.r * self.r) / (2.0 * s * m)
            if cosd <= -1.0:
                iv = FULL
            elif cosd >= 1.0:
                iv = EMPTY
            else:
                iv = _arc(cmath.phase(self.c), math.acos(cosd))
        return iv if self.inside else interval_complement(iv)

    def negate(self):
        return _Disc(self.c, self.r, not self.inside)

    def radii(self):
        m = abs(self.c)
        return {abs(m - self.r), m + self.r}


class _HalfPlane:
    """``Re(z * conj(n)) < offset`` (below) or ``> offset``, with ``|n| = 1``."""

    __slots__ = ("n", "offset", "below")

    def __init__(self, n: complex, offset: float, below: bool = True):
        n = complex(n)
        self.n, self.offset, self.below = n / abs(n), float(offset), below

    def _g(self, x, y):
        return x * self.n.real + y * self.n.imag - self.offset

    def contains(self, z):
        g = self._g(np.real(z), np.imag(z))
        return g < 0 if self.below else g > 0

    def classify(self, x0, x1, y0, y1):
        corners = [self._g(x, y) for x in (x0, x1) for y in (y0, y1)]
        gmin = np.minimum.reduce(corners)
        gmax = np.maximum.reduce(corners)
        out = np.full(np.shape(x0), MIX, dtype=np.int8)
        if self.below:
            out[gmax < 0] = IN
            out[gmin >= 0] = OUT
        else:
            out[gmin > 0] = IN
            out[gmax <= 0] = OUT
        return out

    def slices(self, s: float):
        kappa = self.offset / s
        if kappa >= 1.0:
            iv = FULL
        elif kappa <= -1.0:
            iv = EMPTY
        else:
            iv = interval_complement(_arc(cmath.phase(self.n), math.acos(kappa)))
        return iv if self.below else interval_complement(iv)

    def negate(self):
        return _HalfPlane(self.n, self.offset, not self.below)

    def radii(self):
        return {abs(self.offset)}


class _Opaque:
    """Membership given only by a vectorized predicate; geometry is sampled."""

    __slots__ = ("predicate", "negated")

    def __init__(self, predicate: Callable, negated: bool = False):
        self.predicate, self.negated = predicate, negated

    def contains(self, z):
        hit = np.asarray(self.predicate(np.asarray(z)), dtype=bool)
        return ~hit if self.negated else hit

    def classify(self, x0, x1, y0, y1):
        t = np.linspace(0.0, 1.0, _BOX_SAMPLES)
        x = x0[:, None, None] + (x1 - x0)[:, None, None] * t[None, :, None]
        y = y0[:, None, None] + (y1 - y0)[:, None, None] * t[None, None, :]
        hit = self.contains(x + 1j * y).reshape(len(x0), -1)
        out = np.full(len(x0), MIX, dtype=np.int8)
        out[hit.all(axis=1)] = IN
        out[~hit.any(axis=1)] = OUT
        return out

    def slices(self, s: float):
        theta = np.linspace(0.0, TWO_PI, _SLICE_SAMPLES + 1)
        hit = self.contains(s * np.exp(1j * theta))
        flips = np.nonzero(hit[1:] != hit[:-1])[0]
        if len(flips) == 0:
            return FULL if hit[0] else EMPTY
        lo, hi = theta[flips].copy(), theta[flips + 1].copy()
        lo_hit = hit[flips]
        for _ in range(55):
            mid = 0.5 * (lo + hi)
            mh = self.contains(s * np.exp(1j * mid))
            same = mh == lo_hit
            lo = np.where(same, mid, lo)
            hi = np.where(same, hi, mid)
        cuts = 0.5 * (lo + hi)
        edges = np.concatenate(([0.0], cuts, [TWO_PI]))
        states = np.concatenate(([hit[0]], ~lo_hit))
        return tuple((float(edges[i]), float(edges[i + 1]))
                     for i in range(len(states)) if states[i] and edges[i] < edges[i + 1])

    def negate(self):
        return _Opaque(self.predicate, not self.negated)

    def radii(self):
        return set()


class _All:
    __slots__ = ("parts",)

    def __init__(self, parts):
        self.parts = tuple(parts)

    def contains(self, z):
        return np.logical_and.reduce([p.contains(z) for p in self.parts])

    def classify(self, x0, x1, y0, y1):
        return np.minimum.reduce([p.classify(x0, x1, y0, y1) for p in self.parts])

    def slices(self, s):
        iv = FULL
        for p in self.parts:
            iv = interval_intersection(iv, p.slices(s))
            if not iv:
                break
        return iv

    def negate(self):
        return _Any(p.negate() for p in self.parts)

    def radii(self):
        return set().union(*(p.radii() for p in self.parts))


class _Any:
    __slots__ = ("parts",)

    def __init__(self, parts):
        self.parts = tuple(parts)

    def contains(self, z):
        return np.logical_or.reduce([p.contains(z) for p in self.parts])

    def classify(self, x0, x1, y0, y1):
        return np.maximum.reduce([p.classify(x0, x1, y0, y1) for p in self.parts])

    def slices(self, s):
        iv = EMPTY
        for p in self.parts:
            iv = interval_union(iv, p.slices(s))
        return iv

    def negate(self):
        return _All(p.negate() for p in self.parts)

    def radii(self):
        return set().union(*(p.radii() for p in self.parts))


# ---------------------------------------------------------------------------
# Ambient domains.


@dataclass(frozen=True)
class AmbientDomain:
    """Model domain: a unit ball in C^n or a polydisc with the given radii.

    ``UnitDisc`` is ``AmbientDomain.unit_ball(1)``; a one-factor polydisc of
    radius 1 produces the same numbers.
    """

    kind: str
    n: int
    radii: tuple = ()

    def __post_init__(self):
        if self.kind not in ("ball", "polydisc"):
            raise DomainError(f"unknown ambient kind {self.kind!r}")
        if self.n < 1:
            raise DomainError("ambient dimension must be >= 1", n=self.n)
        if self.kind == "polydisc":
            if len(self.radii) != self.n or min(self.radii) <= 0:
                raise DomainError("polydisc needs n positive radii", radii=list(self.radii))

    @classmethod
    def unit_disc(cls) -> "AmbientDomain":
        return cls("ball", 1)

    @classmethod
    def unit_ball(cls, n: int) -> "AmbientDomain":
        return cls("ball", int(n))

    @classmethod
    def polydisc(cls, radii: Sequence[float]) -> "AmbientDomain":
        radii = tuple(float(r) for r in radii)
        return cls("polydisc", len(radii), radii)

    @property
    def planar_radius(self) -> float:
        if self.n != 1:
            raise DimensionMismatch("planar radius requested for n > 1", n=self.n)
        return 1.0 if self.kind == "ball" else self.radii[0]

    @property
    def is_unit_disc(self) -> bool:
        return self.n == 1 and self.planar_radius == 1.0

    def contains(self, z):
        z = _as_points(z, self.n)
        if self.kind == "ball":
            return np.sum(np.abs(z) ** 2, axis=-1) < 1.0
        return np.all(np.abs(z) < np.asarray(self.radii), axis=-1)

    def shape(self):
        return _Disc(0.0, self.planar_radius, True)

    def to_json(self) -> dict:
        if self.kind == "ball":
            if self.n == 1:
                return {"kind": "UnitDisc", "params": {}}
            return {"kind": "UnitBall", "params": {"n": self.n}}
        return {"kind": "Polydisc", "params": {"radii": list(self.radii)}}

    @classmethod
    def from_json(cls, obj: dict) -> "AmbientDomain":
        kind = obj.get("kind")
        params = obj.get("params", {})
        if kind == "UnitDisc":
            return cls.unit_disc()
        if kind == "UnitBall":
            return cls.unit_ball(params["n"])
        if kind == "Polydisc":
            return cls.polydisc(params["radii"])
        raise DomainError(f"unknown ambient kind {kind!r}")


UNIT_DISC = AmbientDomain.unit_disc()


def _as_points(z, n: int) -> np.ndarray:
    """Points as an array of shape (..., n) for n > 1, or complex array for n = 1."""
    arr = np.asarray(z, dtype=complex)
    if n == 1:
        return arr[..., None] if arr.ndim == 0 or arr.shape[-1:] != (1,) else arr
    if arr.shape[-1:] != (n,):
        raise DimensionMismatch(f"expected points of dimension {n}", shape=list(arr.shape))
    return arr


def _planar(z):
    """Accept a complex scalar/array or (..., 1) arrays for planar regions."""
    arr = np.asarray(z, dtype=complex)
    if arr.ndim >= 1 and arr.shape[-1] == 1:
        arr = arr[..., 0]
    return arr


# ---------------------------------------------------------------------------
# Conformal maps.


def cayley(z):
    """Map the unit disc onto the upper half-plane, ``z -> i(1+z)/(1-z)``."""
    arr = np.asarray(z, dtype=complex)
    if np.any(np.abs(arr) >= 1.0):
        raise DomainError("cayley map requires |z| < 1")
    w = 1j * (1 + arr) / (1 - arr)
    return complex(w) if np.ndim(z) == 0 else w


def cayley_inverse(w):
    arr = np.asarray(w, dtype=complex)
    if np.any(arr.imag <= 0.0):
        raise DomainError("inverse cayley map requires Im w > 0")
    z = (arr - 1j) / (arr + 1j)
    return complex(z) if np.ndim(w) == 0 else z


@dataclass(frozen=True)
class MoebiusMap:
    """Disc automorphism ``z -> exp(i*phase) * (z - a) / (1 - conj(a) * z)``."""

    a: complex = 0j
    phase: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "a", complex(self.a))
        if not abs(self.a) < 1.0:
            raise DomainError("Moebius parameter must satisfy |a| < 1", a=self.a)

    def apply(self, z):
        z = np.asarray(z, dtype=complex)
        w = cmath.exp(1j * self.phase) * (z - self.a) / (1 - self.a.conjugate() * z)
        return complex(w) if w.ndim == 0 else w

    def apply_inverse(self, w):
        return self.inverse().apply(w)

    def inverse(self) -> "MoebiusMap":
        return MoebiusMap(-self.a * cmath.exp(1j * self.phase), -self.phase)

    def derivative(self, z):
        z = np.asarray(z, dtype=complex)
        d = cmath.exp(1j * self.phase) * (1 - abs(self.a) ** 2) / (1 - self.a.conjugate() * z) ** 2
        return complex(d) if d.ndim == 0 else d

    def image_of_disc(self, center: complex, radius: float) -> tuple[complex, float]:
        """Image of the open disc D(center, radius), assumed inside the unit disc."""
        center = complex(center)
        if self.a == 0:
            return cmath.exp(1j * self.phase) * center, float(radius)
        # reflection of the pole 1/conj(a) in the circle, written without dividing by a
        gap = 1 - self.a * center.conjugate()
        if abs(gap) <= radius * abs(self.a):
            raise DomainError("disc contains the pole of the map")
        mirror = center + radius ** 2 * self.a / gap
        new_center = self.apply(mirror)
        new_radius = abs(self.apply(center + radius) - new_center)
        return new_center, new_radius


def geodesic_side_circle(a: complex, b: complex) -> tuple[complex, float]:
    """Euclidean circle through ideal points ``a``, ``b`` orthogonal to the unit circle."""
    a, b = complex(a), complex(b)
    if abs(abs(a) - 1) > 1e-9 or abs(abs(b) - 1) > 1e-9:
        raise DomainError("ideal points must lie on the unit circle", a=a, b=b)
    if abs(a - b) < 1e-12:
        raise DomainError("ideal points must be distinct", a=a, b=b)
    denom = 1.0 + (a * b.conjugate()).real
    if abs(a + b) < 1e-12 or denom < 1e-15:
        raise DiameterCase("geodesic is a diameter", a=a, b=b)
    c = (a + b) / denom
    return c, math.sqrt(abs(c) ** 2 - 1.0)


def normalizing_automorphism(a: complex, b: complex) -> MoebiusMap:
    """Automorphism of the disc sending ideal points ``a -> -1`` and ``b -> 1``."""
    sigma = (cmath.phase(a) - cmath.phase(b)) % TWO_PI
    psi = 0.5 * (math.pi - sigma)
    rot = psi - cmath.phase(b)
    t = math.tan(0.5 * psi)
    return MoebiusMap(1j * t * cmath.exp(-1j * rot), rot)


def _circle_through(p: complex, q: complex, r: complex):
    """Circle through three points as (center, radius), or None if collinear."""
    ax, ay = p.real, p.imag
    bx, by = q.real, q.imag
    cx, cy = r.real, r.imag
    d = 2.0 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by))
    scale = max(abs(p - q), abs(q - r), abs(p - r)) ** 2
    if abs(d) < 1e-12 * scale:
        return None
    ux = ((ax * ax + ay * ay) * (by - cy) + (bx * bx + by * by) * (cy - ay)
          + (cx * cx + cy * cy) * (ay - by)) / d
    uy = ((ax * ax + ay * ay) * (cx - bx) + (bx * bx + by * by) * (ax - cx)
          + (cx * cx + cy * cy) * (bx - ax)) / d
    center = complex(ux, uy)
    return center, abs(p - center)


# ---------------------------------------------------------------------------
# Subregions.


class Region:
    """Base class for subregion specifications."""

    kind: ClassVar[str] = ""

    def shape(self, ambient: AmbientDomain):
        """Boolean atom tree for the region (without the ambient constraint)."""
        raise DomainError(f"{self.kind} has no planar description", kind=self.kind)

    def compiled(self, ambient: AmbientDomain = UNIT_DISC):
        """Atom tree including the ambient disc; planar ambients only."""
        if ambient.n != 1:
            raise DimensionMismatch(f"{self.kind}: planar geometry requires n = 1", n=ambient.n)
        return _All((ambient.shape(), self.shape(ambient)))

    def contains(self, z, ambient: AmbientDomain = UNIT_DISC):
        if ambient.n != 1:
            return self._contains_nd(_as_points(z, ambient.n), ambient)
        arr = _planar(z)
        hit = self.compiled(ambient).contains(arr)
        return bool(hit) if np.ndim(hit) == 0 else hit

    def _contains_nd(self, z, ambient):
        raise DimensionMismatch(f"{self.kind} is defined only in the plane", n=ambient.n)

    def params(self) -> dict:
        raise NotImplementedError

    def to_json(self) -> dict:
        return {"kind": self.kind, "params": self.params()}


def _cpair(z: complex) -> list:
    return [float(z.real), float(z.imag)]


def _cval(v) -> complex:
    if isinstance(v, (list, tuple)):
        return complex(float(v[0]), float(v[1]))
    return complex(v)


def _unit(z: complex, name: str) -> complex:
    if abs(abs(z) - 1.0) > 1e-9:
        raise DomainError(f"{name} must lie on the unit circle", value=z)
    return z / abs(z)


@dataclass(frozen=True)
class Disc(Region):
    center: complex
    radius: float
    kind: ClassVar[str] = "Disc"

    def __post_init__(self):
        object.__setattr__(self, "center", complex(self.center))
        if not self.radius > 0:
            raise DomainError("disc radius must be positive", radius=self.radius)

    def shape(self, ambient):
        return _Disc(self.center, self.radius, True)

    def params(self):
        return {"center": _cpair(self.center), "radius": self.radius}


@dataclass(frozen=True)
class Horodisc(Region):
    """Disc of radius ``rho`` internally tangent to the unit circle at ``exp(i*angle)``."""

    angle: float
    rho: float
    kind: ClassVar[str] = "Horodisc"

    def __post_init__(self):
        if not 0.0 < self.rho < 1.0:
            raise DomainError("horodisc radius must be in (0, 1)", rho=self.rho)

    def as_disc(self) -> Disc:
        return Disc(cmath.exp(1j * self.angle) * (1.0 - self.rho), self.rho)

    def shape(self, ambient):
        return self.as_disc().shape(ambient)

    def params(self):
        return {"angle": self.angle, "rho": self.rho}


@dataclass(frozen=True)
class HorocyclicStrip(Region):
    """Region between horodiscs of radii ``rho1 < rho2`` tangent at the same point."""

    angle: float
    rho1: float
    rho2: float
    kind: ClassVar[str] = "HorocyclicStrip"

    def __post_init__(self):
        if not 0.0 < self.rho1 < self.rho2 < 1.0:
            raise DomainError("need 0 < rho1 < rho2 < 1", rho1=self.rho1, rho2=self.rho2)

    @property
    def outer(self) -> Horodisc:
        return Horodisc(self.angle, self.rho2)

    @property
    def inner(self) -> Horodisc:
        return Horodisc(self.angle, self.rho1)

    def shape(self, ambient):
        inner = self.inner.as_disc()
        return _All((self.outer.shape(ambient), _Disc(inner.center, inner.radius, False)))

    def params(self):
        return {"angle": self.angle, "rho1": self.rho1, "rho2": self.rho2}


def _mat_mul(m, n):
    (a, b), (c, d) = m
    (e, g), (h, k) = n
    return ((a * e + b * h, a * g + b * k), (c * e + d * h, c * g + d * k))


def _mobius_apply(m, z):
    (a, b), (c, d) = m
    return (a * z + b) / (c * z + d)


def _mobius_inverse(m):
    (a, b), (c, d) = m
    return ((d, -b), (-c, a))


@dataclass(frozen=True)
class HypercyclicLune(Region):
    """Lune between coaxial hypercycles, stored in wedge-normal form.

    After the disc automorphism sending ``endpoint_a -> -1`` and
    ``endpoint_b -> 1`` followed by the Cayley map, the region is the wedge
    ``alpha < arg w < beta`` of the upper half-plane.  Angles near 0 hug the
    boundary arc running clockwise from ``endpoint_a`` to ``endpoint_b``
    (through ``-i`` when the endpoints are -1 and 1); angles near pi hug the
    other arc.  ``alpha = 0`` or ``beta = pi`` gives a crescent.
    """

    endpoint_a: complex
    endpoint_b: complex
    alpha: float
    beta: float
    kind: ClassVar[str] = "HypercyclicLune"

    def __post_init__(self):
        a = _unit(complex(self.endpoint_a), "endpoint_a")
        b = _unit(complex(self.endpoint_b), "endpoint_b")
        object.__setattr__(self, "endpoint_a", a)
        object.__setattr__(self, "endpoint_b", b)
        if abs(a - b) < 1e-12:
            raise DomainError("lune endpoints must be distinct")
        if not 0.0 <= self.alpha < self.beta <= math.pi:
            raise DomainError("need 0 <= alpha < beta <= pi", alpha=self.alpha, beta=self.beta)

    @property
    def normalized(self) -> tuple[float, float]:
        return self.alpha / math.pi, self.beta / math.pi

    @property
    def is_crescent(self) -> bool:
        return self.alpha == 0.0 or self.beta == math.pi

    def chart(self):
        """Moebius matrix sending the disc to the upper half-plane with a -> 0, b -> oo.

        Such a map is unique up to a positive scaling, so the wedge angles do not
        depend on construction details.  The disc is first rotated so that the
        Cayley pole sits far from both endpoints.
        """
        a, b = self.endpoint_a, self.endpoint_b
        mid = a + b
        zeta = -mid / abs(mid) if abs(mid) > 1e-6 else 1j * a
        rot = ((zeta.conjugate(), 0.0), (0.0, 1.0))
        p = self._cayley_boundary(a * zeta.conjugate())
        q = self._cayley_boundary(b * zeta.conjugate())
        f = ((1.0, -p), (1.0, -q)) if p > q else ((1.0, -p), (-1.0, q))
        cay = ((1j, 1j), (-1.0, 1.0))
        return _mat_mul(_mat_mul(f, cay), rot)

    @staticmethod
    def _cayley_boundary(x: complex) -> float:
        return (1j * (1 + x) / (1 - x)).real

    def wedge_angle(self, z):
        """``arg`` of the chart image; defined for points of the open disc."""
        w = _mobius_apply(self.chart(), np.asarray(z, dtype=complex))
        return np.angle(w)

    def boundary_point(self, angle: float) -> complex:
        """Disc point whose chart image is ``exp(i*angle)``."""
        return complex(_mobius_apply(_mobius_inverse(self.chart()), cmath.exp(1j * angle)))

    def contains(self, z, ambient: AmbientDomain = UNIT_DISC):
        if ambient.n != 1:
            return self._contains_nd(z, ambient)
        arr = _planar(z)
        inside = ambient.shape().contains(arr) & (np.abs(arr) < 1.0)
        safe = np.where(inside, arr, 0.0)
        th = self.wedge_angle(safe)
        hit = inside & (th > self.alpha) & (th < self.beta)
        return bool(hit) if np.ndim(hit) == 0 else hit

    def shape(self, ambient):
        # Each wedge side pulls back to a circle (or line) through both endpoints;
        # the side is fixed by a probe point on the wedge bisector.
        probe = self.boundary_point(0.5 * (self.alpha + self.beta))
        atoms = []
        for ang in (self.alpha, self.beta):
            if ang in (0.0, math.pi):
                continue
            p = self.boundary_point(ang)
            circ = _circle_through(self.endpoint_a, self.endpoint_b, p)
            if circ is None:
                n = 1j * (self.endpoint_b - self.endpoint_a)
                off = (self.endpoint_a * n.conjugate()).real / abs(n)
                hp = _HalfPlane(n, off, True)
                atoms.append(hp if hp.contains(probe) else hp.negate())
            else:
                dsk = _Disc(circ[0], circ[1], True)
                atoms.append(dsk if dsk.contains(probe) else dsk.negate())
        if not atoms:
            return _Disc(0.0, 2.0, True)
        return _All(atoms)

    def params(self):
        return {"endpoint_a": _cpair(self.endpoint_a), "endpoint_b": _cpair(self.endpoint_b),
                "alpha": self.alpha, "beta": self.beta}


@dataclass(frozen=True)
class IdealPolygon(Region):
    """Region bounded by complete geodesics joining consecutive ideal vertices."""

    vertices: tuple
    kind: ClassVar[str] = "IdealPolygon"

    def __post_init__(self):
        verts = [_unit(complex(v), "vertex") for v in self.vertices]
        if len(verts) < 3:
            raise DomainError("ideal polygon needs at least 3 vertices")
        verts.sort(key=lambda v: cmath.phase(v) % TWO_PI)
        for u, v in zip(verts, verts[1:] + verts[:1]):
            if abs(u - v) < 1e-12:
                raise DomainError("ideal polygon vertices must be distinct")
        object.__setattr__(self, "vertices", tuple(verts))

    @classmethod
    def regular(cls, k: int, rotation: float = 0.0) -> "IdealPolygon":
        return cls(tuple(cmath.exp(1j * (rotation + TWO_PI * j / k)) for j in range(k)))

    def sides(self):
        """Per side: (a, b, atom) where the atom is the half of the disc kept."""
        verts = self.vertices
        out = []
        for a, b in zip(verts, verts[1:] + verts[:1]):
            gap = (cmath.phase(b) - cmath.phase(a)) % TWO_PI
            mid = a * cmath.exp(0.5j * gap)
            try:
                c, r = geodesic_side_circle(a, b)
                cut = _Disc(c, r, True)
            except DiameterCase:
                n = 1j * a
                cut = _HalfPlane(n, 0.0, True)
            keep = cut.negate() if cut.contains(mid) else cut
            out.append((a, b, keep))
        return out

    def shape(self, ambient):
        return _All(atom for _, _, atom in self.sides())

    def params(self):
        return {"vertices": [_cpair(v) for v in self.vertices]}


@dataclass(frozen=True)
class DilatedCopy(Region):
    """``rho * Omega`` for a complete Reinhardt ambient domain."""

    rho: float
    kind: ClassVar[str] = "DilatedCopy"

    def __post_init__(self):
        if not 0.0 < self.rho < 1.0:
            raise DomainError("dilation factor must be in (0, 1)", rho=self.rho)

    def shape(self, ambient):
        return _Disc(0.0, self.rho * ambient.planar_radius, True)

    def _contains_nd(self, z, ambient):
        return ambient.contains(z / self.rho)

    def params(self):
        return {"rho": self.rho}


@dataclass(frozen=True)
class ProductRegion(Region):
    """``{lo_i < |z_i| < hi_i}`` for each coordinate (absolute radii)."""

    factors: tuple
    kind: ClassVar[str] = "ProductRegion"

    def __post_init__(self):
        facs = tuple((float(lo), float(hi)) for lo, hi in self.factors)
        for lo, hi in facs:
            if not 0.0 <= lo < hi:
                raise DomainError("radial factors need 0 <= lo < hi", lo=lo, hi=hi)
        object.__setattr__(self, "factors", facs)

    def _check(self, ambient):
        if len(self.factors) != ambient.n:
            raise DimensionMismatch("one radial factor per coordinate required",
                                    factors=len(self.factors), n=ambient.n)
        if ambient.n > 1 and ambient.kind != "polydisc":
            raise DomainError("product regions need a polydisc ambient for n > 1")
        radii = ambient.radii if ambient.kind == "polydisc" else (1.0,)
        for (lo, hi), big in zip(self.factors, radii):
            if hi > big * (1 + 1e-15):
                raise DomainError("radial factor exceeds the ambient radius", hi=hi, radius=big)

    def shape(self, ambient):
        self._check(ambient)
        lo, hi = self.factors[0]
        atoms = [_Disc(0.0, hi, True)]
        if lo > 0:
            atoms.append(_Disc(0.0, lo, False))
        return _All(atoms)

    def _contains_nd(self, z, ambient):
        self._check(ambient)
        mod = np.abs(z)
        lo = np.array([f[0] for f in self.factors])
        hi = np.array([f[1] for f in self.factors])
        return ambient.contains(z) & np.all((mod > lo) & (mod < hi), axis=-1)

    def params(self):
        return {"factors": [list(f) for f in self.factors]}


@dataclass(frozen=True)
class Complement(Region):
    """``Omega`` minus the closure of ``inner``."""

    inner: Region
    kind: ClassVar[str] = "Complement"

    def shape(self, ambient):
        return self.inner.shape(ambient).negate()

    def _contains_nd(self, z, ambient):
        # boundary has measure zero; the open complement is approximated by "not in"
        return ambient.contains(z) & ~self.inner._contains_nd(z, ambient)

    def params(self):
        return {"inner": self.inner.to_json()}


_INDICATORS: dict[str, Callable] = {}


def register_indicator(label: str, predicate: Callable) -> None:
    """Make an opaque predicate available to :func:`region_from_json` by label."""
    _INDICATORS[label] = predicate


@dataclass(frozen=True)
class Indicator(Region):
    """Caller-supplied membership predicate (vectorized over complex arrays)."""

    label: str
    predicate: Callable | None = field(default=None, compare=False, repr=False)
    kind: ClassVar[str] = "Indicator"

    def __post_init__(self):
        if self.predicate is None:
            if self.label not in _INDICATORS:
                raise DomainError(f"no predicate registered for indicator {self.label!r}")
            object.__setattr__(self, "predicate", _INDICATORS[self.label])

    def shape(self, ambient):
        return _Opaque(self.predicate)

    def params(self):
        return {"label": self.label}


CLOSED_FORM_KINDS = ("Disc", "Horodisc", "HorocyclicStrip", "DilatedCopy", "ProductRegion")

_REGION_TYPES = {cls.kind: cls for cls in
                 (Disc, Horodisc, HorocyclicStrip, HypercyclicLune, IdealPolygon,
                  DilatedCopy, ProductRegion, Complement, Indicator)}


def region_from_json(obj: dict) -> Region:
    """Inverse of ``Region.to_json``; complex numbers are ``[re, im]`` pairs."""
    kind = obj.get("kind")
    p = dict(obj.get("params", {}))
    if kind not in _REGION_TYPES:
        raise DomainError(f"unknown region kind {kind!r}")
    if kind == "Disc":
        return Disc(_cval(p["center"]), float(p["radius"]))
    if kind == "Horodisc":
        return Horodisc(float(p.get("angle", 0.0)), float(p["rho"]))
    if kind == "HorocyclicStrip":
        return HorocyclicStrip(float(p.get("angle", 0.0)), float(p["rho1"]), float(p["rho2"]))
    if kind == "HypercyclicLune":
        return HypercyclicLune(_cval(p.get("endpoint_a", [-1, 0])), _cval(p.get("endpoint_b", [1, 0])),
                               float(p["alpha"]), float(p["beta"]))
    if kind == "IdealPolygon":
        return IdealPolygon(tuple(_cval(v) for v in p["vertices"]))
    if kind == "DilatedCopy":
        return DilatedCopy(float(p["rho"]))
    if kind == "ProductRegion":
        return ProductRegion(tuple(tuple(f) for f in p["factors"]))
    if kind == "Complement":
        return Complement(region_from_json(p["inner"]))
    return Indicator(str(p["label"]))


# ---------------------------------------------------------------------------
# Module-level operations.


def contains(region: Region, ambient: AmbientDomain, z):
    """Membership of ``z`` in ``region``; ``z`` must have the ambient dimension."""
    arr = np.asarray(z, dtype=complex)
    if ambient.n == 1:
        if arr.ndim >= 1 and arr.shape[-1] != 1 and arr.ndim != 1:
            raise DimensionMismatch("planar points expected", shape=list(arr.shape))
    elif arr.shape[-1:] != (ambient.n,):
        raise DimensionMismatch(f"expected points of dimension {ambient.n}", shape=list(arr.shape))
    return region.contains(z, ambient)


def lune_to_wedge(lune: HypercyclicLune) -> tuple[float, float]:
    """Wedge angles of a lune, recomputed through the normalizing automorphism.

    Boundary points are generated from the lune's own chart, pushed through an
    independently constructed automorphism (endpoints to -1, 1) and the Cayley
    map, and their arguments read off.
    """
    norm = normalizing_automorphism(lune.endpoint_a, lune.endpoint_b)
    out = []
    for ang in (lune.alpha, lune.beta):
        if ang in (0.0, math.pi):
            out.append(ang)
            continue
        w = cayley(norm.apply(lune.boundary_point(ang)))
        out.append(cmath.phase(w))
    return out[0], out[1]


def slices(region: Region, s: float, ambient: AmbientDomain = UNIT_DISC):
    """Angles ``theta`` in [0, 2*pi] with ``s*exp(i*theta)`` inside the region."""
    shape = region.compiled(ambient)
    if s <= 0.0:
        return FULL if bool(shape.contains(np.complex128(0.0))) else EMPTY
    return shape.slices(float(s))


def critical_radii(region: Region, ambient: AmbientDomain = UNIT_DISC) -> list[float]:
    """Radii at which the slice structure of the region can change."""
    rs = region.compiled(ambient).radii()
    return sorted(r for r in rs if 0.0 < r < ambient.planar_radius)
