"""Gram compressions ``G[j, k] = <phi_j, phi_k>_U`` of the Toeplitz operator.

Closed forms cover discs (hence horodiscs and horocyclic strips), dilations,
radial products and complements of those.  Everything else in the plane goes
through cell quadrature or, on request, through exact circle slices
integrated radially.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import quad_vec
from scipy.special import gammaln

from . import quadrature
from .errors import DimensionMismatch, DomainError
from .geometry import (CLOSED_FORM_KINDS, UNIT_DISC, AmbientDomain, Complement, DilatedCopy, Disc,
                       Horodisc, HorocyclicStrip, ProductRegion, Region, angular_moments,
                       critical_radii, slices)
from .kernels import MonomialBasis, monomial_indices

METHODS = ("auto", "closed_form", "quadrature", "slice")


def disc_moment(center: complex, radius: float, j: int, k: int, ambient: AmbientDomain = UNIT_DISC) -> complex:
    """``int_{D(c, r)} z^j conj(z)^k dV`` by the binomial expansion (unnormalized)."""
    center = complex(center)
    _check_disc(center, radius, ambient)
    total = 0j
    for m in range(min(j, k) + 1):
        total += (math.comb(j, m) * math.comb(k, m) * center ** (j - m)
                  * center.conjugate() ** (k - m) * math.pi * radius ** (2 * m + 2) / (m + 1))
    return total


def _check_disc(center: complex, radius: float, ambient: AmbientDomain):
    if ambient.n != 1:
        raise DimensionMismatch("disc moments need a planar ambient", n=ambient.n)
    if not radius > 0:
        raise DomainError("disc radius must be positive", radius=radius)
    if abs(center) + radius > ambient.planar_radius * (1 + 1e-12):
        raise DomainError("disc is not contained in the ambient disc",
                          center=center, radius=radius)


def disc_gram(center: complex, radius: float, order: int, ambient: AmbientDomain = UNIT_DISC) -> np.ndarray:
    """Normalized Gram matrix of the orthonormal monomials over D(center, radius).

    All binomial terms share the phase of ``center**(j-k)``, so the sum is
    formed for ``|center|`` in log space without cancellation and the phase is
    applied afterwards as a diagonal unitary conjugation.
    """
    center = complex(center)
    _check_disc(center, radius, ambient)
    big = ambient.planar_radius
    rr = radius / big
    idx = np.arange(order)
    if center == 0:
        return np.diag(rr ** (2 * idx + 2)).astype(complex)
    lc = math.log(abs(center) / big)
    lr = math.log(rr)
    lf = gammaln(idx + 1.0)
    j = idx[:, None]
    k = idx[None, :]
    g = np.zeros((order, order))
    for m in range(order):
        jj, kk = j[m:, :], k[:, m:]
        logc = (lf[m:, None] - lf[m] - gammaln(jj - m + 1.0)
                + lf[None, m:] - lf[m] - gammaln(kk - m + 1.0))
        expo = logc + (jj + kk - 2 * m) * lc + (2 * m + 2) * lr - math.log(m + 1)
        g[m:, m:] += np.exp(expo)
    g *= np.sqrt(np.outer(idx + 1.0, idx + 1.0))
    phase = np.exp(1j * idx * cmath.phase(center))
    return phase[:, None] * g * phase.conj()[None, :]


@dataclass(frozen=True)
class GramMatrix:
    entries: np.ndarray
    order: int
    index_list: tuple
    error_estimate: float = 0.0
    method: str = "closed_form"
    truncated: bool = False

    def to_json(self) -> dict:
        flat = self.entries.ravel()
        return {"order": self.order, "index_list": [list(a) for a in self.index_list],
                "entries": [[float(z.real), float(z.imag)] for z in flat],
                "error_estimate": float(self.error_estimate)}

    @classmethod
    def from_json(cls, obj: dict) -> "GramMatrix":
        n = int(obj["order"])
        vals = np.array([complex(a, b) for a, b in obj["entries"]]).reshape(n, n)
        return cls(vals, n, tuple(tuple(a) for a in obj["index_list"]),
                   float(obj.get("error_estimate", 0.0)))


@dataclass(frozen=True)
class MomentRequest:
    ambient: AmbientDomain
    region: Region
    order: int
    method: str = "auto"
    budget: int = quadrature.DEFAULT_BUDGET
    depth: int = quadrature.DEFAULT_DEPTH
    tol: float = quadrature.DEFAULT_TOL
    threads: int | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.order < 1:
            raise DomainError("order must be >= 1", order=self.order)
        if self.method not in METHODS:
            raise DomainError(f"unknown method {self.method!r}", choices=list(METHODS))


def has_closed_form(region: Region) -> bool:
    if isinstance(region, Complement):
        return has_closed_form(region.inner)
    return region.kind in CLOSED_FORM_KINDS


def _closed_form(region: Region, ambient: AmbientDomain, order: int) -> np.ndarray:
    idx = monomial_indices(ambient.n, order)
    if isinstance(region, Complement):
        return np.eye(order) - _closed_form(region.inner, ambient, order)
    if isinstance(region, DilatedCopy):
        deg = np.array([sum(a) for a in idx])
        return np.diag(region.rho ** (2.0 * (deg + ambient.n))).astype(complex)
    if isinstance(region, ProductRegion):
        region._check(ambient)
        radii = ambient.radii if ambient.kind == "polydisc" else (1.0,)
        diag = np.ones(order)
        alphas = np.array(idx)
        for d, ((lo, hi), big) in enumerate(zip(region.factors, radii)):
            e = 2.0 * alphas[:, d] + 2.0
            diag *= (hi / big) ** e - (lo / big) ** e
        return np.diag(diag).astype(complex)
    if ambient.n != 1:
        raise DimensionMismatch(f"{region.kind} Gram needs a planar ambient", n=ambient.n)
    if isinstance(region, Disc):
        return disc_gram(region.center, region.radius, order, ambient)
    if isinstance(region, Horodisc):
        d = region.as_disc()
        return disc_gram(d.center, d.radius, order, ambient)
    if isinstance(region, HorocyclicStrip):
        return _closed_form(region.outer, ambient, order) - _closed_form(region.inner, ambient, order)
    raise DomainError(f"no closed form for {region.kind}", kind=region.kind)


def _quadrature_gram(req: MomentRequest):
    basis = MonomialBasis(req.ambient, req.order)

    def proxy(z):
        return np.sum(np.abs(basis.values(z)) ** 2, axis=1)

    rule = quadrature.region_rule(req.region, req.ambient, proxy, tol=req.tol,
                                  budget=req.budget, depth=req.depth, threads=req.threads)
    vals = quadrature.evaluate(basis.values, rule.nodes, req.threads)
    g = (vals * rule.weights[:, None]).T @ vals.conj()
    return g, rule.error, rule.truncated


def slice_gram(region: Region, order: int, ambient: AmbientDomain = UNIT_DISC, tol: float = 1e-12):
    """Gram matrix from exact circle slices: ``int s^(j+k+1) Theta_(j-k)(s) ds``.

    Returns ``(matrix, error_estimate)``.
    """
    big = ambient.planar_radius
    idx = np.arange(order)
    diff = idx[:, None] - idx[None, :]
    powers = idx[:, None] + idx[None, :] + 1

    def integrand(s):
        theta = angular_moments(slices(region, s, ambient), diff)
        return (s / big) ** powers * theta / big

    pts = [r for r in critical_radii(region, ambient)]
    g, err = quad_vec(integrand, 0.0, big, points=pts or None, epsabs=tol, epsrel=tol, limit=2000)
    scale = np.sqrt(np.outer(idx + 1.0, idx + 1.0)) / math.pi
    return g * scale, float(err) * float(scale.max())


def gram(request: MomentRequest) -> GramMatrix:
    """Gram compression of ``T_U`` in the first ``order`` orthonormal monomials."""
    req = request
    idx = monomial_indices(req.ambient.n, req.order)
    method = req.method
    if method == "auto":
        method = "closed_form" if has_closed_form(req.region) else "quadrature"
    if isinstance(req.region, Complement) and method != "closed_form":
        inner = gram(MomentRequest(req.ambient, req.region.inner, req.order, method,
                                   req.budget, req.depth, req.tol, req.threads))
        return GramMatrix(np.eye(req.order) - inner.entries, req.order, idx,
                          inner.error_estimate, inner.method, inner.truncated)
    err, truncated = 0.0, False
    if method == "closed_form":
        g = _closed_form(req.region, req.ambient, req.order)
    elif method == "quadrature":
        if req.ambient.n != 1:
            raise DimensionMismatch("quadrature Grams are planar only", n=req.ambient.n)
        g, err, truncated = _quadrature_gram(req)
    else:
        if req.ambient.n != 1:
            raise DimensionMismatch("slice Grams are planar only", n=req.ambient.n)
        g, err = slice_gram(req.region, req.order, req.ambient)
    g = 0.5 * (g + g.conj().T)
    return GramMatrix(g, req.order, idx, err, method, truncated)


def compress(region: Region, order: int, ambient: AmbientDomain = UNIT_DISC, method: str = "auto",
             **kwargs) -> GramMatrix:
    """Shorthand for ``gram(MomentRequest(...))``."""
    return gram(MomentRequest(ambient, region, order, method, **kwargs))
