"""Orthonormal monomial bases and Bergman kernel diagonals of the model domains.

Multi-indices are enumerated in graded lexicographic order: by total degree,
and within a degree in descending lexicographic order, so for n = 2 the list
starts (0,0), (1,0), (0,1), (2,0), (1,1), (0,2), ...
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import gammaln

from .errors import DimensionMismatch, DomainError
from .geometry import AmbientDomain, _as_points


def _compositions(total: int, n: int):
    if n == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, n - 1):
            yield (first,) + rest


@lru_cache(maxsize=None)
def monomial_indices(n: int, order: int) -> tuple:
    """First ``order`` multi-indices of dimension ``n`` in graded-lex order."""
    if order < 1:
        raise DomainError("basis order must be >= 1", order=order)
    out = []
    degree = 0
    while len(out) < order:
        for alpha in _compositions(degree, n):
            out.append(alpha)
            if len(out) == order:
                break
        degree += 1
    return tuple(out)


def _check_alpha(ambient: AmbientDomain, alpha) -> tuple:
    alpha = (int(alpha),) if np.ndim(alpha) == 0 else tuple(int(a) for a in alpha)
    if len(alpha) != ambient.n:
        raise DimensionMismatch("multi-index dimension differs from ambient",
                                alpha=list(alpha), n=ambient.n)
    if min(alpha) < 0:
        raise DomainError("multi-index entries must be nonnegative", alpha=list(alpha))
    return alpha


def log_monomial_norm_sq(ambient: AmbientDomain, alpha) -> float:
    alpha = _check_alpha(ambient, alpha)
    if ambient.kind == "ball":
        n = ambient.n
        return (n * math.log(math.pi) + sum(gammaln(a + 1) for a in alpha)
                - gammaln(n + sum(alpha) + 1))
    return sum(math.log(math.pi) + (2 * a + 2) * math.log(r) - math.log(a + 1)
               for a, r in zip(alpha, ambient.radii))


def monomial_norm_sq(ambient: AmbientDomain, alpha) -> float:
    """Exact ``int_Omega |z^alpha|^2 dV``.

    Ball: ``pi^n alpha! / (n + |alpha|)!``.  Polydisc: product of
    ``pi r_i^(2 a_i + 2) / (a_i + 1)``.
    """
    return math.exp(log_monomial_norm_sq(ambient, alpha))


def bergman_kernel_diag(ambient: AmbientDomain, z):
    """``B_Omega(z, z)``; raises for points on or outside the boundary."""
    pts = _as_points(z, ambient.n)
    if not np.all(ambient.contains(pts)):
        raise DomainError("kernel diagonal requested outside the open domain")
    if ambient.kind == "ball":
        n = ambient.n
        s = np.sum(np.abs(pts) ** 2, axis=-1)
        val = math.factorial(n) / math.pi ** n / (1.0 - s) ** (n + 1)
    else:
        radii = np.asarray(ambient.radii)
        t = np.abs(pts) ** 2
        val = np.prod(radii ** 2 / (math.pi * (radii ** 2 - t) ** 2), axis=-1)
    return float(val) if np.ndim(val) == 0 else val


@dataclass(frozen=True)
class MonomialBasis:
    """Truncated orthonormal basis ``phi_alpha = z^alpha / ||z^alpha||``."""

    ambient: AmbientDomain
    order: int

    @property
    def index_list(self) -> tuple:
        return monomial_indices(self.ambient.n, self.order)

    @property
    def log_norms_sq(self) -> np.ndarray:
        return np.array([log_monomial_norm_sq(self.ambient, a) for a in self.index_list])

    @property
    def norms(self) -> np.ndarray:
        return np.exp(0.5 * self.log_norms_sq)

    def values(self, z) -> np.ndarray:
        """Matrix of ``phi_alpha(z)``, shape (points, order)."""
        pts = _as_points(z, self.ambient.n).reshape(-1, self.ambient.n)
        idx = np.array(self.index_list)
        scale = np.exp(-0.5 * self.log_norms_sq)
        if self.ambient.n == 1:
            return pts[:, :1] ** idx[None, :, 0] * scale
        vals = np.ones((len(pts), self.order), dtype=complex)
        for d in range(self.ambient.n):
            vals *= pts[:, d:d + 1] ** idx[None, :, d]
        return vals * scale

    def kernel_partial_sum(self, z):
        """``sum_alpha |phi_alpha(z)|^2`` over the truncated basis."""
        vals = np.sum(np.abs(self.values(z)) ** 2, axis=1)
        return float(vals[0]) if np.ndim(z) == 0 or (self.ambient.n > 1 and np.ndim(z) == 1) else vals
