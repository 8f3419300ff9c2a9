"""Traces, Schatten norms and iterated kernels.

The trace of ``T_U`` equals the integral of the Bergman kernel diagonal over
``U``.  In the plane the kernel depends only on ``|z|``, so the integral
reduces to ``int B(s) * len(U cap {|z| = s}) * s ds``, where the angular
length comes from exact circle slices.  The radial integral is split into
dyadic rings approaching the boundary circle; the ring contributions decide
between convergence (with a geometric tail bound) and divergence.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.integrate import IntegrationWarning, quad

from .errors import DimensionMismatch, DomainError, NonTraceClass
from .geometry import UNIT_DISC, AmbientDomain, Region, critical_radii, interval_measure, slices
from .kernels import MonomialBasis, bergman_kernel_diag
from .moments import GramMatrix
from .quadrature import polar_disc_rule
from .toeplitz import jacobi_eigh

TRACE_DEPTH = 24
STALL_RATIO = 0.9
STALL_RUN = 6


def _ring_edges(big: float, depth: int):
    edges = [0.0, 0.5 * big]
    for k in range(2, depth + 1):
        edges.append(big * (1.0 - 2.0 ** -k))
    return edges


def trace_by_formula(region: Region, ambient: AmbientDomain = UNIT_DISC, depth: int = TRACE_DEPTH,
                     tol: float = 1e-10):
    """``(value, error_estimate)`` for ``int_U B(z, z) dV`` over a planar region.

    Raises :class:`NonTraceClass` when ``STALL_RUN`` successive ring
    contributions fail to shrink by the factor ``STALL_RATIO`` while still
    mattering for the running total.
    """
    if ambient.n != 1:
        raise DimensionMismatch("trace formula is implemented for planar ambients", n=ambient.n)
    big = ambient.planar_radius
    crit = critical_radii(region, ambient)

    def integrand(s):
        if s <= 0.0:
            return 0.0
        ell = interval_measure(slices(region, s, ambient))
        return bergman_kernel_diag(ambient, complex(s)) * ell * s

    edges = _ring_edges(big, depth)
    rings, errs = [], []
    total = 0.0
    stall = 0
    for lo, hi in zip(edges, edges[1:]):
        pts = [r for r in crit if lo < r < hi]
        with warnings.catch_warnings():
            # round-off in the deepest rings is covered by the returned error estimate
            warnings.simplefilter("ignore", IntegrationWarning)
            val, err = quad(integrand, lo, hi, points=pts or None, epsabs=tol, epsrel=tol, limit=200)
        rings.append(val)
        errs.append(err)
        total += val
        if len(rings) >= 3 and rings[-2] > 0:
            ratio = val / rings[-2]
            if ratio >= STALL_RATIO and val > 1e-9 * total:
                stall += 1
                if stall >= STALL_RUN:
                    raise NonTraceClass("ring contributions to the trace integral do not decay",
                                        rings=[float(r) for r in rings], ratio=float(ratio))
            else:
                stall = 0
    tail = _geometric_tail(rings)
    return total, float(sum(errs)) + tail


def _geometric_tail(rings) -> float:
    last = rings[-1]
    if last <= 0.0:
        return 0.0
    ratios = [b / a for a, b in zip(rings[-4:-1], rings[-3:]) if a > 0]
    q = max(ratios) if ratios else 1.0
    if q >= 1.0:
        # no decay visible: bound the remainder by the last ring times the ring count so far
        return last * len(rings)
    return last * q / (1.0 - q)


@dataclass(frozen=True)
class SchattenReport:
    p: float
    value_matrix: float
    order: int
    tail_bound: float = 0.0
    value_trace_formula: float | None = None
    value_power: float | None = None
    # Schatten (2p)-norm of the restriction operator, sqrt(value_matrix)
    restriction_norm: float | None = None

    def to_json(self) -> dict:
        out = {"p": self.p, "value_matrix": self.value_matrix, "order": self.order,
               "tail_bound": self.tail_bound}
        for key in ("value_trace_formula", "value_power", "restriction_norm"):
            val = getattr(self, key)
            if val is not None:
                out[key] = val
        return out


def _check_p(p: float):
    if not (isinstance(p, (int, float)) and math.isfinite(p) and p > 0):
        raise DomainError("Schatten exponent must be finite and positive", p=p)


def _eigen_sum(eigs: np.ndarray, p: float) -> float:
    lam = np.clip(eigs, 0.0, 1.0)
    return float(np.sum(lam ** p))


def schatten_norm(g: GramMatrix, p: float, tail_sum: float = 0.0,
                  trace_value: float | None = None) -> SchattenReport:
    """Schatten ``p``-norm ``(sum lambda^p)^(1/p)`` of a compression.

    ``tail_sum`` is a caller-supplied bound on the omitted part of
    ``sum lambda^p``; it is converted into ``tail_bound`` in norm units.  For
    integer ``p`` the value is also computed as ``trace(G^p)^(1/p)`` and the two
    paths must agree to 1e-10.
    """
    _check_p(p)
    eigs, _ = jacobi_eigh(g.entries)
    total = _eigen_sum(eigs, p)
    value = total ** (1.0 / p)
    tail_bound = (total + tail_sum) ** (1.0 / p) - value if tail_sum > 0 else 0.0
    value_power = None
    if float(p).is_integer():
        tr = np.trace(np.linalg.matrix_power(g.entries, int(p))).real
        value_power = max(tr, 0.0) ** (1.0 / p)
        if abs(value_power - value) > 1e-10 * max(1.0, value):
            raise DomainError("eigenvalue and matrix-power Schatten paths disagree",
                              eigen=value, power=value_power)
    return SchattenReport(float(p), value, g.order, tail_bound, trace_value, value_power,
                          math.sqrt(value))


def restriction_schatten_norm(g: GramMatrix, p: float) -> float:
    """Schatten ``p``-norm of the restriction operator.

    Its singular values are ``sqrt(lambda_j)``, so ``||R_U||_{S_p}`` equals
    ``||T_U||_{S_(p/2)}^(1/2)``; equivalently ``||R_U||_{S_2p}^2 = ||T_U||_{S_p}``.
    """
    _check_p(p)
    eigs, _ = jacobi_eigh(g.entries)
    return _eigen_sum(eigs, 0.5 * p) ** (1.0 / p)


def dilation_tail_sum(rho: float, order: int, p: float = 1.0, n: int = 1) -> float:
    """Omitted part of ``sum lambda^p`` for ``rho * disc`` truncated at ``order`` (n = 1)."""
    if n != 1:
        raise DimensionMismatch("tail sum implemented for the disc", n=n)
    q = rho ** (2 * p)
    return q ** (order + 1) / (1.0 - q)


def _iterated(g: GramMatrix, p: int, z, ambient: AmbientDomain):
    if p < 1 or int(p) != p:
        raise DomainError("iterated kernel order must be an integer >= 1", p=p)
    m = np.linalg.matrix_power(g.entries, int(p) - 1)
    v = MonomialBasis(ambient, g.order).values(z)
    return np.einsum("pj,jk,pk->p", v.conj(), m, v).real


def iterated_kernel_diag(g: GramMatrix, p: int, z, ambient: AmbientDomain = UNIT_DISC,
                         max_modulus: float = 0.95):
    """Truncated ``B^(p)(z, z) = sum conj(phi_j(z)) (G^(p-1))[j, k] phi_k(z)``.

    Restricted to ``|z| <= max_modulus`` where order-``N`` basis sums are
    meaningful.
    """
    pts = np.asarray(z, dtype=complex)
    if np.any(np.abs(pts) > max_modulus):
        raise DomainError("iterated kernel requires |z| <= %.2f for the truncated basis sums"
                          % max_modulus, max_modulus=max_modulus)
    out = _iterated(g, p, pts, ambient)
    return float(out[0]) if pts.ndim == 0 else out


def iterated_kernel_integral(g: GramMatrix, p: int, ambient: AmbientDomain = UNIT_DISC) -> float:
    """``int_Omega B^(p)(z, z) dV`` of the truncated kernel by polar quadrature.

    The integrand is a polynomial in ``z`` and ``conj(z)``, and the rule is
    exact for its degree, so the result should equal ``trace(G^(p-1))``.
    """
    if ambient.n != 1:
        raise DimensionMismatch("planar ambients only", n=ambient.n)
    nodes, weights = polar_disc_rule(0.0, ambient.planar_radius, radial=g.order + 2,
                                     angular=2 * g.order + 2)
    return float(np.dot(weights, _iterated(g, p, nodes, ambient)))
