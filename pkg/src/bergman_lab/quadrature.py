"""Quadrature over planar regions.

``adaptive_rule`` builds a cubature rule (nodes, weights) for a region by
breadth-first quadtree refinement of the ambient bounding box.  Every cell
carries an 8x8 tensor Gauss-Legendre rule; in cells crossing the boundary the
weights are multiplied by the region indicator at the nodes.  A cell is
refined when its four children disagree with it by more than its share of the
tolerance, or whenever it straddles the boundary and depth remains.

Evaluations of the guiding integrand are split into fixed chunks that may run
on a thread pool (``BERGMAN_LAB_THREADS``); results are concatenated in chunk
order, so the rule and every sum built from it are bitwise independent of the
thread count.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable

import numpy as np
from numpy.polynomial.legendre import leggauss

from .errors import DimensionMismatch, SingularSample
from .geometry import IN, MIX, OUT, UNIT_DISC, AmbientDomain, Region

GL_ORDER = 8
DEFAULT_BUDGET = 60_000
DEFAULT_DEPTH = 10
DEFAULT_TOL = 1e-10
_CHUNK = 8192

_gx, _gw = leggauss(GL_ORDER)
# unit-square tensor rule on [0, 1]^2
_UX = np.repeat((_gx + 1) / 2, GL_ORDER)
_UY = np.tile((_gx + 1) / 2, GL_ORDER)
_UW = np.outer(_gw, _gw).ravel() / 4.0


def thread_count() -> int:
    env = os.environ.get("BERGMAN_LAB_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def evaluate(f: Callable, z: np.ndarray, threads: int | None = None) -> np.ndarray:
    """``f`` applied to a flat point array in fixed chunks, checked for finiteness."""
    threads = thread_count() if threads is None else threads
    chunks = [z[i:i + _CHUNK] for i in range(0, len(z), _CHUNK)] or [z]
    if threads > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(f, chunks))
    else:
        parts = [f(c) for c in chunks]
    out = np.concatenate([np.asarray(p) for p in parts], axis=0)
    bad = ~np.isfinite(out)
    if bad.any():
        row = np.nonzero(bad.reshape(len(z), -1).any(axis=1))[0][0]
        raise SingularSample("integrand is not finite at a quadrature node", point=complex(z[row]))
    return out


@dataclass(frozen=True)
class CellRule:
    nodes: np.ndarray
    weights: np.ndarray
    error: float
    truncated: bool
    cells: int
    depth: int

    def integrate(self, f: Callable, threads: int | None = None):
        vals = evaluate(f, self.nodes, threads)
        return np.tensordot(self.weights, vals, axes=(0, 0))


def _cell_nodes(x0, y0, side):
    return (x0[:, None] + side * _UX[None, :]) + 1j * (y0[:, None] + side * _UY[None, :])


def adaptive_rule(shape, half_width: float, guide: Callable, tol: float = DEFAULT_TOL,
                  budget: int = DEFAULT_BUDGET, depth: int = DEFAULT_DEPTH,
                  threads: int | None = None) -> CellRule:
    """Adaptive cubature rule for a compiled region inside ``[-w, w]^2``.

    ``guide`` maps a flat complex array to nonnegative reals (or an array whose
    absolute values are summed per point); it steers refinement and the error
    estimate.  ``error`` sums, over accepted leaves, the parent/children
    discrepancy plus, for boundary cells, the integrand bound times the change
    in estimated area.
    """

    def level_eval(x0, y0, side, cls):
        z = _cell_nodes(x0, y0, side)
        flat = z.ravel()
        g = evaluate(guide, flat, threads)
        g = np.abs(g).reshape(len(flat), -1).sum(axis=1).reshape(z.shape)
        ind = np.ones(z.shape)
        mix = cls == MIX
        if mix.any():
            ind[mix] = shape.contains(z[mix])
        ind[cls == OUT] = 0.0
        w = ind * _UW[None, :] * side * side
        q = np.sum(w * g, axis=1)
        area = np.sum(w, axis=1)
        gmax = np.max(g, axis=1)
        return z, w, q, area, gmax

    side = 2.0 * half_width
    x0 = np.array([-half_width])
    y0 = np.array([-half_width])
    cls = shape.classify(x0, x0 + side, y0, y0 + side)
    z, w, q, area, gmax = level_eval(x0, y0, side, cls)
    leaf_nodes, leaf_w = [], []
    error = 0.0
    cells = 1
    truncated = False
    level = 0
    keep = cls != OUT
    x0, y0, cls, z, w, q, area, gmax = (a[keep] for a in (x0, y0, cls, z, w, q, area, gmax))

    while len(x0):
        if level == depth or cells + 4 * len(x0) > budget:
            truncated = truncated or level < depth
            # no further refinement possible: accept the current cells as leaves
            leaf_nodes.append(z)
            leaf_w.append(w)
            error += float(np.sum(np.where(cls == MIX, gmax * area, 0.0)))
            break
        half = side / 2.0
        cx = np.concatenate([x0, x0 + half, x0, x0 + half])
        cy = np.concatenate([y0, y0, y0 + half, y0 + half])
        ccls = shape.classify(cx, cx + half, cy, cy + half)
        cz, cw, cq, carea, cgmax = level_eval(cx, cy, half, ccls)
        cells += len(cx)
        m = len(x0)
        qsum = cq.reshape(4, m).sum(axis=0)
        asum = carea.reshape(4, m).sum(axis=0)
        err = np.abs(qsum - q) + np.where(cls == MIX, np.maximum(gmax, cgmax.reshape(4, m).max(axis=0))
                                          * np.abs(asum - area), 0.0)
        local_tol = tol * (side / (2.0 * half_width)) ** 2
        done = ((cls == IN) & (err <= local_tol)) | (level + 1 == depth)
        done4 = np.tile(done, 4)
        if done.any():
            leaf_nodes.append(cz[done4])
            leaf_w.append(cw[done4])
            error += float(np.sum(err[done]))
        nxt = ~done4 & (ccls != OUT)
        x0, y0, cls = cx[nxt], cy[nxt], ccls[nxt]
        z, w, q, area, gmax = cz[nxt], cw[nxt], cq[nxt], carea[nxt], cgmax[nxt]
        side = half
        level += 1

    if leaf_nodes:
        nodes = np.concatenate([a.ravel() for a in leaf_nodes])
        weights = np.concatenate([a.ravel() for a in leaf_w])
        keep = weights != 0.0
        nodes, weights = nodes[keep], weights[keep]
    else:
        nodes, weights = np.zeros(0, dtype=complex), np.zeros(0)
    return CellRule(nodes, weights, error, truncated, cells, level)


def region_rule(region: Region, ambient: AmbientDomain = UNIT_DISC, guide: Callable | None = None,
                tol: float = DEFAULT_TOL, budget: int = DEFAULT_BUDGET, depth: int = DEFAULT_DEPTH,
                threads: int | None = None) -> CellRule:
    if ambient.n != 1:
        raise DimensionMismatch("cell quadrature is available only for planar ambients", n=ambient.n)
    guide = guide or (lambda z: np.ones(z.shape))
    return adaptive_rule(region.compiled(ambient), ambient.planar_radius, guide,
                         tol=tol, budget=budget, depth=depth, threads=threads)


def quadrature_integral(region: Region, ambient: AmbientDomain, integrand: Callable,
                        budget: int = DEFAULT_BUDGET, depth: int = DEFAULT_DEPTH,
                        tol: float = DEFAULT_TOL, threads: int | None = None):
    """``(value, error_estimate)`` of ``int_U integrand dV`` by adaptive cells.

    ``integrand`` must accept a flat complex array and return values of the
    same length.
    """
    rule = region_rule(region, ambient, integrand, tol, budget, depth, threads)
    value = rule.integrate(integrand, threads)
    value = complex(value) if np.iscomplexobj(value) else float(value)
    return value, rule.error


def polar_disc_rule(center: complex, radius: float, radial: int = 64, angular: int = 256):
    """Gauss-Legendre (radius) times trapezoid (angle) rule for a disc.

    Exact for ``z^j conj(z)^k`` with ``j + k < 2*radial - 1`` and
    ``|j - k| < angular``.
    """
    x, wx = leggauss(radial)
    s = radius * (x + 1) / 2
    ws = wx * radius / 2 * s
    theta = 2 * math.pi * np.arange(angular) / angular
    nodes = complex(center) + (s[:, None] * np.exp(1j * theta)[None, :])
    weights = np.repeat(ws * (2 * math.pi / angular), angular).reshape(radial, angular)
    return nodes.ravel(), weights.ravel()
