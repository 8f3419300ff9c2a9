"""Spectra of Gram compressions and derived norm diagnostics."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import ConvergenceError, DomainError
from .geometry import UNIT_DISC, AmbientDomain, Complement, Disc, Horodisc, Indicator, MoebiusMap, Region
from .moments import GramMatrix, MomentRequest, gram
from .quadrature import thread_count

JACOBI_TOL = 1e-13
JACOBI_SWEEPS = 60
DEFAULT_SWEEP = (16, 32, 64, 128)


@lru_cache(maxsize=None)
def _round_robin(n: int):
    """Pairings for a parallel Jacobi sweep: every (p, q) exactly once, disjoint per round."""
    m = n + (n % 2)
    players = list(range(m))
    rounds = []
    for _ in range(m - 1):
        pairs = [(players[i], players[m - 1 - i]) for i in range(m // 2)]
        pairs = sorted((min(p, q), max(p, q)) for p, q in pairs if p < n and q < n)
        rounds.append((np.array([p for p, _ in pairs]), np.array([q for _, q in pairs])))
        players = [players[0], players[-1]] + players[1:-1]
    return tuple(rounds)


def _off_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.sqrt(np.sum(off.real ** 2 + off.imag ** 2)))


def jacobi_eigh(a, tol: float = JACOBI_TOL, max_sweeps: int = JACOBI_SWEEPS, vectors: bool = False):
    """Eigenvalues (and optionally eigenvectors) of a Hermitian matrix by cyclic Jacobi.

    Each sweep visits all index pairs in round-robin order; pairs in a round
    are disjoint and are rotated together.  Stops when the off-diagonal
    Frobenius norm is at most ``tol``.

    Returns
    -------
    w : ndarray
        Eigenvalues in the order of the final diagonal (unsorted).
    v : ndarray, optional
        Unitary matrix with ``a @ v = v @ diag(w)``.
    residual : float
        Final off-diagonal Frobenius norm.
    """
    a = np.array(a, dtype=complex)
    n = a.shape[0]
    if a.shape != (n, n):
        raise DomainError("matrix must be square", shape=list(a.shape))
    v = np.eye(n, dtype=complex) if vectors else None
    off = _off_norm(a)
    sweep = 0
    while off > tol:
        if sweep == max_sweeps:
            raise ConvergenceError("Jacobi iteration did not converge", residual=off, sweeps=sweep)
        for p, q in _round_robin(n):
            apq = a[p, q]
            mag = np.abs(apq)
            act = mag > 1e-300
            if not act.any():
                continue
            p, q, apq, mag = p[act], q[act], apq[act], mag[act]
            tau = (a[q, q].real - a[p, p].real) / (2.0 * mag)
            t = np.where(tau >= 0, 1.0, -1.0) / (np.abs(tau) + np.hypot(1.0, tau))
            c = 1.0 / np.sqrt(1.0 + t * t)
            s = t * c
            e = (apq / mag).conj()
            u00, u01, u10, u11 = c, s, -s * e, c * e
            # a <- a @ u on columns p, q
            cp, cq = a[:, p].copy(), a[:, q].copy()
            a[:, p] = cp * u00 + cq * u10
            a[:, q] = cp * u01 + cq * u11
            # a <- u^H @ a on rows p, q
            rp, rq = a[p, :].copy(), a[q, :].copy()
            a[p, :] = np.conj(u00)[:, None] * rp + np.conj(u10)[:, None] * rq
            a[q, :] = np.conj(u01)[:, None] * rp + np.conj(u11)[:, None] * rq
            a[p, q] = 0.0
            a[q, p] = 0.0
            a[p, p] = a[p, p].real
            a[q, q] = a[q, q].real
            if vectors:
                vp, vq = v[:, p].copy(), v[:, q].copy()
                v[:, p] = vp * u00 + vq * u10
                v[:, q] = vp * u01 + vq * u11
        sweep += 1
        off = _off_norm(a)
    w = np.diag(a).real.copy()
    return (w, v, off) if vectors else (w, off)


@dataclass(frozen=True)
class SpectrumEstimate:
    eigenvalues: np.ndarray
    order: int
    gram_error: float
    solver_residual: float
    history: list = field(default_factory=list)

    @property
    def top(self) -> float:
        return float(self.eigenvalues[0])

    @property
    def bottom(self) -> float:
        return float(self.eigenvalues[-1])

    @property
    def tolerance(self) -> float:
        return self.gram_error + self.solver_residual + 1e-12

    def to_json(self) -> dict:
        return {"order": self.order, "eigenvalues": [float(x) for x in self.eigenvalues],
                "gram_error": float(self.gram_error), "solver_residual": float(self.solver_residual),
                "history": [[int(n), float(t), float(b)] for n, t, b in self.history]}


def eigensolve(g: GramMatrix) -> SpectrumEstimate:
    w, res = jacobi_eigh(g.entries)
    return SpectrumEstimate(np.sort(w)[::-1], g.order, g.error_estimate, res)


def spectrum(region: Region, order: int, ambient: AmbientDomain = UNIT_DISC, method: str = "auto",
             **kwargs) -> SpectrumEstimate:
    return eigensolve(gram(MomentRequest(ambient, region, order, method, **kwargs)))


def sweep_spectra(region: Region, orders, ambient: AmbientDomain = UNIT_DISC, method: str = "auto",
                  threads: int | None = None, **kwargs) -> list[SpectrumEstimate]:
    """Spectra at several orders; independent orders are solved concurrently."""
    orders = [int(n) for n in orders]
    if any(b <= a for a, b in zip(orders, orders[1:])):
        raise DomainError("sweep orders must be strictly increasing", orders=orders)
    workers = min(len(orders), thread_count() if threads is None else threads)

    def one(n):
        return spectrum(region, n, ambient, method, threads=1, **kwargs)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(one, orders))
    return [one(n) for n in orders]


def norm_estimate(ambient: AmbientDomain, region: Region, sweep=DEFAULT_SWEEP, method: str = "auto",
                  **kwargs):
    """Lower bound for ``||T_U||`` from compressions.

    Returns ``(lower, history)`` with history rows ``(order, top, bottom)``.
    ``sqrt(lower)`` is the matching lower estimate of ``||R_U||``.  No upper
    bound follows from compressions.
    """
    specs = sweep_spectra(region, sweep, ambient, method, **kwargs)
    history = [(s.order, s.top, s.bottom) for s in specs]
    return max(h[1] for h in history), history


def spectral_gap_report(ambient: AmbientDomain, region: Region, order: int, method: str = "auto",
                        **kwargs):
    """``(min eigenvalue of the complement compression, 1 - top eigenvalue of U)``.

    The two agree when the complement Gram is formed as ``I - G``.  Small
    compressions only bound the bottom of the complement spectrum from above,
    so a positive indicator is evidence of closed range, not proof.
    """
    g = gram(MomentRequest(ambient, region, order, method, **kwargs))
    gc = gram(MomentRequest(ambient, Complement(region), order, method, **kwargs))
    return eigensolve(gc).bottom, 1.0 - eigensolve(g).top


def moebius_image(region: Region, fmap: MoebiusMap) -> Region:
    """Image of a region under a disc automorphism.

    Discs and horodiscs map to discs by the circle-image formula; other
    regions become opaque indicators that pull points back through the map.
    """
    if isinstance(region, Horodisc):
        region = region.as_disc()
    if isinstance(region, Disc):
        c, r = fmap.image_of_disc(region.center, region.radius)
        return Disc(c, r)
    inv = fmap.inverse()

    def pred(z):
        return region.contains(inv.apply(z))

    return Indicator(f"moebius({region.kind})", pred)


def isospectrality_check(region: Region, fmap: MoebiusMap, order: int, method: str = "auto",
                         top: int = 3, **kwargs) -> float:
    """Max relative deviation of the top eigenvalues of ``U`` and its Moebius image."""
    a = spectrum(region, order, UNIT_DISC, method, **kwargs).eigenvalues[:top]
    b = spectrum(moebius_image(region, fmap), order, UNIT_DISC, method, **kwargs).eigenvalues[:top]
    return float(np.max(np.abs(a - b) / np.maximum(np.abs(a), 1e-300)))
