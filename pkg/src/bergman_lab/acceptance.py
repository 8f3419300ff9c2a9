"""Numeric-versus-closed-form comparison cases used by ``bergman-lab compare``.

Each case returns a list of :class:`Check` rows; a case passes when all its
rows pass.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import asdict, dataclass

import numpy as np

from . import oracles
from .geometry import (AmbientDomain, Complement, DilatedCopy, Disc, Horodisc,
                       HorocyclicStrip, IdealPolygon, MoebiusMap, ProductRegion)
from .moments import compress, disc_gram
from .quadrature import polar_disc_rule
from .schatten import dilation_tail_sum, iterated_kernel_integral, schatten_norm, trace_by_formula
from .toeplitz import eigensolve, moebius_image, spectrum, sweep_spectra


@dataclass
class Check:
    case: str
    label: str
    value: float
    target: float
    tolerance: float
    passed: bool

    def to_json(self) -> dict:
        return asdict(self)


def _within(case, label, value, target, tol, relative=False):
    value, target = float(value), float(target)
    dev = abs(value - target) / (abs(target) if relative else 1.0)
    return Check(case, label, value, target, tol, bool(dev <= tol))


def _atmost(case, label, value, bound):
    return Check(case, label, float(value), float(bound), 0.0, bool(value <= bound))


def case_dilation(seed: int = 0):
    g = compress(DilatedCopy(0.5), 16).entries
    k = np.arange(16)
    diag_dev = np.max(np.abs(np.diag(g) - 0.5 ** (2 * k + 2)))
    off_dev = np.max(np.abs(g - np.diag(np.diag(g))))
    return [_within("dilation", "diagonal = 0.5^(2k+2)", diag_dev, 0.0, 1e-13),
            _within("dilation", "off-diagonal = 0", off_dev, 0.0, 1e-13)]


def case_offcenter(seed: int = 0):
    orc = oracles.offcenter_disc_spectrum(0.3, 0.2)
    eig = spectrum(Disc(0.3, 0.2), 80).eigenvalues
    lam = orc.values(5)
    out = [_within("offcenter", "top eigenvalue", eig[0], lam[0], 1e-6, relative=True)]
    for k in range(1, 5):
        out.append(_within("offcenter", f"eigenvalue {k}", eig[k], lam[k], 1e-4, relative=True))
    return out


def case_horostrip(seed: int = 0):
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(50):
        r1, r2 = np.sort(rng.uniform(0.02, 0.98, 2))
        if r2 - r1 < 1e-3:
            continue
        closed = oracles.horostrip_endpoint(r1, r2)
        _, numeric = oracles.horostrip_numeric_sup(r1, r2)
        worst = max(worst, abs(closed - numeric))
    hi = oracles.horostrip_endpoint(0.25, 0.5)
    return [_within("horostrip", "closed form vs golden section (50 draws)", worst, 0.0, 1e-10),
            _within("horostrip", "endpoint(1/4, 1/2) = 2/(3 sqrt 3)", hi, 2 / (3 * math.sqrt(3)), 1e-12)]


def case_strip_containment(seed: int = 0):
    hi = oracles.horostrip_endpoint(0.25, 0.5)
    specs = sweep_spectra(HorocyclicStrip(0.0, 0.25, 0.5), (32, 64, 128))
    out = []
    for s in specs:
        out.append(_atmost("strip", f"max eigenvalue N={s.order} <= endpoint + 5e-3", s.top, hi + 5e-3))
        out.append(Check("strip", f"min eigenvalue N={s.order} >= 0", s.bottom, 0.0, 1e-12,
                         bool(s.bottom >= -1e-12)))
    tops = [s.top for s in specs]
    out.append(Check("strip", "max eigenvalue nondecreasing", tops[-1], tops[0], 0.0,
                     bool(all(b >= a - 1e-12 for a, b in zip(tops, tops[1:])))))
    return out


def case_lune(seed: int = 0):
    grid = np.linspace(0.1, 0.9, 9)
    worst = 0.0
    for a in grid:
        for b in grid:
            if a < b:
                worst = max(worst, oracles.lune_norm(float(a), float(b)).hi)
    crescent = min(oracles.lune_norm(0.0, float(b)).extras["grid_sup"] for b in grid)
    return [Check("lune", "max lune norm on interior grid < 1 - 1e-6", worst, 1 - 1e-6, 0.0,
                  bool(worst < 1 - 1e-6)),
            Check("lune", "crescent grid sup >= 1 - 1e-3", crescent, 1 - 1e-3, 0.0,
                  bool(crescent >= 1 - 1e-3))]


def case_complement(seed: int = 0):
    out = []
    for region in (DilatedCopy(0.5), Disc(0.3 + 0.1j, 0.25), HorocyclicStrip(0.7, 0.25, 0.5)):
        g = compress(region, 32).entries + compress(Complement(region), 32).entries
        out.append(_within("complement", f"G(U) + G(complement) = I for {region.kind}",
                           np.max(np.abs(g - np.eye(32))), 0.0, 1e-10))
    return out


def case_triangle_trace(seed: int = 0):
    value, _ = trace_by_formula(IdealPolygon.regular(3))
    return [_within("triangle", "trace of the ideal triangle = 1/4", value, 0.25, 0.02, relative=True)]


def case_schatten(seed: int = 0):
    g = compress(DilatedCopy(0.5), 40)
    rep = schatten_norm(g, 1, dilation_tail_sum(0.5, 40))
    out = [_within("schatten", "S1 norm = 1/3", rep.value_matrix, 1 / 3, 1e-8 + rep.tail_bound)]
    for p in (1, 2, 3):
        r = schatten_norm(g, p)
        out.append(_within("schatten", f"eigen vs power path p={p}", r.value_matrix, r.value_power, 1e-10))
    gd = compress(Disc(0.3, 0.2), 40)
    integral = iterated_kernel_integral(gd, 3)
    tr = float(np.trace(gd.entries @ gd.entries).real)
    out.append(_within("schatten", "int B^(3) = trace(G^2)", integral, tr, 1e-10))
    return out


def case_ball(seed: int = 0):
    b = oracles.ball_bounds(2, 1.0, 0.5, 0.5)
    ball2 = AmbientDomain.unit_ball(2)
    rq = compress(DilatedCopy(0.5), 1, ball2).entries[0, 0].real
    rng = np.random.default_rng(seed)
    n, r, delta = 3, 0.4, 0.7
    worst = -np.inf
    for _ in range(200):
        rad = r * math.sqrt(rng.uniform())
        z = delta + rad * cmath.exp(2j * math.pi * rng.uniform())
        worst = max(worst, oracles.slice_norm(n, r, delta, z) - delta ** ((n - 1) / 2))
    return [_within("ball", "lower bound 0.25", b.lo, 0.25, 1e-15),
            _within("ball", "upper bound sqrt(0.5)", b.hi, math.sqrt(0.5), 1e-15),
            _within("ball", "constant Rayleigh quotient = (r/R)^(2n)", rq, 0.5 ** 4, 1e-15),
            _atmost("ball", "slice norm sweep <= delta^((n-1)/2) + 1e-12", worst, 1e-12)]


def case_bidisc(seed: int = 0):
    amb = AmbientDomain.polydisc((1.0, 1.0))
    region = ProductRegion(((0.0, 0.6), (0.4, 1.0)))
    order = 41 * 42 // 2
    diag = np.diag(compress(region, order, amb).entries).real
    top = float(diag.max())
    return [_within("bidisc", "sup over |alpha| <= 40 = rho1^2", top, 0.36, 1e-12),
            _within("bidisc", "restriction norm = 0.6", math.sqrt(top), 0.6, 1e-12)]


def case_moebius(seed: int = 0):
    region = Disc(0.0, 0.3)
    image = moebius_image(region, MoebiusMap(0.4, 0.0))
    a = eigensolve(compress(region, 80)).top
    b = eigensolve(compress(image, 80)).top
    lam0 = oracles.offcenter_disc_spectrum(image.center, image.radius).values(1)[0]
    return [_within("moebius", "top eigenvalue deviation", abs(a - b) / a, 0.0, 1e-4),
            _within("moebius", "original vs closed form", a, lam0, 1e-4, relative=True),
            _within("moebius", "image vs closed form", b, lam0, 1e-4, relative=True)]


def case_horodisc(seed: int = 0):
    specs = sweep_spectra(Horodisc(0.0, 0.5), (32, 64, 128))
    tops = [s.top for s in specs]
    eig = specs[-1].eigenvalues
    counts, _ = np.histogram(eig, bins=10, range=(0.0, tops[-1]))
    return [Check("horodisc", "max eigenvalue nondecreasing", tops[-1], tops[0], 0.0,
                  bool(all(b >= a - 1e-12 for a, b in zip(tops, tops[1:])))),
            Check("horodisc", "every histogram bin occupied at N=128", float(counts.min()), 1.0, 0.0,
                  bool(counts.min() >= 1))]


def case_disc_moment(seed: int = 0):
    """Binomial disc moments against an independent polar quadrature rule."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(20):
        r = rng.uniform(0.05, 0.5)
        c = (1 - r) * math.sqrt(rng.uniform()) * cmath.exp(2j * math.pi * rng.uniform())
        j, k = (int(v) for v in rng.integers(0, 8, 2))
        nodes, w = polar_disc_rule(c, r, 16, 32)
        ref = np.sum(w * nodes ** j * np.conj(nodes) ** k)
        g = disc_gram(c, r, 8)
        scale = math.pi / math.sqrt((j + 1) * (k + 1))
        worst = max(worst, abs(g[j, k] * scale - ref))
    return [_within("disc-moment", "binomial formula vs polar quadrature (20 draws)", worst, 0.0, 1e-10)]


CASES = {
    "dilation": case_dilation,
    "offcenter": case_offcenter,
    "horostrip": case_horostrip,
    "strip": case_strip_containment,
    "lune": case_lune,
    "complement": case_complement,
    "triangle": case_triangle_trace,
    "schatten": case_schatten,
    "ball": case_ball,
    "bidisc": case_bidisc,
    "moebius": case_moebius,
    "horodisc": case_horodisc,
    "disc-moment": case_disc_moment,
}


def run_cases(names, seed: int = 0) -> list[Check]:
    out = []
    for name in names:
        out.extend(CASES[name](seed))
    return out
