import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.stats import qmc

from bergman_lab.errors import DiameterCase, DimensionMismatch, DomainError
from bergman_lab.geometry import (FULL, TWO_PI, AmbientDomain, Complement, DilatedCopy, Disc, Horodisc,
                                  HorocyclicStrip, HypercyclicLune, IdealPolygon, Indicator, MoebiusMap,
                                  ProductRegion, cayley, cayley_inverse, contains, critical_radii,
                                  geodesic_side_circle, interval_complement, interval_intersection,
                                  interval_measure, interval_union, lune_to_wedge,
                                  normalizing_automorphism, region_from_json, register_indicator, slices)
from bergman_lab.quadrature import region_rule

UNIT = AmbientDomain.unit_disc()
# Euclidean area of the ideal triangle on the cube roots of unity: the chord
# triangle 3*sqrt(3)/4 minus three segments of radius sqrt(3) and angle pi/3
TRIANGLE_AREA = 3 * math.sqrt(3) - 1.5 * math.pi


def _disc_points(rng, count, radius=1.0):
    r = radius * np.sqrt(rng.uniform(size=count))
    return r * np.exp(2j * np.pi * rng.uniform(size=count))


unit_points = st.tuples(st.floats(0.0, 0.98), st.floats(0.0, TWO_PI)).map(lambda p: p[0] * cmath.exp(1j * p[1]))
arcs = st.lists(st.tuples(st.floats(0.0, TWO_PI), st.floats(0.0, TWO_PI)), max_size=4).map(
    lambda pairs: interval_union((), tuple(sorted((min(a, b), max(a, b)) for a, b in pairs))))


# intervals

def test_interval_basics():
    iv = ((0.0, 1.0), (2.0, 3.0))
    assert interval_measure(iv) == pytest.approx(2.0)
    assert interval_measure(interval_complement(iv)) == pytest.approx(TWO_PI - 2.0)
    assert interval_intersection(iv, ((0.5, 2.5),)) == ((0.5, 1.0), (2.0, 2.5))
    assert interval_measure(interval_union(iv, ((0.5, 2.5),))) == pytest.approx(3.0)
    assert interval_complement(FULL) == ()


@given(arcs)
def test_interval_complement_measure(iv):
    assert interval_measure(iv) + interval_measure(interval_complement(iv)) == pytest.approx(TWO_PI)


@given(arcs, arcs)
def test_interval_inclusion_exclusion(a, b):
    lhs = interval_measure(interval_union(a, b)) + interval_measure(interval_intersection(a, b))
    assert lhs == pytest.approx(interval_measure(a) + interval_measure(b), abs=1e-12)


# maps

@given(unit_points)
def test_cayley_round_trip(z):
    w = cayley(z)
    assert w.imag > 0
    assert abs(cayley_inverse(w) - z) < 1e-9


def test_cayley_rejects_outside():
    with pytest.raises(DomainError):
        cayley(1.5)
    with pytest.raises(DomainError):
        cayley_inverse(-1j)


def test_cayley_known_values():
    assert cayley(0.0) == pytest.approx(1j)
    assert cayley(0.5) == pytest.approx(3j)


@given(unit_points, unit_points, st.floats(-math.pi, math.pi))
def test_moebius_preserves_disc(a, z, phase):
    f = MoebiusMap(a, phase)
    w = f.apply(z)
    assert abs(w) < 1
    assert abs(f.apply_inverse(w) - z) < 1e-8
    assert abs(f.inverse().apply(w) - z) < 1e-8


def test_moebius_derivative_matches_difference_quotient():
    f = MoebiusMap(0.3 - 0.2j, 0.7)
    z, h = 0.1 + 0.25j, 1e-6
    assert f.derivative(z) == pytest.approx((f.apply(z + h) - f.apply(z - h)) / (2 * h), rel=1e-8)


@given(unit_points, st.floats(0.01, 0.5), st.tuples(st.floats(0.0, 0.9), st.floats(0.0, TWO_PI)))
@settings(max_examples=50)
def test_moebius_image_of_disc(a, radius, c):
    center = c[0] * cmath.exp(1j * c[1])
    radius = min(radius, 0.99 * (1 - abs(center)))
    f = MoebiusMap(a, 0.4)
    ic, ir = f.image_of_disc(center, radius)
    pts = center + radius * np.exp(1j * np.linspace(0, TWO_PI, 17))
    assert np.allclose(np.abs(f.apply(pts) - ic), ir, atol=1e-8)


def test_geodesic_side_circle_is_orthogonal():
    a, b = cmath.exp(0.3j), cmath.exp(2.1j)
    c, r = geodesic_side_circle(a, b)
    assert abs(c) ** 2 == pytest.approx(1 + r * r)
    assert abs(a - c) == pytest.approx(r)
    assert abs(b - c) == pytest.approx(r)
    with pytest.raises(DiameterCase):
        geodesic_side_circle(1.0, -1.0)


def test_normalizing_automorphism_sends_endpoints():
    for a, b in [(cmath.exp(0.4j), cmath.exp(2.9j)), (1j, -1j), (cmath.exp(5.0j), cmath.exp(1.0j))]:
        f = normalizing_automorphism(a, b)
        assert f.apply(a) == pytest.approx(-1.0)
        assert f.apply(b) == pytest.approx(1.0)


# regions

def test_disc_horodisc_strip_membership():
    assert Disc(0.3, 0.2).contains(0.45)
    assert not Disc(0.3, 0.2).contains(0.55)
    h = Horodisc(math.pi / 2, 0.5)
    assert h.as_disc().center == pytest.approx(0.5j)
    assert h.contains(0.9j) and not h.contains(-0.1j)
    s = HorocyclicStrip(0.0, 0.25, 0.5)
    assert s.contains(0.3) and not s.contains(0.8) and not s.contains(-0.1)


def test_strip_is_outer_minus_inner():
    rng = np.random.default_rng(1)
    z = _disc_points(rng, 4000)
    s = HorocyclicStrip(1.1, 0.2, 0.6)
    expected = s.outer.contains(z) & ~s.inner.contains(z)
    assert np.array_equal(s.contains(z), expected)


def test_region_validation():
    with pytest.raises(DomainError):
        Disc(0, -1)
    with pytest.raises(DomainError):
        Horodisc(0, 1.0)
    with pytest.raises(DomainError):
        HorocyclicStrip(0, 0.5, 0.4)
    with pytest.raises(DomainError):
        HypercyclicLune(-1, 1, 2.0, 1.0)
    with pytest.raises(DomainError):
        IdealPolygon((1, 1j))
    with pytest.raises(DomainError):
        IdealPolygon((1, 0.5j, -1))
    with pytest.raises(DomainError):
        DilatedCopy(1.2)


def test_lune_chart_and_csg_agree():
    rng = np.random.default_rng(2)
    z = _disc_points(rng, 20000, 0.999)
    for lune in (HypercyclicLune(-1, 1, 0.6, 2.0), HypercyclicLune(cmath.exp(0.3j), cmath.exp(2.5j), 0.2, 1.4),
                 HypercyclicLune(1j, cmath.exp(4.0j), 0.0, 1.0), HypercyclicLune(-1, 1, 1.2, math.pi)):
        chart = lune.contains(z)
        csg = lune.compiled(UNIT).contains(z)
        th = lune.wedge_angle(z)
        near = (np.abs(th - lune.alpha) < 1e-9) | (np.abs(th - lune.beta) < 1e-9)
        assert np.array_equal(chart[~near], csg[~near])


def test_lune_orientation_small_angles_hug_lower_arc():
    thin = HypercyclicLune(-1, 1, 0.0, 0.1)
    assert thin.contains(-0.99j)
    assert not thin.contains(0.99j)


@given(st.floats(0.0, TWO_PI), st.floats(0.3, 5.5), st.floats(0.05, 1.4), st.floats(0.1, 1.5))
@settings(max_examples=40)
def test_lune_to_wedge_recovers_angles(t0, gap, alpha, width):
    a, b = cmath.exp(1j * t0), cmath.exp(1j * (t0 + gap))
    beta = min(alpha + width, math.pi - 1e-3)
    lune = HypercyclicLune(a, b, alpha, beta)
    wa, wb = lune_to_wedge(lune)
    assert wa == pytest.approx(alpha, abs=1e-9)
    assert wb == pytest.approx(beta, abs=1e-9)


def test_ideal_triangle_area_monte_carlo():
    rng = np.random.default_rng(3)
    tri = IdealPolygon.regular(3)
    count = 4_000_000
    hits = tri.contains(_disc_points(rng, count))
    est = math.pi * hits.mean()
    sigma = math.pi * math.sqrt(hits.mean() * (1 - hits.mean()) / count)
    assert abs(est - TRIANGLE_AREA) < 5 * sigma


def test_ideal_triangle_area_quasi_monte_carlo():
    # 2^24 (about 1.7e7) scrambled Sobol points on the square reach three significant figures
    sampler = qmc.Sobol(2, seed=5)
    hits = 0
    for _ in range(16):
        pts = sampler.random(2 ** 20) * 2 - 1
        z = pts[:, 0] + 1j * pts[:, 1]
        hits += int(np.count_nonzero(tri_hits(z)))
    est = 4.0 * hits / 2 ** 24
    assert abs(est - TRIANGLE_AREA) < 5e-4


def tri_hits(z):
    return IdealPolygon.regular(3).contains(z) & (np.abs(z) < 1)


def test_ideal_triangle_area_cells():
    rule = region_rule(IdealPolygon.regular(3))
    area = float(np.sum(rule.weights))
    assert abs(area - TRIANGLE_AREA) <= max(rule.error, 1e-6)
    assert abs(area - TRIANGLE_AREA) < 1e-4


def test_ideal_square_has_diameter_sides():
    sq = IdealPolygon.regular(4, rotation=math.pi / 4)
    assert sq.contains(0.0)
    assert len(sq.sides()) == 4
    # vertices at angles pi/4 + k pi/2; the point 0.95 lies beyond the side through exp(+-i pi/4)
    assert not sq.contains(0.95)


def test_polygon_vertices_sorted():
    p = IdealPolygon((1j, -1, 1))
    assert [round(cmath.phase(v) % TWO_PI, 6) for v in p.vertices] == [0.0, round(math.pi / 2, 6), round(math.pi, 6)]


def test_complement_membership():
    rng = np.random.default_rng(4)
    z = _disc_points(rng, 5000)
    d = Disc(0.2j, 0.3)
    assert np.array_equal(Complement(d).contains(z), ~d.contains(z))


def test_higher_dimensional_membership():
    ball = AmbientDomain.unit_ball(2)
    pts = np.array([[0.2, 0.3], [0.6, 0.6], [0.7, 0.8]], dtype=complex)
    assert list(DilatedCopy(0.8).contains(pts, ball)) == [True, False, False]
    assert list(Complement(DilatedCopy(0.8)).contains(pts, ball)) == [False, True, False]
    assert not ball.contains(pts[2])
    bidisc = AmbientDomain.polydisc((1.0, 1.0))
    prod = ProductRegion(((0.0, 0.6), (0.4, 1.0)))
    assert list(prod.contains(np.array([[0.1, 0.5], [0.1, 0.2], [0.7, 0.5]]), bidisc)) == [True, False, False]
    with pytest.raises(DimensionMismatch):
        contains(Disc(0, 0.1), ball, np.zeros((3, 3)))
    with pytest.raises(DimensionMismatch):
        Disc(0, 0.1).contains(pts, ball)


def test_indicator_registry_and_json():
    register_indicator("upper-half", lambda z: np.asarray(z).imag > 0)
    ind = region_from_json({"kind": "Indicator", "params": {"label": "upper-half"}})
    assert ind.contains(0.5j) and not ind.contains(-0.5j)
    with pytest.raises(DomainError):
        Indicator("never-registered")


@pytest.mark.parametrize("region", [
    Disc(0.1 + 0.2j, 0.3), Horodisc(1.0, 0.4), HorocyclicStrip(0.5, 0.2, 0.6),
    HypercyclicLune(1j, -1j, 0.3, 1.1), IdealPolygon.regular(5), DilatedCopy(0.7),
    ProductRegion(((0.0, 0.5),)), Complement(Disc(0.0, 0.5)),
])
def test_region_json_round_trip(region):
    assert region_from_json(region.to_json()) == region


def test_unknown_region_kind():
    with pytest.raises(DomainError):
        region_from_json({"kind": "Hexagon", "params": {}})


def test_ambient_json_round_trip():
    for amb in (UNIT, AmbientDomain.unit_ball(3), AmbientDomain.polydisc((1.0, 0.5))):
        assert AmbientDomain.from_json(amb.to_json()) == amb


def test_slices_match_sampling():
    thetas = np.linspace(0.0, TWO_PI, 200001)
    for region in (Disc(0.3 + 0.1j, 0.25), HorocyclicStrip(2.0, 0.2, 0.5), IdealPolygon.regular(3),
                   HypercyclicLune(-1, 1, 0.7, 2.2), Complement(Disc(0.4, 0.3))):
        for s in (0.15, 0.4, 0.6, 0.85):
            measured = interval_measure(slices(region, s))
            sampled = TWO_PI * region.contains(s * np.exp(1j * thetas)).mean()
            assert measured == pytest.approx(sampled, abs=1e-3)


def test_slices_at_origin_and_critical_radii():
    assert slices(DilatedCopy(0.5), 0.0) == FULL
    assert slices(Disc(0.5, 0.1), 0.0) == ()
    assert critical_radii(Disc(0.5, 0.1)) == pytest.approx([0.4, 0.6])


SAMPLED_REGIONS = [
    Disc(0.3 + 0.1j, 0.25), Horodisc(2.0, 0.4), HorocyclicStrip(0.5, 0.2, 0.6),
    HypercyclicLune(1j, cmath.exp(3.5j), 0.4, 2.0), HypercyclicLune(-1, 1, 0.0, 1.2),
    IdealPolygon.regular(3), IdealPolygon.regular(4, rotation=0.3), DilatedCopy(0.6),
    ProductRegion(((0.2, 0.7),)), Complement(Disc(0.1, 0.5)),
]


def _margin(region, z):
    """Distance-like margin to the region boundary, from the compiled atoms."""
    shape = region.compiled(UNIT)
    eps = 1e-12
    shifted = [shape.contains(z + d) for d in (eps, -eps, 1j * eps, -1j * eps)]
    base = shape.contains(z)
    return np.all([s == base for s in shifted], axis=0)


@pytest.mark.parametrize("region", SAMPLED_REGIONS, ids=lambda r: r.kind)
def test_complement_is_ambient_and_not_region(region):
    pts = qmc.Sobol(2, seed=6).random_base2(14) * 2 - 1
    z = pts[:, 0] + 1j * pts[:, 1]
    z = z[np.abs(z) < 1 - 1e-12]
    clear = _margin(region, z)
    comp = Complement(region).contains(z)
    assert np.array_equal(comp[clear], ~region.contains(z)[clear])


def test_horodisc_and_disc_agree():
    rng = np.random.default_rng(8)
    z = _disc_points(rng, 10000)
    h = Horodisc(0.8, 0.35)
    assert np.array_equal(h.contains(z), h.as_disc().contains(z))


def test_moebius_group_law():
    rng = np.random.default_rng(9)
    z = _disc_points(rng, 2000, 0.99)
    for a in (0.5, -0.3 + 0.6j, 0.9j):
        f = MoebiusMap(a, 1.3)
        assert np.max(np.abs(f.inverse().apply(f.apply(z)) - z)) <= 1e-13


def test_geodesic_circles_orthogonality_tight():
    rng = np.random.default_rng(10)
    for t in rng.uniform(0, TWO_PI, (50, 2)):
        if abs(cmath.exp(1j * t[0]) + cmath.exp(1j * t[1])) < 1e-6:
            continue
        c, r = geodesic_side_circle(cmath.exp(1j * t[0]), cmath.exp(1j * t[1]))
        assert abs(abs(c) ** 2 - r * r - 1) <= 1e-13 * max(1.0, r * r)


def test_lune_to_wedge_examples():
    assert lune_to_wedge(HypercyclicLune(-1, 1, 0.4, 1.9)) == pytest.approx((0.4, 1.9), abs=1e-12)
    assert lune_to_wedge(HypercyclicLune(-1j, 1j, 0.4, 1.9)) == pytest.approx((0.4, 1.9), abs=1e-12)
    assert lune_to_wedge(HypercyclicLune(cmath.exp(1j), cmath.exp(2j), 0.7, math.pi)) == pytest.approx(
        (0.7, math.pi), abs=1e-12)


def test_boundary_points_are_outside():
    d = Disc(0.0, 0.5)
    assert not d.contains(0.5)
    assert not IdealPolygon.regular(3).contains(1.0)
    assert not DilatedCopy(0.5).contains(0.5)
