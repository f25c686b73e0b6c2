from fractions import Fraction as F

import numpy as np
import pytest

from icnf.geometry import (
    ConvexRateRegion, LinearBound, RatePair, RegionUnion, UnboundedRegionError, boundary_point,
    boundary_samples, contains, contains_many, from_json, merge_families, pareto_front, prune_redundant,
    member_corners, ray_extent, ray_extents, region, support_values, to_json, vertex_set, vertices, vertices_csv, within_units,
)


def square_with_cut():
    # R1 <= 3, R2 <= 2, R1 + R2 <= 4: corners (0,0),(3,0),(3,1),(2,2),(0,2)
    return region([(1, 0, 3), (0, 1, 2), (1, 1, 4)])


def test_vertices_hand_polygon():
    assert vertex_set(square_with_cut()) == {(0, 0), (3, 0), (3, 1), (2, 2), (0, 2)}


def test_vertices_are_exact_fractions():
    reg = region([(1, 0, 3), (0, 1, 3), (2, 1, 5)])
    assert (F(1), F(3)) in vertex_set(reg)
    reg = region([(1, 0, 2), (0, 1, 2), (1, 2, 3)])
    assert (F(2), F(1, 2)) in vertex_set(reg)


def test_exact_membership_boundary_and_outside():
    reg = square_with_cut()
    assert contains(reg, RatePair(F(2), F(2)))
    assert not contains(reg, RatePair(F(2), F(2) + F(1, 10**9)))
    assert not contains(reg, (-1, 0))


def test_float_membership_tolerance():
    reg = region([(1, 0, 1.0), (0, 1, 1.0)], exact=False)
    assert contains(reg, (1.0 + 1e-10, 0.5))
    assert not contains(reg, (1.0 + 1e-3, 0.5))
    assert contains(reg, (1.0 + 1e-3, 0.5), tol=1e-2)


def test_invalid_bounds_and_pairs():
    with pytest.raises(ValueError):
        LinearBound(0, 0, 1)
    with pytest.raises(ValueError):
        LinearBound(-1, 1, 1)
    with pytest.raises(ValueError):
        RatePair(-1, 0)


def test_unbounded_region_rejected():
    with pytest.raises(UnboundedRegionError):
        vertices(region([(1, 0, 2), (1, 1, 3)]))


def test_ray_extent_closed_form():
    reg = square_with_cut()
    assert ray_extent(reg, (1, 1)) == 2
    assert ray_extent(reg, (1, 0)) == 3
    assert boundary_point(reg, (2, 1)) == RatePair(F(8, 3), F(4, 3))


def test_union_extent_is_max_over_members():
    a = region([(1, 0, 3), (0, 1, 1)], exact=False)
    b = region([(1, 0, 1), (0, 1, 3)], exact=False)
    u = RegionUnion.from_members([((0,), a), ((1,), b)])
    assert ray_extent(u, (1, 0)) == pytest.approx(3)
    assert ray_extent(u, (1, 1)) == pytest.approx(1)
    assert contains(u, (2.5, 0.5)) and contains(u, (0.5, 2.5)) and not contains(u, (2, 2))


def test_prune_keeps_vertices():
    reg = region([(1, 0, 3), (0, 1, 2), (1, 1, 4), (1, 1, 9), (2, 1, 20), (1, 2, F(11, 2))])
    pruned = prune_redundant(reg)
    assert vertex_set(pruned) == vertex_set(reg)
    assert {b.family for b in pruned.bounds} == {(1, 0), (0, 1), (1, 1), (1, 2)}


def test_merge_families_keeps_tightest():
    reg = region([(1, 0, 3), (1, 0, 2), (0, 1, 5)])
    assert merge_families(reg).family_values() == {(1, 0): 2, (0, 1): 5}


def test_support_values_against_vertex_enumeration():
    rng = np.random.default_rng(4)
    coeffs = np.array([(1, 0), (0, 1), (1, 1), (2, 1), (1, 2)], float)
    vals = rng.uniform(0.5, 5, size=(20, 5))
    dirs = np.array([(1, 0), (1, 1), (2, 1), (3, 7), (1, 5)], float)
    got = support_values(coeffs, vals, dirs)
    for m in range(len(vals)):
        reg = ConvexRateRegion(tuple(LinearBound(int(c1), int(c2), float(v))
                                     for (c1, c2), v in zip(coeffs, vals[m])), exact=False)
        pts = np.array([(float(p.r1), float(p.r2)) for p in vertices(reg)])
        np.testing.assert_allclose(got[m], (pts @ dirs.T).max(axis=0), rtol=1e-9)


def test_boundary_samples_lie_on_boundary():
    reg = region([(1, 0, 3), (0, 1, 2), (1, 1, 4)], exact=False)
    pts = boundary_samples(reg, 64)
    pts = pts[pts.sum(axis=1) > 0]
    assert contains_many(reg, pts, 1e-9).all()
    assert not contains_many(reg, pts * 1.001 + 1e-6, 1e-9).any()


def test_pareto_front():
    pts = np.array([[0, 3], [1, 2], [1, 1], [2, 0], [0.5, 2]], float)
    front = {tuple(p) for p in pareto_front(pts)}
    assert front == {(0, 3), (1, 2), (2, 0)}


def test_within_units():
    small = region([(1, 0, 1), (0, 1, 1)], exact=False)
    big = region([(1, 0, 2), (0, 1, 2)], exact=False)
    assert within_units(small, big, 1.0)
    assert not within_units(small, big, 0.9)
    with pytest.raises(ValueError):
        within_units(small, big, -1)


def test_json_roundtrip_and_csv():
    reg = region([(1, 0, F(7, 2)), (0, 1, 2), (1, 1, 4)])
    assert '"7/2"' in to_json(reg)
    back = from_json(to_json(reg))
    assert back.exact and vertex_set(back) == vertex_set(reg)
    csv = vertices_csv(reg).splitlines()
    assert csv[0] == "r1,r2" and "7/2,1/2" in csv


def test_ray_extents_matches_scalar():
    rng = np.random.default_rng(6)
    coeffs = np.array([(1, 0), (0, 1), (1, 1), (2, 1), (1, 2)], float)
    u = RegionUnion(coeffs, rng.uniform(0.5, 5, size=(300, 5)), np.arange(300.0)[:, None])
    dirs = np.array([(1, 0), (0, 1), (1, 1), (0.3, 0.9)])
    got = ray_extents(u, dirs, chunk=64)
    np.testing.assert_allclose(got, [ray_extent(u, tuple(d)) for d in dirs])


def test_member_corners_cover_vertices():
    reg = square_with_cut()
    got = {tuple(p) for p in member_corners(region([(1, 0, 3), (0, 1, 2), (1, 1, 4)], exact=False))}
    assert got == {(float(x), float(y)) for x, y in vertex_set(reg)}
