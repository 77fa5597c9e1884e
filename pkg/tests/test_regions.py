import numpy as np
import pytest

from conftest import CENTER, mask
from oracles import random_general_position
from spatialvote.coalitions import enumerate_allowed
from spatialvote.geometry import (
    CoalitionMask,
    Grid,
    all_masks,
    grid_scan,
    nearest_k_region_feasible,
    nearest_set_is,
    orientation,
)
from spatialvote.regions import (
    grid_allowed,
    refine_until_stable,
    region_polygon,
    soi_outcome_regions,
    tioli_outcome_region,
)


def is_convex_ccw(verts):
    n = len(verts)
    return all(
        orientation(verts[i], verts[(i + 1) % n], verts[(i + 2) % n]) >= 0 for i in range(n)
    )


def exact_tioli(points):
    n = len(points)
    found = set()
    for k in range(1, n):
        found |= enumerate_allowed(points, "tioli", k)
    return found


def test_center_cell_is_square(square):
    poly = region_polygon(square, mask(5, CENTER), (-3, -3, 5, 5))
    assert not poly.clipped
    assert sorted(poly.vertices) == [(0, 1), (1, 0), (1, 2), (2, 1)]
    assert is_convex_ccw(poly.vertices)
    inner = np.mean(np.array(poly.vertices, dtype=float), axis=0)
    assert nearest_set_is(square, inner, mask(5, CENTER))


def test_two_voter_halfplane():
    pts = [(0.0, 0.0), (10.0, 0.0)]
    poly = region_polygon(pts, mask(2, 0), (-10, -10, 20, 10))
    assert poly.clipped
    assert sorted(poly.vertices) == [(-10, -10), (-10, 10), (5, -10), (5, 10)]


def test_diagonal_polygon_empty(square):
    poly = region_polygon(square, mask(5, 0, 2), (-3, -3, 5, 5))
    assert poly.empty
    assert tioli_outcome_region(square, mask(5, 0, 2), Grid.around(square, 101)).points.shape == (0, 2)


def test_box_is_enlarged_to_reach_region():
    pts = [(0.0, 0.0), (10.0, 0.0)]
    poly = region_polygon(pts, mask(2, 1), (-3, -3, 1, 1))
    assert not poly.empty
    assert poly.box[2] > 5


def test_polygon_matches_feasibility_and_is_convex():
    rng = np.random.default_rng(31)
    for _ in range(4):
        pts = random_general_position(rng, 7)
        box = Grid.around(pts, 11).box
        for m in all_masks(7):
            if not m.is_proper():
                continue
            poly = region_polygon(pts, m, box)
            assert poly.empty != nearest_k_region_feasible(pts, m)[0]
            if not poly.empty:
                assert is_convex_ccw(poly.vertices)


def test_polygon_serializes(square):
    d = region_polygon(square, mask(5, CENTER), (-3, -3, 5, 5)).to_dict(list("abcde"))
    assert d["coalition"] == ["e"] and d["clipped"] is False and len(d["vertices"]) == 4


def test_soi_infeasible_gives_empty_samples(square):
    a, b = soi_outcome_regions(square, mask(5, CENTER), Grid.around(square, 41))
    assert len(a) == 0 and len(b) == 0


def test_soi_two_voters_mirror():
    pts = np.array([(-1.0, 0.0), (1.0, 0.0)])
    grid = Grid(-3, -3, 3, 3, 31)
    a, b = soi_outcome_regions(pts, mask(2, 0), grid)
    assert len(a) == len(b) > 0
    # grid coordinates are not bit-symmetric about zero, so compare rounded
    mirrored = {(round(-x, 9), round(y, 9)) for x, y in a.points}
    assert mirrored == {(round(x, 9), round(y, 9)) for x, y in b.points}


def test_soi_samples_reverify():
    pts = random_general_position(np.random.default_rng(6), 9)
    m = next(iter(sorted(enumerate_allowed(pts, "edp", 5))))
    # separable splits have unbounded regions; a wider box reaches both
    a, b = soi_outcome_regions(pts, m, Grid.around(pts, 81, inflate=4.0))
    assert len(a) and len(b)
    assert all(nearest_set_is(pts, p, m) for p in a.points)
    assert all(nearest_set_is(pts, p, m.complement()) for p in b.points)
    assert not ({tuple(p) for p in a.points} & {tuple(p) for p in b.points})


def test_tioli_sample_near_cluster():
    angles = np.linspace(0, 2 * np.pi, 5, endpoint=False) + 0.1
    spread = np.column_stack([np.cos(angles), np.sin(angles)])
    cluster = np.array([(0.1, 0.16), (0.14, 0.12), (0.06, 0.13), (0.11, 0.2)])
    pts = np.vstack([spread, cluster])
    m = mask(9, 5, 6, 7, 8)
    sample = tioli_outcome_region(pts, m, Grid.around(pts, 201))
    assert len(sample) > 0
    focal = sample.points.mean(axis=0)
    assert np.hypot(*(focal - cluster.mean(axis=0))) < 0.2
    assert all(nearest_set_is(pts, p, m) for p in sample.points)


def test_sample_serializes(square):
    s = tioli_outcome_region(square, mask(5, CENTER), Grid.around(square, 21))
    d = s.to_dict(list("abcde"))
    assert d["coalition"] == ["e"] and len(d["points"]) == len(s)
    assert tioli_outcome_region(square, CoalitionMask.empty(5), Grid.around(square, 21)).points.size == 0


def test_grid_allowed_subset_of_exact():
    pts = random_general_position(np.random.default_rng(8), 7)
    exact = exact_tioli(pts)
    for res in (11, 31):
        assert grid_allowed(grid_scan(pts, Grid.around(pts, res)), "tioli") <= exact


def test_refine_square_reaches_exact(square):
    sets, stable = refine_until_stable(square, "tioli", [101, 201, 401])
    assert stable
    assert sets[-1] == exact_tioli(square)
    assert {m for m in sets[-1] if len(m) == 1} == {mask(5, i) for i in range(5)}
    assert all(a <= b for a, b in zip(sets, sets[1:]))


def test_refine_monotone_random():
    pts = random_general_position(np.random.default_rng(10), 8)
    for model in ("tioli", "soi"):
        sets, _ = refine_until_stable(pts, model, [11, 21, 41, 81])
        assert all(a <= b for a, b in zip(sets, sets[1:]))


def test_refine_single_level_not_stable(square):
    sets, stable = refine_until_stable(square, "tioli", [21])
    assert len(sets) == 1 and not stable


def test_refine_rejects_unnested(square):
    with pytest.raises(ValueError):
        refine_until_stable(square, "tioli", [11, 20])
    with pytest.raises(ValueError):
        refine_until_stable(square, "tioli", [])
