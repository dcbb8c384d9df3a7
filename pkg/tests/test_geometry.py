"""Tests for clsmooth.geometry: box unions, lattice sets and exhaustions."""

from __future__ import annotations

import itertools
import json
import math
from fractions import Fraction
from typing import TYPE_CHECKING

import numpy as np
import pytest

from clsmooth.exceptions import ConfigError, GeometryError, PreconditionError
from clsmooth.geometry import (
    Box,
    BoxUnion,
    ClosedSet,
    cube_in_domain,
    default_exhaustion,
    distance_to_closed,
    lattice_sets,
    load_box_union,
    load_closed_set,
    support_meets,
    uncovered_cubes,
)

if TYPE_CHECKING:
    from pathlib import Path


def _union(*intervals: tuple[float, float], open: bool = True) -> BoxUnion:
    return BoxUnion(tuple(Box((lo,), (hi,)) for lo, hi in intervals), open)


class TestBox:
    def test_reversed_bounds_rejected(self):
        with pytest.raises(GeometryError):
            Box((1.0,), (0.0,))

    def test_distance_and_nearest(self):
        box = Box.cube(2, 0.0, 1.0)
        assert box.distance((2.0, 0.5)) == pytest.approx(1.0)
        assert box.nearest((-1.0, 0.5)).tolist() == [0.0, 0.5]

    def test_shrunk(self):
        assert Box((0.0,), (1.0,)).shrunk(0.25) == Box((0.25,), (0.75,))
        assert Box((0.0,), (1.0,)).shrunk(0.6) is None

    def test_unbounded_json(self):
        box = Box((-math.inf,), (1.0,))
        assert box.to_json() == [[None, 1.0]]
        assert Box.from_json([[None, 1.0]]) == box


class TestContainsBox:
    def test_open_interval(self):
        omega = _union((0.0, 1.0))
        assert omega.contains_box([0.25], [0.75])
        assert not omega.contains_box([0.0], [0.5])

    def test_closed_interval_touching(self):
        assert _union((0.0, 1.0), open=False).contains_box([0.0], [1.0])

    def test_closed_boxes_sharing_a_face(self):
        assert _union((0.0, 1.0), (1.0, 2.0), open=False).contains_box([0.5], [1.5])

    def test_open_boxes_sharing_a_face_leave_a_gap(self):
        assert not _union((0.0, 1.0), (1.0, 2.0)).contains_box([0.5], [1.5])

    def test_open_overlap(self):
        assert _union((0.0, 1.0), (0.5, 2.0)).contains_box([0.25], [1.5])

    def test_fraction_bounds(self):
        omega = _union((0.0, 1.0))
        assert omega.contains_box([Fraction(1, 3)], [Fraction(2, 3)])
        assert not omega.contains_box([Fraction(-1, 3)], [Fraction(2, 3)])

    def test_two_dimensional_l_shape(self):
        omega = BoxUnion((Box((0.0, 0.0), (2.0, 1.0)), Box((0.0, 0.0), (1.0, 2.0))), False)
        assert omega.contains_box([0.5, 0.5], [1.0, 1.5])
        assert not omega.contains_box([0.5, 0.5], [1.5, 1.5])

    def test_interior_across_touching_closed_boxes(self):
        touching = _union((0.0, 1.0), (1.0, 2.0), open=False)
        assert touching.contains_box_in_interior([0.5], [1.5])
        assert not touching.contains_box_in_interior([0.0], [1.5])
        assert not touching.contains_box_in_interior([0.5], [2.0])

    def test_open_box_across_overlap(self):
        assert _union((0.0, 1.1), (0.9, 2.0)).contains_open_box([0.5], [1.5])
        assert _union((0.0, 1.0)).contains_open_box([0.0], [1.0])
        assert not _union((0.0, 1.0), (1.0, 2.0)).contains_open_box([0.5], [1.5])

    def test_wrong_dimension(self):
        with pytest.raises(GeometryError):
            _union((0.0, 1.0)).contains_box([0.0, 0.0], [1.0, 1.0])


class TestBoxUnion:
    def test_volume_counts_overlap_once(self):
        assert _union((0.0, 1.0), (0.5, 2.0), open=False).volume() == pytest.approx(2.0)

    def test_whole_space(self):
        space = BoxUnion.whole_space(2)
        assert not space.is_bounded
        assert space.volume() == math.inf
        assert space.contains((1e9, -1e9))

    def test_bounding_box(self):
        hull = _union((0.0, 1.0), (3.0, 4.0)).bounding_box()
        assert hull == Box((0.0,), (4.0,))

    def test_interior_and_closure(self):
        closed = BoxUnion.cube(1, 0.0, 1.0, open=False)
        assert closed.contains((1.0,))
        assert not closed.interior().contains((1.0,))
        assert closed.interior().closure() == closed

    def test_erosion_of_overlapping_intervals(self):
        eroded = _union((0.0, 1.1), (0.9, 2.0)).eroded(0.125)
        assert eroded == _union((0.125, 1.875), open=False)
        assert eroded.contains((1.0,))

    def test_erosion_of_l_shape(self):
        omega = BoxUnion((Box((0.0, 0.0), (2.0, 1.0)), Box((0.0, 0.0), (1.0, 2.0))), True)
        eroded = omega.eroded(0.25)
        assert eroded is not None
        assert not eroded.open
        assert eroded.contains((0.5, 1.5))
        assert eroded.contains((1.5, 0.5))
        assert eroded.contains((0.75, 0.75))
        assert not eroded.contains((0.8, 0.8))

    def test_erosion_can_be_empty(self):
        assert _union((0.0, 0.2), (0.3, 0.5)).eroded(0.125) is None
        with pytest.raises(GeometryError):
            _union((0.0, 1.0)).eroded(0.0)

    def test_mixed_dimensions_rejected(self):
        with pytest.raises(GeometryError):
            BoxUnion((Box((0.0,), (1.0,)), Box.cube(2, 0.0, 1.0)))

    def test_json_shape(self):
        union = _union((0.0, 1.0))
        assert union.to_json() == {"boxes": [[[0.0, 1.0]]], "open": True}
        assert BoxUnion.from_json(union.to_json()) == union

    @pytest.mark.parametrize(
        "data",
        [
            [],
            {"boxes": []},
            {"boxes": [[[1.0, 0.0]]]},
            {"boxes": [[[0.0, 1.0]]], "open": "yes"},
            {"boxes": [[[0.0, 1.0]], [[0.0, 1.0], [0.0, 1.0]]]},
            {"boxes": [[["a", 1.0]]]},
        ],
    )
    def test_invalid_json(self, data: object):
        with pytest.raises(ConfigError):
            BoxUnion.from_json(data)

    def test_load_from_file(self, interval_domain: Path):
        assert load_box_union(interval_domain) == _union((-1.0, 1.0))

    def test_load_missing_file(self, tmp_path: Path):
        with pytest.raises(ConfigError, match="Failed to read"):
            load_box_union(tmp_path / "missing.json")

    def test_load_invalid_json(self, tmp_path: Path):
        path = tmp_path / "bad.json"
        path.write_text("{not json", encoding="utf-8")
        with pytest.raises(ConfigError):
            load_box_union(path)


class TestClosedSet:
    def test_nearest_point_of_cloud(self, closed_set_file: Path):
        closed = load_closed_set(closed_set_file)
        nearest, dist = closed.nearest((2.0,))
        assert nearest.tolist() == [2.5]
        assert dist == pytest.approx(0.5)

    def test_distance_to_box(self, closed_set_file: Path):
        closed = load_closed_set(closed_set_file)
        assert closed.distance((1.6,)) == pytest.approx(0.6)
        assert closed.distance((0.4,)) == 0.0

    def test_contains(self, closed_set_file: Path):
        closed = load_closed_set(closed_set_file)
        assert closed.contains((2.5,))
        assert closed.contains((1.0,))
        assert not closed.contains((2.0,))

    def test_open_boxes_are_closed(self):
        closed = ClosedSet(_union((0.0, 1.0)))
        assert closed.contains((1.0,))

    def test_sample(self, closed_set_file: Path):
        assert len(load_closed_set(closed_set_file).sample(3)) == 4

    def test_empty_rejected(self):
        with pytest.raises(GeometryError):
            ClosedSet()

    def test_empty_json_rejected(self, tmp_path: Path):
        path = tmp_path / "empty.json"
        path.write_text(json.dumps({"boxes": [], "points": []}), encoding="utf-8")
        with pytest.raises(ConfigError):
            load_closed_set(path)

    def test_point_dimension_mismatch(self):
        with pytest.raises(ConfigError):
            ClosedSet.from_json({"boxes": [[[0.0, 1.0]]], "points": [[0.0, 0.0]]})


class TestDistanceLipschitz:
    def test_distance_is_one_lipschitz(self):
        closed = ClosedSet(
            BoxUnion((Box((0.0, 0.0), (1.0, 1.0)), Box((1.5, -0.5), (2.0, 0.5))), open=False),
            ((3.0, 3.0), (-1.0, 2.0)),
        )
        rng = np.random.default_rng(31)
        xs = rng.uniform(-2.0, 4.0, size=(1000, 2)).tolist()
        ys = rng.uniform(-2.0, 4.0, size=(1000, 2)).tolist()
        for x, y in zip(xs, ys, strict=True):
            gap = abs(distance_to_closed(closed, x) - distance_to_closed(closed, y))
            assert gap <= math.dist(x, y) + 1e-12

    def test_distance_vanishes_on_the_set(self, closed_set_file: Path):
        closed = load_closed_set(closed_set_file)
        assert all(distance_to_closed(closed, p) == 0.0 for p in closed.sample(7))


def _sampled_inside(z: tuple[int, ...], n: int, omega: BoxUnion) -> bool:
    axes = []
    for i, zi in enumerate(z):
        lo, hi = (zi - 1) / n, (zi + 1) / n
        cuts = [c for b in omega.boxes for c in (b.lower[i], b.upper[i]) if lo <= c <= hi]
        axes.append(sorted({*np.linspace(lo, hi, 9).tolist(), *cuts}))
    return all(omega.contains(p) for p in itertools.product(*axes))


class TestCubeOracle:
    @pytest.mark.parametrize(
        "omega",
        [
            BoxUnion((Box((0.0,), (1.25,)), Box((0.75,), (2.0,)), Box((2.0,), (3.0,)))),
            BoxUnion(
                (
                    Box((0.0, 0.0), (1.25, 1.0)),
                    Box((0.75, 0.0), (2.0, 1.0)),
                    Box((0.0, 1.0), (1.0, 2.0)),
                )
            ),
        ],
        ids=["intervals", "plane"],
    )
    def test_exact_containment_matches_sampling(self, omega: BoxUnion):
        rng = np.random.default_rng(47)
        top = math.ceil(max(b.upper[0] for b in omega.boxes))
        outcomes = set()
        for _ in range(1000):
            n = int(rng.integers(1, 9))
            z = tuple(int(v) for v in rng.integers(-1, top * n + 2, size=omega.dimension))
            exact = cube_in_domain(z, n, omega)
            outcomes.add(exact)
            assert exact == _sampled_inside(z, n, omega), (z, n)
        assert outcomes == {True, False}


class TestLattice:
    def test_interval_lattice_set(self):
        omega = _union((-1.0, 1.0))
        assert lattice_sets(4, omega) == [(-2,), (-1,), (0,), (1,), (2,)]
        assert len(lattice_sets(8, omega)) == 13

    def test_window_restriction(self):
        omega = _union((-1.0, 1.0))
        window = _union((-0.25, 0.25), open=False)
        assert lattice_sets(4, omega, window) == [(-1,), (0,), (1,)]

    def test_cube_in_domain_is_exact(self):
        omega = _union((-1.0, 1.0))
        assert cube_in_domain((2,), 4, omega)
        assert not cube_in_domain((3,), 4, omega)

    def test_support_is_open(self):
        window = _union((0.5, 1.0), open=False)
        assert not support_meets((1,), 4, window)
        assert support_meets((2,), 4, window)

    def test_uncovered_cubes(self):
        omega = _union((-1.0, 1.0))
        window = _union((0.5, 1.0), open=False)
        assert uncovered_cubes(4, omega, window) == [(3,), (4,)]

    def test_unbounded_enumeration(self):
        with pytest.raises(GeometryError, match="unbounded"):
            lattice_sets(4, BoxUnion.whole_space(1))

    def test_bad_scale(self):
        with pytest.raises(PreconditionError):
            lattice_sets(0, _union((0.0, 1.0)))


class TestExhaustion:
    def test_first_compact(self):
        ex = default_exhaustion(_union((0.0, 1.0)), 2)
        assert ex.compact(1) == _union((0.125, 0.875), open=False)

    def test_scales_increase_and_margins_hold(self):
        ex = default_exhaustion(_union((0.0, 1.0)), 3)
        assert ex.depth == 3
        assert list(ex.scales) == sorted(set(ex.scales))
        assert all(ex.margin_ok(j) for j in range(1, 4))

    def test_minimal_first_scale(self):
        assert default_exhaustion(_union((0.0, 1.0)), 1).scale(1) == 33

    def test_extra_container(self):
        ex = default_exhaustion(_union((0.0, 1.0)), 1)
        assert ex.compact(2) == _union((0.0625, 0.9375), open=False)
        with pytest.raises(GeometryError):
            ex.compact(3)
        with pytest.raises(GeometryError):
            ex.scale(2)

    def test_overlapping_boxes_keep_the_seam(self):
        ex = default_exhaustion(_union((0.0, 1.1), (0.9, 2.0)), 2)
        assert ex.compact(1).contains((1.0,))
        assert ex.compact(1) == _union((0.125, 1.875), open=False)
        assert all(ex.margin_ok(j) for j in (1, 2))

    def test_l_shaped_domain(self):
        omega = BoxUnion((Box((0.0, 0.0), (2.0, 1.0)), Box((0.0, 0.0), (1.0, 2.0))), True)
        ex = default_exhaustion(omega, 1)
        assert ex.compact(1).contains((0.5, 1.5))
        assert ex.margin_ok(1)

    def test_thin_domain(self):
        with pytest.raises(GeometryError, match="K_1 is empty"):
            default_exhaustion(_union((0.0, 0.2)), 2)

    def test_unbounded_domain(self):
        with pytest.raises(GeometryError, match="bounded"):
            default_exhaustion(BoxUnion.whole_space(1), 2)

    def test_depth_limits(self):
        with pytest.raises(PreconditionError):
            default_exhaustion(_union((0.0, 1.0)), 0)

    def test_configured_depth_limit(self):
        omega = _union((0.0, 1.0))
        assert default_exhaustion(omega, 2, max_depth=2).depth == 2
        with pytest.raises(PreconditionError, match=r"\[1, 2\]"):
            default_exhaustion(omega, 3, max_depth=2)
        with pytest.raises(PreconditionError, match="max_depth"):
            default_exhaustion(omega, 1, max_depth=13)
