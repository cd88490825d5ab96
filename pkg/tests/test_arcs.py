import math

import pytest

from predlab.arcs import ArcSet, ArcSetError, norm_angle

PI = math.pi


def test_norm_angle_fundamental_domain():
    assert norm_angle(PI) == PI
    assert norm_angle(-PI) == PI
    assert norm_angle(3 * PI) == PI
    assert abs(norm_angle(2 * PI + 0.3) - 0.3) < 1e-15


def test_single_arc_geometry():
    a = ArcSet.single(PI / 2, PI)
    assert a.total_length == pytest.approx(PI)
    assert a.contains(PI / 2) and a.contains(0.0) and a.contains(PI)
    assert not a.contains(-PI / 2)
    assert a.intervals() == [(0.0, PI)]


def test_overlap_rejected():
    with pytest.raises(ArcSetError):
        ArcSet.from_arcs([(0.0, 0.5), (0.3, 0.5)])


def test_touching_arcs_merge():
    merged = ArcSet.from_arcs([(0.25, 0.25), (-0.25, 0.25)])
    assert len(merged.arcs) == 1
    assert merged.arcs[0][0] == pytest.approx(0.0)
    assert merged.total_length == pytest.approx(1.0)


def test_pair_with_zero_gap_is_single_arc():
    pair = ArcSet.symmetric_pair(0.7, 0.8, 0.0)
    single = ArcSet.single(0.7, 1.6)
    assert pair == single


def test_equality_order_independent():
    a = ArcSet.from_arcs([(1.0, 0.2), (-1.0, 0.2)])
    b = ArcSet.from_arcs([(-1.0, 0.2), (1.0, 0.2)])
    assert a == b


def test_wraparound_split_and_contains():
    a = ArcSet.single(PI, 0.6)
    ivs = a.intervals()
    assert len(ivs) == 2
    assert a.contains(PI - 0.1) and a.contains(-PI + 0.1)
    assert not a.contains(0.0)
    assert a.total_length == pytest.approx(0.6)


def test_gaps_of_symmetric_pair():
    a = ArcSet.symmetric_pair(0.0, 1.0, 0.5)
    gaps = sorted(a.gaps())
    assert gaps[0] == pytest.approx(1.0)            # 2*delta
    assert gaps[1] == pytest.approx(2 * PI - 3.0)   # rest of the circle
    assert a.is_conjugation_symmetric()


def test_quad_structure():
    a = ArcSet.symmetric_quad(0.0, 0.6, 0.3)
    assert len(a.arcs) == 4
    assert a.total_length == pytest.approx(2.4)
    gaps = a.gaps()
    assert sorted(gaps)[0] == pytest.approx(0.6)


def test_full_circle():
    f = ArcSet.full()
    assert f.is_full_circle
    assert f.total_length == pytest.approx(2 * PI)
    assert ArcSet.single(0.3, 2 * PI).is_full_circle


def test_rotation_preserves_lengths():
    a = ArcSet.symmetric_pair(0.0, 1.0, 0.5)
    b = a.rotated(2.1)
    assert sorted(b.lengths) == pytest.approx(sorted(a.lengths))
    assert not b.is_conjugation_symmetric()


def test_total_length_cap():
    with pytest.raises(ArcSetError):
        ArcSet.from_arcs([(0.0, 2.0), (2.5, 2.0)])
