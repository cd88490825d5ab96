import itertools
import math

import numpy as np
import pytest
from mpmath import mp, mpf

from predlab.arcs import ArcSet
from predlab.capacity import (fekete_points, fekete_preimage_tau,
                              robinson_bounds_tau, robinson_project_tau,
                              tau_arcset, tau_segment)

PI = math.pi


def test_single_arc_values():
    with mp.workprec(220):
        r = tau_arcset(ArcSet.single(PI / 2, PI))
        # the arc length is a float, so the match to sin(pi/4) is float-level
        assert abs(r.value - mp.sin(mp.pi / 4)) < mpf("1e-15")
        assert abs(r.value - mp.sin(mpf(PI) / 4)) < mpf("1e-45")
        assert float(r.value) == pytest.approx(0.70711, abs=1e-5)
        assert r.method == "closed-form-arc"


def test_full_circle_is_one():
    assert tau_arcset(ArcSet.full()).value == 1


def test_rotation_invariance_exact():
    for make in (lambda th: ArcSet.single(th, 1.3),
                 lambda th: ArcSet.symmetric_pair(th, 0.8, 0.4),
                 lambda th: ArcSet.symmetric_quad(th, 0.5, 0.2),
                 lambda th: ArcSet.equispaced(3, 0.6, th)):
        base = tau_arcset(make(0.0)).value
        for th in (0.3, -1.2, 2.9):
            assert tau_arcset(make(th)).value == base


def test_pair_gap_zero_degenerates_to_single_arc():
    assert tau_arcset(ArcSet.symmetric_pair(0.4, 0.9, 0.0)).value == \
        tau_arcset(ArcSet.single(0.4, 1.8)).value


def test_quad_equals_preimage_of_pair():
    a, d = 0.6, 0.3
    quad = tau_arcset(ArcSet.symmetric_quad(1.1, a, d)).value
    pair = tau_arcset(ArcSet.symmetric_pair(0.0, 2 * a, 2 * d)).value
    assert quad == fekete_preimage_tau(pair, 2, 1.0)


def test_equispaced_formula():
    with mp.workprec(220):
        for k in (2, 3, 5):
            r = tau_arcset(ArcSet.equispaced(k, 0.5))
            assert abs(r.value - mp.sin(k * mpf(0.5) / 4) ** (mpf(1) / k)) < mpf("1e-45")


def test_two_equal_arcs_via_preimage():
    # two antipodal arcs of length alpha are the preimage of one arc of
    # length 2*alpha under the squaring map
    alpha = 0.5
    two = tau_arcset(ArcSet.equispaced(2, alpha)).value
    one = tau_arcset(ArcSet.single(0.0, 2 * alpha)).value
    assert abs(two - fekete_preimage_tau(one, 2, 1.0)) < mpf("1e-45")


def test_segment_values():
    with mp.workprec(220):
        assert tau_segment(-1.0, 1.0).value == mpf(0.5)
        alpha = mpf(0.9)
        seg = tau_segment(float(mp.cos(alpha)), 1.0)
        assert abs(seg.value - mp.sin(alpha / 2) ** 2 / 2) < mpf("1e-15")
    with pytest.raises(ValueError):
        tau_segment(0.0, 0.0)


def test_preimage_trivials():
    assert fekete_preimage_tau(0.7, 1, 1.0) == mpf(0.7)
    with mp.workprec(212):
        v = fekete_preimage_tau(0.25, 2, 2.0)
        assert abs(v - mp.sqrt(mpf(0.125))) < mpf("1e-50")


def test_robinson_projection_routes():
    with mp.workprec(220):
        alpha = 0.9
        r = robinson_project_tau(ArcSet.single(0.0, 2 * alpha))
        assert abs(r.value - mp.sin(mpf(alpha) / 2)) < mpf("1e-18")
        rp = robinson_project_tau(ArcSet.symmetric_pair(0.0, 1.0, 0.5))
        direct = tau_arcset(ArcSet.symmetric_pair(0.0, 1.0, 0.5)).value
        assert abs(rp.value - direct) < mpf("1e-18")
        assert abs(robinson_project_tau(ArcSet.full()).value - 1) < mpf("1e-30")
    with pytest.raises(ValueError):
        robinson_project_tau(ArcSet.single(0.7, 0.4))


def test_robinson_bounds():
    lo, hi = robinson_bounds_tau(0.5, 2, 0.5, 2.0)
    assert float(lo) == pytest.approx(0.5)
    assert float(hi) == pytest.approx(1.0)
    lo2, hi2 = robinson_bounds_tau(0.7, 3, 1.0, 1.0)
    assert lo2 == hi2  # collapse when |q| is constant


def test_monotonicity_nested():
    inner = tau_arcset(ArcSet.single(0.0, 1.0)).value
    outer = tau_arcset(ArcSet.single(0.0, 2.0)).value
    assert inner < outer
    pair = tau_arcset(ArcSet.symmetric_pair(0.0, 0.4, 0.3)).value
    hull = tau_arcset(ArcSet.single(0.0, 2.2)).value
    assert pair < hull


def test_bracket_for_unmatched_configuration():
    arcs = ArcSet.from_arcs([(0.0, 0.3), (1.5, 0.1)])
    r = tau_arcset(arcs)
    assert r.value is None and r.bracket
    lo, hi = r.bracket
    assert 0 < lo < hi <= 1


def test_fekete_diameter_pair():
    # two points on a set containing antipodes achieve the diameter
    th, d2, _ = fekete_points(ArcSet.full(), 2)
    assert float(d2) == pytest.approx(2.0, abs=1e-9)


def test_fekete_square_on_circle():
    # brute force over a coarse angular grid, then compare: the regular
    # 4-gon attains (prod |z_i - z_j|)^(1/6) = 2^(2/3)
    best = -np.inf
    G = 24
    grid = np.linspace(0, 2 * np.pi, G, endpoint=False)
    for combo in itertools.combinations(range(G), 3):
        th = np.array([0.0] + [grid[c] for c in combo])
        d = np.abs(2 * np.sin((th[:, None] - th[None, :]) / 2))
        iu = np.triu_indices(4, 1)
        if np.all(d[iu] > 0):
            e = np.log(d[iu]).sum()
            best = max(best, e)
    brute_d4 = math.exp(best / 6)
    th, d4, flag = fekete_points(ArcSet.full(), 4)
    assert float(d4) >= brute_d4 - 1e-12
    assert float(d4) == pytest.approx(2 ** (2 / 3), abs=1e-9)


def test_fekete_estimator_sandwich_small():
    arc = ArcSet.single(PI / 2, PI)
    tau = float(tau_arcset(arc).value)
    prev = None
    for n in (6, 10, 14):
        _, dn, _ = fekete_points(arc, n)
        assert float(dn) >= tau
        if prev is not None:
            assert float(dn) <= prev + 1e-12
        prev = float(dn)


def test_fekete_respects_constraints():
    arcs = ArcSet.symmetric_pair(0.0, 0.6, 0.4)
    th, dn, _ = fekete_points(arcs, 8)
    for t in th:
        assert arcs.contains(float(t))
