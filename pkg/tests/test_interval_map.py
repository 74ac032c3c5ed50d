from __future__ import annotations

import math

import pytest

from knead.errors import DomainError, EscapeError, InconsistentOrbitError, ShapeError
from knead.interval_map import (
    IntervalMap,
    Orbit,
    baker,
    compose_fiber,
    critical_points_numeric,
    custom_piecewise,
    detect_periodic_orbit,
    identity_map,
    kaplan_yorke,
    product_orbit,
    quadratic,
    triangular_affine,
    triangular_quadratic,
    twisted_horseshoe,
)

P_PRINTED = (-0.7589, -0.0135, 0.9997)
Q_PRINTED = (-0.0018, 0.8041, -0.5795, 0.3396, 0.6899)


def test_quadratic_family():
    f = quadratic(1.76)
    assert f.modality == 1 and f.shape == "increasing" and f.is_max(1)
    assert f(0.0) == 1.0
    with pytest.raises(DomainError):
        f(1.5)


def test_decreasing_first_lap_rejected():
    with pytest.raises(ShapeError):
        IntervalMap(lambda x: x * x, (-1.0, 1.0), critical_points=(0.0,), name="minimum first")
    g = IntervalMap(lambda x: x * x, (-1.0, 1.0), critical_points=(0.0,), check_shape=False)
    assert g.shape == "decreasing" and not g.is_max(1)


def test_bad_critical_points():
    with pytest.raises(DomainError):
        IntervalMap(lambda x: x, (0.0, 1.0), critical_points=(1.5,))
    with pytest.raises(DomainError):
        IntervalMap(lambda x: x, (1.0, 0.0))


def test_detect_superstable_orbit():
    a = 1.7548776662466927  # superstable period 3
    orb = detect_periodic_orbit(quadratic(a), 0.0, 10)
    assert orb.period == 3 and orb.transient == 0 and orb.residual < 1e-9
    assert orb.points[0] == 0.0


def test_detect_near_superstable_orbit():
    orb = detect_periodic_orbit(quadratic(1.76), 0.0, 16)
    assert orb.period == 3 and orb.transient > 0
    assert abs(orb.multiplier) < 1
    pts = orb.start_at_min().points
    assert all(abs(x - y) < 5e-4 for x, y in zip(pts, P_PRINTED))


def test_minimal_period_not_a_multiple():
    # period 15 product orbits must not be reported as 3 or 5, and vice versa
    orb = detect_periodic_orbit(quadratic(1.76), 0.0, 64)
    assert orb.period == 3


def test_no_orbit_and_escape():
    assert detect_periodic_orbit(quadratic(1.9), 0.0, 8, max_transient=2000) is None
    with pytest.raises(EscapeError):
        detect_periodic_orbit(quadratic(2.5), 0.0, 8)
    with pytest.raises(ValueError):
        detect_periodic_orbit(quadratic(1.5), 0.0, 0)


def test_orbit_rotation_keeps_anchor():
    o = Orbit((0.1, 0.9, -0.5), 3, 0.0, anchor=0)
    r = o.start_at_min()
    assert r.points == (-0.5, 0.1, 0.9) and r.anchor == 1
    assert r.start_at_anchor().points == o.points


def test_critical_points_numeric():
    cps = critical_points_numeric(lambda x: math.cos(3 * x), (0.0, 2.0))
    assert cps == pytest.approx((math.pi / 6, math.pi / 2), abs=1e-10)


def test_compose_fiber_worked_example():
    T = triangular_quadratic(1.76, 0.823)
    P = detect_periodic_orbit(T.basis, 0.0, 16).start_at_min()
    g_p = compose_fiber(T, P)
    assert g_p.critical_points == pytest.approx((0.0,), abs=1e-9)
    # g_P(y) = x3 - b (x2 - b (x1 - b y^2)^2)^2
    x1, x2, x3 = P.points
    b, y = 0.823, 0.3
    assert g_p(y) == pytest.approx(x3 - b * (x2 - b * (x1 - b * y * y) ** 2) ** 2, abs=1e-14)
    Q = detect_periodic_orbit(g_p, 0.0, 16)
    assert Q.period == 5
    assert all(abs(u - v) < 5e-4 for u, v in zip(Q.points, Q_PRINTED))


def test_compose_fiber_rejects_non_orbit():
    T = triangular_quadratic(1.76, 0.823)
    with pytest.raises(InconsistentOrbitError):
        compose_fiber(T, Orbit((0.1, 0.2, 0.3), 3, 0.0))


def test_product_orbit_is_periodic():
    T = triangular_quadratic(1.76, 0.823)
    P = detect_periodic_orbit(T.basis, 0.0, 16).start_at_min()
    Q = detect_periodic_orbit(compose_fiber(T, P), 0.0, 16)
    po = product_orbit(P, Q, T)
    assert po.period == 15 and len(po.pairs) == 15
    # consecutive pairs are T-images of each other, and the orbit closes
    pairs = po.pairs
    for k in range(15):
        x, y = T(*pairs[k])
        nx, ny = pairs[(k + 1) % 15]
        assert abs(x - nx) < 1e-7 and abs(y - ny) < 1e-7


def test_iterate_only_families():
    for T in (baker(0.3, 2.0), twisted_horseshoe(2.0, 3.0), kaplan_yorke(2.0, 0.1, 0.5)):
        assert not T.kneading_eligible and T.basis is None
        assert len(T.iterate(0.2, 0.3, 10)) == 10


def test_triangular_escape():
    T = triangular_quadratic(1.76, 3.0)
    with pytest.raises(EscapeError):
        T.iterate(0.1, 1.9, 50)


def test_monotone_fiber_family():
    T = triangular_affine(1.76)
    P = detect_periodic_orbit(T.basis, 0.0, 16).start_at_min()
    assert compose_fiber(T, P).modality == 0
    with pytest.raises(ValueError):
        triangular_affine(1.76, s=2.0)


def test_custom_piecewise():
    tent = custom_piecewise([0.0, 0.5, 1.0], [[0.0, 2.0], [2.0, -2.0]])
    assert tent.critical_points == pytest.approx((0.5,))
    assert tent(0.25) == pytest.approx(0.5)
    with pytest.raises(DomainError):
        custom_piecewise([0.0, 0.5, 1.0], [[0.0, 2.0], [3.0, -2.0]])


def test_identity_map():
    f = identity_map()
    assert f.modality == 0 and f(0.3) == 0.3
