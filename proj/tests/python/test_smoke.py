import math

import pytest

import competition_lab as cl


def test_version_is_exported():
    assert isinstance(cl.version(), str)
    assert cl.version()
    assert cl.__version__ == cl.version()


def test_sector_angle_and_regime():
    assert cl.theta_degrees(0.5, 0.5) == pytest.approx(180.0, abs=1e-9)
    assert cl.theta_degrees(1.0, 0.0) == pytest.approx(90.0, abs=1e-9)
    assert cl.theta_degrees(0.3, 0.7) > 180.0
    assert cl.regime(0.5, 0.5) == "stationary"
    assert cl.regime(0.8, 0.2) == "rarefaction"
    assert cl.regime(0.2, 0.8) == "shock"
    with pytest.raises(ValueError):
        cl.regime(1.5, 0.2)


def test_entropy_solution_branches():
    assert cl.burgers_u(0.8, 0.2, 0.0) == pytest.approx(0.5)
    assert cl.burgers_u(0.8, 0.2, -0.7) == pytest.approx(0.8)
    assert cl.burgers_u(0.8, 0.2, 0.7) == pytest.approx(0.2)
    assert cl.burgers_u(0.2, 0.8, -0.1) == pytest.approx(0.2)
    assert cl.burgers_u(0.2, 0.8, 0.1) == pytest.approx(0.8)
    assert cl.burgers_u(0.8, 0.2, 0.3, t=2.0) == pytest.approx(
        cl.burgers_u(0.8, 0.2, 0.15)
    )


def test_limit_shape_parabola_and_diagonal_identity():
    for r, x, y in cl.limit_shape(1.0, 0.0, n=101):
        assert x - y == pytest.approx(r, abs=1e-12)
        if -1.0 <= r <= 1.0:
            assert math.sqrt(x) + math.sqrt(y) == pytest.approx(1.0, abs=1e-12)


def test_closed_form_laws():
    incl = cl.inclination_law(0.2, 0.8)
    assert incl["is_point_mass"]
    assert incl["atom"] == pytest.approx(1.0)

    spread = cl.inclination_law(0.8, 0.2)
    assert not spread["is_point_mass"]
    lo, hi = spread["u_support"]
    assert lo == pytest.approx(-0.6)
    assert hi == pytest.approx(0.6)
    assert cl.inclination_cdf(0.8, 0.2, 0.2) < cl.inclination_cdf(0.8, 0.2, 1.0)
    assert cl.inclination_cdf(0.8, 0.2, 1.0) < cl.inclination_cdf(0.8, 0.2, 4.0)

    speed = cl.speed_law(0.2, 0.8)
    assert speed["is_point_mass"]
    assert speed["atom"] == pytest.approx(0.0)
    fan = cl.speed_law(0.8, 0.2)
    assert fan["support"] == (pytest.approx(-0.6), pytest.approx(0.6))


def test_sampling_is_deterministic_and_worker_invariant():
    a = cl.sample_inclination(0.3, 0.7, 60, 8, seed=42, workers=1)
    b = cl.sample_inclination(0.3, 0.7, 60, 8, seed=42, workers=2)
    c = cl.sample_inclination(0.3, 0.7, 60, 8, seed=42)
    d = cl.sample_inclination(0.3, 0.7, 60, 8, seed=43)
    assert a == b == c
    assert a != d
    assert len(a) == 8
    assert all(v > 0.0 for v in a)


def test_marker_samples_track_the_speed_atom():
    t = 40.0
    xs = cl.sample_marker(0.3, 0.7, t, 60, seed=7)
    assert len(xs) == 60
    assert abs(sum(xs) / len(xs) / t) < 0.05


def test_marker_trajectory_keeps_its_label_identity():
    times = [5.0, 10.0, 15.0, 20.0]
    rows = cl.marker_trajectory(0.5, 0.5, 20.0, times, seed=3)
    assert [row[0] for row in rows] == times
    for _, x, label_i, label_j in rows:
        assert x == label_i - label_j
        assert label_i >= 1 and label_j >= 1


def test_pooled_density_is_a_density():
    rows = cl.pooled_density(0.8, 0.2, 30.0, 10, 0.25, seed=5)
    assert len(rows) == 9
    for r, density in rows:
        assert -1.0 - 1e-9 <= r <= 1.0 + 1e-9
        assert 0.0 <= density <= 1.0
    center = dict(rows)[0.0]
    assert abs(center - 0.5) < 0.15


def test_coupling_totals_run_clean():
    totals = cl.coupling_totals(0.5, 0.5, 20.0, 2, seed=12)
    assert totals["direct_events"] > 0
    assert totals["replay_events"] > 0
    assert totals["direct_violations"] == 0
    assert totals["replay_violations"] == 0
    assert totals["failed_exact_checks"] == 0


def test_passage_times_obey_the_corner_recursion():
    rows = cl.passage_times(1.0, 0.0, 20, seed=9)
    g = {(x, y): v for x, y, v in rows}
    # [1, 20]^2 minus the corner (1, 1), which sits on the boundary staircase.
    assert len(g) == 400 - 1
    assert (1, 1) not in g
    for (x, y), v in g.items():
        parent = max(g.get((x - 1, y), 0.0), g.get((x, y - 1), 0.0))
        assert v > parent


def test_growth_interface_is_a_staircase():
    points = cl.growth_interface(1.0, 0.0, 30, 9, 5.0)
    assert len(points) >= 2
    for (x0, y0), (x1, y1) in zip(points, points[1:]):
        assert (x1 - x0, y1 - y0) in ((1, 0), (0, -1))
    assert all(x >= 0 and y >= 0 for x, y in points)


def test_ks_helpers():
    d = cl.ks_distance([0.1, 0.5, 0.9], lambda v: min(1.0, max(0.0, v)))
    assert d == pytest.approx(7.0 / 30.0)

    same = cl.ks_two_sample([1.0, 2.0, 3.0], [1.0, 2.0, 3.0])
    assert same == (0.0, 1.0)

    a = [0.01 * k for k in range(300)]
    shifted = [v + 1.0 for v in a]
    dist, p = cl.ks_two_sample(a, shifted)
    assert dist > 0.3
    assert p < 1e-4

    scipy_stats = pytest.importorskip("scipy.stats")
    ref = scipy_stats.ks_2samp(a, shifted, method="asymp")
    assert dist == pytest.approx(ref.statistic, abs=1e-12)
