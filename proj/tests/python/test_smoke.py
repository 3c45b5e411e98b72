import json
import math

import pytest

import symmlab as sl


def test_model_space():
    s2 = sl.ModelSpace.sphere_of_volume(2, 4 * math.pi)
    assert s2.dim == 2
    assert sl.ball_volume(s2, s2.max_radius()) == pytest.approx(4 * math.pi, rel=1e-10)
    r = sl.ball_volume_inverse(s2, 2 * math.pi)
    assert r == pytest.approx(math.pi / 2, rel=1e-9)
    assert sl.unit_sphere_volume(3) == pytest.approx(2 * math.pi**2, rel=1e-12)


def test_mesh_and_eigenvalue():
    circle = sl.make_circle(2 * math.pi, 256)
    assert circle.vertex_count() == 256
    assert circle.total_measure() == pytest.approx(2 * math.pi, rel=1e-12)
    sol = sl.lambda1_closed(circle)
    assert sol.lambda1 == pytest.approx(1.0, rel=1e-3)

    ico = sl.make_icosphere(3)
    sol = sl.lambda1_closed(ico)
    assert sol.lambda1 == pytest.approx(2.0, rel=0.02)


def test_rearrangement():
    ico = sl.make_icosphere(3)
    s2 = sl.ModelSpace.sphere_of_volume(2, 4 * math.pi)
    x3 = [p[2] for p in sl.icosphere_vertex_positions(3)]
    profile = sl.rearrange(ico, x3, s2)
    assert profile.total_measure() == pytest.approx(4 * math.pi, rel=1e-12)
    res = sl.polya_szego_check(ico, x3, s2)
    assert res.lhs >= res.rhs * 0.98


def test_comparison_report():
    report = sl.check_lichnerowicz(2, 0.10)
    assert report.pass_
    data = json.loads(report.to_json_str())
    assert data["schema_version"] == 1
    assert data["theorem_id"] == "lichnerowicz"
