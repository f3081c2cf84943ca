import json
import math

import pytest

import annulus_lab as al


@pytest.fixture(scope="module")
def sphere():
    return al.solve(1, a=-0.5)


@pytest.fixture(scope="module")
def hyperbolic():
    return al.solve(-1, a=2.0)


def test_solve_properties(sphere, hyperbolic):
    assert sphere.epsilon == 1
    assert abs(sphere.s0 - 0.7699676937) < 1e-8
    assert 0 < sphere.radius < math.pi / 2
    assert hyperbolic.alpha == -2.0
    cfg = sphere.config()
    assert abs(cfg["residuals"]["orthogonality"]) < 1e-10
    x, *y = sphere.immerse(0.3, 1.0)
    assert abs(x * x + sum(v * v for v in y) - 1.0) < 1e-10
    assert "CriticalAnnulus" in repr(sphere)


def test_errors_map_to_python_exceptions():
    with pytest.raises(al.ParameterRangeError):
        al.solve(1, a=0.5)
    with pytest.raises(al.NoFreeBoundaryError):
        al.solve(1, a=0.0)
    with pytest.raises(al.UnachievableRadiusError):
        al.solve(1, radius=2.0)
    with pytest.raises(al.ConfigurationError):
        al.solve(1)
    assert issubclass(al.NoFreeBoundaryError, al.AnnulusLabError)


def test_spectrum_identities(sphere, hyperbolic):
    s = al.spectrum(sphere)
    assert abs(s[0]["sigma"] + math.tan(sphere.radius)) < 1e-6
    assert s[1]["multiplicity"] == 3
    assert abs(s[1]["sigma"] - 1.0 / math.tan(sphere.radius)) < 1e-6
    h = al.spectrum(hyperbolic)
    assert abs(h[0]["sigma"] - math.tanh(hyperbolic.radius)) < 1e-6
    assert sorted(h[1]["modes"]) == [(0, "odd"), (1, "even")]


def test_radius_round_trip(hyperbolic):
    back = al.solve(-1, radius=hyperbolic.radius)
    assert abs(back.a - 2.0) < 1e-6


def test_verify_and_oracle(sphere):
    assert all(c["passed"] for c in al.verify(sphere))
    assert not all(c["passed"] for c in al.verify(sphere, perturb_s0=0.1))
    oracle = al.oracle_sigmas(sphere, n_s=96, n_theta=64, count=4)
    exact = [s["sigma"] for s in al.spectrum(sphere)]
    assert abs(oracle[0] - exact[0]) < 1e-2 * abs(exact[0])
    assert abs(oracle[1] - exact[1]) < 1e-2 * abs(exact[1])


def test_nodal_and_mesh(sphere):
    assert al.nodal(sphere, 0, 65, 64)["domain_count"] == 1
    report = al.nodal(sphere, 1, 65, 64)
    assert report["pattern"] == "InteriorCircle"
    mesh = json.loads(al.mesh_json(sphere, 5, 6))
    assert len(mesh["vertices"]) == 30
    assert al.mesh_json(sphere, 5, 6) == al.mesh_json(sphere, 5, 6)
    assert al.thread_limit() >= 1
