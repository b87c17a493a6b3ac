import math

import numpy as np
import pytest

from cylrad.errors import ConvergenceError
from cylrad.quadrature import adaptive_log_simpson, angle_rule, graded_panel_rule, periodic_nodes


@pytest.mark.parametrize("graded", [True, False])
def test_angle_rule_integrates_trig(graded):
    r = angle_rule(32, graded)
    assert np.allclose(np.sum(r.weights), math.pi / 2, rtol=1e-13)
    assert np.allclose(np.sum(r.weights * r.cos_t * r.sin_t), 0.5, rtol=1e-13)
    assert np.allclose(r.cos_t**2 + r.sin_t**2, 1.0, rtol=1e-15)


def test_graded_rule_handles_log_singularity():
    # int_0^{pi/2} cos^2 ln(cos) d theta = pi/8 (1 - 2 ln 2)
    r = angle_rule(64)
    val = np.sum(r.weights * r.cos_t**2 * np.log(r.cos_t))
    assert np.allclose(val, math.pi / 8 * (1 - 2 * math.log(2)), rtol=1e-10)


def test_graded_nodes_cluster_at_grazing():
    r = angle_rule(16)
    assert np.all(r.cos_t > 0)
    assert r.cos_t.min() < 1e-2
    assert not r.weights.flags.writeable


def test_panel_rule_matches_single_rule():
    one = graded_panel_rule([(0.0, 1.0)], 16)
    ref = angle_rule(16)
    assert np.allclose(np.sort(one.cos_t), np.sort(ref.cos_t), rtol=1e-14)
    halves = graded_panel_rule([(0.0, 0.5), (0.5, 1.0)], 16)
    assert halves.size == 32
    assert np.allclose(np.sum(halves.weights * halves.cos_t), 1.0, rtol=1e-14)


def test_periodic_nodes_exact_for_trig_polynomials():
    phi, w = periodic_nodes(16)
    assert np.allclose(np.sum(w * np.cos(phi) ** 4), 3 * math.pi / 4, rtol=1e-14)
    assert np.allclose(np.sum(w * np.cos(3 * phi)), 0.0, atol=1e-14)


def test_adaptive_simpson_planck():
    # int_0^inf x^3/(e^x - 1) dx = pi^4/15, band [0.02, 40] leaves a tiny tail
    def f(y):
        x = np.exp(y)
        return (x**4 / np.expm1(x))[:, None]

    q = adaptive_log_simpson(f, math.log(0.02), math.log(40.0), rtol=1e-9)
    lo_tail = 0.02**3 / 3 - 0.02**4 / 8  # series of the integrand near 0
    hi_tail = 40**3 * math.exp(-40) * (1 + 3 / 40 + 6 / 1600 + 6 / 64000)
    assert np.allclose(q.value[0] + lo_tail + hi_tail, math.pi**4 / 15, rtol=1e-9)
    assert q.rel_error < 1e-9


def test_adaptive_simpson_vector_valued_and_deterministic():
    def f(y):
        return np.stack([np.cos(y), np.exp(y)], -1)

    a = adaptive_log_simpson(f, 0.0, 2.0, base_points=21, rtol=1e-10)
    b = adaptive_log_simpson(f, 0.0, 2.0, base_points=21, rtol=1e-10)
    assert np.allclose(a.value, [math.sin(2.0), math.exp(2.0) - 1], rtol=1e-10)
    assert np.array_equal(a.value, b.value)
    assert a.evaluations == b.evaluations


def test_adaptive_simpson_reports_failure():
    def f(y):
        return (1.0 / np.sqrt(np.abs(y - 0.5 + 1e-9)))[:, None]

    with pytest.raises(ConvergenceError) as exc:
        adaptive_log_simpson(f, 0.0, 1.0, base_points=5, rtol=1e-14, max_rounds=3)
    assert exc.value.achieved > 1e-14
