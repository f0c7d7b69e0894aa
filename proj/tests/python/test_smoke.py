import math

import pytest

import mexneedlet as mn


def test_legendre_endpoints():
    assert mn.legendre(1.0, 4) == [1.0] * 5
    p = mn.legendre(0.5, 2)
    assert p[2] == pytest.approx(-0.125)


def test_harmonic_count():
    assert len(mn.real_sph_harm_all(3, 0.4, 1.0)) == 16


def test_correlation_at_coincidence():
    ps = mn.PowerSpectrum.power_law(3.0)
    assert mn.correlation(1, ps, 0.2, 1.0) == 1.0
    assert abs(mn.correlation(1, ps, 0.2, 0.0)) < 1.0


def test_kernel_scaling():
    ratio = mn.kernel(1, 0.025, 1.0) / mn.kernel(1, 0.05, 1.0)
    assert ratio == pytest.approx(4.0, rel=0.02)


def test_decay_hypothesis_error():
    with pytest.raises(mn.HypothesisError):
        mn.decay_check(1, mn.PowerSpectrum.power_law(7.0), 0.0, [0.2, 0.1])


def test_monte_carlo_matches_analytic():
    ps = mn.PowerSpectrum.power_law(3.0)
    x = (math.pi / 2, 0.0)
    y = (math.pi / 2, math.pi / 2)
    est, se = mn.monte_carlo_correlation(1, ps, 0.2, x, y, replicas=2000, seed=1)
    assert abs(est - mn.correlation(1, ps, 0.2, 0.0)) <= 4 * se
    again = mn.monte_carlo_correlation(1, ps, 0.2, x, y, replicas=2000, seed=1, threads=2)
    assert again == (est, se)


def test_frame_bounds_ordered():
    a, b = mn.frame_bounds(1, 2.0, 8, 2.0)
    assert 0 < a <= b
    ca, cb = mn.calderon_bounds(1, 2.0)
    assert 0 < ca <= cb


def test_spectrum_json_round_trip():
    ps = mn.PowerSpectrum.rational_log(3.0, 3.0, [1.0, 1.0], [1.0, 1.0], "2+sin")
    back = mn.PowerSpectrum.from_json(ps.to_json())
    assert back(17) == ps(17)
    assert back.degree_balance_holds()
