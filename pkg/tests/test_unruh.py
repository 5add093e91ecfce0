import math

import numpy as np
import pytest

from spin_unruh import unruh
from spin_unruh.density import DensityMatrix
from spin_unruh.fock import LOCAL_LABELS
from spin_unruh.rindler import SqueezingParams


@pytest.mark.parametrize('r, expected', [(0.0, 0.0), (np.pi / 4, 1.0), (np.pi / 6, 0.5)])
def test_expected_number(r, expected):
    assert unruh.expected_number(SqueezingParams(r)) == pytest.approx(expected, abs=1e-15)


def test_expected_number_is_twice_fermi_dirac():
    for x in (0.01, 0.1, 0.5, 2.0):
        assert unruh.expected_number_from_x(x) == pytest.approx(2 / (np.exp(2 * np.pi * x) + 1))
        assert unruh.expected_number_from_x(x) == pytest.approx(unruh.expected_number(SqueezingParams.from_x(x)))


def test_fermi_dirac_limits():
    assert unruh.fermi_dirac_occupation(0.0) == 0.5
    assert unruh.fermi_dirac_occupation(1e3) == pytest.approx(0.0, abs=1e-300)
    with pytest.raises(ValueError):
        unruh.fermi_dirac_occupation(-0.1)
    with pytest.raises(ValueError):
        unruh.expected_number_from_x(0.0)


def test_unruh_temperature():
    assert unruh.unruh_temperature(2 * np.pi) == pytest.approx(1.0)
    assert unruh.unruh_temperature(0.0) == 0.0
    with pytest.raises(ValueError):
        unruh.unruh_temperature(-1.0)


def test_number_operator_on_simple_states():
    doubly = np.zeros(4)
    doubly[LOCAL_LABELS.index('ud')] = 1.0
    rho = DensityMatrix.from_vector(doubly, ('I',), (LOCAL_LABELS,))
    assert unruh.number_operator_expectation(rho) == pytest.approx(2.0)
    mixed = DensityMatrix(('I',), (LOCAL_LABELS,), np.eye(4) / 4)
    assert unruh.number_operator_expectation(mixed) == pytest.approx(1.0)


def test_number_operator_rejects_other_bases():
    rho = DensityMatrix(('R',), (('0', '1', '2'),), np.eye(3) / 3)
    with pytest.raises(ValueError):
        unruh.number_operator_expectation(rho)
    pair = DensityMatrix(('A', 'I'), (LOCAL_LABELS, LOCAL_LABELS), np.eye(16) / 16)
    with pytest.raises(ValueError):
        unruh.number_operator_expectation(pair)


def test_vacuum_number_matches_closed_form():
    for r in np.linspace(0, np.pi / 4, 50):
        rho_r = unruh.rindler_vacuum_rho_r(SqueezingParams(r, 0.9))
        assert rho_r.trace() == pytest.approx(1.0)
        assert abs(unruh.number_operator_expectation(rho_r) - 2 * np.sin(r) ** 2) < 1e-12


def test_vacuum_rho_r_is_thermal_diagonal():
    r = 0.5
    c2, s2 = np.cos(r) ** 2, np.sin(r) ** 2
    rho_r = unruh.rindler_vacuum_rho_r(SqueezingParams(r))
    np.testing.assert_allclose(rho_r.matrix, np.diag([c2 ** 2, s2 * c2, s2 * c2, s2 ** 2]), atol=1e-15)


def test_thermal_report():
    report = unruh.thermal_report(SqueezingParams.from_x(0.25))
    assert report.temperature_scale == pytest.approx(1 / (2 * np.pi * 0.25))
    assert report.expected_number == pytest.approx(unruh.expected_number_from_x(0.25))
    assert unruh.thermal_report(SqueezingParams(np.pi / 4)).temperature_scale == math.inf
    assert unruh.thermal_report(SqueezingParams(0.0)).temperature_scale == 0.0
