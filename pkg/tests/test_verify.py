import math

import pytest

from spin_unruh import fock, verify
from spin_unruh.fock import Subsystem


@pytest.fixture
def flipped_region_iv_sign(monkeypatch):
    """
    Break the sign convention, every region IV creation picks up an extra minus sign
    """
    original = fock.apply_creation

    def _flipped(state, slot):
        created = original(state, slot)
        if slot.subsystem is Subsystem.REGION_IV:
            return -1 * created
        return created
    monkeypatch.setattr(fock, 'apply_creation', _flipped)


def test_every_check_passes():
    report = verify.run_verify()
    assert [chk.name for chk in report.checks] == list(verify.CHECKS)
    assert report.passed, verify.format_report(report)
    assert report.max_error < 1e-10


def test_flipped_region_iv_sign_fails_vacuum_solve(flipped_region_iv_sign):
    report = verify.run_verify(checks={'vacuum_nullspace_solve': verify.check_vacuum_solve})
    assert not report.passed
    assert [chk.name for chk in report.failures] == ['vacuum_nullspace_solve']


def test_flipped_region_iv_sign_fails_annihilation_residual(flipped_region_iv_sign):
    report = verify.run_verify(checks={'vacuum_annihilation_residual': verify.check_vacuum_annihilation})
    assert not report.passed
    assert report.max_error > 1e-3


def test_raising_check_is_reported():
    def _broken():
        raise RuntimeError('no convergence')
    report = verify.run_verify(checks={'broken': _broken, 'fine': lambda: 0.0})
    assert [chk.passed for chk in report.checks] == [False, True]
    assert report.checks[0].max_error == math.inf
    assert 'RuntimeError' in report.checks[0].message


def test_tolerance_controls_verdict():
    checks = {'small': lambda: 1e-12}
    assert verify.run_verify(tolerance=1e-10, checks=checks).passed
    assert not verify.run_verify(tolerance=1e-13, checks=checks).passed


def test_format_report():
    report = verify.run_verify(checks={'small': lambda: 1e-12, 'large': lambda: 1.0})
    text = verify.format_report(report)
    lines = text.split('\n')
    assert lines[0].startswith('small') and lines[0].endswith('ok')
    assert lines[1].startswith('large') and lines[1].endswith('FAIL')
    assert lines[-1].startswith('overall') and lines[-1].endswith('FAIL')
