import math
import logging
from dataclasses import dataclass, field
from typing import List

import numpy as np

from spin_unruh import rindler, sweep_variables
from spin_unruh.density import hermitian_eigenvalues, partial_trace, partial_transpose
from spin_unruh.entanglement import BELL_KINDS, SPIN_PAIRS, StateParams, bell_rho_ar, build_general_rho_ar, \
    closed_form_bell_mutual_information, closed_form_bell_pt_spectrum, closed_form_mode_pt_spectrum, \
    closed_form_rho_ar, mode_entangled_rho_ar, mutual_information, negativity
from spin_unruh.fock import Spin, inner_product
from spin_unruh.rindler import SqueezingParams
from spin_unruh.sweep import configure_logger
from spin_unruh.spintrace import closed_form_occupation_rho, maximally_entangled_occupation_state, \
    occupation_mutual_information, occupation_negativity, occupation_numeric_negativity, occupation_rho, \
    triplet_occupation_state
from spin_unruh.unruh import expected_number, expected_number_from_x, number_operator_expectation, \
    rindler_vacuum_rho_r

R_GRID = np.linspace(0, np.pi / 4, 20)
PHI_GRID = np.linspace(0, 2 * np.pi, 8, endpoint=False)
PHI_INVARIANCE = (0.0, 0.7, np.pi / 2, 2.1)


@dataclass
class CheckResult:
    name: str
    max_error: float
    passed: bool
    message: str = ''


@dataclass
class VerifyReport:
    tolerance: float
    checks: List[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(chk.passed for chk in self.checks)

    @property
    def failures(self) -> List[CheckResult]:
        return [chk for chk in self.checks if not chk.passed]

    @property
    def max_error(self) -> float:
        return max((chk.max_error for chk in self.checks), default=0.0)


def _padded(closed: np.ndarray, size: int) -> np.ndarray:
    return np.sort(np.concatenate([closed, np.zeros(size - len(closed))]))


def _random_params(rng: np.random.Generator) -> StateParams:
    amps = rng.normal(size=5) + 1j * rng.normal(size=5)
    return StateParams.from_amplitudes(*amps)


def check_vacuum_solve() -> float:
    """
    Nullspace solve of the annihilation conditions against the closed form vacuum
    """
    err = 0.0
    for r in R_GRID:
        for phi in PHI_GRID:
            p = SqueezingParams(r, phi)
            err = max(err, (rindler.solve_vacuum_numerically(p) - rindler.build_rindler_vacuum(p)).norm())
    return err


def check_vacuum_annihilation() -> float:
    err = 0.0
    for r in R_GRID:
        for phi in PHI_GRID:
            p = SqueezingParams(r, phi)
            vac = rindler.build_rindler_vacuum(p)
            for spn in Spin:
                err = max(err, rindler.bogoliubov_annihilator(vac, spn, p).norm(),
                          rindler.antiparticle_annihilator(vac, spn, p).norm())
    return err


def check_one_particle() -> float:
    """
    One particle states against the transformed creator acting on the vacuum, plus orthonormality
    """
    err = 0.0
    for r in R_GRID:
        p = SqueezingParams(r, 0.9)
        vac = rindler.build_rindler_vacuum(p)
        ups = rindler.build_one_particle(p, Spin.UP)
        downs = rindler.build_one_particle(p, Spin.DOWN)
        for spn, state in ((Spin.UP, ups), (Spin.DOWN, downs)):
            err = max(err, (rindler.bogoliubov_creator(vac, spn, p) - state).norm(), abs(state.norm() - 1))
        err = max(err, abs(inner_product(vac, ups)), abs(inner_product(vac, downs)), abs(inner_product(ups, downs)))
    return err


def check_multimode() -> float:
    err = 0.0
    for n in range(1, 5):
        for m in range(2 * n + 1):
            err = max(err, abs(rindler.upsilon_enumerated(n, m) - math.perm(2 * n, m)))
    for r in R_GRID:
        coeffs = rindler.vacuum_coefficients(SqueezingParams(r, 0.4))
        err = max(err, abs(rindler.multimode_c0(1, r) - np.cos(r) ** 2),
                  abs(rindler.multimode_cm(1, 1, r, 0.4) - coeffs.A),
                  abs(2 * rindler.multimode_cm(1, 2, r, 0.4) - coeffs.C))
    return err


def check_region_iv_closed_forms(samples: int = 20) -> float:
    """
    Region IV trace closed forms against the numeric trace of the full projector, for random states
    """
    rng = np.random.default_rng(20240611)
    err = 0.0
    for _ in range(samples):
        params = _random_params(rng)
        for r in np.linspace(0, np.pi / 4, 10):
            p = SqueezingParams(r, float(rng.uniform(0, 2 * np.pi)))
            diff = build_general_rho_ar(params, p).matrix - closed_form_rho_ar(params, p).matrix
            err = max(err, np.abs(diff).max())
    return err


def check_bell_states() -> float:
    err = 0.0
    for r in R_GRID:
        p = SqueezingParams(r)
        for kind in BELL_KINDS:
            rho = bell_rho_ar(kind, p)
            spectrum = hermitian_eigenvalues(partial_transpose(rho, 'I'))
            err = max(err, abs(negativity(rho) - np.cos(r) ** 2),
                      np.abs(spectrum - _padded(closed_form_bell_pt_spectrum(r), 16)).max(),
                      abs(mutual_information(rho) - closed_form_bell_mutual_information(r)))
    return err


def check_mode_states() -> float:
    err = 0.0
    for r in R_GRID:
        p = SqueezingParams(r)
        closed = _padded(closed_form_mode_pt_spectrum(r), 16)
        for pair in SPIN_PAIRS:
            rho = mode_entangled_rho_ar(p, pair)
            spectrum = hermitian_eigenvalues(partial_transpose(rho, 'I'))
            err = max(err, np.abs(spectrum - closed).max(), abs(negativity(rho) - np.cos(r) ** 2))
    return err


def check_occupation() -> float:
    """
    Spin erased states against their closed forms, and the singlet endpoints
    """
    err = 0.0
    rng = np.random.default_rng(7)
    for r in R_GRID:
        p = SqueezingParams(r)
        params = _random_params(rng)
        err = max(err, np.abs(occupation_rho(params, p).matrix - closed_form_occupation_rho(params, r).matrix).max(),
                  abs(occupation_numeric_negativity(params, p) - occupation_negativity(params, r)),
                  occupation_numeric_negativity(triplet_occupation_state(), p))
    singlet = maximally_entangled_occupation_state()
    inertial, limit = SqueezingParams(0.0), SqueezingParams(np.pi / 4)
    err = max(err, abs(occupation_numeric_negativity(singlet, inertial) - 1),
              abs(occupation_numeric_negativity(singlet, limit) - (np.sqrt(3) - 1) / 4),
              abs(occupation_mutual_information(singlet, inertial) - 2),
              abs(occupation_mutual_information(singlet, limit) - 0.5))
    return err


def check_unruh() -> float:
    err = 0.0
    for r in np.linspace(0, np.pi / 4, 50):
        p = SqueezingParams(r)
        err = max(err, abs(number_operator_expectation(rindler_vacuum_rho_r(p)) - expected_number(p)))
    for xval in np.linspace(0.05, 3, 50):
        p = SqueezingParams.from_x(xval)
        err = max(err, abs(expected_number_from_x(xval) - expected_number(p)))
    return err


def check_phase_invariance() -> float:
    """
    Negativity and mutual information do not move with the Bogoliubov phase
    """
    err = 0.0
    families = [StateParams.bell(kind) for kind in BELL_KINDS] + [StateParams.mode_entangled(pr) for pr in SPIN_PAIRS]
    for r in (0.2, 0.6):
        for params in families:
            values = [(negativity(rho), mutual_information(rho))
                      for rho in (build_general_rho_ar(params, SqueezingParams(r, phi)) for phi in PHI_INVARIANCE)]
            err = max(err, np.ptp(np.array(values), axis=0).max())
        for params in (maximally_entangled_occupation_state(), triplet_occupation_state()):
            values = [(occupation_numeric_negativity(params, SqueezingParams(r, phi)),
                       occupation_mutual_information(params, SqueezingParams(r, phi))) for phi in PHI_INVARIANCE]
            err = max(err, np.ptp(np.array(values), axis=0).max())
    return err


def check_trace_preservation() -> float:
    err = 0.0
    rng = np.random.default_rng(11)
    for r in R_GRID:
        rho = build_general_rho_ar(_random_params(rng), SqueezingParams(r))
        err = max(err, abs(rho.trace() - 1), abs(partial_transpose(rho, 'I').trace() - 1),
                  abs(partial_trace(rho, keep=('A',)).trace() - 1))
    return err


CHECKS = {'vacuum_nullspace_solve': check_vacuum_solve,
          'vacuum_annihilation_residual': check_vacuum_annihilation,
          'one_particle_states': check_one_particle,
          'multimode_normalization': check_multimode,
          'region_iv_closed_forms': check_region_iv_closed_forms,
          'bell_states': check_bell_states,
          'mode_entangled_states': check_mode_states,
          'occupation_number_states': check_occupation,
          'unruh_occupancy': check_unruh,
          'phase_invariance': check_phase_invariance,
          'trace_preservation': check_trace_preservation}


def run_verify(tolerance: float = None, checks: dict = None) -> VerifyReport:
    """
    Run every closed form against its numeric oracle.  A check that raises is reported as failed, the run goes on.

    Parameters
    ----------
    tolerance
        largest allowed error, defaults to sweep_variables.verify_tolerance
    checks
        optional subset of CHECKS to run

    Returns
    -------
    VerifyReport
        one CheckResult per check
    """

    if tolerance is None:
        tolerance = sweep_variables.verify_tolerance
    if checks is None:
        checks = CHECKS
    logger = logging.getLogger(sweep_variables.logger_name)
    report = VerifyReport(tolerance=tolerance)
    for name, check in checks.items():
        try:
            max_error = float(check())
        except Exception as e:
            logger.log(logging.ERROR, f'run_verify: {name} raised {type(e).__name__}: {e}')
            report.checks.append(CheckResult(name, math.inf, False, f'{type(e).__name__}: {e}'))
            continue
        passed = max_error <= tolerance
        report.checks.append(CheckResult(name, max_error, passed))
        if passed:
            logger.log(logging.INFO, f'run_verify: {name} passed, max error {max_error:.3e}')
        else:
            logger.log(logging.ERROR, f'run_verify: {name} FAILED, max error {max_error:.3e} > {tolerance:.3e}')
    return report


def format_report(report: VerifyReport) -> str:
    lines = [f'{chk.name:<32} {chk.max_error:>12.3e}  {"ok" if chk.passed else "FAIL"}  {chk.message}'.rstrip()
             for chk in report.checks]
    lines.append(f'{"overall":<32} {report.max_error:>12.3e}  {"ok" if report.passed else "FAIL"}')
    return '\n'.join(lines)


def main(tolerance: float = None) -> int:
    """
    Run the verification and print the per check table

    Parameters
    ----------
    tolerance
        largest allowed error, defaults to sweep_variables.verify_tolerance

    Returns
    -------
    int
        exit status, 0 if every check passed, 2 otherwise
    """

    configure_logger(sweep_variables.log_directory)
    report = run_verify(tolerance)
    print(format_report(report))
    if not report.passed:
        print('failing identities: ' + ', '.join(chk.name for chk in report.failures))
        return 2
    return 0
