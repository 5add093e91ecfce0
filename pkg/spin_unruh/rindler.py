import math
import logging
from dataclasses import dataclass

import numpy as np
from scipy.linalg import null_space

from spin_unruh import fock, sweep_variables
from spin_unruh.fock import FockBasisState, Spin, StateVector, Subsystem


class VacuumSolveError(ValueError):
    """
    Raised when the annihilation conditions on the vacuum do not single out one state, which only happens with a
    broken sign convention.
    """
    pass


@dataclass(frozen=True)
class SqueezingParams:
    """
    Acceleration parametrization.  r is the squeezing angle (0 inertial, pi/4 infinite acceleration), phi is the
    Bogoliubov phase.
    """
    r: float
    phi: float = 0.0

    def __post_init__(self):
        if not (0.0 <= self.r <= np.pi / 4 + 1e-15):
            raise ValueError(f'SqueezingParams: r={self.r} outside [0, pi/4]')

    @classmethod
    def from_x(cls, x: float, phi: float = 0.0):
        """
        Build from the dimensionless group x = omega * c / a
        """
        return cls(squeezing_r(x), phi)

    @property
    def x(self) -> float:
        """
        Inverse of squeezing_r, infinite for the inertial observer and 0 at infinite acceleration
        """
        if self.r == 0.0:
            return math.inf
        if self.r >= np.pi / 4:
            return 0.0
        return -math.log(math.tan(self.r)) / math.pi

    @property
    def phase(self) -> complex:
        return complex(np.exp(1j * self.phi))


@dataclass(frozen=True)
class VacuumCoefficients:
    V: complex
    A: complex
    B: complex
    C: complex

    def as_tuple(self):
        return self.V, self.A, self.B, self.C

    def norm_squared(self) -> float:
        return float(sum(abs(c) ** 2 for c in self.as_tuple()))


def squeezing_r(x: float) -> float:
    """
    Squeezing angle from tan r = exp(-pi * omega * c / a)

    Parameters
    ----------
    x
        dimensionless omega * c / a, must be positive

    Returns
    -------
    float
        r in (0, pi/4), exactly 0 once exp(-pi x) underflows
    """

    if not x > 0:
        raise ValueError(f'squeezing_r: x={x} is not a uniformly accelerated observer, x = omega*c/a must be > 0')
    return float(np.arctan(np.exp(-np.pi * x)))


def vacuum_coefficients(p: SqueezingParams) -> VacuumCoefficients:
    cos_r, sin_r = np.cos(p.r), np.sin(p.r)
    return VacuumCoefficients(V=complex(cos_r ** 2),
                              A=p.phase * sin_r * cos_r,
                              B=p.phase * sin_r * cos_r,
                              C=p.phase ** 2 * sin_r ** 2)


# basis of the single mode vacuum in I x IV, in the order of the coefficients V, A, B, C
VACUUM_BASIS = (FockBasisState.from_labels(region_i='0', region_iv='0'),
                FockBasisState.from_labels(region_i='u', region_iv='d'),
                FockBasisState.from_labels(region_i='d', region_iv='u'),
                FockBasisState.from_labels(region_i='ud', region_iv='ud'))


def build_rindler_vacuum(p: SqueezingParams) -> StateVector:
    """
    Minkowski vacuum of one mode written in Rindler regions I and IV, a two mode squeezed state with opposite spins.

    Parameters
    ----------
    p
        squeezing parameters

    Returns
    -------
    StateVector
        V|0,0> + A|u,d> + B|d,u> + C|ud,ud> over I x IV, Alice empty
    """

    coeffs = vacuum_coefficients(p)
    return StateVector(dict(zip(VACUUM_BASIS, coeffs.as_tuple())))


def build_one_particle(p: SqueezingParams, spin: Spin) -> StateVector:
    """
    Minkowski one particle state of the given spin written in Rindler regions I and IV

    Parameters
    ----------
    p
        squeezing parameters
    spin
        spin of the particle

    Returns
    -------
    StateVector
        cos r |s,0> + eps_s e^{i phi} sin r |ud,s> with eps_up = 1 and eps_down = -1
    """

    eps = 1.0 if spin is Spin.UP else -1.0
    return StateVector({FockBasisState.from_labels(region_i=spin.value, region_iv='0'): np.cos(p.r),
                        FockBasisState.from_labels(region_i='ud', region_iv=spin.value): eps * p.phase * np.sin(p.r)})


def bogoliubov_annihilator(state: StateVector, spin: Spin, p: SqueezingParams) -> StateVector:
    """
    Minkowski particle annihilator a_s = cos r c_{I,s} - e^{i phi} sin r d+_{IV,-s}
    """
    particle = fock.apply_annihilation(state, fock.slot(Subsystem.REGION_I, spin))
    antiparticle = fock.apply_creation(state, fock.slot(Subsystem.REGION_IV, spin.opposite))
    return np.cos(p.r) * particle - p.phase * np.sin(p.r) * antiparticle


def bogoliubov_creator(state: StateVector, spin: Spin, p: SqueezingParams) -> StateVector:
    """
    Minkowski particle creator a+_s = cos r c+_{I,s} - e^{-i phi} sin r d_{IV,-s}
    """
    particle = fock.apply_creation(state, fock.slot(Subsystem.REGION_I, spin))
    antiparticle = fock.apply_annihilation(state, fock.slot(Subsystem.REGION_IV, spin.opposite))
    return np.cos(p.r) * particle - np.conj(p.phase) * np.sin(p.r) * antiparticle


def antiparticle_annihilator(state: StateVector, spin: Spin, p: SqueezingParams) -> StateVector:
    """
    Minkowski antiparticle annihilator b_s = cos r d_{IV,s} + e^{i phi} sin r c+_{I,-s}
    """
    antiparticle = fock.apply_annihilation(state, fock.slot(Subsystem.REGION_IV, spin))
    particle = fock.apply_creation(state, fock.slot(Subsystem.REGION_I, spin.opposite))
    return np.cos(p.r) * antiparticle + p.phase * np.sin(p.r) * particle


def solve_vacuum_numerically(p: SqueezingParams) -> StateVector:
    """
    Find the vacuum from the annihilation conditions a_s |0> = 0 alone.  Each basis state of the squeezed form is
    pushed through both transformed annihilators, the vacuum is the one dimensional nullspace of the stacked
    conditions.  Global phase is fixed so the |0,0> amplitude is real and positive.

    Parameters
    ----------
    p
        squeezing parameters

    Returns
    -------
    StateVector
        unit norm vacuum over I x IV
    """

    logger = logging.getLogger(sweep_variables.logger_name)
    columns = []
    for bas in VACUUM_BASIS:
        images = [bogoliubov_annihilator(StateVector.basis(bas), spn, p).to_array() for spn in Spin]
        columns.append(np.concatenate(images))
    conditions = np.column_stack(columns)
    nspace = null_space(conditions, rcond=sweep_variables.nullspace_rcond)
    logger.log(logging.DEBUG, f'solve_vacuum_numerically: r={p.r}, phi={p.phi}, nullspace dimension {nspace.shape[1]}')
    if nspace.shape[1] != 1:
        raise VacuumSolveError(f'solve_vacuum_numerically: expected a one dimensional nullspace at r={p.r}, phi={p.phi}, '
                               f'found dimension {nspace.shape[1]}, the fermionic sign convention is inconsistent')
    coeffs = nspace[:, 0]
    if abs(coeffs[0]) > 0:
        coeffs = coeffs * (abs(coeffs[0]) / coeffs[0])
    return StateVector(dict(zip(VACUUM_BASIS, coeffs)))


def _check_upsilon_args(n: int, m: int):
    if n < 1:
        raise ValueError(f'upsilon: mode count n={n} must be >= 1')
    if not 0 <= m <= 2 * n:
        raise ValueError(f'upsilon: pair count m={m} must be in [0, 2n={2 * n}]')


def _xi(tup: tuple) -> int:
    """
    Pauli exclusion symbol, 0 if any two (spin, mode) pairs coincide
    """
    return int(len(set(tup)) == len(tup))


def upsilon_enumerated(n: int, m: int) -> int:
    """
    Sum of the exclusion symbol over all ordered m-tuples of (spin, mode) pairs, by brute force.  Prefixes with a
    repeated pair are cut early since every extension of them has xi = 0 too.

    Parameters
    ----------
    n
        number of modes
    m
        number of pairs in the tuple

    Returns
    -------
    int
        the count of admissible tuples
    """

    _check_upsilon_args(n, m)
    pairs = [(spn, k) for k in range(n) for spn in Spin]

    def _count(prefix: tuple) -> int:
        if len(prefix) == m:
            return 1
        total = 0
        for pr in pairs:
            extended = prefix + (pr,)
            if _xi(extended):
                total += _count(extended)
        return total

    return _count(())


def upsilon(n: int, m: int) -> int:
    """
    Upsilon_m for n modes.  Enumerated for n <= 4, falling factorial (2n)(2n-1)...(2n-m+1) otherwise.
    """
    _check_upsilon_args(n, m)
    if n <= 4:
        return upsilon_enumerated(n, m)
    return math.perm(2 * n, m)


def multimode_c0(n: int, r: float) -> float:
    """
    Vacuum amplitude C^0 for n modes from the normalization of the multimode squeezed vacuum

    Parameters
    ----------
    n
        number of modes
    r
        squeezing angle in [0, pi/4]

    Returns
    -------
    float
        [sum_{m<=n} Y_m tan^2m r + sum_{m>n} Y_{2n-m} tan^2m r] ** -1/2
    """

    if not 0.0 <= r <= np.pi / 4 + 1e-15:
        raise ValueError(f'multimode_c0: r={r} outside [0, pi/4]')
    tan2 = np.tan(r) ** 2
    total = sum(upsilon(n, m) * tan2 ** m for m in range(n + 1))
    total += sum(upsilon(n, 2 * n - m) * tan2 ** m for m in range(n + 1, 2 * n + 1))
    return float(total ** -0.5)


def multimode_cm(n: int, m: int, r: float, phi: float = 0.0) -> complex:
    """
    C^m = C^0 e^{i m phi} tan^m r / m!
    """
    _check_upsilon_args(n, m)
    return complex(multimode_c0(n, r) * np.exp(1j * m * phi) * np.tan(r) ** m / math.factorial(m))
