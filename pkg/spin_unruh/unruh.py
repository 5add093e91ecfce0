import math
from dataclasses import dataclass

import numpy as np
from scipy.special import expit

from spin_unruh.density import DensityMatrix, from_pure, partial_trace
from spin_unruh.fock import LOCAL_LABELS, Subsystem
from spin_unruh.rindler import SqueezingParams, build_rindler_vacuum

# number of fermions in each local state of a mode
OCCUPANCY = {'0': 0, 'u': 1, 'd': 1, 'ud': 2}


@dataclass(frozen=True)
class ThermalReport:
    """
    What Rob's detector sees in the Minkowski vacuum.  temperature_scale is the Unruh temperature in units of the mode
    frequency, k_B T / (hbar omega) = 1 / (2 pi x).
    """
    r: float
    expected_number: float
    temperature_scale: float


def expected_number(p: SqueezingParams) -> float:
    """
    Mean number of particles Rob counts in region I, 2 sin^2 r
    """
    return float(2 * np.sin(p.r) ** 2)


def fermi_dirac_occupation(x: float) -> float:
    """
    Spinless Fermi-Dirac occupancy 1 / (exp(2 pi x) + 1) at the Unruh temperature, x = omega * c / a
    """
    if x < 0:
        raise ValueError(f'fermi_dirac_occupation: x={x} must be >= 0')
    return float(expit(-2 * np.pi * x))


def expected_number_from_x(x: float) -> float:
    """
    2 / (exp(2 pi x) + 1), the factor 2 is the spin degeneracy
    """
    if not x > 0:
        raise ValueError(f'expected_number_from_x: x={x} must be > 0')
    return 2 * fermi_dirac_occupation(x)


def unruh_temperature(acceleration: float) -> float:
    """
    Unruh temperature a / (2 pi) in natural units
    """
    if acceleration < 0:
        raise ValueError(f'unruh_temperature: acceleration={acceleration} must be >= 0')
    return acceleration / (2 * np.pi)


def rindler_vacuum_rho_r(p: SqueezingParams) -> DensityMatrix:
    """
    Rob's region I state when Alice and Rob share the Minkowski vacuum
    """
    rho = from_pure(build_rindler_vacuum(p), subsystems=(Subsystem.REGION_I, Subsystem.REGION_IV))
    return partial_trace(rho, keep=(Subsystem.REGION_I.value,))


def number_operator_expectation(rho_r: DensityMatrix) -> float:
    """
    Tr[(c+_up c_up + c+_down c_down) rho_r] over a single mode

    Parameters
    ----------
    rho_r
        4 x 4 density matrix of one mode in the local label basis

    Returns
    -------
    float
        the expected number of fermions in the mode
    """

    if len(rho_r.subsystems) != 1 or rho_r.local_bases[0] != LOCAL_LABELS:
        raise ValueError(f'number_operator_expectation: expected a single mode over {LOCAL_LABELS}, got '
                         f'{rho_r.subsystems} over {rho_r.local_bases}')
    weights = np.array([OCCUPANCY[lbl] for lbl in LOCAL_LABELS])
    return float(np.real(np.sum(weights * np.diag(rho_r.matrix))))


def thermal_report(p: SqueezingParams) -> ThermalReport:
    xval = p.x
    if xval == 0.0:
        scale = math.inf
    else:
        scale = 1 / (2 * np.pi * xval)
    return ThermalReport(r=p.r, expected_number=expected_number(p), temperature_scale=float(scale))
