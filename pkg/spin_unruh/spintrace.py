import enum
import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from spin_unruh import sweep_variables
from spin_unruh.density import DensityMatrix
from spin_unruh.entanglement import StateParams, build_general_rho_ar, mutual_information, negativity
from spin_unruh.fock import LOCAL_LABELS, Subsystem
from spin_unruh.rindler import SqueezingParams


class TotalSpin(enum.Enum):
    """
    Total spin state of the fermions shared by Alice and Rob, value is (J, J_z)
    """
    S = (0.0, 0.0)
    T_PLUS = (1.0, 1.0)
    T_ZERO = (1.0, 0.0)
    T_MINUS = (1.0, -1.0)
    D_PLUS = (0.5, 0.5)
    D_MINUS = (0.5, -0.5)

    @property
    def j(self) -> float:
        return self.value[0]

    @property
    def jz(self) -> float:
        return self.value[1]


_SPIN_TAGS = {TotalSpin.S: 'S', TotalSpin.T_PLUS: 'T+', TotalSpin.T_ZERO: 'T0', TotalSpin.T_MINUS: 'T-',
              TotalSpin.D_PLUS: 'D+', TotalSpin.D_MINUS: 'D-'}


@dataclass(frozen=True)
class OccupationSpinBasisElement:
    """
    |n_a n_r>|J, J_z>.  Doublets also record which party holds the unpaired fermion ('A' or 'R'), singlets and
    triplets leave it None.
    """
    n_a: int
    n_r: int
    total_spin: TotalSpin
    carrier: Optional[str] = None

    def __post_init__(self):
        if (self.n_a, self.n_r) not in ALLOWED_SPINS:
            raise ValueError(f'OccupationSpinBasisElement: occupation ({self.n_a}, {self.n_r}) is outside {{0,1}} x {{0,1,2}}')
        if self.total_spin not in ALLOWED_SPINS[(self.n_a, self.n_r)]:
            raise ValueError(f'OccupationSpinBasisElement: {self.total_spin.name} is not allowed with occupation '
                             f'({self.n_a}, {self.n_r})')
        expected_carrier = _doublet_carrier(self.n_a, self.n_r)
        if self.carrier != expected_carrier:
            raise ValueError(f'OccupationSpinBasisElement: carrier {self.carrier!r} does not match occupation '
                             f'({self.n_a}, {self.n_r}), expected {expected_carrier!r}')

    @property
    def occupation(self) -> str:
        return f'{self.n_a}{self.n_r}'

    def spin_key(self, distinguish_doublets: bool = True):
        """
        What must match between ket and bra for the element pair to survive the total spin trace
        """
        if distinguish_doublets:
            return self.total_spin, self.carrier
        return self.total_spin

    def __str__(self):
        return f'{self.occupation}{_SPIN_TAGS[self.total_spin]}{self.carrier or ""}'


_DOUBLETS = (TotalSpin.D_PLUS, TotalSpin.D_MINUS)
ALLOWED_SPINS = {(0, 0): (TotalSpin.S,), (0, 2): (TotalSpin.S,), (0, 1): _DOUBLETS, (1, 0): _DOUBLETS,
                 (1, 2): _DOUBLETS, (1, 1): (TotalSpin.T_PLUS, TotalSpin.T_ZERO, TotalSpin.T_MINUS, TotalSpin.S)}


def _doublet_carrier(n_a: int, n_r: int) -> Optional[str]:
    if n_r == 1 and n_a == 0:
        return 'R'
    if n_a == 1 and n_r != 1:
        return 'A'
    return None


OCCUPATION_SPIN_BASIS = tuple(OccupationSpinBasisElement(n_a, n_r, spn, _doublet_carrier(n_a, n_r))
                              for (n_a, n_r), spins in ALLOWED_SPINS.items() for spn in spins)
OCCUPATION_LABELS_A = ('0', '1')
OCCUPATION_LABELS_R = ('0', '1', '2')


def _element(n_a: int, n_r: int, spn: TotalSpin) -> OccupationSpinBasisElement:
    return OccupationSpinBasisElement(n_a, n_r, spn, _doublet_carrier(n_a, n_r))


_HALF = 1 / np.sqrt(2)
# image of each standard (alice, region I) basis state, the states with Alice doubly occupied have none
TOTAL_SPIN_DICTIONARY = {
    ('0', '0'): {_element(0, 0, TotalSpin.S): 1.0},
    ('0', 'ud'): {_element(0, 2, TotalSpin.S): 1.0},
    ('0', 'u'): {_element(0, 1, TotalSpin.D_PLUS): 1.0},
    ('0', 'd'): {_element(0, 1, TotalSpin.D_MINUS): 1.0},
    ('u', '0'): {_element(1, 0, TotalSpin.D_PLUS): 1.0},
    ('d', '0'): {_element(1, 0, TotalSpin.D_MINUS): 1.0},
    ('u', 'ud'): {_element(1, 2, TotalSpin.D_PLUS): 1.0},
    ('d', 'ud'): {_element(1, 2, TotalSpin.D_MINUS): 1.0},
    ('u', 'u'): {_element(1, 1, TotalSpin.T_PLUS): 1.0},
    ('d', 'd'): {_element(1, 1, TotalSpin.T_MINUS): 1.0},
    ('u', 'd'): {_element(1, 1, TotalSpin.T_ZERO): _HALF, _element(1, 1, TotalSpin.S): _HALF},
    ('d', 'u'): {_element(1, 1, TotalSpin.T_ZERO): _HALF, _element(1, 1, TotalSpin.S): -_HALF},
}


def _standard_basis():
    return [(alice, rob) for alice in LOCAL_LABELS for rob in LOCAL_LABELS]


def change_of_basis_matrix() -> np.ndarray:
    """
    12 x 16 isometry taking the Alice x region I basis to the occupation x total spin basis.  Columns of the standard
    states outside the dictionary are zero.
    """
    umat = np.zeros((len(OCCUPATION_SPIN_BASIS), 16))
    for col, labels in enumerate(_standard_basis()):
        for elem, coeff in TOTAL_SPIN_DICTIONARY.get(labels, {}).items():
            umat[OCCUPATION_SPIN_BASIS.index(elem), col] = coeff
    return umat


def to_occupation_totalspin(rho_ar: DensityMatrix) -> DensityMatrix:
    """
    Rewrite a state of Alice and region I in the occupation number x total spin basis.

    Parameters
    ----------
    rho_ar
        16 x 16 density matrix over Alice x region I

    Returns
    -------
    DensityMatrix
        12 x 12 density matrix over the single subsystem 'AR', labeled by OCCUPATION_SPIN_BASIS
    """

    expected = (Subsystem.ALICE.value, Subsystem.REGION_I.value)
    if rho_ar.subsystems != expected or rho_ar.local_bases != (LOCAL_LABELS, LOCAL_LABELS):
        raise ValueError(f'to_occupation_totalspin: expected a density matrix over {expected} in the local label '
                         f'basis, got {rho_ar.subsystems}')
    outside = [idx for idx, labels in enumerate(_standard_basis()) if labels not in TOTAL_SPIN_DICTIONARY]
    leak = np.abs(rho_ar.matrix[outside, :]).max(initial=0.0)
    leak = max(leak, np.abs(rho_ar.matrix[:, outside]).max(initial=0.0))
    if leak > sweep_variables.amplitude_prune:
        raise ValueError(f'to_occupation_totalspin: state has weight {leak} on doubly occupied Alice states, which have '
                         f'no occupation x total spin image')
    umat = change_of_basis_matrix()
    return DensityMatrix(('AR',), (tuple(str(elem) for elem in OCCUPATION_SPIN_BASIS),),
                         umat @ rho_ar.matrix @ umat.T)


def trace_out_total_spin(rho: DensityMatrix, distinguish_doublets: bool = True) -> DensityMatrix:
    """
    Erase the total spin, summing <J,J_z| rho |J,J_z> for each pair of occupations.  With distinguish_doublets a
    doublet on Rob's side and a doublet on Alice's side count as different spin states, so the |01><12| coherence is
    erased along with the spin.  Without it only (J, J_z) is compared.

    Parameters
    ----------
    rho
        12 x 12 density matrix from to_occupation_totalspin
    distinguish_doublets
        if True, the doublet carrier is part of the erased label

    Returns
    -------
    DensityMatrix
        6 x 6 density matrix over Alice occupation {0,1} x Rob occupation {0,1,2}
    """

    labels = tuple(str(elem) for elem in OCCUPATION_SPIN_BASIS)
    if rho.local_bases != (labels,):
        raise ValueError('trace_out_total_spin: input is not in the occupation x total spin basis')
    reduced = np.zeros((6, 6), dtype=complex)
    for row, ket in enumerate(OCCUPATION_SPIN_BASIS):
        for col, bra in enumerate(OCCUPATION_SPIN_BASIS):
            if ket.spin_key(distinguish_doublets) != bra.spin_key(distinguish_doublets):
                continue
            reduced[ket.n_a * 3 + ket.n_r, bra.n_a * 3 + bra.n_r] += rho.matrix[row, col]
    logger = logging.getLogger(sweep_variables.logger_name)
    logger.log(logging.DEBUG, f'trace_out_total_spin: distinguish_doublets={distinguish_doublets}, '
                              f'trace {np.trace(reduced).real}')
    return DensityMatrix(('A', 'R'), (OCCUPATION_LABELS_A, OCCUPATION_LABELS_R), reduced)


def occupation_rho(params: StateParams, p: SqueezingParams, distinguish_doublets: bool = True) -> DensityMatrix:
    """
    Occupation number state of Alice and Rob, the accelerated state with its total spin erased
    """
    return trace_out_total_spin(to_occupation_totalspin(build_general_rho_ar(params, p)), distinguish_doublets)


def closed_form_occupation_rho(params: StateParams, r: float) -> DensityMatrix:
    """
    Occupation number state in closed form, only the singlet part of Rob's particle keeps a coherence with the vacuum

    Parameters
    ----------
    params
        Minkowski amplitudes
    r
        squeezing angle

    Returns
    -------
    DensityMatrix
        6 x 6 over {0,1} x {0,1,2}, equal to occupation_rho with the doublets distinguished
    """

    c2, s2 = np.cos(r) ** 2, np.sin(r) ** 2
    mu2 = params.mu ** 2
    mat = np.zeros((6, 6), dtype=complex)
    mat[0, 0] = mu2 * c2 ** 2
    mat[1, 1] = 2 * mu2 * s2 * c2
    mat[2, 2] = mu2 * s2 ** 2
    mat[4, 4] = (1 - mu2) * c2
    mat[5, 5] = (1 - mu2) * s2
    mat[0, 4] = params.mu * np.cos(r) ** 3 * np.conj(params.beta - params.gamma) / np.sqrt(2)
    mat[4, 0] = np.conj(mat[0, 4])
    return DensityMatrix(('A', 'R'), (OCCUPATION_LABELS_A, OCCUPATION_LABELS_R), mat)


def occupation_pt_spectrum(params: StateParams, r: float) -> np.ndarray:
    """
    The six partial transpose eigenvalues of the occupation state, lambda_1 ... lambda_6.  Only lambda_6 can be
    negative.
    """
    c2, s2 = np.cos(r) ** 2, np.sin(r) ** 2
    mu = params.mu
    root = mu * np.sqrt(mu ** 2 * s2 ** 2 + c2 * abs(params.beta - params.gamma) ** 2 / 2)
    return np.array([mu ** 2 * c2 ** 2, mu ** 2 * s2 ** 2, (1 - mu ** 2) * c2, (1 - mu ** 2) * s2,
                     c2 * (mu ** 2 * s2 + root), c2 * (mu ** 2 * s2 - root)])


def occupation_negativity(params: StateParams, r: float) -> float:
    """
    Negativity of the occupation state, 2 cos^2 r |mu^2 sin^2 r - mu sqrt(mu^2 sin^4 r + cos^2 r |beta-gamma|^2 / 2)|.
    Zero without a singlet component.

    Parameters
    ----------
    params
        Minkowski amplitudes
    r
        squeezing angle

    Returns
    -------
    float
        the negativity
    """

    lowest = occupation_pt_spectrum(params, r)[-1]
    return float(2 * abs(lowest))


def occupation_mutual_information(params: StateParams, p: SqueezingParams, distinguish_doublets: bool = True) -> float:
    return mutual_information(occupation_rho(params, p, distinguish_doublets))


def occupation_numeric_negativity(params: StateParams, p: SqueezingParams, distinguish_doublets: bool = True) -> float:
    return negativity(occupation_rho(params, p, distinguish_doublets), 'R')


def maximally_entangled_occupation_state() -> StateParams:
    """
    mu|0,0> + (|u,d> - |d,u>)/2, the vacuum entangled with a singlet.  Maximally entangled in occupation number.
    """
    return StateParams(beta=0.5, gamma=-0.5)


def triplet_occupation_state() -> StateParams:
    """
    mu|0,0> + (|u,d> + |d,u>)/2, separable once the total spin is erased
    """
    return StateParams(beta=0.5, gamma=0.5)
