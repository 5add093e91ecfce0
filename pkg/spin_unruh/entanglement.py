import logging
from dataclasses import dataclass
from typing import Dict, Tuple

import numpy as np
from scipy.special import entr

from spin_unruh import fock, sweep_variables
from spin_unruh.density import DensityMatrix, OperatorPair, from_pure, hermitian_eigenvalues, partial_trace, \
    partial_trace_region_iv_closed_form, partial_transpose, von_neumann_entropy
from spin_unruh.fock import Spin, StateVector, Subsystem
from spin_unruh.rindler import SqueezingParams, build_one_particle, build_rindler_vacuum

# (alice spin, rob spin) for each of the one particle amplitudes
AMPLITUDE_LABELS = {'alpha': ('u', 'u'), 'beta': ('u', 'd'), 'gamma': ('d', 'u'), 'delta': ('d', 'd')}
BELL_KINDS = ('phi+', 'phi-', 'psi+', 'psi-')
SPIN_PAIRS = ('ud', 'du', 'uu', 'dd')


@dataclass(frozen=True)
class StateParams:
    """
    Coefficients of the Minkowski state mu|0,0> + alpha|u,u> + beta|u,d> + gamma|d,u> + delta|d,d>, Alice first.
    mu is not stored, it is the real nonnegative amplitude that completes the norm.
    """
    alpha: complex = 0j
    beta: complex = 0j
    gamma: complex = 0j
    delta: complex = 0j

    def __post_init__(self):
        for name in AMPLITUDE_LABELS:
            object.__setattr__(self, name, complex(getattr(self, name)))
        weight = self.particle_weight
        if weight > 1.0 + sweep_variables.normalization_tolerance:
            raise ValueError(f'StateParams: |alpha|^2+|beta|^2+|gamma|^2+|delta|^2 = {weight} exceeds 1')

    @property
    def particle_weight(self) -> float:
        return float(sum(abs(getattr(self, name)) ** 2 for name in AMPLITUDE_LABELS))

    @property
    def mu(self) -> float:
        """
        Vacuum amplitude, exactly 0 when the leftover weight is rounding noise of a full particle weight
        """
        leftover = 1.0 - self.particle_weight
        if leftover <= sweep_variables.amplitude_prune:
            return 0.0
        return float(np.sqrt(leftover))

    def amplitudes(self) -> Dict[Tuple[str, str], complex]:
        """
        Nonzero amplitudes keyed by (alice, rob) Minkowski labels, the vacuum term under ('0', '0')
        """
        amps = {('0', '0'): complex(self.mu)}
        for name, labels in AMPLITUDE_LABELS.items():
            amps[labels] = getattr(self, name)
        return {lbl: amp for lbl, amp in amps.items() if amp != 0}

    @classmethod
    def from_amplitudes(cls, mu: complex, alpha: complex = 0j, beta: complex = 0j, gamma: complex = 0j,
                        delta: complex = 0j):
        """
        Normalize an arbitrary amplitude vector and rotate its global phase so mu comes out real and nonnegative
        """
        amps = np.array([mu, alpha, beta, gamma, delta], dtype=complex)
        nrm = np.linalg.norm(amps)
        if nrm == 0:
            raise ValueError('StateParams.from_amplitudes: all amplitudes are zero')
        amps = amps / nrm
        if abs(amps[0]) > 0:
            amps = amps * (abs(amps[0]) / amps[0])
        return cls(*amps[1:])

    @classmethod
    def bell(cls, kind: str):
        """
        phi+- = (|u,u> +- |d,d>)/sqrt2, psi+- = (|u,d> +- |d,u>)/sqrt2
        """
        amp = 1 / np.sqrt(2)
        if kind == 'phi+':
            return cls(alpha=amp, delta=amp)
        elif kind == 'phi-':
            return cls(alpha=amp, delta=-amp)
        elif kind == 'psi+':
            return cls(beta=amp, gamma=amp)
        elif kind == 'psi-':
            return cls(beta=amp, gamma=-amp)
        raise ValueError(f'StateParams.bell: unknown Bell state {kind!r}, expected one of {BELL_KINDS}')

    @classmethod
    def mode_entangled(cls, spin_pair: str = 'ud'):
        """
        (|0,0> + |s,s'>)/sqrt2, spin_pair names s and s', ex: 'ud'
        """
        if spin_pair not in SPIN_PAIRS:
            raise ValueError(f'StateParams.mode_entangled: unknown spin pair {spin_pair!r}, expected one of {SPIN_PAIRS}')
        labels = (spin_pair[0], spin_pair[1])
        name = [nm for nm, lbl in AMPLITUDE_LABELS.items() if lbl == labels][0]
        return cls(**{name: 1 / np.sqrt(2)})


@dataclass(frozen=True)
class EntanglementReport:
    r: float
    negativity: float
    pt_spectrum: np.ndarray
    entropy_A: float
    entropy_R: float
    entropy_AR: float
    mutual_information: float

    @property
    def pt_min_eigenvalue(self) -> float:
        return float(np.min(self.pt_spectrum))


def _rob_state(labels_rob: str, p: SqueezingParams) -> StateVector:
    if labels_rob == '0':
        return build_rindler_vacuum(p)
    return build_one_particle(p, Spin(labels_rob))


def build_general_state(params: StateParams, p: SqueezingParams) -> StateVector:
    """
    The Minkowski state of Alice and Rob with Rob's mode written in Rindler regions I and IV.  Alice's particle is
    put on top of Rob's state with her creator, which acts first in the canonical order.

    Parameters
    ----------
    params
        Minkowski amplitudes
    p
        squeezing parameters

    Returns
    -------
    StateVector
        unit norm state over Alice x I x IV
    """

    total = StateVector()
    for (alice, rob), amp in params.amplitudes().items():
        rob_state = _rob_state(rob, p)
        if alice != '0':
            rob_state = fock.apply_creation(rob_state, fock.slot(Subsystem.ALICE, Spin(alice)))
        total = total + amp * rob_state
    return total


def build_general_rho_ar(params: StateParams, p: SqueezingParams) -> DensityMatrix:
    """
    Alice x region I density matrix, the projector onto build_general_state traced over region IV
    """
    rho = from_pure(build_general_state(params, p))
    return partial_trace(rho, keep=(Subsystem.ALICE.value, Subsystem.REGION_I.value))


def closed_form_rho_ar(params: StateParams, p: SqueezingParams) -> DensityMatrix:
    """
    Alice x region I density matrix assembled term by term from the region IV trace closed forms

    Parameters
    ----------
    params
        Minkowski amplitudes
    p
        squeezing parameters

    Returns
    -------
    DensityMatrix
        16 x 16 over Alice x region I
    """

    amps = params.amplitudes()
    total = None
    for ket, ket_amp in amps.items():
        for bra, bra_amp in amps.items():
            contribution = ket_amp * np.conj(bra_amp) * partial_trace_region_iv_closed_form(OperatorPair(ket, bra), p.r,
                                                                                           p.phi)
            total = contribution if total is None else total + contribution
    return total


def bell_rho_ar(kind: str, p: SqueezingParams) -> DensityMatrix:
    return build_general_rho_ar(StateParams.bell(kind), p)


def mode_entangled_rho_ar(p: SqueezingParams, spin_pair: str = 'ud') -> DensityMatrix:
    return build_general_rho_ar(StateParams.mode_entangled(spin_pair), p)


def pt_spectrum(rho: DensityMatrix, transpose_subsystem: str = Subsystem.REGION_I.value) -> np.ndarray:
    return hermitian_eigenvalues(partial_transpose(rho, transpose_subsystem))


def negativity(rho: DensityMatrix, transpose_subsystem: str = Subsystem.REGION_I.value) -> float:
    """
    Twice the summed magnitude of the negative partial transpose eigenvalues, 1 for a Bell state.  Eigenvalues above
    negative_eigenvalue_threshold count as zero.

    Parameters
    ----------
    rho
        bipartite density matrix
    transpose_subsystem
        name of the subsystem to transpose

    Returns
    -------
    float
        the negativity
    """

    eigs = pt_spectrum(rho, transpose_subsystem)
    negative = eigs[eigs < sweep_variables.negative_eigenvalue_threshold]
    return float(2 * np.sum(np.abs(negative)))


def _bipartite_entropies(rho: DensityMatrix):
    if len(rho.subsystems) != 2:
        raise ValueError(f'mutual_information: expected a bipartite density matrix, got subsystems {rho.subsystems}')
    first, second = rho.subsystems
    s_a = von_neumann_entropy(partial_trace(rho, keep=(first,)))
    s_r = von_neumann_entropy(partial_trace(rho, keep=(second,)))
    s_ar = von_neumann_entropy(rho)
    return s_a, s_r, s_ar


def mutual_information(rho_ar: DensityMatrix) -> float:
    """
    S_A + S_R - S_AR in bits, A and R being the two subsystems of rho_ar
    """
    s_a, s_r, s_ar = _bipartite_entropies(rho_ar)
    return s_a + s_r - s_ar


def entanglement_report(rho_ar: DensityMatrix, r: float, transpose_subsystem: str = None) -> EntanglementReport:
    """
    All entanglement figures of one bipartite state

    Parameters
    ----------
    rho_ar
        bipartite density matrix
    r
        squeezing angle the state was built at, carried into the report
    transpose_subsystem
        subsystem to transpose for the negativity, defaults to the second subsystem of rho_ar

    Returns
    -------
    EntanglementReport
        negativity, partial transpose spectrum, entropies and mutual information
    """

    if transpose_subsystem is None:
        transpose_subsystem = rho_ar.subsystems[-1]
    s_a, s_r, s_ar = _bipartite_entropies(rho_ar)
    eigs = pt_spectrum(rho_ar, transpose_subsystem)
    report = EntanglementReport(r=r, negativity=negativity(rho_ar, transpose_subsystem), pt_spectrum=eigs,
                                entropy_A=s_a, entropy_R=s_r, entropy_AR=s_ar, mutual_information=s_a + s_r - s_ar)
    logger = logging.getLogger(sweep_variables.logger_name)
    logger.log(logging.DEBUG, f'entanglement_report: r={r}, negativity={report.negativity}, '
                              f'mutual_information={report.mutual_information}')
    return report


def closed_form_bell_pt_spectrum(r: float) -> np.ndarray:
    """
    Nonzero partial transpose eigenvalues of any Bell state, ascending: -cos^2/2, sin^2/2 twice, cos^2/2 three times
    """
    c2, s2 = np.cos(r) ** 2, np.sin(r) ** 2
    return np.sort(np.array([c2 / 2, c2 / 2, c2 / 2, s2 / 2, s2 / 2, -c2 / 2]))


def closed_form_mode_pt_spectrum(r: float) -> np.ndarray:
    """
    The eight partial transpose eigenvalues of (|0,0> + |s,s'>)/sqrt2, in the order lambda_1 ... lambda_8.
    lambda_6 and lambda_8 carry the entanglement.

    Parameters
    ----------
    r
        squeezing angle

    Returns
    -------
    np.ndarray
        [c^4/2, s^2 c^2/2, s^2/2, c^2/2, lambda_5, lambda_6, lambda_7, lambda_8]
    """

    c2, s2 = np.cos(r) ** 2, np.sin(r) ** 2
    root56 = np.sqrt(s2 ** 2 * c2 ** 2 + 4 * c2 ** 3)
    root78 = np.sqrt(s2 ** 4 + 4 * s2 ** 2 * c2)
    return np.array([c2 ** 2 / 2, s2 * c2 / 2, s2 / 2, c2 / 2,
                     (s2 * c2 + root56) / 4, (s2 * c2 - root56) / 4,
                     (s2 ** 2 + root78) / 4, (s2 ** 2 - root78) / 4])


def _bits(probabilities) -> float:
    return float(np.sum(entr(np.asarray(probabilities, dtype=float))) / np.log(2))


def closed_form_bell_entropies(r: float) -> Tuple[float, float, float]:
    """
    (S_A, S_R, S_AR) of an accelerated Bell state.  rho_R has spectrum {cos^2/2, cos^2/2, sin^2}, rho_AR has
    {cos^2, sin^2/2, sin^2/2}.
    """
    c2, s2 = np.cos(r) ** 2, np.sin(r) ** 2
    return 1.0, _bits([c2 / 2, c2 / 2, s2]), _bits([c2, s2 / 2, s2 / 2])


def closed_form_bell_mutual_information(r: float) -> float:
    return float(2 * np.cos(r) ** 2)
