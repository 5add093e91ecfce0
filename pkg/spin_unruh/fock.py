import enum
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Mapping, Union

import numpy as np

from spin_unruh import sweep_variables


class Subsystem(enum.Enum):
    """
    The three single-mode subsystems of the setting.  Alice's mode is a Minkowski mode, Rob's mode is split
    between the two causally disconnected Rindler wedges.  Declaration order is the canonical subsystem order.
    """
    ALICE = 'A'
    REGION_I = 'I'
    REGION_IV = 'IV'


class Spin(enum.Enum):
    UP = 'u'
    DOWN = 'd'

    @property
    def opposite(self):
        return Spin.DOWN if self is Spin.UP else Spin.UP


# local occupation labels of one mode, indexed by up_bit + 2 * down_bit
LOCAL_LABELS = ('0', 'u', 'd', 'ud')


@dataclass(frozen=True)
class Slot:
    """
    One (subsystem, spin) slot, holds at most one fermion.  In region IV the slot is an antiparticle slot, the
    particle/antiparticle distinction lives in the subsystem label only.
    """
    subsystem: Subsystem
    spin: Spin

    @property
    def index(self) -> int:
        """
        Position in the canonical order (A,up) < (A,down) < (I,up) < (I,down) < (IV,up) < (IV,down)
        """
        return list(Subsystem).index(self.subsystem) * 2 + list(Spin).index(self.spin)

    @property
    def bit(self) -> int:
        return 1 << self.index

    def __str__(self):
        return f'({self.subsystem.value},{self.spin.value})'


SLOTS = tuple(Slot(sub, spn) for sub in Subsystem for spn in Spin)


@dataclass(frozen=True)
class FockBasisState:
    """
    Occupation bit pattern over the six slots.  A basis state stands for the canonically ordered product of
    creators acting on the vacuum, so |ud>_I is c+_{I,up} c+_{I,down} |0>_I.
    """
    bits: int = 0

    def __post_init__(self):
        if not 0 <= self.bits < (1 << len(SLOTS)):
            raise ValueError(f'FockBasisState: occupation pattern {self.bits} outside the {len(SLOTS)} slots')

    @classmethod
    def from_slots(cls, *slots: Slot):
        bits = 0
        for slt in slots:
            if bits & slt.bit:
                raise ValueError(f'FockBasisState: slot {slt} given twice')
            bits |= slt.bit
        return cls(bits)

    @classmethod
    def from_labels(cls, alice: str = '0', region_i: str = '0', region_iv: str = '0'):
        """
        Build the basis state from the local labels of each subsystem

        Parameters
        ----------
        alice
            one of '0', 'u', 'd', 'ud'
        region_i
            one of '0', 'u', 'd', 'ud'
        region_iv
            one of '0', 'u', 'd', 'ud'

        Returns
        -------
        FockBasisState
            the basis state with those local occupations
        """

        bits = 0
        for sub, label in zip(Subsystem, (alice, region_i, region_iv)):
            if label not in LOCAL_LABELS:
                raise ValueError(f'FockBasisState: unknown local label {label!r}, expected one of {LOCAL_LABELS}')
            local = LOCAL_LABELS.index(label)
            bits |= local << (2 * list(Subsystem).index(sub))
        return cls(bits)

    def is_occupied(self, slot: Slot) -> bool:
        return bool(self.bits & slot.bit)

    @property
    def occupied_slots(self):
        return tuple(slt for slt in SLOTS if self.is_occupied(slt))

    def local_index(self, subsystem: Subsystem) -> int:
        return (self.bits >> (2 * list(Subsystem).index(subsystem))) & 0b11

    def local_label(self, subsystem: Subsystem) -> str:
        return LOCAL_LABELS[self.local_index(subsystem)]

    def occupied_before(self, slot: Slot) -> int:
        """
        Number of occupied slots strictly preceding slot in the canonical order
        """
        return bin(self.bits & (slot.bit - 1)).count('1')

    def __str__(self):
        return '|' + ','.join(self.local_label(sub) for sub in Subsystem) + '>'


def _jordan_wigner_sign(basis: FockBasisState, slot: Slot) -> int:
    return -1 if basis.occupied_before(slot) % 2 else 1


def _prune(amplitudes: Mapping[FockBasisState, complex]) -> dict:
    return {bas: complex(amp) for bas, amp in amplitudes.items() if abs(amp) >= sweep_variables.amplitude_prune}


@dataclass(frozen=True, eq=False)
class StateVector:
    """
    Sparse superposition of Fock basis states, absent keys have amplitude zero.  Immutable, arithmetic returns new
    vectors.
    """
    amplitudes: Mapping[FockBasisState, complex] = field(default_factory=dict)
    # numpy scalars defer to __rmul__
    __array_ufunc__ = None

    def __post_init__(self):
        object.__setattr__(self, 'amplitudes', MappingProxyType(_prune(self.amplitudes)))

    @classmethod
    def basis(cls, basis: FockBasisState, amplitude: complex = 1.0):
        return cls({basis: amplitude})

    def amplitude(self, basis: FockBasisState) -> complex:
        return self.amplitudes.get(basis, 0j)

    @property
    def support(self):
        return tuple(self.amplitudes.keys())

    def is_zero(self) -> bool:
        return not self.amplitudes

    def __add__(self, other):
        if not isinstance(other, StateVector):
            return NotImplemented
        summed = dict(self.amplitudes)
        for bas, amp in other.amplitudes.items():
            summed[bas] = summed.get(bas, 0j) + amp
        return StateVector(summed)

    def __sub__(self, other):
        if not isinstance(other, StateVector):
            return NotImplemented
        return self + (-1.0) * other

    def __mul__(self, scalar: Union[complex, float]):
        if not isinstance(scalar, (int, float, complex, np.number)):
            return NotImplemented
        return StateVector({bas: scalar * amp for bas, amp in self.amplitudes.items()})

    __rmul__ = __mul__

    def norm(self) -> float:
        return float(np.sqrt(sum(abs(amp) ** 2 for amp in self.amplitudes.values())))

    def normalize(self):
        nrm = self.norm()
        if nrm == 0.0:
            raise ValueError('StateVector.normalize: the zero vector can not be normalized')
        return (1.0 / nrm) * self

    def isclose(self, other, atol: float = 1e-12) -> bool:
        return (self - other).norm() <= atol

    def to_array(self, subsystems: Iterable[Subsystem] = tuple(Subsystem)) -> np.ndarray:
        """
        Dense amplitudes in the tensor order of the given subsystems, each factor in the LOCAL_LABELS order.  The
        canonical slot order makes this tensor embedding sign free, provided subsystems are listed in canonical
        order.

        Parameters
        ----------
        subsystems
            the subsystems to keep, in canonical order.  Any omitted subsystem must be empty on the whole support.

        Returns
        -------
        np.ndarray
            complex vector of length 4 ** len(subsystems)
        """

        subsystems = tuple(subsystems)
        order = [list(Subsystem).index(sub) for sub in subsystems]
        if order != sorted(order) or len(set(order)) != len(order):
            raise ValueError(f'StateVector.to_array: subsystems must be distinct and in canonical order, got {subsystems}')
        dropped = [sub for sub in Subsystem if sub not in subsystems]
        vec = np.zeros(4 ** len(subsystems), dtype=complex)
        for bas, amp in self.amplitudes.items():
            if any(bas.local_index(sub) for sub in dropped):
                raise ValueError(f'StateVector.to_array: {bas} is occupied in a subsystem outside {subsystems}')
            idx = 0
            for sub in subsystems:
                idx = idx * 4 + bas.local_index(sub)
            vec[idx] += amp
        return vec

    def __str__(self):
        if not self.amplitudes:
            return '0'
        return ' + '.join(f'({amp:.6g}){bas}' for bas, amp in sorted(self.amplitudes.items(), key=lambda x: x[0].bits))


def vacuum() -> StateVector:
    return StateVector.basis(FockBasisState(0))


def apply_creation(state: StateVector, slot: Slot) -> StateVector:
    """
    Apply the creator of slot.  Basis states with the slot empty pick up (-1) ** (occupied slots before it), basis
    states with the slot filled are annihilated (Pauli).

    Parameters
    ----------
    state
        the state to act on
    slot
        the slot to fill

    Returns
    -------
    StateVector
        the resulting (possibly zero) vector
    """

    result = {}
    for bas, amp in state.amplitudes.items():
        if bas.is_occupied(slot):
            continue
        result[FockBasisState(bas.bits | slot.bit)] = _jordan_wigner_sign(bas, slot) * amp
    return StateVector(result)


def apply_annihilation(state: StateVector, slot: Slot) -> StateVector:
    """
    Apply the annihilator of slot, the adjoint of apply_creation with the same sign rule.

    Parameters
    ----------
    state
        the state to act on
    slot
        the slot to empty

    Returns
    -------
    StateVector
        the resulting (possibly zero) vector
    """

    result = {}
    for bas, amp in state.amplitudes.items():
        if not bas.is_occupied(slot):
            continue
        result[FockBasisState(bas.bits & ~slot.bit)] = _jordan_wigner_sign(bas, slot) * amp
    return StateVector(result)


def inner_product(a: StateVector, b: StateVector) -> complex:
    """
    <a|b>, conjugate linear in the first argument
    """
    return complex(sum(np.conj(amp) * b.amplitude(bas) for bas, amp in a.amplitudes.items()))


def slot(subsystem: Subsystem, spin: Spin) -> Slot:
    return SLOTS[Slot(subsystem, spin).index]
