import logging
import itertools
from dataclasses import dataclass
from string import ascii_letters
from typing import Iterable, Sequence, Tuple, Union

import numpy as np
from scipy.special import entr

from spin_unruh import sweep_variables
from spin_unruh.fock import LOCAL_LABELS, StateVector, Subsystem


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """
    Density matrix carrying its labeled tensor basis.  The basis is the product of the local bases of the subsystems,
    in the order the subsystems are listed, so partial operations can address subsystems by name.

    Parameters
    ----------
    subsystems
        subsystem names, ex: ('A', 'I')
    local_bases
        one tuple of basis labels per subsystem, ex: (('0', 'u', 'd', 'ud'), ('0', 'u', 'd', 'ud'))
    matrix
        square complex matrix over the product basis
    """

    subsystems: Tuple[str, ...]
    local_bases: Tuple[Tuple[str, ...], ...]
    matrix: np.ndarray
    __array_ufunc__ = None

    def __post_init__(self):
        subsystems = tuple(self.subsystems)
        local_bases = tuple(tuple(lb) for lb in self.local_bases)
        if len(subsystems) != len(local_bases):
            raise ValueError(f'DensityMatrix: {len(subsystems)} subsystems given with {len(local_bases)} local bases')
        if len(set(subsystems)) != len(subsystems):
            raise ValueError(f'DensityMatrix: repeated subsystem name in {subsystems}')
        matrix = np.array(self.matrix, dtype=complex)
        dim = int(np.prod([len(lb) for lb in local_bases]))
        if matrix.shape != (dim, dim):
            raise ValueError(f'DensityMatrix: matrix shape {matrix.shape} does not match the basis dimension {dim}')
        matrix.setflags(write=False)
        object.__setattr__(self, 'subsystems', subsystems)
        object.__setattr__(self, 'local_bases', local_bases)
        object.__setattr__(self, 'matrix', matrix)

    @classmethod
    def zeros_like(cls, other):
        return cls(other.subsystems, other.local_bases, np.zeros_like(other.matrix))

    @classmethod
    def from_vector(cls, vec: np.ndarray, subsystems: Sequence[str], local_bases: Sequence[Sequence[str]]):
        """
        |vec><vec| over the given labeled basis, no normalization check
        """
        vec = np.asarray(vec, dtype=complex)
        return cls(tuple(subsystems), tuple(local_bases), np.outer(vec, vec.conj()))

    @property
    def dims(self) -> Tuple[int, ...]:
        return tuple(len(lb) for lb in self.local_bases)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def basis(self):
        """
        Product basis as label tuples, in matrix index order
        """
        return list(itertools.product(*self.local_bases))

    def index_of(self, labels: Union[str, Sequence[str]]) -> int:
        if isinstance(labels, str):
            labels = (labels,)
        labels = tuple(labels)
        if len(labels) != len(self.subsystems):
            raise ValueError(f'DensityMatrix: {labels} does not name one label per subsystem of {self.subsystems}')
        idx = 0
        for label, lb in zip(labels, self.local_bases):
            if label not in lb:
                raise ValueError(f'DensityMatrix: unknown label {label!r}, expected one of {lb}')
            idx = idx * len(lb) + lb.index(label)
        return idx

    def element(self, ket: Union[str, Sequence[str]], bra: Union[str, Sequence[str]]) -> complex:
        """
        <ket|rho|bra>
        """
        return complex(self.matrix[self.index_of(ket), self.index_of(bra)])

    def trace(self) -> complex:
        return complex(np.trace(self.matrix))

    def purity(self) -> float:
        return float(np.real(np.trace(self.matrix @ self.matrix)))

    def is_hermitian(self, atol: float = None) -> bool:
        if atol is None:
            atol = sweep_variables.hermitian_tolerance
        return bool(np.allclose(self.matrix, self.matrix.conj().T, atol=atol, rtol=0))

    def check_physical(self, atol: float = 1e-12):
        """
        Raise ValueError unless the matrix is Hermitian, has unit trace and no eigenvalue below
        negative_eigenvalue_threshold.
        """
        if not self.is_hermitian(atol):
            raise ValueError('DensityMatrix: matrix is not Hermitian')
        if abs(self.trace() - 1) > atol:
            raise ValueError(f'DensityMatrix: trace is {self.trace()}, expected 1')
        lowest = hermitian_eigenvalues(self)[0]
        if lowest < sweep_variables.negative_eigenvalue_threshold:
            raise ValueError(f'DensityMatrix: eigenvalue {lowest} is negative, not a physical state')

    def adjoint(self):
        return DensityMatrix(self.subsystems, self.local_bases, self.matrix.conj().T)

    def _check_compatible(self, other):
        if self.subsystems != other.subsystems or self.local_bases != other.local_bases:
            raise ValueError(f'DensityMatrix: basis mismatch, {self.subsystems} vs {other.subsystems}')

    def __add__(self, other):
        if not isinstance(other, DensityMatrix):
            return NotImplemented
        self._check_compatible(other)
        return DensityMatrix(self.subsystems, self.local_bases, self.matrix + other.matrix)

    def __sub__(self, other):
        if not isinstance(other, DensityMatrix):
            return NotImplemented
        self._check_compatible(other)
        return DensityMatrix(self.subsystems, self.local_bases, self.matrix - other.matrix)

    def __mul__(self, scalar):
        if not isinstance(scalar, (int, float, complex, np.number)):
            return NotImplemented
        return DensityMatrix(self.subsystems, self.local_bases, scalar * self.matrix)

    __rmul__ = __mul__


def from_pure(state: StateVector, subsystems: Iterable[Subsystem] = tuple(Subsystem)) -> DensityMatrix:
    """
    Projector onto a normalized Fock state, expanded over the tensor basis of the given subsystems

    Parameters
    ----------
    state
        unit norm state vector
    subsystems
        the subsystems spanning the state, in canonical order, the others must be empty

    Returns
    -------
    DensityMatrix
        |state><state| with subsystem names 'A', 'I', 'IV' and the LOCAL_LABELS basis for each
    """

    nrm = state.norm()
    if abs(nrm - 1.0) > sweep_variables.normalization_tolerance:
        raise ValueError(f'from_pure: state has norm {nrm}, expected a normalized state')
    subsystems = tuple(subsystems)
    vec = state.to_array(subsystems)
    return DensityMatrix.from_vector(vec, [sub.value for sub in subsystems], [LOCAL_LABELS] * len(subsystems))


def _subsystem_positions(rho: DensityMatrix, names: Iterable[str], caller: str):
    names = [names] if isinstance(names, str) else list(names)
    missing = [nm for nm in names if nm not in rho.subsystems]
    if missing:
        raise ValueError(f'{caller}: subsystems {missing} are not in {rho.subsystems}')
    return sorted(rho.subsystems.index(nm) for nm in set(names))


def partial_trace(rho: DensityMatrix, keep: Iterable[str]) -> DensityMatrix:
    """
    Trace out every subsystem not in keep.  Kept subsystems stay in the order rho lists them.

    Parameters
    ----------
    rho
        density matrix over a tensor product basis
    keep
        names of the subsystems to keep

    Returns
    -------
    DensityMatrix
        reduced density matrix over the kept subsystems
    """

    kept = _subsystem_positions(rho, keep, 'partial_trace')
    if not kept:
        raise ValueError('partial_trace: keep must name at least one subsystem')
    count = len(rho.subsystems)
    kets = ascii_letters[:count]
    bras = [kets[i] if i not in kept else ascii_letters[count + i] for i in range(count)]
    out = ''.join(kets[i] for i in kept) + ''.join(bras[i] for i in kept)
    tensor = rho.matrix.reshape(rho.dims + rho.dims)
    reduced = np.einsum(f'{kets}{"".join(bras)}->{out}', tensor)
    dim = int(np.prod([rho.dims[i] for i in kept]))
    return DensityMatrix(tuple(rho.subsystems[i] for i in kept), tuple(rho.local_bases[i] for i in kept),
                         reduced.reshape(dim, dim))


def partial_transpose(rho: DensityMatrix, subsystem: str) -> DensityMatrix:
    """
    Transpose the ket and bra indices of one subsystem
    """
    pos = _subsystem_positions(rho, subsystem, 'partial_transpose')[0]
    count = len(rho.subsystems)
    tensor = rho.matrix.reshape(rho.dims + rho.dims)
    tensor = np.swapaxes(tensor, pos, count + pos)
    return DensityMatrix(rho.subsystems, rho.local_bases, tensor.reshape(rho.dim, rho.dim))


def hermitian_eigenvalues(m: Union[DensityMatrix, np.ndarray]) -> np.ndarray:
    """
    Real eigenvalues of a Hermitian matrix in ascending order

    Parameters
    ----------
    m
        Hermitian matrix (to hermitian_tolerance) or a DensityMatrix

    Returns
    -------
    np.ndarray
        ascending real eigenvalues
    """

    if isinstance(m, DensityMatrix):
        m = m.matrix
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f'hermitian_eigenvalues: expected a square matrix, got shape {m.shape}')
    if not np.allclose(m, m.conj().T, atol=sweep_variables.hermitian_tolerance, rtol=0):
        raise ValueError('hermitian_eigenvalues: matrix is not Hermitian')
    return np.linalg.eigvalsh(m)


def von_neumann_entropy(rho: DensityMatrix) -> float:
    """
    Von Neumann entropy in bits, with 0 log 0 = 0.  Eigenvalues between entropy_negative_floor and 0 are eigensolver
    noise and count as 0.

    Parameters
    ----------
    rho
        physical density matrix

    Returns
    -------
    float
        -sum(lambda * log2(lambda))
    """

    eigs = hermitian_eigenvalues(rho)
    if eigs[0] < sweep_variables.entropy_negative_floor:
        raise ValueError(f'von_neumann_entropy: eigenvalue {eigs[0]} is below {sweep_variables.entropy_negative_floor}, '
                         f'not a physical state')
    eigs = np.clip(eigs, 0.0, None)
    return float(np.sum(entr(eigs)) / np.log(2))


# Minkowski labels of Alice and of Rob's particle, used by the region IV trace forms
MINKOWSKI_LABELS = ('0', 'u', 'd')
RINDLER_AR_SUBSYSTEMS = (Subsystem.ALICE.value, Subsystem.REGION_I.value)


@dataclass(frozen=True)
class OperatorPair:
    """
    |ket><bra| with ket and bra given as (alice, rob) Minkowski labels, ex: OperatorPair(('0', '0'), ('u', 'd')) for
    |0,0><up,down|
    """
    ket: Tuple[str, str]
    bra: Tuple[str, str]

    def __post_init__(self):
        for side in (self.ket, self.bra):
            if len(side) != 2 or any(lbl not in MINKOWSKI_LABELS for lbl in side):
                raise ValueError(f'OperatorPair: {side} is not an (alice, rob) pair of labels in {MINKOWSKI_LABELS}')

    def adjoint(self):
        return OperatorPair(self.bra, self.ket)

    @property
    def is_vacuum_ket(self) -> bool:
        return self.ket == ('0', '0')

    @property
    def is_vacuum_bra(self) -> bool:
        return self.bra == ('0', '0')

    def __str__(self):
        return f'|{",".join(self.ket)}><{",".join(self.bra)}|'


def _is_particle_pair(side: Tuple[str, str]) -> bool:
    return side[0] != '0' and side[1] != '0'


def _ar_outer(ket: Tuple[str, str], bra: Tuple[str, str]) -> np.ndarray:
    out = np.zeros((16, 16), dtype=complex)
    ket_idx = LOCAL_LABELS.index(ket[0]) * 4 + LOCAL_LABELS.index(ket[1])
    bra_idx = LOCAL_LABELS.index(bra[0]) * 4 + LOCAL_LABELS.index(bra[1])
    out[ket_idx, bra_idx] = 1.0
    return out


def partial_trace_region_iv_closed_form(term: OperatorPair, r: float, phi: float = 0.0) -> DensityMatrix:
    """
    Region IV trace of one Minkowski operator |a,b><c,d| after Rob's mode is written in Rindler coordinates, in closed
    form.  Three shapes are handled, plus the adjoint of the mixed one:

        Tr_IV |0,0><0,0|   = cos^4 r |0,0><0,0| + sin^2 r cos^2 r (|0,u><0,u| + |0,d><0,d|) + sin^4 r |0,ud><0,ud|
        Tr_IV |0,0><s,s'|  = cos^3 r |0,0><s,s'| + sin^2 r cos r (d_{s'u} |0,d><s,ud| - d_{s'd} |0,u><s,ud|)
        Tr_IV |s1,s2><s3,s4| = cos^2 r |s1,s2><s3,s4| + d_{s2s4} sin^2 r |s1,ud><s3,ud|

    The phase phi cancels in every form, it is accepted so callers can pass the squeezing parameters through.

    Parameters
    ----------
    term
        the operator pair to trace
    r
        squeezing angle
    phi
        Bogoliubov phase

    Returns
    -------
    DensityMatrix
        the contribution over Alice x region I, 16 x 16
    """

    cos_r, sin_r = np.cos(r), np.sin(r)
    if term.is_vacuum_ket and term.is_vacuum_bra:
        mat = (cos_r ** 4 * _ar_outer(('0', '0'), ('0', '0')) +
               sin_r ** 2 * cos_r ** 2 * (_ar_outer(('0', 'u'), ('0', 'u')) + _ar_outer(('0', 'd'), ('0', 'd'))) +
               sin_r ** 4 * _ar_outer(('0', 'ud'), ('0', 'ud')))
    elif term.is_vacuum_ket and _is_particle_pair(term.bra):
        alice, rob = term.bra
        mat = cos_r ** 3 * _ar_outer(('0', '0'), term.bra)
        if rob == 'u':
            mat = mat + sin_r ** 2 * cos_r * _ar_outer(('0', 'd'), (alice, 'ud'))
        else:
            mat = mat - sin_r ** 2 * cos_r * _ar_outer(('0', 'u'), (alice, 'ud'))
    elif term.is_vacuum_bra and _is_particle_pair(term.ket):
        return partial_trace_region_iv_closed_form(term.adjoint(), r, phi).adjoint()
    elif _is_particle_pair(term.ket) and _is_particle_pair(term.bra):
        mat = cos_r ** 2 * _ar_outer(term.ket, term.bra)
        if term.ket[1] == term.bra[1]:
            mat = mat + sin_r ** 2 * _ar_outer((term.ket[0], 'ud'), (term.bra[0], 'ud'))
    else:
        raise ValueError(f'partial_trace_region_iv_closed_form: {term} mixes an empty and an occupied party, no '
                         f'closed form for this shape')
    logger = logging.getLogger(sweep_variables.logger_name)
    logger.log(logging.DEBUG, f'partial_trace_region_iv_closed_form: {term} at r={r}')
    return DensityMatrix(RINDLER_AR_SUBSYSTEMS, (LOCAL_LABELS, LOCAL_LABELS), mat)
