import numpy as np
import pytest

from spin_unruh import density, fock, rindler
from spin_unruh.density import DensityMatrix, OperatorPair
from spin_unruh.entanglement import StateParams, build_general_state
from spin_unruh.fock import LOCAL_LABELS, FockBasisState, StateVector, Subsystem
from spin_unruh.rindler import SqueezingParams

REGIONS = (Subsystem.REGION_I, Subsystem.REGION_IV)
AR = ('A', 'I')


def _random_hermitian(rng, size: int) -> np.ndarray:
    mat = rng.normal(size=(size, size)) + 1j * rng.normal(size=(size, size))
    return (mat + mat.conj().T) / 2


def _ar_matrix(entries: dict) -> np.ndarray:
    mat = np.zeros((16, 16), dtype=complex)
    for (ket, bra), value in entries.items():
        mat[LOCAL_LABELS.index(ket[0]) * 4 + LOCAL_LABELS.index(ket[1]),
            LOCAL_LABELS.index(bra[0]) * 4 + LOCAL_LABELS.index(bra[1])] = value
    return mat


def test_from_pure_vacuum_projector():
    rho = density.from_pure(fock.vacuum())
    assert rho.dim == 64
    assert rho.element(('0', '0', '0'), ('0', '0', '0')) == pytest.approx(1.0)
    assert rho.purity() == pytest.approx(1.0)


def test_from_pure_rejects_unnormalized_state():
    with pytest.raises(ValueError):
        density.from_pure(2.0 * fock.vacuum())


def test_from_pure_rindler_vacuum_is_pure():
    rho = density.from_pure(rindler.build_rindler_vacuum(SqueezingParams(np.pi / 6)), subsystems=REGIONS)
    assert rho.dim == 16
    assert rho.purity() == pytest.approx(1.0, abs=1e-14)
    assert rho.is_hermitian()


def test_density_matrix_rejects_shape_mismatch():
    with pytest.raises(ValueError):
        DensityMatrix(('A',), (LOCAL_LABELS,), np.eye(3))


@pytest.mark.parametrize('r', [0.0, 0.3, np.pi / 6, np.pi / 4])
def test_partial_trace_of_rindler_vacuum(r):
    rho = density.from_pure(rindler.build_rindler_vacuum(SqueezingParams(r, 0.8)), subsystems=REGIONS)
    rho_i = density.partial_trace(rho, keep=('I',))
    c, s = np.cos(r), np.sin(r)
    np.testing.assert_allclose(rho_i.matrix, np.diag([c ** 4, s ** 2 * c ** 2, s ** 2 * c ** 2, s ** 4]), atol=1e-15)
    assert rho_i.trace() == pytest.approx(1.0)


def test_partial_trace_of_product_state(rng):
    alice = rng.normal(size=4) + 1j * rng.normal(size=4)
    rob = rng.normal(size=4) + 1j * rng.normal(size=4)
    alice, rob = alice / np.linalg.norm(alice), rob / np.linalg.norm(rob)
    rho = DensityMatrix.from_vector(np.kron(alice, rob), AR, (LOCAL_LABELS, LOCAL_LABELS))
    np.testing.assert_allclose(density.partial_trace(rho, keep=('A',)).matrix, np.outer(alice, alice.conj()),
                               atol=1e-14)
    np.testing.assert_allclose(density.partial_trace(rho, keep=('I',)).matrix, np.outer(rob, rob.conj()),
                               atol=1e-14)


def test_partial_trace_bell_alice_is_maximally_mixed():
    state = build_general_state(StateParams.bell('phi+'), SqueezingParams(0.0))
    rho_a = density.partial_trace(density.from_pure(state), keep=('A',))
    assert rho_a.element('u', 'u') == pytest.approx(0.5)
    assert rho_a.element('d', 'd') == pytest.approx(0.5)
    assert density.von_neumann_entropy(rho_a) == pytest.approx(1.0)


def test_partial_trace_keeps_listed_order():
    rho = density.from_pure(fock.vacuum())
    reduced = density.partial_trace(rho, keep=('IV', 'A'))
    assert reduced.subsystems == ('A', 'IV')


def test_partial_trace_rejects_unknown_subsystem():
    rho = density.from_pure(fock.vacuum())
    with pytest.raises(ValueError):
        density.partial_trace(rho, keep=('B',))
    with pytest.raises(ValueError):
        density.partial_trace(rho, keep=())


def test_partial_transpose_involution_and_trace(rng):
    mat = _random_hermitian(rng, 16)
    rho = DensityMatrix(AR, (LOCAL_LABELS, LOCAL_LABELS), mat / np.trace(mat))
    pt = density.partial_transpose(rho, 'I')
    assert pt.is_hermitian()
    assert pt.trace() == pytest.approx(rho.trace())
    np.testing.assert_allclose(density.partial_transpose(pt, 'I').matrix, rho.matrix, atol=1e-15)


def test_partial_transpose_moves_rob_indices():
    mat = _ar_matrix({(('0', '0'), ('u', 'd')): 1.0})
    rho = DensityMatrix(AR, (LOCAL_LABELS, LOCAL_LABELS), mat)
    pt = density.partial_transpose(rho, 'I')
    assert pt.element(('0', 'd'), ('u', '0')) == 1.0
    assert pt.element(('0', '0'), ('u', 'd')) == 0.0


def test_partial_transpose_of_product_state_keeps_spectrum(rng):
    alice = rng.normal(size=4)
    rob = rng.normal(size=4) + 1j * rng.normal(size=4)
    vec = np.kron(alice / np.linalg.norm(alice), rob / np.linalg.norm(rob))
    rho = DensityMatrix.from_vector(vec, AR, (LOCAL_LABELS, LOCAL_LABELS))
    np.testing.assert_allclose(density.hermitian_eigenvalues(density.partial_transpose(rho, 'I')),
                               density.hermitian_eigenvalues(rho), atol=1e-14)


def test_hermitian_eigenvalues_diagonal():
    np.testing.assert_allclose(density.hermitian_eigenvalues(np.diag([0.7, -0.2])), [-0.2, 0.7])


def test_hermitian_eigenvalues_against_characteristic_polynomial(rng):
    unitary, _ = np.linalg.qr(rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6)))
    spectrum = np.array([-2.5, -1.0, 0.3, 1.1, 2.0, 3.7])
    mat = unitary @ np.diag(spectrum) @ unitary.conj().T
    mat = (mat + mat.conj().T) / 2
    roots = np.sort(np.real(np.roots(np.poly(mat))))
    np.testing.assert_allclose(density.hermitian_eigenvalues(mat), roots, atol=1e-9)
    np.testing.assert_allclose(density.hermitian_eigenvalues(mat), spectrum, atol=1e-12)


def test_hermitian_eigenvalues_rejects_non_hermitian():
    with pytest.raises(ValueError):
        density.hermitian_eigenvalues(np.array([[0, 1], [0, 0]]))


def test_von_neumann_entropy_values():
    pure = DensityMatrix(('A',), (('u', 'd'),), np.diag([1.0, 0.0]))
    mixed = DensityMatrix(('A',), (('u', 'd'),), np.eye(2) / 2)
    assert density.von_neumann_entropy(pure) == 0.0
    assert density.von_neumann_entropy(mixed) == pytest.approx(1.0)


def test_von_neumann_entropy_clamps_noise_and_rejects_negative():
    noisy = DensityMatrix(('A',), (('u', 'd'),), np.diag([1.0 + 1e-12, -1e-12]))
    assert density.von_neumann_entropy(noisy) == pytest.approx(0.0, abs=1e-10)
    unphysical = DensityMatrix(('A',), (('u', 'd'),), np.diag([1.1, -0.1]))
    with pytest.raises(ValueError):
        density.von_neumann_entropy(unphysical)


def test_check_physical():
    density.from_pure(fock.vacuum()).check_physical()
    with pytest.raises(ValueError):
        DensityMatrix(('A',), (('u', 'd'),), np.diag([1.1, -0.1])).check_physical()
    with pytest.raises(ValueError):
        DensityMatrix(('A',), (('u', 'd'),), np.diag([0.3, 0.3])).check_physical()


def test_closed_form_vacuum_term():
    r = 0.4
    c, s = np.cos(r), np.sin(r)
    contribution = density.partial_trace_region_iv_closed_form(OperatorPair(('0', '0'), ('0', '0')), r)
    expected = _ar_matrix({(('0', '0'), ('0', '0')): c ** 4, (('0', 'u'), ('0', 'u')): s ** 2 * c ** 2,
                           (('0', 'd'), ('0', 'd')): s ** 2 * c ** 2, (('0', 'ud'), ('0', 'ud')): s ** 4})
    np.testing.assert_allclose(contribution.matrix, expected, atol=1e-15)


def test_closed_form_particle_pair_term():
    r = 0.4
    c, s = np.cos(r), np.sin(r)
    contribution = density.partial_trace_region_iv_closed_form(OperatorPair(('u', 'u'), ('d', 'd')), r)
    expected = _ar_matrix({(('u', 'u'), ('d', 'd')): c ** 2})
    np.testing.assert_allclose(contribution.matrix, expected, atol=1e-15)
    contribution = density.partial_trace_region_iv_closed_form(OperatorPair(('u', 'd'), ('u', 'd')), r)
    expected = _ar_matrix({(('u', 'd'), ('u', 'd')): c ** 2, (('u', 'ud'), ('u', 'ud')): s ** 2})
    np.testing.assert_allclose(contribution.matrix, expected, atol=1e-15)


def test_closed_form_mixed_term_and_adjoint():
    r = 0.4
    c, s = np.cos(r), np.sin(r)
    contribution = density.partial_trace_region_iv_closed_form(OperatorPair(('0', '0'), ('d', 'd')), r, 1.2)
    expected = _ar_matrix({(('0', '0'), ('d', 'd')): c ** 3, (('0', 'u'), ('d', 'ud')): -s ** 2 * c})
    np.testing.assert_allclose(contribution.matrix, expected, atol=1e-15)
    contribution = density.partial_trace_region_iv_closed_form(OperatorPair(('0', '0'), ('u', 'u')), r)
    expected = _ar_matrix({(('0', '0'), ('u', 'u')): c ** 3, (('0', 'd'), ('u', 'ud')): s ** 2 * c})
    np.testing.assert_allclose(contribution.matrix, expected, atol=1e-15)
    adjoint = density.partial_trace_region_iv_closed_form(OperatorPair(('u', 'u'), ('0', '0')), r)
    np.testing.assert_allclose(adjoint.matrix, expected.conj().T, atol=1e-15)


@pytest.mark.parametrize('ket, bra', [(('0', 'u'), ('0', '0')), (('u', '0'), ('u', 'u')), (('0', '0'), ('0', 'd'))])
def test_closed_form_rejects_other_shapes(ket, bra):
    with pytest.raises(ValueError):
        density.partial_trace_region_iv_closed_form(OperatorPair(ket, bra), 0.3)


def test_operator_pair_rejects_unknown_labels():
    with pytest.raises(ValueError):
        OperatorPair(('ud', '0'), ('0', '0'))


def test_closed_form_terms_match_numeric_trace():
    p = SqueezingParams(0.55, 2.0)
    rob_states = {'0': rindler.build_rindler_vacuum(p), 'u': rindler.build_one_particle(p, fock.Spin.UP),
                  'd': rindler.build_one_particle(p, fock.Spin.DOWN)}

    def full(labels):
        alice, rob = labels
        state = rob_states[rob]
        if alice != '0':
            state = fock.apply_creation(state, fock.slot(Subsystem.ALICE, fock.Spin(alice)))
        return state.to_array()

    for ket in [('0', '0'), ('u', 'u'), ('u', 'd'), ('d', 'u'), ('d', 'd')]:
        for bra in [('0', '0'), ('u', 'u'), ('u', 'd'), ('d', 'u'), ('d', 'd')]:
            operator = DensityMatrix(('A', 'I', 'IV'), (LOCAL_LABELS,) * 3, np.outer(full(ket), full(bra).conj()))
            numeric = density.partial_trace(operator, keep=AR)
            closed = density.partial_trace_region_iv_closed_form(OperatorPair(ket, bra), p.r, p.phi)
            np.testing.assert_allclose(numeric.matrix, closed.matrix, atol=1e-12)


def test_density_matrix_arithmetic():
    one = DensityMatrix(('A',), (('u', 'd'),), np.eye(2))
    two = one + one
    assert two.trace() == pytest.approx(4.0)
    assert (two - one).trace() == pytest.approx(2.0)
    assert (np.float64(0.5) * one).trace() == pytest.approx(1.0)
    other = DensityMatrix(('B',), (('u', 'd'),), np.eye(2))
    with pytest.raises(ValueError):
        one + other


def test_from_pure_labels_alice_and_region_i():
    vec = StateVector.basis(FockBasisState.from_labels(alice='u', region_i='d'))
    rho = density.from_pure(vec)
    assert rho.element(('u', 'd', '0'), ('u', 'd', '0')) == pytest.approx(1.0)
