import numpy as np
import pytest
from fractions import Fraction
from dfsloss.dfs import (LogicalAmplitudes, balanced_support_check, basis_routing, dfs_basis, inverse_routing,
                         invariant_null_space, is_in_dfs, multiplicity, multiplicity_table, random_dfs_state,
                         singlet_product, su_generators, trine_gram, trivial_multiplicity, verify_invariance, xi,
                         xi_perp)
from dfsloss.examples import _TestsExampleStates
from dfsloss.exceptions import (DfsDimensionMismatchException, InvalidPairingException,
                                NoDecoherenceFreeSubspaceException, NotNormalizedException)
from dfsloss.qcore import PureState, basis_state, inner, permute_sites
from dfsloss.tests.conftest import assert_same_ray, bratteli_paths


# # Multiplicities

# +
@pytest.mark.parametrize('n', range(0, 11))
def test_multiplicity_matches_path_counting(_, n):
    expected = bratteli_paths(n)
    table = multiplicity_table(n)
    assert {two_j: k for two_j, k in table.entries.items() if k} == expected
    assert table.completeness() == 2 ** n


@pytest.mark.parametrize('n', [2, 4, 6, 8])
def test_odd_half_spin_equals_even_singlets(_, n):
    assert multiplicity(n - 1, Fraction(1, 2)) == multiplicity(n, 0)


@pytest.mark.parametrize('n, j, expected', [(4, 0, 2), (3, 0.5, 2), (2, 1, 1), (4, 0.5, 0), (4, 3, 0)])
def test_multiplicity_values(_, n, j, expected):
    assert multiplicity(n, j) == expected


@pytest.mark.parametrize('n, j', [(-1, 0), (4, -1), (4, 0.3), (4.0, 0)])
def test_multiplicity_bad_arguments(_, n, j):
    with pytest.raises((TypeError, ValueError)):
        multiplicity(n, j)


def test_multiplicity_frame(_):
    frame = multiplicity_table(3).to_frame()
    assert frame.index.tolist() == [0.5, 1.5]
    assert frame['multiplicity'].tolist() == [2, 1]
    assert frame['dimension'].tolist() == [2, 4]


@pytest.mark.parametrize('num_sites, local_dim, expected', [(2, 2, 1), (4, 2, 2), (6, 2, 5), (8, 2, 14), (3, 3, 1),
                                                            (6, 3, 5), (4, 4, 1), (5, 2, 0)])
def test_trivial_multiplicity(_, num_sites, local_dim, expected):
    assert trivial_multiplicity(num_sites, local_dim) == expected


# -

# # Singlets and the trine

# +
def test_singlet_product_pairings(_):
    np.testing.assert_allclose(singlet_product([(1, 2), (3, 4)]).amplitudes, xi(1).amplitudes)
    np.testing.assert_allclose(singlet_product([(1, 4), (2, 3)]).amplitudes, xi(3).amplitudes)
    # swapping the sites of a pair only flips the sign
    assert abs(inner(singlet_product([(2, 1)]), singlet_product([(1, 2)])) + 1) < 1e-12


@pytest.mark.parametrize('pairing', [[(1, 2), (2, 3)], [(1, 2), (4, 5)], [(1, 3)], [], [(1, 2, 3)]])
def test_singlet_product_bad_pairing(_, pairing):
    with pytest.raises(InvalidPairingException):
        singlet_product(pairing)


def test_trine_gram(_):
    expected = np.array([[1, -0.5, -0.5], [-0.5, 1, -0.5], [-0.5, -0.5, 1]])
    np.testing.assert_allclose(trine_gram(), expected, atol=1e-12)


def test_trine_is_overcomplete(_):
    states = np.stack([xi(k).amplitudes for k in (1, 2, 3)], axis=1)
    assert np.linalg.matrix_rank(states, tol=1e-10) == 2
    basis = dfs_basis(4, 2)
    for k in (1, 2, 3):
        assert basis.residual(xi(k)) < 1e-10


def test_xi_perp(_):
    perp = xi_perp(1)
    assert abs(inner(xi(1), perp)) < 1e-12
    assert abs(perp.amplitudes[0b0011] - 1 / np.sqrt(3)) < 1e-12
    assert abs(perp.amplitudes[0b1100] - 1 / np.sqrt(3)) < 1e-12
    assert verify_invariance(perp, trials=100, seed=3).passed
    # relation with the other trine states
    np.testing.assert_allclose(perp.amplitudes, (2 * xi(3).amplitudes + xi(1).amplitudes) / np.sqrt(3), atol=1e-12)


@pytest.mark.parametrize('k', [1, 2, 3])
def test_routing_maps_basis_onto_xi1(_, k):
    routing = basis_routing(k)
    np.testing.assert_allclose(permute_sites(xi(k), routing).amplitudes, xi(1).amplitudes, atol=1e-14)
    np.testing.assert_allclose(permute_sites(xi_perp(k), routing).amplitudes, xi_perp(1).amplitudes, atol=1e-14)
    assert abs(inner(xi(k), xi_perp(k))) < 1e-12
    assert tuple(permute_sites(permute_sites(xi(1), inverse_routing(routing)), routing).amplitudes) == \
        tuple(xi(1).amplitudes)


def test_bad_basis_index(_):
    with pytest.raises(ValueError):
        xi(4)
    with pytest.raises(ValueError):
        basis_routing(0)


# -

# # DFS basis

# +
def test_dfs_basis(n, d):
    basis = dfs_basis(n, d)
    assert len(basis) == trivial_multiplicity(n, d)
    np.testing.assert_allclose(basis.gram(), np.eye(len(basis)), atol=1e-12)
    for state in basis.states:
        assert verify_invariance(state, trials=100, seed=0).passed
        assert balanced_support_check(state)
    # any superposition is invariant as well
    assert verify_invariance(random_dfs_state(n, d, seed=1), trials=20, seed=2).passed


def test_dfs_basis_dimension_is_singlet_multiplicity(_):
    for n in (2, 4, 6, 8):
        assert len(dfs_basis(n, 2)) == multiplicity(n, 0)


def test_dfs_basis_small_cases(_):
    (singlet,) = dfs_basis(2, 2).states
    np.testing.assert_allclose(singlet.amplitudes, np.array([0, 1, -1, 0]) / np.sqrt(2), atol=1e-12)
    (antisymmetric,) = dfs_basis(3, 3).states
    assert_same_ray(antisymmetric, _TestsExampleStates.antisymmetric_state(3))


@pytest.mark.parametrize('num_sites, local_dim', [(2, 2), (4, 2), (6, 2), (3, 3)])
def test_invariant_states_have_balanced_support(_, num_sites, local_dim):
    # the null space over all d**n strings, without the balanced shortcut of dfs_basis
    null, support = invariant_null_space(num_sites, local_dim, balanced_only=False)
    assert support.tolist() == list(range(local_dim ** num_sites))
    assert null.shape[1] == trivial_multiplicity(num_sites, local_dim)
    for column in null.T:
        assert balanced_support_check(PureState(local_dim, num_sites, column), tol=1e-10)
    # same subspace as dfs_basis
    m = dfs_basis(num_sites, local_dim).as_matrix()
    np.testing.assert_allclose(null @ null.conj().T, m @ m.conj().T, atol=1e-10)


def test_no_invariant_state_in_the_full_space(_):
    null, _support = invariant_null_space(3, 2, balanced_only=False)
    assert null.shape[1] == 0


def test_dfs_basis_order(n, d):
    dominant = [int(np.argmax(np.round(np.abs(column), 10))) for column in dfs_basis(n, d).as_matrix().T]
    assert dominant == sorted(dominant)


def test_dfs_basis_phase_convention(_):
    for state in dfs_basis(6, 2).states:
        first = state.amplitudes[np.flatnonzero(np.abs(state.amplitudes) > 1e-8)[0]]
        assert abs(first.imag) < 1e-12 and first.real > 0


def test_no_dfs_when_d_does_not_divide_n(_):
    with pytest.raises(NoDecoherenceFreeSubspaceException) as exc_info:
        dfs_basis(3, 2)
    assert 'does not divide' in str(exc_info.value)


def test_dfs_dimension_mismatch(_, monkeypatch):
    import dfsloss.dfs
    dfs_basis.cache_clear()
    monkeypatch.setattr(dfsloss.dfs, 'trivial_multiplicity', lambda n, d: 3)
    try:
        with pytest.raises(DfsDimensionMismatchException):
            dfs_basis(4, 2)
    finally:
        dfs_basis.cache_clear()


def test_su_generators(_):
    generators = su_generators(3)
    assert len(generators) == 8
    for g in generators:
        np.testing.assert_allclose(g, g.conj().T)
        assert abs(np.trace(g)) < 1e-14
    # linearly independent
    assert np.linalg.matrix_rank(np.stack([g.reshape(-1) for g in generators])) == 8


# -

# # Invariance checks

# +
def test_product_state_is_not_invariant(_):
    report = verify_invariance(basis_state([0, 0, 0, 0]), trials=100, seed=0)
    assert not report.passed
    assert report.max_deviation > 0.1


def test_verify_invariance_needs_a_normalized_state(_):
    with pytest.raises(NotNormalizedException):
        verify_invariance(xi(1) * 2, trials=5)
    # the membership gate only looks at the direction
    assert is_in_dfs(xi(1) * 2)
    assert not is_in_dfs(basis_state([0, 0, 0, 0]) * 3)


def test_balanced_support(_):
    assert balanced_support_check(xi(1))
    assert balanced_support_check(basis_state([0, 0, 1, 1]))
    assert not balanced_support_check(basis_state([0, 0, 0, 1]))
    with pytest.raises(NoDecoherenceFreeSubspaceException):
        balanced_support_check(basis_state([0, 0, 1]))


# -

# # Logical amplitudes

# +
def test_logical_amplitudes(_):
    amplitudes = LogicalAmplitudes.normalized(1, 1j)
    assert abs(amplitudes.encode().norm - 1) < 1e-12
    for value in _TestsExampleStates.logical_inputs(10, seed=0):
        assert value.encode().is_normalized()
    with pytest.raises(NotNormalizedException):
        LogicalAmplitudes(1, 0.5)
    with pytest.raises(NotNormalizedException):
        LogicalAmplitudes.normalized(0, 0)


def test_xi_perp_as_logical_amplitudes(_):
    # Xi_1^perp = (Xi_1 + 2 Xi_3) / sqrt(3)
    amplitudes = LogicalAmplitudes(1 / np.sqrt(3), 2 / np.sqrt(3))
    np.testing.assert_allclose(amplitudes.encode().amplitudes, xi_perp(1).amplitudes, atol=1e-12)
