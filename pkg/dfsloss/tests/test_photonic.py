import numpy as np
import pandas as pd
import pytest
from dfsloss.dfs import LogicalAmplitudes, basis_routing, random_dfs_state, xi, xi_perp
from dfsloss.examples import _TestsExampleStates
from dfsloss.exceptions import DimensionMismatchException, EmptyPortException, NotNormalizedException
from dfsloss.photonic import (DetectionEvent, FockMixture, FockState, ModeOccupation, Outcome,
                              anomalous_polarization_probability, apply_pair_unitaries, beam_splitter_matrix,
                              classify, classify_individual, count_distribution, encode_photons,
                              individual_distribution, interfere, lose_photon_fock, measure_abstract, measure_fock,
                              measure_individual, outcome_probabilities, photonic_table)
from dfsloss.qcore import apply_collective, basis_state, haar_random_su, inner


# # Helpers

# +
def occupation(*counts):
    return ModeOccupation(tuple(counts))


def assert_distributions_equal(a, b, atol=1e-12):
    keys = set(a) | set(b)
    for key in keys:
        assert abs(a.get(key, 0.0) - b.get(key, 0.0)) < atol, key


XI_EVENT = DetectionEvent(((1, 1), (1, 1)))
XI_LOSS_EVENT = DetectionEvent(((1, 1), (1, 0)))
PERP_EVENT = DetectionEvent(((2, 0), (2, 0)))
PERP_LOSS_EVENT = DetectionEvent(((2, 0), (1, 0)))


# -

# # Encoding

# +
def test_encode_photons(_):
    fock = encode_photons(basis_state([0, 0, 1, 1]))
    assert [o.counts for o in fock.terms] == [(1, 0, 1, 0, 0, 1, 0, 1)]
    # port 2 receives photon 3
    routed = encode_photons(basis_state([0, 0, 1, 1]), routing=(1, 3, 4, 2))
    assert [o.counts for o in routed.terms] == [(1, 0, 0, 1, 0, 1, 1, 0)]
    assert encode_photons(xi(1)).is_normalized()
    assert len(encode_photons(xi(1)).terms) == 4


def test_encode_photons_bad_input(_):
    with pytest.raises(DimensionMismatchException):
        encode_photons(basis_state([0, 1, 0]))
    with pytest.raises(DimensionMismatchException):
        encode_photons(basis_state([0, 1, 0, 1], local_dim=3))


def test_mode_occupation_checks(_):
    with pytest.raises(DimensionMismatchException):
        ModeOccupation((1, 0))
    with pytest.raises(ValueError):
        occupation(-1, 0, 0, 0, 0, 0, 0, 0)
    assert occupation(1, 1, 0, 0, 2, 0, 0, 1).port_counts() == (2, 0, 2, 1)


def test_fock_state_pruning(_):
    fock = FockState({occupation(1, 0, 0, 0, 0, 0, 0, 0): 1, occupation(0, 1, 0, 0, 0, 0, 0, 0): 1e-16})
    assert len(fock.terms) == 1
    with pytest.raises(NotNormalizedException):
        FockState({}).normalized()
    with pytest.raises(NotNormalizedException):
        FockMixture(((0.5, fock),))


def test_detection_event_canonical_form(_):
    assert DetectionEvent(((0, 1), (1, 1))) == DetectionEvent(((1, 1), (1, 0)))
    assert DetectionEvent.from_port_counts([0, 2, 1, 0]) == PERP_LOSS_EVENT
    assert str(DetectionEvent(((0, 2), (0, 2)))) == '{{2,0},{2,0}}'
    assert PERP_EVENT.total == 4
    with pytest.raises(ValueError):
        DetectionEvent(((1, 1),))


# -

# # Beam splitters

# +
@pytest.mark.parametrize('convention', ['real', 'symmetric'])
def test_hong_ou_mandel(_, convention):
    # two H photons in ports 1 and 2 always leave together
    fock = FockState({occupation(1, 0, 1, 0, 0, 0, 0, 0): 1})
    out = interfere(fock, convention=convention)
    ports = {o.port_counts(): abs(a) ** 2 for o, a in out.terms.items()}
    assert set(ports) == {(2, 0, 0, 0), (0, 2, 0, 0)}
    np.testing.assert_allclose(list(ports.values()), [0.5, 0.5])


@pytest.mark.parametrize('convention', ['real', 'symmetric'])
def test_singlet_antibunches(_, convention):
    distribution = count_distribution(interfere(encode_photons(xi(1)), convention=convention))
    assert abs(distribution[XI_EVENT] - 1) < 1e-12


def test_photon_number_is_conserved(_):
    psi = _TestsExampleStates.non_dfs_states(seed=1)['random_product']
    out = interfere(encode_photons(psi))
    assert out.photon_numbers == (4,)
    assert out.is_normalized()


def test_beam_splitter_matrix(_):
    for convention in ('real', 'symmetric'):
        m = beam_splitter_matrix(1, 2, convention=convention)
        np.testing.assert_allclose(m.conj().T @ m, np.eye(8), atol=1e-14)
    with pytest.raises(ValueError):
        beam_splitter_matrix(1, 2, convention='other')


@pytest.mark.parametrize('seed', range(5))
def test_conventions_agree(_, seed):
    psi = random_dfs_state(4, 2, seed=seed)
    real = outcome_probabilities(count_distribution(interfere(encode_photons(psi), convention='real')))
    symmetric = outcome_probabilities(count_distribution(interfere(encode_photons(psi), convention='symmetric')))
    assert_distributions_equal(real, symmetric)


# -

# # Outcome table

# +
@pytest.mark.parametrize('k', [1, 2, 3])
@pytest.mark.parametrize('lost', [None, 1, 2, 3, 4, 'uniform'])
def test_measurement_table(_, k, lost):
    routing = basis_routing(k)
    for psi, expected_event, expected_loss_event in ((xi(k), XI_EVENT, XI_LOSS_EVENT),
                                                     (xi_perp(k), PERP_EVENT, PERP_LOSS_EVENT)):
        state = encode_photons(psi, routing)
        if lost == 'uniform':
            state = lose_photon_fock(state, which='uniform')
        elif lost is not None:
            state = lose_photon_fock(state, which=routing.index(lost) + 1)
        distribution = count_distribution(interfere(state))
        event = expected_event if lost is None else expected_loss_event
        assert abs(distribution[event] - 1) < 1e-12
        assert abs(sum(distribution.values()) - 1) < 1e-12


def test_photonic_table(_):
    full = photonic_table()
    assert set(full['scheme']) == {'beam_splitter', 'individual'}
    table = full[full['scheme'] == 'beam_splitter']
    # one certain event per (k, input, lost photon)
    assert len(table) == 3 * 2 * 5
    assert np.allclose(table['probability'], 1, atol=1e-12)
    assert set(table['outcome']) == {'XI', 'XI_PERP'}
    expected = table['input'].map({'Xi': 'XI', 'Xi_perp': 'XI_PERP'})
    pd.testing.assert_series_equal(table['outcome'], expected, check_names=False)
    no_loss = table[table['lost_photon'].isna()]
    assert set(no_loss['event']) == {'{{1,1},{1,1}}', '{{2,0},{2,0}}'}
    assert set(table.dropna()['event']) == {'{{1,1},{1,0}}', '{{2,0},{1,0}}'}
    # convention does not change the table
    pd.testing.assert_frame_equal(full, photonic_table(convention='symmetric'), atol=1e-12)


def test_photonic_table_individual_rows(_):
    full = photonic_table()
    table = full[full['scheme'] == 'individual']
    assert table['event'].isna().all()
    totals = table.groupby(['k', 'input', 'lost_photon'], dropna=False)['probability'].sum()
    np.testing.assert_allclose(totals.to_numpy(), 1, atol=1e-12)
    no_loss = table[table['lost_photon'].isna()]
    assert (no_loss['outcome'] == no_loss['input'].map({'Xi': 'XI', 'Xi_perp': 'XI_PERP'})).all()
    lossy = table[table['lost_photon'].notna()]
    assert set(lossy.loc[lossy['input'] == 'Xi', 'outcome']) == {'INVALID'}
    perp = lossy[lossy['input'] == 'Xi_perp'].groupby('outcome')['probability'].mean()
    np.testing.assert_allclose([perp['XI_PERP'], perp['INVALID']], [2 / 3, 1 / 3], atol=1e-12)


@pytest.mark.parametrize('event, expected', [(((1, 1), (1, 1)), Outcome.XI),
                                             (((1, 1), (0, 1)), Outcome.XI),
                                             (((2, 0), (0, 2)), Outcome.XI_PERP),
                                             (((0, 2), (1, 0)), Outcome.XI_PERP),
                                             (((2, 0), (1, 1)), Outcome.INVALID),
                                             (((3, 0), (1, 0)), Outcome.INVALID),
                                             (((1, 0), (1, 0)), Outcome.INVALID),
                                             (((2, 0), (0, 0)), Outcome.INVALID)])
def test_classify(_, event, expected):
    assert classify(DetectionEvent(event)) == expected


def test_empty_port(_):
    fock = FockState({occupation(1, 0, 0, 0, 1, 0, 0, 1): 1})
    with pytest.raises(EmptyPortException):
        lose_photon_fock(fock, which=2)
    with pytest.raises(ValueError):
        lose_photon_fock(fock, which='first')


def test_lose_photon_fock_mixture(_):
    mixture = lose_photon_fock(encode_photons(xi(1)), which=1)
    assert len(mixture.components) == 2
    np.testing.assert_allclose([w for w, _ in mixture.components], [0.5, 0.5])
    for _weight, component in mixture.components:
        assert component.photon_numbers == (3,)


# -

# # Measurement

# +
def test_measure_dfs_state(_):
    for amplitudes in _TestsExampleStates.logical_inputs(5, seed=2):
        psi = amplitudes.encode()
        probabilities = measure_fock(psi, basis=1)
        assert abs(probabilities[Outcome.XI] - abs(inner(xi(1), psi)) ** 2) < 1e-12
        assert abs(probabilities[Outcome.XI_PERP] - abs(inner(xi_perp(1), psi)) ** 2) < 1e-12
        assert abs(probabilities[Outcome.INVALID]) < 1e-12


@pytest.mark.parametrize('basis', [1, 2, 3])
def test_trine_exclusion(_, basis):
    for k in (1, 2, 3):
        probabilities = measure_fock(xi(k), basis=basis)
        expected = 0 if k == basis else 0.75
        assert abs(probabilities[Outcome.XI_PERP] - expected) < 1e-12


def test_measurement_is_immune_to_collective_noise(_):
    psi = LogicalAmplitudes.random(seed=3).encode()
    rotated = apply_collective(haar_random_su(2, seed=4), psi)
    for lost_site in (None, 1, 3):
        assert_distributions_equal(measure_fock(psi, 2, lost_site), measure_fock(rotated, 2, lost_site), atol=1e-10)


@pytest.mark.parametrize('basis', [1, 2, 3])
def test_pair_unitaries_keep_the_outcomes(_, basis):
    routing = basis_routing(basis)
    rng = np.random.default_rng(5)
    psi = random_dfs_state(4, 2, seed=6)
    for _trial in range(5):
        u, u_prime = haar_random_su(2, rng), haar_random_su(2, rng)
        rotated = apply_pair_unitaries(psi, u, u_prime, routing)
        assert_distributions_equal(measure_fock(rotated, basis), measure_fock(psi, basis), atol=1e-10)


def test_backends_agree(_):
    for seed in range(50):
        psi = random_dfs_state(4, 2, seed=100 + seed)
        basis = seed % 3 + 1
        for lost_site in (None, seed % 4 + 1):
            fock = measure_fock(psi, basis=basis, lost_site=lost_site)
            abstract = measure_abstract(psi, basis=basis, lost_site=lost_site)
            assert_distributions_equal(fock, abstract, atol=1e-10)


def test_non_dfs_states_give_invalid_outcomes(_):
    probabilities = measure_fock(basis_state([0, 1, 0, 1]))
    assert abs(probabilities[Outcome.INVALID] - 0.5) < 1e-12
    # without any antibunching |0000> looks like Xi_1^perp
    assert abs(measure_fock(basis_state([0, 0, 0, 0]))[Outcome.XI_PERP] - 1) < 1e-12


def test_anomalous_polarization(_):
    for psi in (xi(1), xi_perp(2), basis_state([0, 1, 0, 1]),
                _TestsExampleStates.non_dfs_states(seed=0)['random_product']):
        distribution = count_distribution(interfere(encode_photons(psi)), polarization_resolved=True)
        assert all(isinstance(key, ModeOccupation) for key in distribution)
        assert anomalous_polarization_probability(distribution) < 1e-12
    # a split pair with equal polarizations in ports 3 and 4
    measured = {occupation(1, 0, 0, 1, 0, 1, 0, 1): 0.1, occupation(2, 0, 0, 0, 1, 0, 0, 1): 0.9}
    assert abs(anomalous_polarization_probability(measured) - 0.1) < 1e-15
    with pytest.raises(TypeError):
        anomalous_polarization_probability(count_distribution(interfere(encode_photons(xi(1)))))


# -

# # Individual photon measurement

# +
@pytest.mark.parametrize('basis', [1, 2, 3])
def test_individual_measurement_without_loss(_, basis):
    probabilities = measure_individual(xi(basis), basis=basis)
    assert abs(probabilities[Outcome.XI] - 1) < 1e-12
    probabilities = measure_individual(xi_perp(basis), basis=basis)
    assert abs(probabilities[Outcome.XI_PERP] - 1) < 1e-12
    # same statistics as the beam splitters for any DFS state
    for amplitudes in _TestsExampleStates.logical_inputs(5, seed=basis):
        psi = amplitudes.encode()
        assert_distributions_equal(measure_individual(psi, basis=basis), measure_fock(psi, basis=basis))


@pytest.mark.parametrize('basis', [1, 2, 3])
@pytest.mark.parametrize('lost_site', [1, 2, 3, 4])
def test_individual_measurement_after_a_loss(_, basis, lost_site):
    # the beam splitters still tell the two states apart
    assert abs(measure_fock(xi(basis), basis=basis, lost_site=lost_site)[Outcome.XI] - 1) < 1e-12
    probabilities = measure_individual(xi(basis), basis=basis, lost_site=lost_site)
    assert abs(probabilities[Outcome.INVALID] - 1) < 1e-12
    probabilities = measure_individual(xi_perp(basis), basis=basis, lost_site=lost_site)
    assert abs(probabilities[Outcome.XI_PERP] - 2 / 3) < 1e-12
    assert abs(probabilities[Outcome.INVALID] - 1 / 3) < 1e-12
    assert probabilities[Outcome.XI] < 1e-12


def test_individual_distribution(_):
    distribution = individual_distribution(xi_perp(1), lost_site=1)
    assert all(result[0] is None for result in distribution)
    assert abs(sum(distribution.values()) - 1) < 1e-12
    # a correlated first pair leaves the second pair in any state, an anticorrelated one only in D/D or A/A
    assert set(individual_distribution(xi_perp(1))) == {
        (a, a, b, c) for a in ('H', 'V') for b in ('D', 'A') for c in ('D', 'A')} | {
        (a, b, c, c) for a, b in (('H', 'V'), ('V', 'H')) for c in ('D', 'A')}
    with pytest.raises(DimensionMismatchException):
        individual_distribution(basis_state([0, 1, 0]))
    with pytest.raises(NotNormalizedException):
        individual_distribution(xi(1) * 2)


@pytest.mark.parametrize('result, expected', [(('H', 'V', 'D', 'A'), Outcome.XI),
                                              (('V', 'H', 'A', 'D'), Outcome.XI),
                                              (('H', 'H', 'D', 'A'), Outcome.XI_PERP),
                                              (('H', 'V', 'A', 'A'), Outcome.XI_PERP),
                                              ((None, 'V', 'D', 'D'), Outcome.XI_PERP),
                                              (('H', 'V', None, 'A'), Outcome.INVALID),
                                              (('H', 'H', 'D', None), Outcome.XI_PERP)])
def test_classify_individual(_, result, expected):
    assert classify_individual(result) == expected


@pytest.mark.parametrize('result', [('H', 'V', 'D'), (None, None, 'D', 'A'), ('D', 'V', 'D', 'A'),
                                    ('H', 'V', 'H', 'A')])
def test_classify_individual_bad_results(_, result):
    with pytest.raises((ValueError, DimensionMismatchException)):
        classify_individual(result)
