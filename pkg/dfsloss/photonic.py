# +
"""
Linear optics simulation of the loss tolerant measurement of four photons.

Each of the four spatial input ports holds one photon whose polarization
(H = |0>, V = |1>) carries one qubit. Ports 1 and 2 interfere on one balanced
beam splitter, ports 3 and 4 on another, and the photons are counted at the
four outputs (output port p continues input port p). A state is measured in
the basis {Xi_k, Xi_k^perp} by routing its photons so that Xi_k becomes Xi_1
on the ports, see `dfsloss.dfs.basis_routing`.

For comparison `measure_individual` reads every photon on its own (first
pair in H/V, second pair in the diagonal basis). It separates Xi_k from
Xi_k^perp only when no photon is lost.

Mode m = 2 * (port - 1) + polarization.
"""
import itertools
import math
import numpy as np
import pandas as pd
from collections import defaultdict
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache, reduce
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

# local imports
from dfsloss.dfs import basis_routing, xi, xi_perp
from dfsloss.dfsloss_types import Routing
from dfsloss.exceptions import DimensionMismatchException, EmptyPortException, NotNormalizedException
from dfsloss.helpers import NORM_TOL, PRUNE_TOL, validate_normalized_state
from dfsloss.lossrec import branch_projector, lose_particle
from dfsloss.qcore import (PureState, UnitaryMatrix, _validate_order, _validate_sites, apply_unitary, inner,
                           permute_sites, projector)

NUM_PORTS = 4
NUM_MODES = 2 * NUM_PORTS
H, V = 0, 1
# ports interfering on the same beam splitter
BEAM_SPLITTER_PAIRS = ((1, 2), (3, 4))
CONVENTIONS = ('real', 'symmetric')


def mode_index(port: int, polarization: int) -> int:
    """
    Examples
    --------
    >>> mode_index(1, H), mode_index(3, V)
    (0, 5)
    """
    _validate_sites([port], num_sites=NUM_PORTS)
    if polarization not in (H, V):
        raise ValueError(f'polarization must be 0 (H) or 1 (V). Got {polarization}')
    return 2 * (port - 1) + polarization


# -

# # Domain types

# +
class Outcome(Enum):
    XI = 'XI'
    XI_PERP = 'XI_PERP'
    INVALID = 'INVALID'


@dataclass(frozen=True)
class ModeOccupation:
    """Photon numbers of the 8 modes (4 ports x 2 polarizations)."""
    counts: Tuple[int, ...]

    def __post_init__(self) -> None:
        counts = tuple(int(c) for c in self.counts)
        if len(counts) != NUM_MODES:
            raise DimensionMismatchException(f'Expected {NUM_MODES} mode occupations. Got {len(counts)}')
        if any(c < 0 for c in counts):
            raise ValueError(f'Photon numbers must be non negative. Got {counts}')
        object.__setattr__(self, 'counts', counts)

    @property
    def total(self) -> int:
        return sum(self.counts)

    def port_count(self, port: int) -> int:
        return self.counts[mode_index(port, H)] + self.counts[mode_index(port, V)]

    def port_counts(self) -> Tuple[int, ...]:
        return tuple(self.port_count(p) for p in range(1, NUM_PORTS + 1))


@dataclass(frozen=True, eq=False)
class FockState:
    """
    Superposition of mode occupations. Amplitudes below 1e-14 are dropped.
    """
    terms: Mapping[ModeOccupation, complex]

    def __post_init__(self) -> None:
        pruned = {occupation: complex(amplitude) for occupation, amplitude in sorted(self.terms.items(),
                                                                                     key=lambda kv: kv[0].counts)
                  if abs(amplitude) > PRUNE_TOL}
        object.__setattr__(self, 'terms', pruned)

    @property
    def norm(self) -> float:
        return float(np.sqrt(sum(abs(a) ** 2 for a in self.terms.values())))

    def is_normalized(self, tol: float = NORM_TOL) -> bool:
        return abs(self.norm ** 2 - 1) < tol

    def normalized(self) -> 'FockState':
        norm = self.norm
        if norm == 0:
            raise NotNormalizedException('Cannot normalize an empty Fock state')
        return FockState({o: a / norm for o, a in self.terms.items()})

    @property
    def photon_numbers(self) -> Tuple[int, ...]:
        return tuple(sorted({o.total for o in self.terms}))


@dataclass(frozen=True, eq=False)
class FockMixture:
    """Weighted pure Fock states, the weights summing to 1."""
    components: Tuple[Tuple[float, FockState], ...]

    def __post_init__(self) -> None:
        total = sum(weight for weight, _ in self.components)
        if abs(total - 1) > NORM_TOL:
            raise NotNormalizedException(f'Mixture weights sum to {total}')


@dataclass(frozen=True)
class DetectionEvent:
    """
    Photon numbers counted at the outputs of the two beam splitters. The
    ordering of the ports of a beam splitter and of the two beam splitters is
    irrelevant: both levels are sorted in descending order.

    Examples
    --------
    >>> str(DetectionEvent(((1, 0), (1, 1))))
    '{{1,1},{1,0}}'
    """
    pairs: Tuple[Tuple[int, int], Tuple[int, int]]

    def __post_init__(self) -> None:
        if len(self.pairs) != 2 or any(len(pair) != 2 for pair in self.pairs):
            raise ValueError(f'Expected two pairs of counts. Got {self.pairs}')
        inner_sorted = [tuple(sorted((int(a), int(b)), reverse=True)) for a, b in self.pairs]
        object.__setattr__(self, 'pairs', tuple(sorted(inner_sorted, reverse=True)))

    @classmethod
    def from_port_counts(cls, counts: Sequence[int]) -> 'DetectionEvent':
        """Counts of the output ports 1, 2, 3, 4."""
        if len(counts) != NUM_PORTS:
            raise DimensionMismatchException(f'Expected {NUM_PORTS} port counts. Got {len(counts)}')
        return cls(((counts[0], counts[1]), (counts[2], counts[3])))

    @property
    def total(self) -> int:
        return sum(sum(pair) for pair in self.pairs)

    def __str__(self) -> str:
        return '{' + ','.join('{%d,%d}' % pair for pair in self.pairs) + '}'


# -

# # Encoding and optics

# +
def _validate_routing(routing: Sequence[int]) -> Routing:
    return tuple(_validate_order(routing, num_sites=NUM_PORTS))  # type: ignore


def encode_photons(psi: PureState, routing: Sequence[int] = (1, 2, 3, 4)) -> FockState:
    """
    One photon per input port, port p receiving the photon routing[p - 1] of the
    four qubit polarization state psi.

    Examples
    --------
    >>> from dfsloss.qcore import basis_state
    >>> fock = encode_photons(basis_state([0, 1, 0, 1]))
    >>> [o.counts for o in fock.terms]
    [(1, 0, 0, 1, 1, 0, 0, 1)]
    """
    if psi.local_dim != 2 or psi.num_sites != NUM_PORTS:
        raise DimensionMismatchException(f'Expected a four qubit polarization state. Got {psi.num_sites} sites of '
                                         f'dimension {psi.local_dim}')
    routing = _validate_routing(routing)
    terms = {}
    for index in np.flatnonzero(np.abs(psi.amplitudes) > PRUNE_TOL):
        bits = [(int(index) >> (NUM_PORTS - photon)) & 1 for photon in range(1, NUM_PORTS + 1)]
        counts = [0] * NUM_MODES
        for port, photon in enumerate(routing, start=1):
            counts[mode_index(port, bits[photon - 1])] = 1
        terms[ModeOccupation(tuple(counts))] = psi.amplitudes[index]
    return FockState(terms)


def apply_mode_transformation(state: FockState, matrix: np.ndarray) -> FockState:
    """
    Passive linear optics: every creation operator a_m^dagger is replaced by
    sum_k matrix[k, m] a_k^dagger. A term with photon numbers n_m is
    prod_m (a_m^dagger)^{n_m} / sqrt(n_m!) |vac> so the result carries
    the bosonic factors sqrt(n'_k!) of the output occupations.
    """
    u = UnitaryMatrix(np.asarray(matrix, dtype=complex))
    if u.dim != NUM_MODES:
        raise DimensionMismatchException(f'Expected a {NUM_MODES}x{NUM_MODES} mode transformation. Got {u.dim}')
    images = [[(k, u.matrix[k, m]) for k in range(NUM_MODES) if abs(u.matrix[k, m]) > PRUNE_TOL]
              for m in range(NUM_MODES)]

    out: Dict[Tuple[int, ...], complex] = defaultdict(complex)
    for occupation, amplitude in state.terms.items():
        creators = [m for m, count in enumerate(occupation.counts) for _ in range(count)]
        coefficient = amplitude / np.sqrt(np.prod([math.factorial(c) for c in occupation.counts]))
        for choice in itertools.product(*(images[m] for m in creators)):
            counts = [0] * NUM_MODES
            value = coefficient
            for k, entry in choice:
                counts[k] += 1
                value *= entry
            out[tuple(counts)] += value * np.sqrt(np.prod([math.factorial(c) for c in counts]))
    return FockState({ModeOccupation(counts): amplitude for counts, amplitude in out.items()})


def beam_splitter_matrix(port_a: int, port_b: int, convention: str = 'real') -> np.ndarray:
    """
    Mode matrix of a balanced, polarization preserving beam splitter.

    'real': a -> (a + b) / sqrt(2), b -> (a - b) / sqrt(2)
    'symmetric': a -> (a + i b) / sqrt(2), b -> (i a + b) / sqrt(2)
    """
    _validate_sites([port_a, port_b], num_sites=NUM_PORTS)
    if convention not in CONVENTIONS:
        raise ValueError(f'convention must be one of {CONVENTIONS}. Got {convention}')
    block = (np.array([[1, 1], [1, -1]]) if convention == 'real' else np.array([[1, 1j], [1j, 1]])) / np.sqrt(2)
    matrix = np.eye(NUM_MODES, dtype=complex)
    for polarization in (H, V):
        modes = [mode_index(port_a, polarization), mode_index(port_b, polarization)]
        matrix[np.ix_(modes, modes)] = block
    return matrix


def balanced_beam_splitter(state: FockState, port_a: int, port_b: int, convention: str = 'real') -> FockState:
    """
    Examples
    --------
    >>> fock = FockState({ModeOccupation((1, 0, 0, 0, 0, 0, 0, 0)): 1})
    >>> out = balanced_beam_splitter(fock, 1, 2)
    >>> sorted((o.port_counts(), round(abs(a) ** 2, 12)) for o, a in out.terms.items())
    [((0, 1, 0, 0), 0.5), ((1, 0, 0, 0), 0.5)]
    """
    return apply_mode_transformation(state, beam_splitter_matrix(port_a, port_b, convention=convention))


def interfere(state: Union[FockState, FockMixture], convention: str = 'real') -> Union[FockState, FockMixture]:
    """Both beam splitters of the measurement."""
    if isinstance(state, FockMixture):
        return FockMixture(tuple((w, interfere(s, convention=convention)) for w, s in state.components))
    for port_a, port_b in BEAM_SPLITTER_PAIRS:
        state = balanced_beam_splitter(state, port_a, port_b, convention=convention)
    return state


def _annihilate_port(state: FockState, port: int, polarization: int) -> FockState:
    mode = mode_index(port, polarization)
    terms = {}
    for occupation, amplitude in state.terms.items():
        count = occupation.counts[mode]
        if count:
            counts = list(occupation.counts)
            counts[mode] -= 1
            terms[ModeOccupation(tuple(counts))] = amplitude * np.sqrt(count)
    return FockState(terms)


def lose_photon_fock(state: FockState, which: Union[int, str] = 'uniform') -> FockMixture:
    """
    Removes the photon of an input port (before the beam splitters) and traces
    out its polarization. `which='uniform'` mixes the loss of each port with
    weight 1/4.

    Raises
    ------
    dfsloss.exceptions.EmptyPortException
        When a term of the state has no photon in the port

    Examples
    --------
    >>> from dfsloss.qcore import basis_state
    >>> mixture = lose_photon_fock(encode_photons(basis_state([0, 1, 0, 1])), which=2)
    >>> [(w, [o.counts for o in s.terms]) for w, s in mixture.components]
    [(1.0, [(1, 0, 0, 0, 1, 0, 0, 1)])]
    """
    if which == 'uniform':
        components = []
        for port in range(1, NUM_PORTS + 1):
            components.extend((weight / NUM_PORTS, s) for weight, s in lose_photon_fock(state, port).components)
        return FockMixture(tuple(components))
    if isinstance(which, str):
        raise ValueError(f"which must be a port number or 'uniform'. Got {which}")
    _validate_sites([which], num_sites=NUM_PORTS)
    if any(occupation.port_count(which) == 0 for occupation in state.terms):
        raise EmptyPortException(f'Port {which} holds no photon in at least one term of the state')

    total = state.norm ** 2
    components = []
    for polarization in (H, V):
        remaining = _annihilate_port(state, which, polarization)
        weight = remaining.norm ** 2
        if weight > PRUNE_TOL:
            components.append((weight / total, remaining.normalized()))
    return FockMixture(tuple(components))


# -

# # Counting and classification

# +
def _occupation_probabilities(state: Union[FockState, FockMixture]) -> Dict[ModeOccupation, float]:
    components = state.components if isinstance(state, FockMixture) else ((1.0, state),)
    probabilities: Dict[ModeOccupation, float] = defaultdict(float)
    for weight, component in components:
        norm2 = component.norm ** 2
        for occupation, amplitude in component.terms.items():
            probabilities[occupation] += weight * abs(amplitude) ** 2 / norm2
    return probabilities


def count_distribution(state: Union[FockState, FockMixture],
                       polarization_resolved: bool = False) -> Dict[Union[DetectionEvent, ModeOccupation], float]:
    """
    Probabilities of the photon counts at the output ports.

    Counting is polarization blind by default and the result is keyed by
    `DetectionEvent`. With `polarization_resolved=True` the result is keyed by
    the full `ModeOccupation` instead.
    """
    probabilities = _occupation_probabilities(state)
    if polarization_resolved:
        return dict(probabilities)
    events: Dict[DetectionEvent, float] = defaultdict(float)
    for occupation, probability in probabilities.items():
        events[DetectionEvent.from_port_counts(occupation.port_counts())] += probability
    return dict(sorted(events.items(), key=lambda kv: kv[0].pairs, reverse=True))


_XI_EVENTS = frozenset({DetectionEvent(((1, 1), (1, 1))), DetectionEvent(((1, 1), (1, 0)))})
_XI_PERP_EVENTS = frozenset({DetectionEvent(((2, 0), (2, 0))), DetectionEvent(((2, 0), (1, 0)))})


def classify(event: DetectionEvent) -> Outcome:
    """
    Examples
    --------
    >>> classify(DetectionEvent(((1, 0), (1, 1)))), classify(DetectionEvent(((2, 1), (1, 0))))
    (<Outcome.XI: 'XI'>, <Outcome.INVALID: 'INVALID'>)
    """
    if event in _XI_EVENTS:
        return Outcome.XI
    if event in _XI_PERP_EVENTS:
        return Outcome.XI_PERP
    return Outcome.INVALID


def anomalous_polarization_probability(distribution: Mapping[ModeOccupation, float]) -> float:
    """
    Probability that the two photons leaving a beam splitter by different
    ports have the same polarization, which a singlet pair never does. Takes
    a polarization resolved `count_distribution`.

    Only the antisymmetric part of a pair leaves a balanced beam splitter by
    both ports, so the value is 0 for any polarization state of indistinguishable
    photons. A positive value flags photons that do not fit the modes simulated
    here (e.g. a measured distribution).

    Examples
    --------
    >>> from dfsloss.qcore import basis_state
    >>> fock = interfere(encode_photons(basis_state([0, 1, 0, 1])))
    >>> anomalous_polarization_probability(count_distribution(fock, polarization_resolved=True))
    0.0
    >>> same = ModeOccupation((1, 0, 1, 0, 0, 0, 0, 0))  # H in port 1 and H in port 2
    >>> anomalous_polarization_probability({same: 0.25})
    0.25
    """
    probability = 0.0
    for occupation, p in distribution.items():
        if not isinstance(occupation, ModeOccupation):
            raise TypeError('Expected a polarization resolved distribution (keys of type ModeOccupation)')
        for port_a, port_b in BEAM_SPLITTER_PAIRS:
            if occupation.port_count(port_a) == 1 and occupation.port_count(port_b) == 1:
                if any(occupation.counts[mode_index(port_a, pol)] == occupation.counts[mode_index(port_b, pol)] == 1
                       for pol in (H, V)):
                    probability += p
                    break
    return probability


def outcome_probabilities(distribution: Mapping[DetectionEvent, float]) -> Dict[Outcome, float]:
    probabilities = {outcome: 0.0 for outcome in Outcome}
    for event, p in distribution.items():
        probabilities[classify(event)] += p
    return probabilities


# -

# # Measurement in the basis {Xi_k, Xi_k^perp}

# +
def apply_pair_unitaries(psi: PureState, u: UnitaryMatrix, u_prime: UnitaryMatrix,
                         routing: Sequence[int] = (1, 2, 3, 4)) -> PureState:
    """U x U on the photons sent to ports 1 and 2, U' x U' on those sent to ports 3 and 4."""
    routing = _validate_routing(routing)
    for photon in routing[:2]:
        psi = apply_unitary(u, psi, sites=[photon])
    for photon in routing[2:]:
        psi = apply_unitary(u_prime, psi, sites=[photon])
    return psi


def _validate_basis(basis: int) -> int:
    if basis not in (1, 2, 3):
        raise ValueError(f'basis must be 1, 2 or 3. Got {basis}')
    return int(basis)


def measure_fock(psi: PureState, basis: int = 1, lost_site: Optional[int] = None,
                 convention: str = 'real') -> Dict[Outcome, float]:
    """
    Outcome probabilities of the beam splitter measurement of a four qubit
    polarization state. `lost_site` is the photon (qubit site) lost before the
    beam splitters.

    Examples
    --------
    >>> probabilities = measure_fock(xi(2), basis=2, lost_site=4)
    >>> round(probabilities[Outcome.XI], 12)
    1.0
    """
    routing = basis_routing(_validate_basis(basis))
    state: Union[FockState, FockMixture] = encode_photons(psi, routing)
    if lost_site is not None:
        _validate_sites([lost_site], num_sites=NUM_PORTS)
        state = lose_photon_fock(state, which=routing.index(lost_site) + 1)
    return outcome_probabilities(count_distribution(interfere(state, convention=convention)))


@lru_cache(maxsize=None)
def _abstract_projectors(basis: int, lost_site: int) -> Tuple[np.ndarray, np.ndarray]:
    p_xi = branch_projector(xi(basis), lost_site)
    p_perp = branch_projector(xi_perp(basis), lost_site)
    p_xi.setflags(write=False)
    p_perp.setflags(write=False)
    return p_xi, p_perp


def measure_abstract(psi: PureState, basis: int = 1, lost_site: Optional[int] = None) -> Dict[Outcome, float]:
    """
    Same probabilities as `measure_fock` from the DFS description: projection
    onto Xi_l and Xi_l^perp, or after a loss onto the spans of their branches.
    What is left is INVALID.

    Examples
    --------
    >>> probabilities = measure_abstract(xi(1), basis=2)
    >>> round(probabilities[Outcome.XI_PERP], 12)
    0.75
    """
    basis = _validate_basis(basis)
    if lost_site is None:
        p_xi = abs(inner(xi(basis), psi)) ** 2
        p_perp = abs(inner(xi_perp(basis), psi)) ** 2
    else:
        rho = lose_particle(psi, lost_site).matrix
        proj_xi, proj_perp = _abstract_projectors(basis, lost_site)
        p_xi = float(np.real(np.trace(proj_xi @ rho)))
        p_perp = float(np.real(np.trace(proj_perp @ rho)))
    p_invalid = 1 - p_xi - p_perp
    return {Outcome.XI: p_xi, Outcome.XI_PERP: p_perp, Outcome.INVALID: p_invalid if p_invalid > NORM_TOL else 0.0}


# -

# # Measurement of the individual photons

# +
HADAMARD = np.array([[1, 1], [1, -1]]) / np.sqrt(2)
# routed photons measured in the diagonal basis, the others in H/V
DIAGONAL_POSITIONS = (3, 4)
INDIVIDUAL_LABELS = (('H', 'V'), ('H', 'V'), ('D', 'A'), ('D', 'A'))
IndividualResult = Tuple[Optional[str], ...]


def individual_distribution(psi: PureState, basis: int = 1,
                            lost_site: Optional[int] = None) -> Dict[IndividualResult, float]:
    """
    Probabilities of the results of measuring each photon on its own, without
    any interference. The photons are routed as for the beam splitters so that
    Xi_basis becomes Xi_1; the first two are measured in the H/V basis and the
    last two in the diagonal basis (D = |0> + |1>, A = |0> - |1>).
    The lost photon reads None.

    Examples
    --------
    >>> sorted(individual_distribution(xi(1)))
    [('H', 'V', 'A', 'D'), ('H', 'V', 'D', 'A'), ('V', 'H', 'A', 'D'), ('V', 'H', 'D', 'A')]
    """
    if psi.local_dim != 2 or psi.num_sites != NUM_PORTS:
        raise DimensionMismatchException(f'Expected a four qubit polarization state. Got {psi.num_sites} sites of '
                                         f'dimension {psi.local_dim}')
    validate_normalized_state(psi)
    routing = basis_routing(_validate_basis(basis))
    routed = permute_sites(psi, routing)
    positions = list(range(1, NUM_PORTS + 1))
    if lost_site is None:
        rho = projector(routed)
    else:
        _validate_sites([lost_site], num_sites=NUM_PORTS)
        lost_position = routing.index(lost_site) + 1
        rho = lose_particle(routed, lost_position)
        positions.remove(lost_position)

    rotation = reduce(np.kron, [HADAMARD if p in DIAGONAL_POSITIONS else np.eye(2) for p in positions])
    probabilities = np.real(np.diag(rotation @ rho.matrix @ rotation.T))
    distribution: Dict[IndividualResult, float] = {}
    for index, probability in enumerate(probabilities):
        if probability <= PRUNE_TOL:
            continue
        result: List[Optional[str]] = [None] * NUM_PORTS
        for offset, position in enumerate(positions):
            bit = (index >> (len(positions) - 1 - offset)) & 1
            result[position - 1] = INDIVIDUAL_LABELS[position - 1][bit]
        distribution[tuple(result)] = float(probability)
    return distribution


def classify_individual(result: Sequence[Optional[str]]) -> Outcome:
    """
    XI when both pairs are anticorrelated and XI_PERP as soon as one pair is
    correlated, which a singlet pair never is. After a loss only the intact
    pair is read and an anticorrelated intact pair is inconclusive (INVALID).

    Examples
    --------
    >>> classify_individual(('H', 'V', 'D', 'A')), classify_individual(('H', 'H', 'D', 'A'))
    (<Outcome.XI: 'XI'>, <Outcome.XI_PERP: 'XI_PERP'>)
    >>> classify_individual((None, 'V', 'A', 'D'))
    <Outcome.INVALID: 'INVALID'>
    """
    result = tuple(result)
    if len(result) != NUM_PORTS:
        raise DimensionMismatchException(f'Expected {NUM_PORTS} results. Got {len(result)}')
    if sum(label is None for label in result) > 1:
        raise ValueError(f'At most one photon can be lost. Got {result}')
    for labels, label in zip(INDIVIDUAL_LABELS, result):
        if label is not None and label not in labels:
            raise ValueError(f'Expected one of {labels} or None. Got {label!r}')

    anticorrelated = [result[a - 1] != result[b - 1] for a, b in BEAM_SPLITTER_PAIRS
                      if result[a - 1] is not None and result[b - 1] is not None]
    if not all(anticorrelated):
        return Outcome.XI_PERP
    return Outcome.XI if len(anticorrelated) == len(BEAM_SPLITTER_PAIRS) else Outcome.INVALID


def measure_individual(psi: PureState, basis: int = 1, lost_site: Optional[int] = None) -> Dict[Outcome, float]:
    """
    Outcome probabilities of the individual photon measurement.

    Without loss it tells Xi_basis from Xi_basis^perp as well as the beam
    splitters do. It is not loss tolerant: after a loss Xi_basis is never
    recognized and Xi_basis^perp only with probability 2/3.

    Examples
    --------
    >>> probabilities = measure_individual(xi_perp(2), basis=2, lost_site=3)
    >>> round(probabilities[Outcome.XI_PERP], 12), round(probabilities[Outcome.INVALID], 12)
    (0.666666666667, 0.333333333333)
    """
    probabilities = {outcome: 0.0 for outcome in Outcome}
    for result, probability in individual_distribution(psi, basis=basis, lost_site=lost_site).items():
        probabilities[classify_individual(result)] += probability
    return probabilities


# -

# # Outcome table

# +
def photonic_table(convention: str = 'real') -> pd.DataFrame:
    """
    Xi_k and Xi_k^perp measured in their own basis, without loss and with the
    loss of each photon, by both schemes. The 'beam_splitter' rows hold the
    count distributions; the 'individual' rows hold the outcome probabilities
    of `measure_individual` and have no event.
    `lost_photon` is missing when no photon is lost.
    """
    rows = []
    for k in (1, 2, 3):
        for label, psi in (('Xi', xi(k)), ('Xi_perp', xi_perp(k))):
            routing = basis_routing(k)
            for lost in (None, 1, 2, 3, 4):
                state: Union[FockState, FockMixture] = encode_photons(psi, routing)
                if lost is not None:
                    state = lose_photon_fock(state, which=routing.index(lost) + 1)
                for event, probability in count_distribution(interfere(state, convention=convention)).items():
                    if probability <= PRUNE_TOL:
                        continue
                    rows.append({'scheme': 'beam_splitter', 'k': k, 'input': label, 'lost_photon': lost,
                                 'event': str(event), 'probability': probability, 'outcome': classify(event).value})
                for outcome, probability in measure_individual(psi, basis=k, lost_site=lost).items():
                    if probability <= PRUNE_TOL:
                        continue
                    rows.append({'scheme': 'individual', 'k': k, 'input': label, 'lost_photon': lost,
                                 'event': None, 'probability': probability, 'outcome': outcome.value})
    table = pd.DataFrame(rows)
    table['lost_photon'] = table['lost_photon'].astype('Int64')
    return table
