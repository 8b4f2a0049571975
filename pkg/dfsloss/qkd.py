# +
"""
Monte Carlo rounds of the trine key distribution sketch.

In each round Alice sends one of Xi_1, Xi_2, Xi_3 at random through a channel
that may apply a collective random rotation to the four photons and may lose
one of them. Bob measures in a random basis {Xi_l, Xi_l^perp}. Obtaining Xi_l^perp
tells him that Alice did not send Xi_l.

Round i draws everything from `numpy.random.default_rng(seed + i)` so results
do not depend on how rounds are split between threads.
"""
import numpy as np
import pandas as pd
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

# local imports
from dfsloss.dfs import basis_routing, xi
from dfsloss.helpers import (EXACT_TOL, NORM_TOL, validate_positive_int_param, validate_probability_param,
                             validate_seed_param)
from dfsloss.logger import log
from dfsloss.photonic import Outcome, apply_pair_unitaries, measure_abstract, measure_fock
from dfsloss.qcore import PureState, apply_collective, haar_random_su

OUTCOMES = (Outcome.XI, Outcome.XI_PERP, Outcome.INVALID)
BACKENDS = ('abstract', 'fock')
ROUND_COLUMNS = ['round', 'alice_k', 'bob_l', 'lost', 'lost_site', 'outcome', 'p_xi', 'p_xi_perp', 'p_invalid']


# -

# # Channel

# +
@dataclass(frozen=True)
class ChannelConfig:
    """
    Parameters
    ----------
    collective_noise
        Apply a Haar random U^{x 4} to every quadruplet
    loss_probability
        Probability that exactly one photon, chosen uniformly, is lost
    seed
        Master seed, round i uses seed + i
    """
    collective_noise: bool = False
    loss_probability: float = 0.0
    seed: int = 0

    def __post_init__(self) -> None:
        if not isinstance(self.collective_noise, bool):
            raise TypeError(f'Expected collective_noise to be a bool. Got {type(self.collective_noise)}')
        validate_probability_param(self.loss_probability, name='loss_probability')
        validate_seed_param(self.seed)

    def to_dict(self) -> dict:
        return {'collective_noise': self.collective_noise, 'loss_probability': self.loss_probability,
                'seed': self.seed}


def _measure(psi: PureState, basis: int, lost_site: Optional[int], backend: str) -> Dict[Outcome, float]:
    if backend == 'fock':
        return measure_fock(psi, basis=basis, lost_site=lost_site)
    return measure_abstract(psi, basis=basis, lost_site=lost_site)


def _sample_outcome(probabilities: Dict[Outcome, float], rng: np.random.Generator) -> Outcome:
    p = np.array([probabilities[o] for o in OUTCOMES])
    p[p < NORM_TOL] = 0
    return OUTCOMES[int(rng.choice(len(OUTCOMES), p=p / p.sum()))]


def _simulate_rounds(start: int, stop: int, channel: ChannelConfig, backend: str) -> List[dict]:
    rows = []
    for index in range(start, stop):
        rng = np.random.default_rng(channel.seed + index)
        alice_k = int(rng.integers(1, 4))
        bob_l = int(rng.integers(1, 4))
        psi = xi(alice_k)
        if channel.collective_noise:
            psi = apply_collective(haar_random_su(2, rng), psi)
        lost_site = int(rng.integers(1, 5)) if rng.random() < channel.loss_probability else None
        probabilities = _measure(psi, bob_l, lost_site, backend)
        outcome = _sample_outcome(probabilities, rng)
        rows.append({'round': index, 'alice_k': alice_k, 'bob_l': bob_l, 'lost': lost_site is not None,
                     'lost_site': lost_site, 'outcome': outcome.value,
                     'p_xi': probabilities[Outcome.XI], 'p_xi_perp': probabilities[Outcome.XI_PERP],
                     'p_invalid': probabilities[Outcome.INVALID]})
    return rows


# -

# # Protocol

# +
@dataclass(frozen=True, eq=False)
class ProtocolStats:
    """
    One row per round (see `ROUND_COLUMNS`). `p_*` are the exact outcome
    probabilities of the round, `outcome` the sampled one.
    """
    channel: ChannelConfig
    backend: str
    frame: pd.DataFrame = field(repr=False)

    @property
    def rounds(self) -> int:
        return len(self.frame)

    @property
    def counts(self) -> Dict[Tuple[int, int, str, bool], int]:
        """(alice_k, bob_l, outcome, lost) -> number of rounds"""
        grouped = self.frame.groupby(['alice_k', 'bob_l', 'outcome', 'lost']).size()
        return {(int(k), int(bob_l), str(o), bool(lost)): int(n) for (k, bob_l, o, lost), n in grouped.items()}

    @property
    def sifted_pairs(self) -> int:
        """Rounds in which Bob obtained Xi_l^perp."""
        return int((self.frame['outcome'] == Outcome.XI_PERP.value).sum())

    def to_dict(self) -> dict:
        counts = [{'alice_k': k, 'bob_l': bob_l, 'outcome': o, 'lost': lost, 'count': n}
                  for (k, bob_l, o, lost), n in sorted(self.counts.items())]
        return {'backend': self.backend, 'channel': self.channel.to_dict(), 'rounds': self.rounds,
                'sifted_pairs': self.sifted_pairs, 'counts': counts}


def run_protocol(rounds: int, channel: ChannelConfig, use_fock_backend: bool = False,
                 threads: int = 1) -> ProtocolStats:
    """
    Simulates `rounds` independent rounds.

    Parameters
    ----------
    rounds
        Number of quadruplets sent by Alice
    channel
        Noise and loss of the channel and master seed
    use_fock_backend
        Measure with the linear optics simulation instead of DFS projectors
        (both give the same probabilities for DFS states)
    threads
        Rounds are split in contiguous blocks over this many threads, the result
        is the same as with one thread

    Examples
    --------
    >>> stats = run_protocol(30, ChannelConfig(seed=5))
    >>> same_basis = stats.frame[stats.frame['alice_k'] == stats.frame['bob_l']]
    >>> stats.rounds, bool((same_basis['outcome'] == 'XI').all())
    (30, True)
    """
    validate_positive_int_param(rounds, name='rounds')
    validate_positive_int_param(threads, name='threads')
    backend = 'fock' if use_fock_backend else 'abstract'

    bounds = np.linspace(0, rounds, min(threads, rounds) + 1).astype(int)
    blocks = list(zip(bounds[:-1], bounds[1:]))
    if len(blocks) == 1:
        rows = _simulate_rounds(0, rounds, channel, backend)
    else:
        with ThreadPoolExecutor(max_workers=len(blocks)) as executor:
            results = executor.map(lambda b: _simulate_rounds(int(b[0]), int(b[1]), channel, backend), blocks)
            rows = [row for block in results for row in block]

    frame = pd.DataFrame(rows, columns=ROUND_COLUMNS)
    frame['lost_site'] = frame['lost_site'].astype('Int64')
    stats = ProtocolStats(channel=channel, backend=backend, frame=frame)
    log(f'{rounds} rounds ({backend} backend, noise={channel.collective_noise}, '
        f'loss={channel.loss_probability}): {stats.sifted_pairs} exclusions')
    return stats


def _full_grid(table: pd.DataFrame) -> pd.DataFrame:
    table = table.reindex(index=[1, 2, 3], columns=[1, 2, 3])
    table.index.name = 'alice_k'
    table.columns.name = 'bob_l'
    return table


def conditional_exclusion_table(stats: ProtocolStats, exact: bool = False) -> pd.DataFrame:
    """
    P(Xi_l^perp | Alice sent k, Bob measured l), Alice's k as rows and
    Bob's l as columns. Cells without rounds are NaN.

    With `exact=True` the exact per round probabilities are averaged instead of
    counting sampled outcomes.
    """
    frame = stats.frame.assign(hit=stats.frame['p_xi_perp'] if exact
                               else (stats.frame['outcome'] == Outcome.XI_PERP.value).astype(float))
    return _full_grid(frame.pivot_table(index='alice_k', columns='bob_l', values='hit', aggfunc='mean'))


def pair_counts(stats: ProtocolStats) -> pd.DataFrame:
    """Number of rounds per (alice_k, bob_l), 0 for missing pairs."""
    return _full_grid(pd.crosstab(stats.frame['alice_k'], stats.frame['bob_l'])).fillna(0).astype(int)


# -

# # Pairwise random rotations

# +
@dataclass(frozen=True)
class UURandomReport:
    """Mean outcome probabilities over the random U x U, U' x U' draws."""
    rounds: int
    fractions: Dict[str, float]
    tol: float

    @property
    def passed(self) -> bool:
        return abs(self.fractions[Outcome.XI.value] - 1) < self.tol

    def to_dict(self) -> dict:
        return {'rounds': self.rounds, 'fractions': dict(self.fractions), 'pass': self.passed}


def uu_random_check(rounds: int = 100, seed: int = 0, state: Optional[PureState] = None, basis: int = 1,
                    tol: float = EXACT_TOL) -> UURandomReport:
    """
    Applies independent Haar random U x U and U' x U' to the two measured pairs
    before the beam splitters and measures in the basis `basis`. Xi_basis
    (the default state) always gives XI, states outside the DFS do not.

    Examples
    --------
    >>> uu_random_check(rounds=5, seed=1).passed
    True
    """
    validate_positive_int_param(rounds, name='rounds')
    validate_seed_param(seed)
    psi = xi(basis) if state is None else state
    routing = basis_routing(basis)
    totals = {o: 0.0 for o in OUTCOMES}
    for index in range(rounds):
        rng = np.random.default_rng(seed + index)
        u, u_prime = haar_random_su(2, rng), haar_random_su(2, rng)
        probabilities = measure_fock(apply_pair_unitaries(psi, u, u_prime, routing), basis=basis)
        for outcome in OUTCOMES:
            totals[outcome] += probabilities[outcome]
    fractions = {o.value: totals[o] / rounds for o in OUTCOMES}
    return UURandomReport(rounds=rounds, fractions=fractions, tol=tol)
