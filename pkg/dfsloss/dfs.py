# +
"""
States that are invariant under every collective transformation U^{x n},
U in SU(d) (the decoherence-free subspace, DFS), and the spin multiplicities
that count them for qubits.

Spin labels j are half-integers. They are accepted as numbers (0, 0.5, 1, ...)
and handled internally as the integer 2j.
"""
import itertools
import logging
import math
import numpy as np
import pandas as pd
import scipy.linalg
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple, Union

# local imports
from dfsloss.dfsloss_types import Pairing, Routing, Seed
from dfsloss.exceptions import (DfsDimensionMismatchException, InvalidPairingException,
                                NoDecoherenceFreeSubspaceException, NotNormalizedException)
from dfsloss.helpers import (EXACT_TOL, MEMBERSHIP_SEED, MEMBERSHIP_TOL, MEMBERSHIP_TRIALS, NORM_TOL,
                             NULL_SPACE_RCOND, make_rng, validate_local_dim_param, validate_positive_int_param,
                             validate_normalized_state, validate_tolerance_param)
from dfsloss.logger import log
from dfsloss.qcore import (PureState, _check_dimension, apply_collective, embed_operator, haar_random_su,
                           inner, permute_sites)


# -

# # Clebsch-Gordan multiplicities

# +
def _two_j(j: Union[int, float, Fraction]) -> int:
    two_j = Fraction(j) * 2
    if two_j.denominator != 1:
        raise ValueError(f'j must be a multiple of 1/2. Got {j}')
    if two_j < 0:
        raise ValueError(f'j must be non negative. Got {j}')
    return int(two_j)


def _validate_n(n) -> None:
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)):
        raise TypeError(f'Expected n to be an int. Got {type(n)}')
    if n < 0:
        raise ValueError(f'n must be non negative. Got {n}')


def _multiplicity_two_j(n: int, two_j: int) -> int:
    if two_j > n or (n - two_j) % 2:
        return 0
    upper = (n + two_j) // 2  # n/2 + j
    # (2j + 1) / (n/2 + j + 1) * C(n, n/2 + j) is always an integer
    return (two_j + 1) * math.comb(n, upper) // (upper + 1)


def multiplicity(n: int, j: Union[int, float, Fraction]) -> int:
    """
    Number of times the spin-j representation appears in n qubits:
    K^j_n = (2j + 1) / (n/2 + j + 1) * C(n, n/2 + j).

    Returns 0 when the parity of 2j differs from the parity of n
    or when j > n/2.

    Examples
    --------
    >>> multiplicity(4, 0)
    2
    >>> multiplicity(3, 0.5)
    2
    >>> multiplicity(4, 0.5)
    0
    """
    _validate_n(n)
    return _multiplicity_two_j(n, _two_j(j))


@dataclass(frozen=True)
class MultiplicityTable:
    """
    K^j_n for every allowed j. Keys of `entries` are 2j.
    """
    n: int
    entries: Dict[int, int]

    def completeness(self) -> int:
        """sum_j (2j + 1) K^j_n, equal to 2**n"""
        return sum((two_j + 1) * k for two_j, k in self.entries.items())

    def to_frame(self) -> pd.DataFrame:
        """
        Examples
        --------
        >>> multiplicity_table(4).to_frame()["multiplicity"].tolist()
        [2, 3, 1]
        """
        return (pd.DataFrame({'j': [two_j / 2 if two_j % 2 else two_j // 2 for two_j in self.entries],
                              'multiplicity': list(self.entries.values()),
                              'dimension': [two_j + 1 for two_j in self.entries]})
                .set_index('j'))


def multiplicity_table(n: int) -> MultiplicityTable:
    _validate_n(n)
    entries = {two_j: _multiplicity_two_j(n, two_j) for two_j in range(n % 2, n + 1, 2)}
    return MultiplicityTable(n=n, entries=entries)


def trivial_multiplicity(n: int, d: int) -> int:
    """
    Dimension of the SU(d) invariant subspace of n qudits: the number of
    standard Young tableaux of the rectangular diagram with d rows of
    length n/d (hook length formula). Zero when d does not divide n.

    Examples
    --------
    >>> trivial_multiplicity(4, 2), trivial_multiplicity(6, 3), trivial_multiplicity(3, 2)
    (2, 5, 0)
    """
    _validate_n(n)
    validate_local_dim_param(d)
    if n % d:
        return 0
    width = n // d
    hooks = 1
    for row in range(d):
        for col in range(width):
            hooks *= (width - col) + (d - row) - 1
    return math.factorial(n) // hooks


# -

# # Singlet products and the trine

# +
def singlet_product(pairing: Pairing) -> PureState:
    """
    Product of two-qubit singlets (|01> - |10>)/sqrt(2) over the given pairs.
    The order inside a pair matters only for the global sign.

    Parameters
    ----------
    pairing
        Disjoint pairs (a, b) covering the sites 1..n exactly once

    Raises
    ------
    dfsloss.exceptions.InvalidPairingException
        When the pairs overlap or do not cover every site

    Examples
    --------
    >>> psi = singlet_product([(1, 2)])
    >>> np.round(psi.amplitudes.real * np.sqrt(2), 12)
    array([ 0.,  1., -1.,  0.])
    """
    pairs = [tuple(int(s) for s in pair) for pair in pairing]
    if any(len(pair) != 2 for pair in pairs):
        raise InvalidPairingException(f'Every element of the pairing must be a pair. Got {pairs}')
    sites = [s for pair in pairs for s in pair]
    n = len(sites)
    if n == 0 or sorted(sites) != list(range(1, n + 1)):
        raise InvalidPairingException(f'{pairs} is not a perfect matching of the sites 1..{n}')
    _check_dimension(2, n)

    t = np.zeros([2] * n, dtype=complex)
    for choice in itertools.product((0, 1), repeat=len(pairs)):
        labels = [0] * n
        sign = 1
        for (a, b), flip in zip(pairs, choice):
            labels[a - 1], labels[b - 1] = (1, 0) if flip else (0, 1)
            sign *= -1 if flip else 1
        t[tuple(labels)] = sign
    return PureState(2, n, t.reshape(-1) / np.sqrt(2) ** len(pairs))


XI_PAIRINGS = {1: ((1, 2), (3, 4)),
               2: ((1, 3), (4, 2)),
               3: ((1, 4), (2, 3))}
# port p of the measurement receives photon routing[p - 1] so that basis k becomes basis 1
BASIS_ROUTINGS: Dict[int, Routing] = {1: (1, 2, 3, 4),
                                      2: (1, 3, 4, 2),
                                      3: (1, 4, 2, 3)}


def _validate_k(k) -> int:
    if k not in (1, 2, 3):
        raise ValueError(f'k must be 1, 2 or 3. Got {k}')
    return int(k)


def basis_routing(k: int) -> Routing:
    return BASIS_ROUTINGS[_validate_k(k)]


def inverse_routing(routing: Sequence[int]) -> Tuple[int, ...]:
    """
    Site order that undoes `routing` in `dfsloss.qcore.permute_sites`.

    Examples
    --------
    >>> inverse_routing((1, 3, 4, 2))
    (1, 4, 2, 3)
    """
    inverse = [0] * len(routing)
    for port, photon in enumerate(routing, start=1):
        inverse[photon - 1] = port
    return tuple(inverse)


@lru_cache(maxsize=None)
def xi(k: int) -> PureState:
    """Four-qubit singlet products Xi_1, Xi_2, Xi_3."""
    return singlet_product(XI_PAIRINGS[_validate_k(k)])


@lru_cache(maxsize=None)
def xi_perp(k: int) -> PureState:
    """
    The state of the two-dimensional four-qubit DFS orthogonal to Xi_k.

    Xi_1^perp is obtained by Gram-Schmidt inside the DFS with its phase fixed so
    that the amplitude of |0011> is +1/sqrt(3). The other two are the same
    photon relabelling of Xi_1^perp that maps Xi_1 onto Xi_k.

    Examples
    --------
    >>> round(float(xi_perp(1).amplitudes[0b0011].real * np.sqrt(3)), 12)
    1.0
    """
    k = _validate_k(k)
    if k != 1:
        return permute_sites(xi_perp(1), inverse_routing(BASIS_ROUTINGS[k]))
    x1 = xi(1)
    residuals = [b - x1 * inner(x1, b) for b in dfs_basis(4, 2).states]
    perp = max(residuals, key=lambda r: r.norm).normalized()
    anchor = perp.amplitudes[0b0011]
    return perp * (abs(anchor) / anchor)


def trine_gram() -> np.ndarray:
    """
    Gram matrix <Xi_k|Xi_l> of the trine.

    Examples
    --------
    >>> np.round(trine_gram().real, 12)
    array([[ 1. , -0.5, -0.5],
           [-0.5,  1. , -0.5],
           [-0.5, -0.5,  1. ]])
    """
    states = [xi(k) for k in (1, 2, 3)]
    return np.array([[inner(a, b) for b in states] for a in states])


@dataclass(frozen=True)
class LogicalAmplitudes:
    """
    Amplitudes of the logical state alpha Xi_1 + beta Xi_3. Since
    <Xi_1|Xi_3> = -1/2 the state is normalized when
    |alpha|^2 + |beta|^2 - Re(alpha* beta) = 1.
    """
    alpha: complex
    beta: complex

    def __post_init__(self) -> None:
        norm2 = self._norm2(self.alpha, self.beta)
        if abs(norm2 - 1) > NORM_TOL:
            raise NotNormalizedException(f'alpha Xi_1 + beta Xi_3 has squared norm {norm2}. '
                                         'Use LogicalAmplitudes.normalized')

    @staticmethod
    def _norm2(alpha: complex, beta: complex) -> float:
        return abs(alpha) ** 2 + abs(beta) ** 2 - (np.conj(alpha) * beta).real

    @classmethod
    def normalized(cls, alpha: complex, beta: complex) -> 'LogicalAmplitudes':
        """
        Examples
        --------
        >>> amplitudes = LogicalAmplitudes.normalized(1, 1)
        >>> round(abs(amplitudes.alpha), 12)
        1.0
        """
        norm2 = cls._norm2(alpha, beta)
        if norm2 <= 0:
            raise NotNormalizedException('alpha Xi_1 + beta Xi_3 is the zero vector')
        scale = 1 / np.sqrt(norm2)
        return cls(alpha=complex(alpha * scale), beta=complex(beta * scale))

    @classmethod
    def random(cls, seed: Seed) -> 'LogicalAmplitudes':
        rng = make_rng(seed)
        alpha, beta = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        return cls.normalized(alpha, beta)

    def encode(self) -> PureState:
        return xi(1) * self.alpha + xi(3) * self.beta


# -

# # Invariant subspace

# +
def su_generators(d: int) -> List[np.ndarray]:
    """
    The d**2 - 1 generalized Gell-Mann matrices (Hermitian, traceless),
    a basis of su(d).
    """
    validate_local_dim_param(d, minimum=2)
    generators = []
    for j, k in itertools.combinations(range(d), 2):
        sym = np.zeros((d, d), dtype=complex)
        sym[j, k] = sym[k, j] = 1
        antisym = np.zeros((d, d), dtype=complex)
        antisym[j, k], antisym[k, j] = -1j, 1j
        generators.extend([sym, antisym])
    for m in range(1, d):
        diag = np.zeros(d)
        diag[:m] = 1
        diag[m] = -m
        generators.append(np.diag(diag * np.sqrt(2 / (m * (m + 1)))).astype(complex))
    return generators


def _digits(n: int, d: int) -> np.ndarray:
    """Basis strings as a (d**n, n) array, site 1 first."""
    index = np.arange(d ** n)
    return (index[:, None] // d ** np.arange(n - 1, -1, -1)[None, :]) % d


def _balanced_indices(n: int, d: int) -> np.ndarray:
    digits = _digits(n, d)
    counts = np.stack([(digits == letter).sum(axis=1) for letter in range(d)], axis=1)
    return np.flatnonzero((counts == n // d).all(axis=1))


def _canonical_columns(vectors: np.ndarray, tol: float = 1e-8) -> np.ndarray:
    """
    Orthonormal basis of the column span of `vectors` that depends only on the
    span: reduced row echelon form of the rows, then Gram-Schmidt in pivot order,
    then the first non negligible entry of each vector made real positive.
    The vectors are returned sorted by dominant index (position of the largest
    modulus, the smallest position on ties).

    Examples
    --------
    >>> q = _canonical_columns(np.array([[0, 1], [0, 0], [1, 0]]))
    >>> np.allclose(q, [[1, 0], [0, 0], [0, 1]])
    True
    """
    a = vectors.T.astype(complex)
    nb_rows, nb_cols = a.shape
    pivot_row = 0
    for col in range(nb_cols):
        if pivot_row == nb_rows:
            break
        candidates = np.abs(a[pivot_row:, col])
        if candidates.max() < tol:
            continue
        best = pivot_row + int(np.argmax(candidates))
        a[[pivot_row, best]] = a[[best, pivot_row]]
        a[pivot_row] = a[pivot_row] / a[pivot_row, col]
        for row in range(nb_rows):
            if row != pivot_row:
                a[row] = a[row] - a[row, col] * a[pivot_row]
        pivot_row += 1
    q, _ = np.linalg.qr(a.T)
    for col in range(q.shape[1]):
        first = np.flatnonzero(np.abs(q[:, col]) > tol)[0]
        q[:, col] *= abs(q[first, col]) / q[first, col]
    dominant = [int(np.argmax(np.round(np.abs(q[:, col]), 10))) for col in range(q.shape[1])]
    return q[:, np.argsort(dominant, kind='stable')]


@dataclass(frozen=True, eq=False)
class DfsBasis:
    """
    Orthonormal basis of the collective SU(d) invariant states of n qudits.
    """
    local_dim: int
    num_sites: int
    states: Tuple[PureState, ...]

    def __len__(self) -> int:
        return len(self.states)

    def as_matrix(self) -> np.ndarray:
        """Basis vectors as columns."""
        return np.stack([s.amplitudes for s in self.states], axis=1)

    def gram(self) -> np.ndarray:
        m = self.as_matrix()
        return m.conj().T @ m

    def residual(self, psi: PureState) -> float:
        """Norm of the part of `psi` outside the span."""
        m = self.as_matrix()
        return float(np.linalg.norm(psi.amplitudes - m @ (m.conj().T @ psi.amplitudes)))


def invariant_null_space(n: int, d: int, balanced_only: bool = True) -> Tuple[np.ndarray, np.ndarray]:
    """
    Joint null space of the collective generators sum_k g^{(k)}, as columns,
    together with the basis indices its rows refer to.

    With `balanced_only=False` the whole d**n space is searched, which is
    only practical for small n. Invariance under the diagonal collective
    phases then has to show up as balanced support of the result.

    Examples
    --------
    >>> null, support = invariant_null_space(2, 2, balanced_only=False)
    >>> null.shape, support.tolist()
    ((4, 1), [0, 1, 2, 3])
    >>> invariant_null_space(2, 2)[1].tolist()
    [1, 2]
    """
    validate_positive_int_param(n, name='n')
    validate_local_dim_param(d, minimum=2)
    _check_dimension(d, n)
    support = _balanced_indices(n, d) if balanced_only else np.arange(d ** n)
    blocks = []
    for g in su_generators(d):
        total = sum(embed_operator(g, site, n, sparse=True) for site in range(1, n + 1))
        blocks.append(total[:, support].toarray())
    return scipy.linalg.null_space(np.vstack(blocks), rcond=NULL_SPACE_RCOND), support


@lru_cache(maxsize=None)
def dfs_basis(n: int, d: int) -> DfsBasis:
    """
    Orthonormal basis of the states with U^{x n}|psi> = |psi> for all U in SU(d).

    The subspace is the joint null space of the collective generators
    sum_k g^{(k)} for a basis g of su(d), computed by singular value decomposition.
    The diagonal generators vanish exactly on the strings holding every letter
    n/d times so the null space is searched among those strings only.

    Parameters
    ----------
    n
        Number of qudits
    d
        Local dimension

    Raises
    ------
    dfsloss.exceptions.NoDecoherenceFreeSubspaceException
        When d does not divide n (the subspace is empty)
    dfsloss.exceptions.DfsDimensionMismatchException
        When the numerical null space does not have the dimension given by
        `trivial_multiplicity`
    dfsloss.exceptions.StateTooLargeException
        When d**n is above the dense limit

    Examples
    --------
    >>> basis = dfs_basis(2, 2)
    >>> len(basis), np.round(basis.states[0].amplitudes.real * np.sqrt(2), 12)
    (1, array([ 0.,  1., -1.,  0.]))
    >>> len(dfs_basis(4, 2)), len(dfs_basis(3, 3))
    (2, 1)
    """
    validate_positive_int_param(n, name='n')
    validate_local_dim_param(d, minimum=2)
    if n % d:
        raise NoDecoherenceFreeSubspaceException(f'There is no SU({d}) invariant state of {n} qudits: '
                                                 f'{d} does not divide {n}')
    dim = _check_dimension(d, n)
    null, support = invariant_null_space(n, d, balanced_only=True)

    expected = trivial_multiplicity(n, d)
    if null.shape[1] != expected:
        raise DfsDimensionMismatchException(f'Found a {null.shape[1]} dimensional invariant subspace for n={n}, '
                                            f'd={d} but representation theory predicts {expected}')

    columns = _canonical_columns(null)
    states = []
    for col in range(columns.shape[1]):
        amplitudes = np.zeros(dim, dtype=complex)
        amplitudes[support] = columns[:, col]
        states.append(PureState(d, n, amplitudes))
    log(f'DFS of {n} qudits of dimension {d}: {len(states)} states', level=logging.DEBUG)
    return DfsBasis(local_dim=d, num_sites=n, states=tuple(states))


def random_dfs_state(n: int, d: int, seed: Seed) -> PureState:
    """Normalized random superposition of the DFS basis states."""
    basis = dfs_basis(n, d)
    rng = make_rng(seed)
    coefficients = rng.standard_normal(len(basis)) + 1j * rng.standard_normal(len(basis))
    coefficients /= np.linalg.norm(coefficients)
    return PureState(d, n, basis.as_matrix() @ coefficients)


# -

# # Invariance checks

# +
@dataclass(frozen=True)
class InvarianceReport:
    max_deviation: float
    trials: int
    tol: float

    @property
    def passed(self) -> bool:
        return self.max_deviation < self.tol


def verify_invariance(psi: PureState, trials: int = 100, seed: Seed = 0, tol: float = EXACT_TOL) -> InvarianceReport:
    """
    max ||U^{x n} psi - psi|| over `trials` Haar random U in SU(d).

    Examples
    --------
    >>> verify_invariance(xi(1), trials=20).passed
    True
    >>> from dfsloss.qcore import basis_state
    >>> verify_invariance(basis_state([0, 0, 0, 0]), trials=20).passed
    False
    """
    validate_normalized_state(psi)
    validate_positive_int_param(trials, name='trials')
    validate_tolerance_param(tol)
    rng = make_rng(seed)
    deviation = 0.0
    for _ in range(trials):
        u = haar_random_su(psi.local_dim, rng)
        deviation = max(deviation, (apply_collective(u, psi) - psi).norm)
    return InvarianceReport(max_deviation=deviation, trials=trials, tol=tol)


def is_in_dfs(psi: PureState) -> bool:
    """
    Membership gate used by the operations that are only defined on the DFS.
    Only the direction of `psi` is tested.
    """
    if psi.num_sites % psi.local_dim or psi.norm == 0:
        return False
    report = verify_invariance(psi.normalized(), trials=MEMBERSHIP_TRIALS, seed=MEMBERSHIP_SEED, tol=MEMBERSHIP_TOL)
    return report.passed


def balanced_support_check(psi: PureState, tol: float = NORM_TOL) -> bool:
    """
    True when every amplitude above `tol` sits on a basis string holding each
    letter 0..d-1 exactly n/d times (a consequence of the invariance under
    diagonal collective phases).

    Examples
    --------
    >>> balanced_support_check(xi(1))
    True
    >>> from dfsloss.qcore import basis_state
    >>> balanced_support_check(basis_state([0, 0, 0, 1]))
    False
    """
    n, d = psi.num_sites, psi.local_dim
    if n % d:
        raise NoDecoherenceFreeSubspaceException(f'Balanced strings need {d} to divide {n}')
    support = np.flatnonzero(np.abs(psi.amplitudes) > tol)
    return bool(np.isin(support, _balanced_indices(n, d)).all())
