# +
"""
Dense state vectors and density operators of n qudits.

Index convention: the computational basis index of the string s_1 ... s_n is
sum_k s_k * d**(n - k), i.e. site 1 is the most significant digit. Sites are
numbered from 1 everywhere in dfsloss.

All values are immutable after construction (the numpy buffers are flagged
read-only) and all functions are pure.
"""
import numpy as np
import scipy.linalg
import scipy.sparse
from dataclasses import InitVar, dataclass
from functools import reduce
from typing import List, Sequence, Union

# local imports
from dfsloss.dfsloss_types import Seed, Sites
from dfsloss.exceptions import (DimensionMismatchException, InvalidSitesException, NotNormalizedException,
                                NotUnitaryException, StateTooLargeException)
from dfsloss.helpers import (MAX_DIMENSION, NORM_TOL, make_rng, validate_local_dim_param,
                             validate_positive_int_param)


# -

# # Local helpers

# +
def _check_dimension(local_dim: int, num_sites: int) -> int:
    validate_local_dim_param(local_dim)
    validate_positive_int_param(num_sites, name='num_sites')
    dim = local_dim ** num_sites
    if dim > MAX_DIMENSION:
        raise StateTooLargeException(f'{num_sites} sites of local dimension {local_dim} need {dim} amplitudes, '
                                     f'above the dense limit of {MAX_DIMENSION}')
    return dim


def _readonly(array: np.ndarray) -> np.ndarray:
    array = np.array(array, dtype=complex, copy=True)
    array.setflags(write=False)
    return array


def _validate_sites(sites: Sites, num_sites: int, allow_empty: bool = False) -> List[int]:
    sites = [int(s) for s in sites]
    if not sites and not allow_empty:
        raise InvalidSitesException('At least one site is required')
    if len(set(sites)) != len(sites):
        raise InvalidSitesException(f'Duplicated sites in {sites}')
    bad = [s for s in sites if not 1 <= s <= num_sites]
    if bad:
        raise InvalidSitesException(f'Sites {bad} are out of range (sites are numbered from 1 to {num_sites})')
    return sites


def _validate_order(order: Sequence[int], num_sites: int) -> List[int]:
    order = _validate_sites(order, num_sites=num_sites)
    if len(order) != num_sites:
        raise InvalidSitesException(f'{order} is not a permutation of the sites 1..{num_sites}')
    return order


# -

# # Domain types

# +
@dataclass(frozen=True, eq=False)
class PureState:
    """
    Amplitude vector of `num_sites` qudits of dimension `local_dim`.

    The constructor only checks the length of the vector. Use `normalized`
    or `from_amplitudes(..., normalize=True)` for an explicit normalization.
    """
    local_dim: int
    num_sites: int
    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        dim = _check_dimension(self.local_dim, self.num_sites)
        amplitudes = _readonly(np.asarray(self.amplitudes).reshape(-1))
        if amplitudes.size != dim:
            raise DimensionMismatchException(f'Expected {dim} amplitudes for {self.num_sites} sites of '
                                             f'dimension {self.local_dim}. Got {amplitudes.size}')
        object.__setattr__(self, 'amplitudes', amplitudes)

    @classmethod
    def from_amplitudes(cls, amplitudes, local_dim: int, num_sites: Union[int, None] = None,
                        normalize: bool = False) -> 'PureState':
        """
        Builds a state from an amplitude vector. The number of sites is
        inferred from the length when not given.

        Examples
        --------
        >>> psi = PureState.from_amplitudes([1, 1], local_dim=2, normalize=True)
        >>> psi.num_sites, round(psi.norm ** 2, 12)
        (1, 1.0)
        """
        amplitudes = np.asarray(amplitudes, dtype=complex).reshape(-1)
        if num_sites is None:
            num_sites = int(round(np.log(amplitudes.size) / np.log(local_dim))) if local_dim > 1 else 1
        state = cls(local_dim=local_dim, num_sites=num_sites, amplitudes=amplitudes)
        return state.normalized() if normalize else state

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def is_normalized(self, tol: float = NORM_TOL) -> bool:
        return abs(self.norm ** 2 - 1) < tol

    def normalized(self) -> 'PureState':
        norm = self.norm
        if norm == 0:
            raise NotNormalizedException('Cannot normalize the zero vector')
        return PureState(self.local_dim, self.num_sites, self.amplitudes / norm)

    def as_tensor(self) -> np.ndarray:
        """One axis per site."""
        return self.amplitudes.reshape([self.local_dim] * self.num_sites)

    def __add__(self, other: 'PureState') -> 'PureState':
        _check_same_space(self, other)
        return PureState(self.local_dim, self.num_sites, self.amplitudes + other.amplitudes)

    def __sub__(self, other: 'PureState') -> 'PureState':
        _check_same_space(self, other)
        return PureState(self.local_dim, self.num_sites, self.amplitudes - other.amplitudes)

    def __mul__(self, scalar: complex) -> 'PureState':
        return PureState(self.local_dim, self.num_sites, self.amplitudes * scalar)

    __rmul__ = __mul__

    def __neg__(self) -> 'PureState':
        return self * -1


@dataclass(frozen=True, eq=False)
class DensityOperator:
    """
    Hermitian, unit trace matrix of side d**n.

    Hermiticity and the trace are checked at construction. The eigenvalue
    check is more expensive and is done by `validate_positive`.
    """
    local_dim: int
    num_sites: int
    matrix: np.ndarray

    def __post_init__(self) -> None:
        dim = _check_dimension(self.local_dim, self.num_sites)
        matrix = _readonly(self.matrix)
        if matrix.shape != (dim, dim):
            raise DimensionMismatchException(f'Expected a {dim}x{dim} matrix. Got shape {matrix.shape}')
        if np.max(np.abs(matrix - matrix.conj().T)) > NORM_TOL:
            raise ValueError('A density operator must be Hermitian')
        if abs(np.trace(matrix) - 1) > NORM_TOL:
            raise NotNormalizedException(f'A density operator must have unit trace (got {np.trace(matrix)})')
        object.__setattr__(self, 'matrix', matrix)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def eigenvalues(self) -> np.ndarray:
        return scipy.linalg.eigvalsh(self.matrix)

    def validate_positive(self, tol: float = 1e-10) -> None:
        smallest = self.eigenvalues().min()
        if smallest < -tol:
            raise ValueError(f'A density operator must be positive semidefinite (smallest eigenvalue {smallest})')


@dataclass(frozen=True, eq=False)
class UnitaryMatrix:
    """
    Square unitary matrix. When `special` is True the determinant is 1.

    Unitarity (and the determinant when `special`) is certified at construction
    unless `check` is False, which is reserved for products of already
    certified matrices.
    """
    matrix: np.ndarray
    special: bool = False
    check: InitVar[bool] = True

    def __post_init__(self, check: bool) -> None:
        matrix = _readonly(self.matrix)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise DimensionMismatchException(f'Expected a square matrix. Got shape {matrix.shape}')
        if check:
            deviation = np.max(np.abs(matrix.conj().T @ matrix - np.eye(matrix.shape[0])))
            if deviation > NORM_TOL:
                raise NotUnitaryException(f'U^dagger U differs from the identity by {deviation}')
            if self.special and abs(np.linalg.det(matrix) - 1) > NORM_TOL:
                raise NotUnitaryException(f'Expected a unit determinant. Got {np.linalg.det(matrix)}')
        object.__setattr__(self, 'matrix', matrix)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def dagger(self) -> 'UnitaryMatrix':
        return UnitaryMatrix(self.matrix.conj().T, special=self.special, check=False)

    def __matmul__(self, other: 'UnitaryMatrix') -> 'UnitaryMatrix':
        if self.dim != other.dim:
            raise DimensionMismatchException(f'Cannot multiply unitaries of size {self.dim} and {other.dim}')
        return UnitaryMatrix(self.matrix @ other.matrix, special=self.special and other.special, check=False)


# -

# # Constructors

# +
def basis_state(labels: Sequence[int], local_dim: int = 2) -> PureState:
    """
    Computational basis state |s_1 ... s_n>.

    Examples
    --------
    >>> int(np.argmax(np.abs(basis_state([0, 1]).amplitudes)))
    1
    """
    labels = [int(s) for s in labels]
    if any(not 0 <= s < local_dim for s in labels):
        raise ValueError(f'Labels must be in 0..{local_dim - 1}. Got {labels}')
    num_sites = len(labels)
    dim = _check_dimension(local_dim, num_sites)
    index = 0
    for s in labels:
        index = index * local_dim + s
    amplitudes = np.zeros(dim, dtype=complex)
    amplitudes[index] = 1
    return PureState(local_dim, num_sites, amplitudes)


def projector(psi: PureState) -> DensityOperator:
    """|psi><psi| for a normalized state."""
    return DensityOperator(psi.local_dim, psi.num_sites, np.outer(psi.amplitudes, psi.amplitudes.conj()))


def _check_same_space(a, b) -> None:
    if a.local_dim != b.local_dim or a.num_sites != b.num_sites:
        raise DimensionMismatchException(f'Objects live on different spaces: {a.num_sites} sites of dimension '
                                         f'{a.local_dim} vs {b.num_sites} sites of dimension {b.local_dim}')


# -

# # State algebra

# +
def tensor(a: PureState, b: PureState) -> PureState:
    """
    Kronecker product, the sites of `a` come first.

    Examples
    --------
    >>> psi = tensor(basis_state([0]), basis_state([1]))
    >>> psi.num_sites, int(np.argmax(np.abs(psi.amplitudes)))
    (2, 1)
    """
    if a.local_dim != b.local_dim:
        raise DimensionMismatchException(f'Cannot combine local dimensions {a.local_dim} and {b.local_dim}')
    return PureState(a.local_dim, a.num_sites + b.num_sites, np.kron(a.amplitudes, b.amplitudes))


def inner(a: PureState, b: PureState) -> complex:
    """<a|b>"""
    _check_same_space(a, b)
    return complex(np.vdot(a.amplitudes, b.amplitudes))


def partial_trace(rho: Union[DensityOperator, PureState], keep: Sites) -> DensityOperator:
    """
    Reduced density operator on the sites `keep` (kept in increasing order).

    A `PureState` is accepted and treated as |psi><psi| without building the
    full projector.

    Parameters
    ----------
    rho
        Density operator or pure state of n sites
    keep
        Non empty set of sites (numbered from 1) to keep

    Raises
    ------
    dfsloss.exceptions.InvalidSitesException
        When `keep` is empty or refers to sites that do not exist

    Examples
    --------
    >>> singlet = PureState.from_amplitudes([0, 1, -1, 0], local_dim=2, normalize=True)
    >>> np.allclose(partial_trace(singlet, keep=[2]).matrix, np.eye(2) / 2)
    True
    """
    d, n = rho.local_dim, rho.num_sites
    keep = sorted(_validate_sites(keep, num_sites=n))
    traced = [s for s in range(1, n + 1) if s not in keep]
    dim_keep = d ** len(keep)

    if isinstance(rho, PureState):
        # rho_keep = M M^dagger with M the amplitudes as a (kept, traced) matrix
        t = rho.as_tensor().transpose([s - 1 for s in keep + traced])
        m = t.reshape(dim_keep, -1)
        return DensityOperator(d, len(keep), m @ m.conj().T)

    t = rho.matrix.reshape([d] * (2 * n))
    # trace out from the last site so that the axes of the remaining sites do not move
    remaining = n
    for s in reversed(traced):
        t = np.trace(t, axis1=s - 1, axis2=s - 1 + remaining)
        remaining -= 1
    return DensityOperator(d, len(keep), t.reshape(dim_keep, dim_keep))


def permute_sites(state: Union[PureState, DensityOperator], order: Sequence[int]):
    """
    Relabels sites: site p of the result holds site `order[p - 1]` of `state`.

    Examples
    --------
    >>> psi = permute_sites(basis_state([0, 0, 1]), order=[3, 1, 2])
    >>> int(np.argmax(np.abs(psi.amplitudes)))  # |100>
    4
    """
    n, d = state.num_sites, state.local_dim
    axes = [s - 1 for s in _validate_order(order, num_sites=n)]
    if isinstance(state, PureState):
        return PureState(d, n, state.as_tensor().transpose(axes).reshape(-1))
    t = state.matrix.reshape([d] * (2 * n)).transpose(axes + [a + n for a in axes])
    return DensityOperator(d, n, t.reshape(state.dim, state.dim))


def fidelity(psi: PureState, rho: DensityOperator) -> float:
    """
    <psi|rho|psi>, clamped to [0, 1] when it lies outside by less than 1e-12.

    Examples
    --------
    >>> fidelity(basis_state([0]), DensityOperator(2, 1, np.eye(2) / 2))
    0.5
    """
    _check_same_space(psi, rho)
    value = float(np.real(np.vdot(psi.amplitudes, rho.matrix @ psi.amplitudes)))
    if value < -NORM_TOL or value > 1 + NORM_TOL:
        raise NotNormalizedException(f'Fidelity {value} is out of [0, 1], is the state normalized?')
    return min(max(value, 0.0), 1.0)


def trace_distance(rho: DensityOperator, sigma: DensityOperator) -> float:
    """(1/2) ||rho - sigma||_1"""
    _check_same_space(rho, sigma)
    return float(0.5 * np.abs(scipy.linalg.eigvalsh(rho.matrix - sigma.matrix)).sum())


# -

# # Operators

# +
def embed_operator(operator: np.ndarray, site: int, num_sites: int, sparse: bool = False):
    """
    I x ... x operator x ... x I with `operator` acting on `site`.
    With `sparse=True` a scipy CSR matrix is returned.
    """
    operator = np.asarray(operator)
    d = operator.shape[0]
    _check_dimension(d, num_sites)
    _validate_sites([site], num_sites=num_sites)
    left = d ** (site - 1)
    right = d ** (num_sites - site)
    if sparse:
        return scipy.sparse.kron(scipy.sparse.kron(scipy.sparse.identity(left, format='csr'),
                                                   scipy.sparse.csr_matrix(operator)),
                                 scipy.sparse.identity(right, format='csr'), format='csr')
    return np.kron(np.kron(np.eye(left), operator), np.eye(right))


def apply_operator(operator: np.ndarray, psi: PureState, sites: Sites) -> PureState:
    """
    Applies a d**k x d**k matrix to the k given sites (in the given order).
    The result is not renormalized.
    """
    d, n = psi.local_dim, psi.num_sites
    sites = _validate_sites(sites, num_sites=n)
    k = len(sites)
    operator = np.asarray(operator, dtype=complex)
    if operator.shape != (d ** k, d ** k):
        raise DimensionMismatchException(f'Expected a {d ** k}x{d ** k} operator for {k} sites. '
                                         f'Got shape {operator.shape}')
    op = operator.reshape([d] * (2 * k))
    t = np.tensordot(op, psi.as_tensor(), axes=(list(range(k, 2 * k)), [s - 1 for s in sites]))
    t = np.moveaxis(t, list(range(k)), [s - 1 for s in sites])
    return PureState(d, n, t.reshape(-1))


def apply_unitary(u: UnitaryMatrix, psi: PureState, sites: Sites) -> PureState:
    return apply_operator(u.matrix, psi, sites)


def apply_collective(u: UnitaryMatrix, psi: PureState) -> PureState:
    """
    U^{x n} |psi> by contracting U with every site, without building the
    d**n x d**n matrix.
    """
    if u.dim != psi.local_dim:
        raise DimensionMismatchException(f'Unitary of size {u.dim} cannot act on qudits '
                                         f'of dimension {psi.local_dim}')
    t = psi.as_tensor()
    for axis in range(psi.num_sites):
        t = np.moveaxis(np.tensordot(u.matrix, t, axes=([1], [axis])), 0, axis)
    return PureState(psi.local_dim, psi.num_sites, t.reshape(-1))


def conjugate_density(u: UnitaryMatrix, rho: DensityOperator) -> DensityOperator:
    """U rho U^dagger for a unitary of the full size of rho."""
    if u.dim != rho.dim:
        raise DimensionMismatchException(f'Unitary of size {u.dim} cannot act on a {rho.dim}x{rho.dim} operator')
    matrix = u.matrix @ rho.matrix @ u.matrix.conj().T
    # restore exact hermiticity lost to rounding
    return DensityOperator(rho.local_dim, rho.num_sites, (matrix + matrix.conj().T) / 2)


def haar_random_su(d: int, seed: Seed) -> UnitaryMatrix:
    """
    Haar random element of SU(d).

    QR decomposition of a standard complex Gaussian (Ginibre) matrix with the
    phases of the diagonal of R moved into Q, then divided by a d-th root
    of its determinant.

    Parameters
    ----------
    d
        Matrix size (d >= 1)
    seed
        int seed or numpy Generator (draws are reproducible given the seed)

    Examples
    --------
    >>> u = haar_random_su(3, seed=7)
    >>> bool(abs(np.linalg.det(u.matrix) - 1) < 1e-12)
    True
    >>> haar_random_su(1, seed=0).matrix
    array([[1.+0.j]])
    """
    validate_local_dim_param(d, minimum=1)
    rng = make_rng(seed)
    z = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / np.sqrt(2)
    q, r = scipy.linalg.qr(z)
    diagonal = np.diag(r)
    q = q * (diagonal / np.abs(diagonal))
    q = q / np.linalg.det(q) ** (1 / d)
    if d == 1:
        q = np.ones((1, 1), dtype=complex)
    return UnitaryMatrix(q, special=True)


def collective(u: UnitaryMatrix, n: int) -> UnitaryMatrix:
    """
    U^{x n} as a d**n x d**n matrix.

    Examples
    --------
    >>> x = UnitaryMatrix(np.array([[0, 1], [1, 0]]))
    >>> flipped = collective(x, 2).matrix @ basis_state([0, 1]).amplitudes
    >>> int(np.argmax(np.abs(flipped)))  # |10>
    2
    """
    validate_positive_int_param(n, name='n')
    _check_dimension(u.dim, n)
    matrix = reduce(np.kron, [u.matrix] * n)
    return UnitaryMatrix(matrix, special=u.special, check=False)


def diagonal_phase_unitary(phases: Sequence[float]) -> UnitaryMatrix:
    """
    diag(exp(i phi_0), ..., exp(i phi_{d-1})) with the phases recentred
    so that they sum to zero.
    """
    phases = np.asarray(phases, dtype=float)
    if phases.ndim != 1 or phases.size < 1:
        raise ValueError('Expected a non empty vector of phases')
    phases = phases - phases.mean()
    return UnitaryMatrix(np.diag(np.exp(1j * phases)), special=True)
