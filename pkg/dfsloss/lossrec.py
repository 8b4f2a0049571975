# +
"""
Loss of one particle from a DFS state.

Losing site s maps |psi> onto the mixture (1/d) sum_i |Psi^(i)><Psi^(i)| of the
branches Psi^(i) = sqrt(d) <i|_s psi (the remaining sites keep their original
order). For DFS states the branches are orthonormal and are related to each
other by a state independent unitary, so the encoded information survives and,
for four qubits, can be restored by measuring the total pseudospin.
"""
import itertools
import logging
import numpy as np
import pandas as pd
import scipy.linalg
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, List, Optional, Tuple, Union

# local imports
from dfsloss.dfs import InvarianceReport, LogicalAmplitudes, dfs_basis, is_in_dfs, singlet_product
from dfsloss.dfsloss_types import Seed, Sites
from dfsloss.exceptions import DimensionMismatchException, NotInDfsException
from dfsloss.helpers import (EXACT_TOL, NORM_TOL, make_rng, validate_local_dim_param, validate_positive_int_param,
                             validate_tolerance_param)
from dfsloss.logger import log
from dfsloss.qcore import (DensityOperator, PureState, UnitaryMatrix, _validate_sites, apply_collective,
                           apply_operator, collective, conjugate_density, embed_operator, fidelity,
                           haar_random_su, inner, partial_trace, permute_sites, tensor, trace_distance)

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
PROJ_0 = np.diag([1, 0]).astype(complex)
PROJ_1 = np.diag([0, 1]).astype(complex)


# -

# # Branches

# +
def _require_dfs(psi: PureState, check_membership: bool) -> None:
    if check_membership and not is_in_dfs(psi):
        raise NotInDfsException('This operation is only defined for states of the decoherence-free subspace')


@dataclass(frozen=True, eq=False)
class BranchSet:
    """
    Branches Psi^(0) ... Psi^(d-1) of a state for the loss of `lost_site`.
    """
    lost_site: int
    branches: Tuple[PureState, ...]

    @property
    def local_dim(self) -> int:
        return len(self.branches)

    @property
    def num_sites(self) -> int:
        """Number of sites of the state before the loss."""
        return self.branches[0].num_sites + 1

    def gram(self) -> np.ndarray:
        return np.array([[inner(a, b) for b in self.branches] for a in self.branches])


def lose_particle(psi: Union[PureState, DensityOperator], site: int) -> DensityOperator:
    """
    Partial trace over the lost site.

    Examples
    --------
    >>> singlet = singlet_product([(1, 2)])
    >>> np.allclose(lose_particle(singlet, 1).matrix, np.eye(2) / 2)
    True
    """
    n = psi.num_sites
    _validate_sites([site], num_sites=n)
    return partial_trace(psi, keep=[s for s in range(1, n + 1) if s != site])


def branch_decompose(psi: PureState, lost_site: int, check_membership: bool = True) -> BranchSet:
    """
    Psi^(i) = sqrt(d) <i|_{lost_site} psi for i = 0 .. d-1.

    Parameters
    ----------
    psi
        State of at least two sites
    lost_site
        Site (numbered from 1) that is lost
    check_membership
        Reject states that are not in the decoherence-free subspace

    Raises
    ------
    dfsloss.exceptions.NotInDfsException
        When `check_membership` is True and psi fails the membership gate

    Examples
    --------
    >>> from dfsloss.dfs import xi
    >>> branches = branch_decompose(xi(1), lost_site=1)
    >>> np.allclose(branches.gram(), np.eye(2))
    True
    """
    d, n = psi.local_dim, psi.num_sites
    _validate_sites([lost_site], num_sites=n)
    if n < 2:
        raise ValueError('A state of a single site has no branches')
    _require_dfs(psi, check_membership)
    t = psi.as_tensor()
    branches = tuple(PureState(d, n - 1, np.sqrt(d) * np.take(t, i, axis=lost_site - 1).reshape(-1))
                     for i in range(d))
    return BranchSet(lost_site=lost_site, branches=branches)


def reassemble_branches(branch_set: BranchSet) -> PureState:
    """sum_i |i>_{lost_site} x Psi^(i) / sqrt(d), the inverse of `branch_decompose`."""
    d = branch_set.local_dim
    tensors = [b.as_tensor() for b in branch_set.branches]
    t = np.stack(tensors, axis=branch_set.lost_site - 1) / np.sqrt(d)
    return PureState(d, branch_set.num_sites, t.reshape(-1))


def branch_mixture(branch_set: BranchSet) -> DensityOperator:
    """(1/d) sum_i |Psi^(i)><Psi^(i)|, equal to `lose_particle` of the decomposed state."""
    d = branch_set.local_dim
    first = branch_set.branches[0]
    matrix = sum(np.outer(b.amplitudes, b.amplitudes.conj()) for b in branch_set.branches) / d
    return DensityOperator(first.local_dim, first.num_sites, matrix)


def branch_projector(psi: PureState, lost_site: int, check_membership: bool = True) -> np.ndarray:
    """Orthogonal projector onto the span of the branches of psi."""
    branch_set = branch_decompose(psi, lost_site, check_membership=check_membership)
    span = scipy.linalg.orth(np.stack([b.amplitudes for b in branch_set.branches], axis=1), rcond=NORM_TOL)
    return span @ span.conj().T


# -

# # Branch identities

# +
def verify_branch_property(phi: PureState, psi: PureState, lost_site: int,
                           check_membership: bool = True) -> np.ndarray:
    """
    Matrix M_ij = <Phi^(i)|Psi^(j)>. For DFS states M = <Phi|Psi> I.

    `check_membership=False` lets the same matrix be computed for states
    outside the DFS, where the identity does not hold.

    Examples
    --------
    >>> from dfsloss.dfs import xi
    >>> np.allclose(verify_branch_property(xi(1), xi(3), lost_site=2), -0.5 * np.eye(2))
    True
    """
    if phi.local_dim != psi.local_dim or phi.num_sites != psi.num_sites:
        raise DimensionMismatchException('Both states must live on the same space')
    a = branch_decompose(phi, lost_site, check_membership=check_membership).branches
    b = branch_decompose(psi, lost_site, check_membership=check_membership).branches
    return np.array([[inner(x, y) for y in b] for x in a])


def cyclic_shift_w(d: int) -> UnitaryMatrix:
    """
    c * sum_i |i+1 mod d><i| with c = 1 for odd d and c = exp(i pi / d) for even d,
    the phase that brings the determinant of the shift ((-1)**(d-1)) to 1.

    Examples
    --------
    >>> w = cyclic_shift_w(2)
    >>> w.matrix
    array([[0.+0.j, 0.+1.j],
           [0.+1.j, 0.+0.j]])
    """
    validate_local_dim_param(d, minimum=2)
    shift = np.roll(np.eye(d, dtype=complex), 1, axis=0)
    phase = 1 if d % 2 else np.exp(1j * np.pi / d)
    matrix = phase * shift
    # exp(i pi / 2) is not exactly i in floating point
    matrix.real[np.abs(matrix.real) < NORM_TOL] = 0
    matrix.imag[np.abs(matrix.imag) < NORM_TOL] = 0
    return UnitaryMatrix(matrix, special=True)


@dataclass(frozen=True)
class BranchCycleReport:
    """
    overlaps[i] = <Psi^(i+1)|W^{x (n-1)}|Psi^(i)> (indices modulo d).
    """
    overlaps: Tuple[complex, ...]
    tol: float

    @property
    def phases(self) -> Tuple[float, ...]:
        return tuple(float(np.angle(o)) for o in self.overlaps)

    @property
    def max_deviation(self) -> float:
        return max(abs(abs(o) - 1) for o in self.overlaps)

    @property
    def passed(self) -> bool:
        return self.max_deviation < self.tol


def verify_branch_cycle(psi: PureState, lost_site: int, tol: float = EXACT_TOL,
                        check_membership: bool = True) -> BranchCycleReport:
    """
    Checks that W^{x (n-1)} maps each branch onto the next one up to a phase.
    The phase is the conjugate of the constant of `cyclic_shift_w` whatever the state.

    Examples
    --------
    >>> from dfsloss.dfs import xi
    >>> report = verify_branch_cycle(xi(1), lost_site=1)
    >>> report.passed, round(report.phases[0], 12)
    (True, -1.570796326795)
    """
    validate_tolerance_param(tol)
    d = psi.local_dim
    branches = branch_decompose(psi, lost_site, check_membership=check_membership).branches
    w = cyclic_shift_w(d)
    overlaps = tuple(inner(branches[(i + 1) % d], apply_collective(w, branches[i])) for i in range(d))
    return BranchCycleReport(overlaps=overlaps, tol=tol)


@dataclass(frozen=True)
class TransformReport:
    residuals: Tuple[float, ...]
    tol: float

    @property
    def passed(self) -> bool:
        return max(self.residuals) < self.tol


def transform_identity_check(psi: PureState, u: UnitaryMatrix, lost_site: int, tol: float = EXACT_TOL,
                             check_membership: bool = True) -> TransformReport:
    """
    Residuals ||U^{x (n-1)} Psi^(i) - sum_j conj(<j|U|i>) Psi^(j)|| for each i.
    """
    validate_tolerance_param(tol)
    if u.dim != psi.local_dim:
        raise DimensionMismatchException(f'Unitary of size {u.dim} cannot act on qudits of dimension {psi.local_dim}')
    branches = branch_decompose(psi, lost_site, check_membership=check_membership).branches
    d = psi.local_dim
    residuals = []
    for i in range(d):
        expected = sum((branches[j] * np.conj(u.matrix[j, i]) for j in range(1, d)),
                       branches[0] * np.conj(u.matrix[0, i]))
        residuals.append((apply_collective(u, branches[i]) - expected).norm)
    return TransformReport(residuals=tuple(residuals), tol=tol)


def post_loss_invariance(psi: PureState, lost_site: int, trials: int = 100, seed: Seed = 0,
                         tol: float = EXACT_TOL) -> InvarianceReport:
    """
    max over Haar random U of max |U^{x (n-1)} rho U^dagger^{x (n-1)} - rho| with
    rho the state after the loss. No membership gate: states outside the DFS
    are the negative control.

    Examples
    --------
    >>> from dfsloss.dfs import xi
    >>> post_loss_invariance(xi(1), lost_site=3, trials=10).passed
    True
    """
    validate_positive_int_param(trials, name='trials')
    validate_tolerance_param(tol)
    rho = lose_particle(psi, lost_site)
    rng = make_rng(seed)
    deviation = 0.0
    for _ in range(trials):
        u = collective(haar_random_su(psi.local_dim, rng), psi.num_sites - 1)
        deviation = max(deviation, float(np.max(np.abs(conjugate_density(u, rho).matrix - rho.matrix))))
    return InvarianceReport(max_deviation=deviation, trials=trials, tol=tol)


# -

# # Total pseudospin measurement

# +
@dataclass(frozen=True, eq=False)
class PseudospinBranch:
    eigenvalue: int
    probability: float
    post_state: PureState


def _pseudospin_eigenvalues(num_sites: int) -> np.ndarray:
    """sum_k (1 - 2 s_k) for every basis string, sigma^z |0> = |0>."""
    index = np.arange(2 ** num_sites)
    bits = (index[:, None] >> np.arange(num_sites - 1, -1, -1)[None, :]) & 1
    return (1 - 2 * bits).sum(axis=1)


def _require_qubits(state, what: str = 'state') -> None:
    if state.local_dim != 2:
        raise DimensionMismatchException(f'The pseudospin measurement needs qubits, the {what} has local '
                                         f'dimension {state.local_dim}')


def measure_total_pseudospin_z(state: PureState) -> List[PseudospinBranch]:
    """
    Projective measurement of sigma^z_1 + ... + sigma^z_n, as the list of
    outcomes with non negligible probability, by increasing eigenvalue.

    Examples
    --------
    >>> from dfsloss.qcore import basis_state
    >>> [(b.eigenvalue, b.probability) for b in measure_total_pseudospin_z(basis_state([0, 0, 0]))]
    [(3, 1.0)]
    """
    _require_qubits(state)
    eigenvalues = _pseudospin_eigenvalues(state.num_sites)
    weights = np.abs(state.amplitudes) ** 2
    total = weights.sum()
    outcomes = []
    for value in np.unique(eigenvalues):
        mask = eigenvalues == value
        probability = float(weights[mask].sum() / total)
        if probability <= NORM_TOL:
            continue
        post = PureState(2, state.num_sites, np.where(mask, state.amplitudes, 0)).normalized()
        outcomes.append(PseudospinBranch(eigenvalue=int(value), probability=probability, post_state=post))
    return outcomes


def sample_total_pseudospin_z(state: PureState, seed: Seed) -> PseudospinBranch:
    """Single sampled outcome of `measure_total_pseudospin_z`."""
    outcomes = measure_total_pseudospin_z(state)
    probabilities = np.array([o.probability for o in outcomes])
    rng = make_rng(seed)
    return outcomes[int(rng.choice(len(outcomes), p=probabilities / probabilities.sum()))]


# -

# # Four qubit recovery

# +
def cnot(num_sites: int, control: int, target: int) -> UnitaryMatrix:
    """
    Examples
    --------
    >>> np.real(cnot(2, 1, 2).matrix).astype(int)
    array([[1, 0, 0, 0],
           [0, 1, 0, 0],
           [0, 0, 0, 1],
           [0, 0, 1, 0]])
    """
    _validate_sites([control, target], num_sites=num_sites)
    matrix = (embed_operator(PROJ_0, control, num_sites)
              + embed_operator(PROJ_1, control, num_sites) @ embed_operator(SIGMA_X, target, num_sites))
    return UnitaryMatrix(matrix)


def recovery_operator() -> UnitaryMatrix:
    """|0><0| x I + |1><1| x (sigma^x)^{x 3} on four qubits, the fresh qubit first."""
    flip_all = reduce(np.kron, [SIGMA_X] * 3)
    return UnitaryMatrix(np.kron(PROJ_0, np.eye(8)) + np.kron(PROJ_1, flip_all))


def cnot_decomposition_check() -> bool:
    """
    True when the three C-NOT gates with control 1 and targets 2, 3 and 4
    multiply to `recovery_operator`, in every order.

    Examples
    --------
    >>> cnot_decomposition_check()
    True
    """
    expected = recovery_operator().matrix
    gates = [cnot(4, 1, target).matrix for target in (2, 3, 4)]
    return all(np.max(np.abs(reduce(np.matmul, order) - expected)) < 1e-14
               for order in itertools.permutations(gates))


@dataclass(frozen=True, eq=False)
class RecoveryOutcome:
    measured_value: int
    correction_applied: bool
    recovered: PureState
    fidelity_with_original: float


_PLUS = PureState(2, 1, np.array([1, 1]) / np.sqrt(2))
_FLIP_3 = reduce(np.kron, [SIGMA_X] * 3)


def _fresh_qubit_order(lost_site: int) -> List[int]:
    # the fresh qubit is site 1 of the circuit output and goes back to the lost position
    order = [2, 3, 4]
    order.insert(lost_site - 1, 1)
    return order


def _check_recovery_input(original: PureState, lost_site: int) -> None:
    _require_qubits(original, what='original state')
    if original.num_sites != 4:
        raise DimensionMismatchException(f'Recovery is defined for four qubits. Got {original.num_sites}')
    _validate_sites([lost_site], num_sites=4)


def recover_four_qubit(branch: PureState, original: PureState, lost_site: int = 1) -> RecoveryOutcome:
    """
    Restores a four qubit DFS state from one of its three qubit branches:

    1. measure the total pseudospin sigma^z of the three qubits
    2. apply (sigma^x)^{x 3} when the result is +1
    3. add a fresh qubit in |+>
    4. apply `recovery_operator` and put the fresh qubit at the lost site

    Parameters
    ----------
    branch
        Three qubit branch (as given by `branch_decompose`), any norm
    original
        The four qubit state before the loss, used for the fidelity only
    lost_site
        Site that was lost

    Raises
    ------
    dfsloss.exceptions.NotInDfsException
        When the measurement returns +3 or -3 or is not deterministic,
        which cannot happen for a branch of a DFS state

    Examples
    --------
    >>> from dfsloss.dfs import xi
    >>> branches = branch_decompose(xi(1), lost_site=1).branches
    >>> outcome = recover_four_qubit(branches[1], xi(1))
    >>> outcome.measured_value, outcome.correction_applied, round(outcome.fidelity_with_original, 10)
    (1, True, 1.0)
    """
    _check_recovery_input(original, lost_site)
    _require_qubits(branch, what='branch')
    if branch.num_sites != 3:
        raise DimensionMismatchException(f'Expected a three qubit branch. Got {branch.num_sites} sites')
    outcomes = measure_total_pseudospin_z(branch)
    if len(outcomes) != 1:
        raise NotInDfsException(f'The pseudospin measurement is not deterministic '
                                f'(outcomes {[o.eigenvalue for o in outcomes]}), the branch does not come from a '
                                'DFS state')
    outcome = outcomes[0]
    if abs(outcome.eigenvalue) == 3:
        raise NotInDfsException(f'Pseudospin {outcome.eigenvalue} cannot come from a DFS state')
    post = outcome.post_state
    correction = outcome.eigenvalue == 1
    if correction:
        post = apply_operator(_FLIP_3, post, sites=[1, 2, 3])
    restored = apply_operator(recovery_operator().matrix, tensor(_PLUS, post), sites=[1, 2, 3, 4])
    restored = permute_sites(restored, _fresh_qubit_order(lost_site))
    value = abs(inner(original, restored)) ** 2
    return RecoveryOutcome(measured_value=outcome.eigenvalue, correction_applied=correction, recovered=restored,
                           fidelity_with_original=min(value, 1.0))


@dataclass(frozen=True)
class RecoveryBranch:
    eigenvalue: int
    probability: float
    correction_applied: bool
    fidelity: float


@dataclass(frozen=True, eq=False)
class ChannelRecovery:
    """
    Recovery applied to the mixture left by the loss. `total_fidelity` is
    sum_m p_m F_m over the outcomes m = -1 and +1; the outcomes +3 and -3
    count as failures and their weight is `invalid_probability`.
    `recovered` is the output state conditioned on a valid outcome.
    """
    branches: Tuple[RecoveryBranch, ...]
    total_fidelity: float
    invalid_probability: float
    recovered: Optional[DensityOperator]


def recover_channel(rho: DensityOperator, original: PureState, lost_site: int) -> ChannelRecovery:
    """
    The four qubit recovery applied to a three qubit density operator: both
    measurement outcomes are followed with their probabilities.

    Examples
    --------
    >>> from dfsloss.dfs import LogicalAmplitudes
    >>> psi = LogicalAmplitudes.random(seed=1).encode()
    >>> round(recover_channel(lose_particle(psi, 2), psi, lost_site=2).total_fidelity, 10)
    1.0
    """
    _check_recovery_input(original, lost_site)
    _require_qubits(rho, what='density operator')
    if rho.num_sites != 3:
        raise DimensionMismatchException(f'Expected a three qubit density operator. Got {rho.num_sites} sites')

    eigenvalues = _pseudospin_eigenvalues(3)
    circuit = recovery_operator().matrix
    plus = np.full((2, 2), 0.5, dtype=complex)
    order = _fresh_qubit_order(lost_site)

    branches = []
    invalid = 0.0
    total = 0.0
    recovered = np.zeros((16, 16), dtype=complex)
    for value in np.unique(eigenvalues):
        mask = (eigenvalues == value).astype(float)
        conditioned = rho.matrix * np.outer(mask, mask)
        probability = float(np.trace(conditioned).real)
        if probability <= NORM_TOL:
            continue
        if abs(value) == 3:
            log(f'Pseudospin outcome {value} with probability {probability:.3e}: the state did not come from the '
                'decoherence-free subspace', level=logging.WARNING)
            invalid += probability
            branches.append(RecoveryBranch(eigenvalue=int(value), probability=probability, correction_applied=False,
                                           fidelity=0.0))
            continue
        correction = value == 1
        if correction:
            conditioned = _FLIP_3 @ conditioned @ _FLIP_3
        output = circuit @ np.kron(plus, conditioned / probability) @ circuit.conj().T
        state = permute_sites(DensityOperator(2, 4, (output + output.conj().T) / 2), order)
        branch_fidelity = fidelity(original, state)
        total += probability * branch_fidelity
        recovered += probability * state.matrix
        branches.append(RecoveryBranch(eigenvalue=int(value), probability=probability,
                                       correction_applied=bool(correction), fidelity=branch_fidelity))

    valid = 1 - invalid
    result = DensityOperator(2, 4, recovered / valid) if valid > NORM_TOL else None
    return ChannelRecovery(branches=tuple(branches), total_fidelity=min(total, 1.0), invalid_probability=invalid,
                           recovered=result)


# -

# # Loss of two particles

# +
@dataclass(frozen=True)
class TwoLossEntry:
    alpha: complex
    beta: complex
    singlet_weight: float
    partner_trace_distance: float


@dataclass(frozen=True)
class TwoLossReport:
    """
    For each logical input: weight of the singlet in the two remaining qubits and
    trace distance between the remaining states of the input and of its
    orthogonal partner in the DFS. A distance below `threshold` means the two
    logical states can no longer be told apart reliably.
    """
    lost_sites: Tuple[int, ...]
    entries: Tuple[TwoLossEntry, ...]
    threshold: float

    @property
    def min_trace_distance(self) -> float:
        return min(e.partner_trace_distance for e in self.entries)

    @property
    def exhibited(self) -> bool:
        return self.min_trace_distance < self.threshold

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame([e.__dict__ for e in self.entries])


def default_two_loss_inputs(count: int = 8, seed: Seed = 0) -> List[LogicalAmplitudes]:
    """
    Seeded random logical inputs, Xi_1, Xi_3 and the equal weight superposition
    of Xi_1 and Xi_1^perp (whose reduced state cannot be told from its partner's).
    """
    rng = make_rng(seed)
    inputs = [LogicalAmplitudes(1, 0), LogicalAmplitudes(0, 1),
              LogicalAmplitudes.normalized(1 + 1 / np.sqrt(3), 2 / np.sqrt(3))]
    inputs.extend(LogicalAmplitudes.random(rng) for _ in range(count))
    return inputs


def _dfs_partner(psi: PureState) -> PureState:
    basis = dfs_basis(4, 2).as_matrix()
    c = basis.conj().T @ psi.amplitudes
    return PureState(2, 4, basis @ np.array([-np.conj(c[1]), np.conj(c[0])]))


def two_loss_counterexample(inputs: Optional[Iterable[LogicalAmplitudes]] = None, lost_sites: Sites = (1, 2),
                            threshold: float = 0.99) -> TwoLossReport:
    """
    Loses two qubits of four qubit logical states and measures what is left.

    Examples
    --------
    >>> report = two_loss_counterexample([LogicalAmplitudes(1, 0), LogicalAmplitudes(0, 1)])
    >>> [round(e.singlet_weight, 12) for e in report.entries]
    [1.0, 0.25]
    """
    lost = sorted(_validate_sites(lost_sites, num_sites=4))
    if len(lost) != 2:
        raise ValueError(f'Exactly two sites must be lost. Got {lost}')
    keep = [s for s in range(1, 5) if s not in lost]
    singlet = singlet_product([(1, 2)])
    inputs = default_two_loss_inputs() if inputs is None else list(inputs)
    if not inputs:
        raise ValueError('At least one logical input is required')

    entries = []
    for amplitudes in inputs:
        psi = amplitudes.encode()
        rho = partial_trace(psi, keep=keep)
        sigma = partial_trace(_dfs_partner(psi), keep=keep)
        entries.append(TwoLossEntry(alpha=amplitudes.alpha, beta=amplitudes.beta,
                                    singlet_weight=fidelity(singlet, rho),
                                    partner_trace_distance=trace_distance(rho, sigma)))
    report = TwoLossReport(lost_sites=tuple(lost), entries=tuple(entries), threshold=threshold)
    log(f'Two losses {tuple(lost)}: minimal trace distance to the orthogonal partner {report.min_trace_distance:.3e}',
        level=logging.DEBUG)
    return report
