from dfsloss.qcore import (DensityOperator, PureState, UnitaryMatrix, basis_state, fidelity,  # noqa: F401
                           haar_random_su, inner, partial_trace, permute_sites, trace_distance)  # noqa: F401
from dfsloss.dfs import (DfsBasis, LogicalAmplitudes, MultiplicityTable, dfs_basis, multiplicity,  # noqa: F401
                         multiplicity_table, singlet_product, trine_gram, verify_invariance, xi, xi_perp)  # noqa: F401
from dfsloss.lossrec import (BranchSet, RecoveryOutcome, branch_decompose, lose_particle,  # noqa: F401
                             recover_channel, recover_four_qubit, two_loss_counterexample)  # noqa: F401
from dfsloss.photonic import (DetectionEvent, FockState, ModeOccupation, Outcome, classify,  # noqa: F401
                              count_distribution, encode_photons, measure_individual)  # noqa: F401
from dfsloss.qkd import ChannelConfig, ProtocolStats, conditional_exclusion_table, run_protocol  # noqa: F401
from dfsloss.examples import DocsExampleStates  # noqa: F401
from dfsloss._version import __version__  # noqa: F401
from dfsloss.exceptions import (DimensionMismatchException, InvalidSitesException,  # noqa: F401
                                StateTooLargeException, NotNormalizedException, NotUnitaryException,  # noqa: F401
                                NoDecoherenceFreeSubspaceException, DfsDimensionMismatchException,  # noqa: F401
                                NotInDfsException, InvalidPairingException, EmptyPortException)  # noqa: F401

__all__ = [
    'DensityOperator',
    'PureState',
    'UnitaryMatrix',
    'basis_state',
    'fidelity',
    'haar_random_su',
    'inner',
    'partial_trace',
    'permute_sites',
    'trace_distance',
    'DfsBasis',
    'LogicalAmplitudes',
    'MultiplicityTable',
    'dfs_basis',
    'multiplicity',
    'multiplicity_table',
    'singlet_product',
    'trine_gram',
    'verify_invariance',
    'xi',
    'xi_perp',
    'BranchSet',
    'RecoveryOutcome',
    'branch_decompose',
    'lose_particle',
    'recover_channel',
    'recover_four_qubit',
    'two_loss_counterexample',
    'DetectionEvent',
    'FockState',
    'ModeOccupation',
    'Outcome',
    'classify',
    'count_distribution',
    'encode_photons',
    'measure_individual',
    'ChannelConfig',
    'ProtocolStats',
    'conditional_exclusion_table',
    'run_protocol',
    'DocsExampleStates',
    'DimensionMismatchException',
    'InvalidSitesException',
    'StateTooLargeException',
    'NotNormalizedException',
    'NotUnitaryException',
    'NoDecoherenceFreeSubspaceException',
    'DfsDimensionMismatchException',
    'NotInDfsException',
    'InvalidPairingException',
    'EmptyPortException',
]
