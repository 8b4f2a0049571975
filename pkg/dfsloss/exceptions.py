# +
class DimensionMismatchException(Exception):
    """
    Raised when two objects that must act on the same space
    do not agree on their local dimension or their number of sites

    E.g. in `dfsloss.qcore.tensor` when a qubit state is combined
    with a qutrit state.
    """
    pass


class InvalidSitesException(Exception):
    """
    Raised when a set of site indices is empty, contains duplicates
    or refers to sites that do not exist (sites are numbered from 1)
    """
    pass


class StateTooLargeException(Exception):
    """
    Raised when a dense representation of d**n amplitudes would exceed
    the cap of 2**20 entries per side
    """
    pass


class NotNormalizedException(Exception):
    """
    Raised when a constructor that promises a normalized state
    receives a vector whose squared norm is not 1
    """
    pass


class NotUnitaryException(Exception):
    """
    Raised when a matrix fails the unitarity certification
    (or the unit determinant certification for special unitaries)
    """
    pass


class NoDecoherenceFreeSubspaceException(Exception):
    """
    Raised when asking for the collective SU(d) invariant subspace of
    n qudits where d does not divide n. The subspace is empty in that case
    (this is not a numerical failure, see `DfsDimensionMismatchException`)
    """
    pass


class DfsDimensionMismatchException(Exception):
    """
    Raised when the numerically computed invariant subspace does not have
    the dimension predicted by representation theory
    """
    pass


class NotInDfsException(Exception):
    """
    Raised when an operation that is only defined for states of the
    decoherence-free subspace gets a state failing the membership test

    E.g. `dfsloss.lossrec.branch_decompose` on a product state or a
    recovery measurement returning the total pseudospin -3 or +3.
    """
    pass


class InvalidPairingException(Exception):
    """
    Raised when the pairs given for a product of singlets do not
    form a perfect matching of the sites
    """
    pass


class EmptyPortException(Exception):
    """
    Raised when trying to remove a photon from an input port
    that holds no photon
    """
    pass
