# # Tolerances

# +
# squared norms, traces and hermiticity of constructed values
NORM_TOL = 1e-12
# predicates that are exact in theory (invariance, branch orthogonality, recovered fidelity)
EXACT_TOL = 1e-10
# membership gate of the operations that are only defined on the DFS
MEMBERSHIP_TOL = 1e-8
MEMBERSHIP_TRIALS = 8
MEMBERSHIP_SEED = 20_100_601
# singular values below this fraction of the largest one count as zero
NULL_SPACE_RCOND = 1e-9
# Fock amplitudes below this modulus are dropped
PRUNE_TOL = 1e-14
# largest dense side we accept (d**n)
MAX_DIMENSION = 2 ** 20


# -

# # Random numbers

def make_rng(seed):
    """
    Returns a numpy Generator for an explicit seed. A Generator is passed through
    so that callers can chain draws without reseeding.

    Examples
    --------
    >>> rng = make_rng(3)
    >>> make_rng(rng) is rng
    True
    """
    import numpy as np
    if isinstance(seed, np.random.Generator):
        return seed
    validate_seed_param(seed)
    return np.random.default_rng(seed)


# # Parameters checking

# +
def _is_int(value) -> bool:
    import numpy as np
    return isinstance(value, (int, np.integer)) and not isinstance(value, bool)


def validate_seed_param(seed) -> None:
    if not _is_int(seed):
        raise TypeError(f'Expected seed to be an int. Got {type(seed)}')
    if seed < 0:
        raise ValueError('seed must be a non negative int')


def validate_positive_int_param(value, name: str) -> None:
    if not _is_int(value):
        raise TypeError(f'Expected {name} to be an int. Got {type(value)}')
    if value <= 0:
        raise ValueError(f'{name} must be strictly above 0')


def validate_local_dim_param(local_dim, minimum: int = 1) -> None:
    if not _is_int(local_dim):
        raise TypeError(f'Expected the local dimension to be an int. Got {type(local_dim)}')
    if local_dim < minimum:
        raise ValueError(f'the local dimension must be at least {minimum} (got {local_dim})')


def validate_probability_param(probability, name: str = 'probability') -> None:
    if isinstance(probability, bool) or not isinstance(probability, (int, float)):
        raise TypeError(f'Expected {name} to be a number. Got {type(probability)}')
    if not 0 <= probability <= 1:
        raise ValueError(f'{name} must be in [0, 1] (got {probability})')


def validate_tolerance_param(tol) -> None:
    if isinstance(tol, bool) or not isinstance(tol, (int, float)):
        raise TypeError(f'Expected tol to be a number. Got {type(tol)}')
    if tol <= 0:
        raise ValueError('tol must be strictly above 0')


def validate_normalized_state(state, name: str = 'psi', tol: float = NORM_TOL) -> None:
    """
    Raises NotNormalizedException when the squared norm of `state` (anything
    with `is_normalized` and `norm`, e.g. a `PureState`) is not 1 within `tol`.
    """
    from dfsloss.exceptions import NotNormalizedException
    if not state.is_normalized(tol):
        raise NotNormalizedException(f'{name} must be normalized. Got a squared norm of {state.norm ** 2:.12g}')
