import itertools
import math
import numpy as np
import pandas as pd
from typing import Dict, List
# local imports
from dfsloss.dfs import LogicalAmplitudes, singlet_product, trine_gram, xi, xi_perp
from dfsloss.dfsloss_types import Seed
from dfsloss.helpers import make_rng
from dfsloss.qcore import PureState, basis_state, tensor


# # Tool for generating example states

# +
class _TestsExampleStates:
    """
    States for testing: random logical inputs, states outside the
    decoherence-free subspace and independent constructions of DFS states.
    """

    @staticmethod
    def logical_inputs(nb_inputs: int, seed: Seed = 0) -> List[LogicalAmplitudes]:
        rng = make_rng(seed)
        return [LogicalAmplitudes.random(rng) for _ in range(nb_inputs)]

    @staticmethod
    def non_dfs_states(seed: Seed = 0) -> Dict[str, PureState]:
        rng = make_rng(seed)
        qubit = (rng.standard_normal(2) + 1j * rng.standard_normal(2))
        random_qubit = PureState(2, 1, qubit / np.linalg.norm(qubit))
        product = random_qubit
        for _ in range(3):
            product = tensor(product, random_qubit)
        return {'0000': basis_state([0, 0, 0, 0]),
                '0101': basis_state([0, 1, 0, 1]),
                # a triplet pair next to a singlet pair
                'triplet_singlet': tensor(PureState(2, 2, np.array([0, 1, 1, 0]) / np.sqrt(2)),
                                          singlet_product([(1, 2)])),
                'random_product': product}

    @staticmethod
    def antisymmetric_state(d: int) -> PureState:
        """
        sum over permutations pi of sgn(pi) |pi(0) ... pi(d-1)> / sqrt(d!),
        built directly from the permutations.
        """
        amplitudes = np.zeros(d ** d, dtype=complex)
        for perm in itertools.permutations(range(d)):
            inversions = sum(1 for a, b in itertools.combinations(perm, 2) if a > b)
            index = 0
            for s in perm:
                index = index * d + s
            amplitudes[index] = (-1) ** inversions
        return PureState(d, d, amplitudes / np.sqrt(math.factorial(d)))


# -

# # Docs examples

# +
class DocsExampleStates:
    """
    Named states for the docs.
    """
    singlet = singlet_product([(1, 2)])
    xi1, xi2, xi3 = xi(1), xi(2), xi(3)
    xi1_perp = xi_perp(1)
    # alpha Xi_1 + beta Xi_3 with alpha = beta
    logical = LogicalAmplitudes.normalized(1, 1)
    # Gram matrix of the trine as a DataFrame
    trine = pd.DataFrame(trine_gram().real, index=[1, 2, 3], columns=[1, 2, 3])
