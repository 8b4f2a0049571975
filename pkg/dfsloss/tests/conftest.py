#!/usr/bin/env python
# coding: utf-8
# +
"""
Configuration and helpers for the tests of dfsloss with pytest.
"""
import numpy as np
from inspect import signature
from typing import Dict, List, Tuple

# local imports
from dfsloss.qcore import PureState, inner
# -

# # Helpers for other test modules

# ## Numerical comparisons

# +
def assert_same_ray(a: PureState, b: PureState, atol: float = 1e-12):
    """
    Asserts that two states are equal up to a global phase.

    Examples
    --------
    >>> from dfsloss.qcore import basis_state
    >>> assert_same_ray(basis_state([0, 1]), basis_state([0, 1]) * 1j)
    """
    assert a.local_dim == b.local_dim and a.num_sites == b.num_sites
    overlap = inner(a, b)
    assert abs(abs(overlap) - a.norm * b.norm) < atol, f'|<a|b>| = {abs(overlap)}'


def binomial_sigma(p: float, nb_trials: int) -> float:
    return float(np.sqrt(p * (1 - p) / nb_trials))


# -

# ## Independent oracles

# +
def bratteli_paths(n: int) -> Dict[int, int]:
    """
    Number of ways to reach total spin j (key 2j) by adding n spins 1/2 one
    at a time, the coupling of spin j with spin 1/2 giving j - 1/2 and j + 1/2.

    Examples
    --------
    >>> bratteli_paths(4)
    {0: 2, 2: 3, 4: 1}
    """
    counts = {0: 1}
    for _ in range(n):
        new: Dict[int, int] = {}
        for two_j, nb in counts.items():
            new[two_j + 1] = new.get(two_j + 1, 0) + nb
            if two_j > 0:
                new[two_j - 1] = new.get(two_j - 1, 0) + nb
        counts = new
    return dict(sorted(counts.items()))


# -

# # Tests generation

# +
def parse_dfs_configs(text: str) -> List[Tuple[int, int]]:
    """
    Examples
    --------
    >>> parse_dfs_configs('2x2,3x3')
    [(2, 2), (3, 3)]
    """
    configs = []
    for item in text.split(','):
        n, d = item.strip().lower().split('x')
        configs.append((int(n), int(d)))
    return configs


def pytest_addoption(parser):
    parser.addoption('--dfs_configs', action="store", type=str, default='2x2,4x2,6x2,3x3,6x3')
    parser.addoption('--qkd_rounds', action="store", type=int, default=100_000)


def pytest_generate_tests(metafunc):
    # this is called for every test
    # only when we see the parameters "n" and "d" in a function
    # will we repeat a given test (once for each DFS configuration)
    func_params = signature(metafunc.function).parameters
    if not ('n' in func_params and 'd' in func_params):
        # dummy for executing a test only once (parameterize needs arguments)
        metafunc.parametrize('_', [''], scope='module')
        return

    configs = parse_dfs_configs(metafunc.config.option.dfs_configs)
    metafunc.parametrize("n, d", configs, ids=[f'n{n}_d{d}' for n, d in configs], scope='function')
