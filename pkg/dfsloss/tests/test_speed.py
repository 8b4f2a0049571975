#!/usr/bin/env python
# coding: utf-8
# +
import pytest
from typing import Any, Dict
# local imports
from dfsloss.dfs import dfs_basis
from dfsloss.qkd import ChannelConfig, run_protocol


# -

# # DFS construction speed
#
# The basis is cached, the setup empties the cache so that every round builds it again.

# +
def test_dfs_basis_speed(n, d, benchmark):
    def setup():
        dfs_basis.cache_clear()

    def benchmark_func():  # pragma: no cover
        dfs_basis(n, d)

    # iterations has to be 1 when there is a setup
    benchmark.pedantic(benchmark_func, setup=setup, rounds=3, iterations=1)
    assert len(dfs_basis(n, d)) > 0


# -

# ## Protocol speed

# +
pytest_params: Dict[str, Any] = dict(argnames='rounds, threads, use_fock_backend',
                                     argvalues=[[2_000, 1, False], [2_000, 4, False], [100, 1, True]],
                                     ids=['abstract', 'abstract_threads', 'fock'])


@pytest.mark.parametrize(**pytest_params)
def test_protocol_speed(_, benchmark, rounds, threads, use_fock_backend):
    channel = ChannelConfig(collective_noise=True, loss_probability=0.5, seed=0)

    def benchmark_func():  # pragma: no cover
        return run_protocol(rounds, channel, use_fock_backend=use_fock_backend, threads=threads)

    stats = benchmark.pedantic(benchmark_func, rounds=1, iterations=1)
    assert stats.rounds == rounds
