# -*- coding: utf-8 -*-
import numpy as np
import pytest
from dfsloss.exceptions import NotNormalizedException
from dfsloss.helpers import (make_rng, validate_local_dim_param, validate_normalized_state, validate_positive_int_param,
                             validate_probability_param, validate_seed_param, validate_tolerance_param)
from dfsloss.qcore import basis_state


# # Tests

@pytest.mark.parametrize('value', [-1, 0, 10, 'abc', 2.0, True])
def test_valid_positive_int_values(_, value):
    # 10 is the only valid value here
    if value == 10 and not isinstance(value, float):
        validate_positive_int_param(value, name='trials')
        return
    # all the other values should fail
    with pytest.raises((TypeError, ValueError)) as exc_info:
        validate_positive_int_param(value, name='trials')
    assert 'trials' in str(exc_info.value)


@pytest.mark.parametrize('value', [0, 1, 2, 3, 'abc', 2.0])
def test_valid_local_dim_values(_, value):
    if value in (2, 3) and isinstance(value, int):
        validate_local_dim_param(value, minimum=2)
        return
    with pytest.raises((TypeError, ValueError)):
        validate_local_dim_param(value, minimum=2)


@pytest.mark.parametrize('value', [-0.1, 0, 0.5, 1, 1.1, '0.5', None, False])
def test_valid_probability_values(_, value):
    if value in (0, 0.5, 1) and not isinstance(value, bool):
        validate_probability_param(value)
        return
    with pytest.raises((TypeError, ValueError)):
        validate_probability_param(value)


@pytest.mark.parametrize('value', [-1e-10, 0, 1e-10, 'abc'])
def test_valid_tolerance_values(_, value):
    if value == 1e-10:
        validate_tolerance_param(value)
        return
    with pytest.raises((TypeError, ValueError)):
        validate_tolerance_param(value)


@pytest.mark.parametrize('value', [-1, 0, np.int64(5), 1.0, None])
def test_valid_seed_values(_, value):
    if value in (0, 5) and not isinstance(value, float):
        validate_seed_param(value)
        return
    with pytest.raises((TypeError, ValueError)):
        validate_seed_param(value)


def test_make_rng(_):
    assert make_rng(1).integers(0, 1000) == make_rng(1).integers(0, 1000)
    rng = np.random.default_rng(0)
    assert make_rng(rng) is rng
    with pytest.raises(TypeError):
        make_rng(None)


def test_validate_normalized_state(_):
    validate_normalized_state(basis_state([0, 1]))
    with pytest.raises(NotNormalizedException) as exc_info:
        validate_normalized_state(basis_state([0, 1]) * 2, name='phi')
    assert 'phi must be normalized' in str(exc_info.value)
