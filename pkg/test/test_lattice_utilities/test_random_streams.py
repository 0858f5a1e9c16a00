import numpy as np
import pytest

from aalto.lattice_utilities import default_workers, map_blocks, stream_generator
from aalto.lattice_utilities.random_streams import (LINE_STREAM, WAVE_STREAM,
                                                    block_sizes)


def test_same_key_should_give_same_draws():
    first = stream_generator(7, WAVE_STREAM, 3).standard_normal(10)
    second = stream_generator(7, WAVE_STREAM, 3).standard_normal(10)
    assert np.array_equal(first, second)


@pytest.mark.parametrize("other", [(8, WAVE_STREAM, 3), (7, LINE_STREAM, 3), (7, WAVE_STREAM, 4)])
def test_different_keys_should_give_different_draws(other):
    first = stream_generator(7, WAVE_STREAM, 3).random(4)
    assert not np.array_equal(first, stream_generator(*other).random(4))


def test_negative_seed_should_raise():
    with pytest.raises(ValueError):
        stream_generator(-1, WAVE_STREAM)


@pytest.mark.parametrize("total, block, expected", [(10, 4, [4, 4, 2]), (8, 4, [4, 4]), (3, 5, [3])])
def test_block_sizes(total, block, expected):
    assert block_sizes(total, block) == expected


def test_map_blocks_should_keep_input_order():
    assert map_blocks(lambda x: x * x, range(50), workers=8) == [x * x for x in range(50)]


@pytest.mark.parametrize("value, expected", [('3', 3), ('0', None), ('many', None)])
def test_default_workers_should_read_environment(monkeypatch, caplog, value, expected):
    monkeypatch.setenv('AALTO_THREADS', value)
    workers = default_workers()
    if expected is None:
        assert workers >= 1
        assert 'Ignoring AALTO_THREADS' in caplog.text
    else:
        assert workers == expected
