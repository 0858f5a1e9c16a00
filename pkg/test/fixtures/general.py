"""Shared fixtures: frequency sets, oracle values and logging setup.

Frequency sets are cached per session because the larger ones take a
noticeable moment to enumerate.
"""
from logging import getLogger
from os import path

import pytest
from yaml import safe_load

from aalto.lattice_utilities import enumerate_frequencies

TEST_ROOT = path.dirname(path.dirname(__file__))
ORACLE_FILE = path.join(TEST_ROOT, 'oracle_values.yaml')


@pytest.fixture(scope='session')
def oracle_values():
    """Expected constants from test/oracle_values.yaml."""
    with open(ORACLE_FILE, encoding='utf-8') as f:
        return safe_load(f)


@pytest.fixture(scope='session')
def frequency_set():
    """Return a cached enumerator; strict mode is off so any (d, m) works."""
    cache = {}

    def get_frequency_set(d, m):
        if (d, m) not in cache:
            cache[(d, m)] = enumerate_frequencies(d, m, strict=False)
        return cache[(d, m)]
    return get_frequency_set


@pytest.fixture(scope='session')
def d4_m5(frequency_set):
    return frequency_set(4, 5)


@pytest.fixture(scope='session')
def d5_m3(frequency_set):
    return frequency_set(5, 3)


@pytest.fixture(scope='function', autouse=True)
def propagate_aalto_logs(monkeypatch):
    """The CLI logging config stops 'aalto' records at its own handlers;
    let them reach caplog.
    """
    monkeypatch.setattr(getLogger('aalto'), 'propagate', True)
