"""Pytest configuration.

Acceptance runs (large Monte Carlo samples, full simulations, fine
quadrature grids, long m scans) are marked 'slow' and run only with
tox -- --run-slow
"""
import pytest


def pytest_addoption(parser):
    parser.addoption(
        '--run-slow',
        action='store_true',
        default=False,
        dest='run_slow',
        help='Run the slow acceptance tests too.'
        )


pytest_plugins = [
    "test.fixtures.general",
    "test.fixtures.oracles"
    ]


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: mark acceptance tests that take minutes to run")


def pytest_collection_modifyitems(config, items):
    """Skip tests marked with 'slow' unless --run-slow was given."""
    if config.getoption('run_slow'):
        return
    skip_slow = pytest.mark.skip(reason="needs --run-slow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)
