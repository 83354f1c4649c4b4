"""Shared fixtures: expensive objects built once per session."""

import pytest

from klingenfj.qseries import eigenform


@pytest.fixture(scope="session")
def f12():
    """Weight-12 eigenform, truncated far enough for default budgets."""
    return eigenform(12, 2048)


@pytest.fixture(scope="session")
def f12_deep():
    """Weight-12 eigenform at the truncation the verification suites use."""
    return eigenform(12, 8192)
