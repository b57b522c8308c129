"""
Pytest configuration for multiclass GL tests.
"""

import os

import pytest


def pytest_collection_modifyitems(config, items):
    """Skip deep_cycle tests unless DEEP_TEST_CYCLE=1 is set."""
    if os.getenv("DEEP_TEST_CYCLE") == "1":
        return
    skip_deep = pytest.mark.skip(reason="deep cycle tests need DEEP_TEST_CYCLE=1")
    for item in items:
        if "deep_cycle" in item.keywords:
            item.add_marker(skip_deep)


@pytest.fixture(autouse=True)
def single_worker(monkeypatch):
    """Keep joblib on one worker so tests stay cheap and ordered."""
    monkeypatch.setenv("GLM_THREADS", "1")
