from __future__ import annotations

import os

import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture(autouse=True)
def _no_range_override(monkeypatch):
    # the sample box must not leak in from the calling shell
    monkeypatch.delenv("GC_RANGE", raising=False)
    yield


def pytest_report_header(config):
    return [f"GC_RANGE in caller environment: {os.environ.get('GC_RANGE', '<unset>')}"]
