"""Shared test fixtures for xlaguerre tests.

Sets XLAGUERRE_ env vars to test defaults BEFORE any package module is imported, so the
module-level Settings() sees them.
"""

from __future__ import annotations

import os

import pytest

_TEST_ENV = {
    "XLAGUERRE_LOG_LEVEL": "warning",
    "XLAGUERRE_MAX_WORKERS": "2",
}

for k, v in _TEST_ENV.items():
    os.environ.setdefault(k, v)


@pytest.fixture
def appendix_entries():
    from xlaguerre.suites import load_appendix

    return load_appendix()


@pytest.fixture
def no_color(monkeypatch):
    monkeypatch.setenv("NO_COLOR", "1")
