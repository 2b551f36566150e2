"""
Shared fixtures.
"""

import pytest


@pytest.fixture(autouse=True)
def isolated_log(tmp_path, monkeypatch):
    """Keep the CLI's file log inside the test's temporary directory."""
    monkeypatch.setenv("G_INTERSECT_LOG", str(tmp_path / "logs" / "g-intersect.log"))
