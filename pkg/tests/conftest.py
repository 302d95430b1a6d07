"""Shared fixtures: a default precision context and deterministic hypothesis."""

import pytest
from hypothesis import HealthCheck, settings

from eistrig import PrecisionContext

settings.register_profile(
    "suite",
    max_examples=20,
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")


@pytest.fixture(scope="session")
def ctx() -> PrecisionContext:
    """Default context: 128 bits, tolerance 1e-12 (shared so caches stay warm)."""
    return PrecisionContext()
