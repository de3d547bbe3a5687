from pathlib import Path

import pytest

from src.generate import RunConfig

FIXTURES = Path(__file__).parent.parent / "data" / "fixtures"


@pytest.fixture
def fixtures() -> Path:
    return FIXTURES


@pytest.fixture
def small_config() -> RunConfig:
    """A quick seeded battery: enough cases to hit every branch, few enough to stay fast."""
    return RunConfig(seed=42, cases=40, dims=(0, 4), magnitude=20)
