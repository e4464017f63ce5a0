import os
import random
from collections.abc import Generator
from unittest.mock import patch

import pytest

from framecheck.core.config import Settings, get_settings
from framecheck.repositories.cases import CaseRepository


@pytest.fixture(autouse=True)
def mock_env(tmp_path) -> Generator[None, None, None]:
    """Isolate every test from the caller's FRAMECHECK_* environment."""
    with patch.dict(
        os.environ,
        {"FRAMECHECK_OUTPUT_DIR": str(tmp_path / "out")},
        clear=True,
    ):
        # Clear the lru_cache on get_settings so it re-reads the mocked environment
        get_settings.cache_clear()
        yield
    get_settings.cache_clear()


@pytest.fixture
def settings() -> Settings:
    return get_settings()


@pytest.fixture
def rng() -> random.Random:
    """Seeded generator for the property suites."""
    return random.Random(20240607)


@pytest.fixture(scope="session")
def repo() -> CaseRepository:
    return CaseRepository()


@pytest.fixture(scope="session")
def case(repo):
    """Look up a builtin case by name."""
    return repo.get
