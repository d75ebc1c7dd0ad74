import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from scholarmap.ingest import parse_dataset

FIXTURE_CSV = Path(__file__).parent / "data" / "fixture.csv"


@pytest.fixture(scope="session")
def fixture_bytes() -> bytes:
    return FIXTURE_CSV.read_bytes()


@pytest.fixture(scope="session")
def dataset(fixture_bytes):
    return parse_dataset(fixture_bytes)
