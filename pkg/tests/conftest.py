import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from gaitid import synthgen

ACCEPTANCE_SEED = 0


@pytest.fixture(scope="session")
def acceptance_dataset():
    """The seeded 10-user, ~3600-row synthetic benchmark dataset."""
    return synthgen.generate_benchmark_dataset(seed=ACCEPTANCE_SEED)
