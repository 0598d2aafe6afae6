import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from fixtures import make_snapshot  # noqa: E402


@pytest.fixture(scope="session")
def snapshot():
    return make_snapshot()


@pytest.fixture(scope="session")
def bare_snapshot():
    return make_snapshot(with_extras=False)
