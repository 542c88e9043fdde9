import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from ruled_equiv.cli import load_surface  # noqa: E402


@pytest.fixture(scope="session")
def surf():
    """Load a bundled corpus surface by name (cached)."""
    cache = {}

    def get(name):
        if name not in cache:
            cache[name] = load_surface(name)
        return cache[name]

    return get
