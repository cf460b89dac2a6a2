import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from nacent import build


@pytest.fixture(scope="session")
def s3():
    return build("symmetric(3)")


@pytest.fixture(scope="session")
def s4():
    return build("symmetric(4)")


@pytest.fixture(scope="session")
def q8():
    return build("dicyclic(2)")


@pytest.fixture(scope="session")
def z6():
    return build("cyclic(6)")


@pytest.fixture(scope="session")
def flagship():
    """The order-1029 two-nacent group; shared because it is the one
    expensive fixture."""
    return build("heisenberg_frobenius(7,3)")
