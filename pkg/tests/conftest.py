import sys
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from momentorder import alternating_pair  # noqa: E402


@pytest.fixture(scope="session")
def alt2():
    """Small alternating pair shared by the demo-style tests."""
    return alternating_pair(1, 2, 2)


@pytest.fixture(scope="session")
def alt2_padded():
    return alternating_pair(1, 2, 2, padded=True)


def frac(x) -> Fraction:
    return Fraction(x)
