from pathlib import Path

import pytest

from softarc.instance import parse_instance
from softarc.valuation import (
    BoundedSum,
    CappedPrison,
    DrivingPenalty,
    FinancialLife,
    OrderedMax,
)

DATA = Path(__file__).parent / "data"

FINITE_FAIR = [
    BoundedSum(5),
    BoundedSum(1),
    OrderedMax(2),
    OrderedMax(3),
    OrderedMax(5),
    DrivingPenalty(10),
    CappedPrison(20),
]


@pytest.fixture
def fx():
    return parse_instance


def grid(v, scope):
    """Effective table of ``scope`` as a list, for compact assertions."""
    return v.constraints[scope].dense()
