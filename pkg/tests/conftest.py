import pytest

from weylorders.rootsystem import SimpleType
from weylorders.weylchar import CharPolyTable, simple_table


@pytest.fixture(scope="session")
def small_exceptional_tables():
    """G2, F4 and E6 tables (seconds to enumerate)."""
    return {
        str(t): simple_table(t)
        for t in (SimpleType("G", 2), SimpleType("F", 4), SimpleType("E", 6))
    }


@pytest.fixture(scope="session")
def e7_table() -> CharPolyTable:
    """The enumerated E7 table; minutes of work, shared across the session."""
    return simple_table(SimpleType("E", 7))
