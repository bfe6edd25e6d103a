import pytest

from permav import counting, family_aki


@pytest.fixture(scope="session")
def a51_desk_series():
    """Brute-forced counting sequence of Av(A(5,1)) up to n = 12."""
    return counting.count_avoiders(family_aki(5, 1), 12, threads=2)


@pytest.fixture(scope="session")
def a55_series():
    """Brute-forced counting sequence of Av(A(5,5)) up to n = 11."""
    return counting.count_avoiders(family_aki(5, 5), 11, threads=2)
