import pytest

from cfdeform.analysis import enumerate_rationals


@pytest.fixture(scope="session")
def rationals_ell_10():
    return enumerate_rationals(10)


@pytest.fixture(scope="session")
def rationals_ell_12():
    return enumerate_rationals(12)
