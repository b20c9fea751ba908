import pytest

from packcover import tournaments_up_to_iso


@pytest.fixture(scope="session")
def tournament_reps():
    """Isomorphism-class representatives of tournaments, keyed by n (n <= 6)."""
    return {n: tournaments_up_to_iso(n) for n in range(1, 7)}
