import pytest

from wedgewalks.walks import WedgeModel, count_walks, weighted_gf


@pytest.fixture(scope="session")
def tables():
    """Memoized exact count tables shared across the whole run."""
    cache = {}

    def get(kind: str, n: int, p: int = 1):
        key = (kind, p)
        if key not in cache or len(cache[key]) <= n:
            cache[key] = count_walks(WedgeModel(kind, p), n)
        return cache[key]

    return get


@pytest.fixture(scope="session")
def weighted():
    cache = {}

    def get(kind: str, p: int, order: int):
        key = (kind, p)
        if key not in cache or cache[key].order < order:
            cache[key] = weighted_gf(kind, p, order)
        return cache[key]

    return get
