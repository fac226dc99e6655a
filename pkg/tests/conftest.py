import functools

import pytest

import punctstego as ps


@functools.lru_cache(maxsize=None)
def get_bch(m: int, t: int):
    return ps.bch_code(m, t)


@functools.lru_cache(maxsize=None)
def get_puncture(m: int, t: int):
    code = get_bch(m, t)
    return ps.find_puncture_set(code.base, t)


@pytest.fixture(scope="session")
def bch43():
    return get_bch(4, 3)


@pytest.fixture(scope="session")
def bch42():
    return get_bch(4, 2)


@pytest.fixture(scope="session")
def hamming74():
    return ps.hamming_code(3)


@pytest.fixture(scope="session")
def punct43():
    return get_puncture(4, 3)
