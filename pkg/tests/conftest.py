import pytest
from hypothesis import settings

from freefactor import Word, boundary_word, parse_word

settings.register_profile("deterministic", derandomize=True)
settings.load_profile("deterministic")


def W(text: str, rank: int = 2) -> Word:
    return parse_word(text, rank)


@pytest.fixture
def b2() -> Word:
    return boundary_word(2)


@pytest.fixture
def b3() -> Word:
    return boundary_word(3)
