from __future__ import annotations

import pytest

from convref.nlp import KeywordExtractor, load_gazetteers, load_lexicon


@pytest.fixture(scope="session")
def lexicon():
    return load_lexicon()


@pytest.fixture(scope="session")
def gazetteers():
    return load_gazetteers()


@pytest.fixture(scope="session")
def extractor():
    return KeywordExtractor()


class SimClock:
    """Deterministic clock + sleep pair for pacing tests."""

    def __init__(self, start: float = 0.0):
        self.t = start

    def clock(self) -> float:
        return self.t

    def sleep(self, seconds: float) -> None:
        if seconds > 0:
            self.t += seconds


@pytest.fixture
def sim_clock():
    return SimClock()
