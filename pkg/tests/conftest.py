from pathlib import Path

import pytest

from pstt import parse, parse_chip_spec

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def chip0():
    return parse_chip_spec((FIXTURES / "chip0.json").read_text())


@pytest.fixture(scope="session")
def chip0_path():
    return FIXTURES / "chip0.json"


@pytest.fixture(scope="session")
def corpus():
    return parse((FIXTURES / "corpus.pstt").read_text())


@pytest.fixture(scope="session")
def corpus_path():
    return FIXTURES / "corpus.pstt"
