import pytest

from helpers import FIG1_GRAMMAR, FIG1_TEXT


@pytest.fixture
def fig1():
    return FIG1_GRAMMAR


@pytest.fixture
def fig1_text():
    return FIG1_TEXT
