"""Shared fixtures: paths and loaded moment data."""

import pathlib

import pytest

import extremal_moments as em

ROOT = pathlib.Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "fixtures"


def fixture_path(name: str) -> pathlib.Path:
    return FIXTURES / name


@pytest.fixture(scope="session")
def ex15():
    return em.load_multisequence(fixture_path("example15.moments.json"))


@pytest.fixture(scope="session")
def ex42():
    return em.load_multisequence(fixture_path("ex42_hyperbola.moments.json"))


@pytest.fixture(scope="session")
def ex44():
    return em.load_multisequence(fixture_path("ex44.moments.json"))


@pytest.fixture(scope="session")
def ex71():
    return em.load_multisequence(fixture_path("ex71.moments.json"))


@pytest.fixture(scope="session")
def prop61():
    return em.load_multisequence(fixture_path("prop61.moments.json"))


@pytest.fixture(scope="session")
def prop61_deg8():
    return em.load_multisequence(fixture_path("prop61_deg8.moments.json"))


@pytest.fixture(scope="session")
def thm62_a8_8():
    return em.load_multisequence(fixture_path("thm62_a8_8.moments.json"))
