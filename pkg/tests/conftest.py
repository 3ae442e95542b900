import pytest

from amkg.domain import load_seed, schema_summary, validate_dataset
from amkg.domain.build import build_graph, default_seed_text
from amkg.nl import Engine


@pytest.fixture(scope="session")
def seed_text():
    return default_seed_text()


@pytest.fixture(scope="session")
def dataset(seed_text):
    return load_seed(seed_text)


@pytest.fixture(scope="session")
def graph(dataset):
    return build_graph(dataset)


@pytest.fixture(scope="session")
def schema(dataset):
    return schema_summary(dataset)


@pytest.fixture(scope="session")
def engine():
    return Engine.default()


@pytest.fixture(scope="session")
def report(dataset):
    return validate_dataset(dataset)
