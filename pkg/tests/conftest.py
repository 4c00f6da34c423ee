import json

import pytest

from tbaf import example_path, load_example
from tbaf.defeats import Collection, collection_from_dict


def load_collection(name, f=None):
    doc = json.loads(example_path(name).read_text(encoding="utf-8"))
    return collection_from_dict(doc, f)


@pytest.fixture(scope="session")
def abstract():
    return load_example("abstract.json")


@pytest.fixture(scope="session")
def apartment():
    return load_example("apartment.json")


@pytest.fixture(scope="session")
def classical_example():
    return load_example("classical.json").baf


@pytest.fixture(scope="session")
def abstract_collections(abstract):
    out = {n: load_collection(f"abstract_c{n}.json", abstract) for n in range(1, 6)}
    return out


@pytest.fixture(scope="session")
def apartment_collections(apartment):
    return {n: load_collection(f"apartment_c{n}.json", apartment) for n in range(1, 4)}


def C(**profiles):
    """Shorthand: C(A="[0-10]", B="{(1-2), [3-4]}")."""
    return Collection(profiles)


def pytest_terminal_summary(terminalreporter):
    from tests import test_acceptance

    if test_acceptance.LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(test_acceptance.LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
