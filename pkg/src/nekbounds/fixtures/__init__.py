"""Example matrices A1..A6 in PLAIN format."""

from importlib import resources

from ..matrix import read_matrix

NAMES = ("A1", "A2", "A3", "A4", "A5", "A6")


def fixture_path(name):
    if name not in NAMES:
        raise KeyError(f"unknown fixture {name!r}; choose from {', '.join(NAMES)}")
    return resources.files(__name__) / f"{name}.txt"


def load_fixture(name):
    with resources.as_file(fixture_path(name)) as path:
        return read_matrix(path)
