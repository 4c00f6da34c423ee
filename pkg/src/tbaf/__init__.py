"""Timed bipolar argumentation: interval algebra, defeats, semantics and a CLI."""

from importlib import resources

from .intervals import EMPTY, FULL, IntervalSet, parse_interval_set, format_interval_set
from .framework import BAF, TBAF, load, load_file, save, snapshot_at, validate
from .defeats import Collection, TProfile
from .semantics import SemanticsFlavor, enumerate_extensions

__version__ = "0.1.0"


def example_path(name: str):
    """Path of a bundled example document, e.g. ``example_path("abstract.json")``."""
    return resources.files(__name__).joinpath("data", name)


def load_example(name: str) -> TBAF:
    return load(example_path(name).read_text(encoding="utf-8"))


__all__ = [
    "EMPTY",
    "FULL",
    "IntervalSet",
    "parse_interval_set",
    "format_interval_set",
    "BAF",
    "TBAF",
    "load",
    "load_file",
    "save",
    "snapshot_at",
    "validate",
    "Collection",
    "TProfile",
    "SemanticsFlavor",
    "enumerate_extensions",
    "example_path",
    "load_example",
]
