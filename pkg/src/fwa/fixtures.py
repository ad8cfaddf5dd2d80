"""Bundled reference automata and words."""

from __future__ import annotations

import math
from importlib import resources

from . import jsonio
from .automata import Facw
from .fuzzy import FuzzySet


def data_path(name: str):
    return resources.files("fwa") / "data" / name


def gas_cooker() -> Facw:
    """Three-state temperature model driven by the words S, M, L."""
    return jsonio.load(data_path("gas_cooker.json").read_bytes())


def gas_cooker_meta() -> dict:
    return jsonio.load_meta(data_path("gas_cooker.json").read_bytes())


def small(alphabet=("1", "2", "3", "4", "5")) -> FuzzySet:
    return jsonio.load_word(data_path("small.json").read_bytes(), alphabet)


def almost_small(alphabet=("1", "2", "3", "4", "5")) -> FuzzySet:
    """Dilation of ``small``: the pointwise square root."""
    return small(alphabet).map_grades(math.sqrt)
