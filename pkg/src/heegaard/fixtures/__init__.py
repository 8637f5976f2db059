"""Bundled example diagrams."""
from __future__ import annotations

from importlib import resources

from ..diagram import Diagram, parse_diagram

_NAMES = {
    "s3": "s3.hd",
    "p3": "p3.hd",
    "l31": "l31.hd",
    "s1s2": "s1s2.hd",
    "block": "block.hd",
}


def fixture_names() -> list[str]:
    return list(_NAMES)


def fixture_text(name: str) -> str:
    if name not in _NAMES:
        raise KeyError(f"unknown fixture {name!r}; known: {', '.join(_NAMES)}")
    return resources.files(__name__).joinpath(_NAMES[name]).read_text(encoding="utf-8")


def fixture(name: str) -> Diagram:
    return parse_diagram(fixture_text(name))
