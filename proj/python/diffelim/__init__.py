"""Differential elimination for linear systems by resultant matrices."""

from pathlib import Path

from ._core import DiffelimError, System, report

__all__ = ["DiffelimError", "System", "load", "parse", "report"]


def parse(text: str, allow_any_shape: bool = False) -> System:
    return System.parse(text, allow_any_shape)


def load(path, allow_any_shape: bool = False) -> System:
    return System.parse(Path(path).read_text(), allow_any_shape)
