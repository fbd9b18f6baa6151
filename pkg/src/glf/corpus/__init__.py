"""Shipped example fragments, usable as test data and as documentation.

Each subdirectory is a complete fragment: grammar, logic theories, a
semantics view, a manifest tying them together, gold parses, and a bit of
world knowledge. Load one with :func:`glf.shell.load_fragment`.
"""

from __future__ import annotations

from importlib import resources
from pathlib import Path

FRAGMENTS = ("life", "quantified", "modal")


def corpus_root() -> Path:
    return Path(resources.files(__package__))  # type: ignore[arg-type]


def fragment_dir(name: str) -> Path:
    """Directory of a shipped fragment; raises KeyError for unknown names."""
    if name not in FRAGMENTS:
        raise KeyError(f"no shipped fragment named {name!r}")
    return corpus_root() / name
