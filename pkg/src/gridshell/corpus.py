"""Grid files shipped with the package."""

from __future__ import annotations

import hashlib
from functools import lru_cache
from importlib import resources
from pathlib import Path

from .grid import GridDiagram, parse_grid

CORPUS_NAMES = ("unknot-2", "unknot-3", "trefoil-5a", "trefoil-5b", "figure8-7")

# presentations of the same knot, for invariance checks
SAME_KNOT = (("unknot-2", "unknot-3"), ("trefoil-5a", "trefoil-5b"))


def corpus_text(name: str) -> str:
    return resources.files("gridshell").joinpath("corpus", f"{name}.grid").read_text(encoding="utf-8")


def grid_hash(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


@lru_cache(maxsize=32)
def grid_from_text(text: str) -> GridDiagram:
    return parse_grid(text)


def resolve(spec: str) -> tuple[str, str]:
    """Map a path or a corpus name to ``(label, text)``; a path wins when both exist."""
    path = Path(spec)
    if path.is_file():
        return str(path), path.read_text(encoding="utf-8")
    name = spec[:-5] if spec.endswith(".grid") else spec
    if name in CORPUS_NAMES:
        return name, corpus_text(name)
    raise FileNotFoundError(f"no grid file or corpus entry named {spec!r}")


def load_corpus() -> list[tuple[str, str]]:
    return [(name, corpus_text(name)) for name in CORPUS_NAMES]
