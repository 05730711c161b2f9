"""Grid states as a poset: EL-shellings, homology and flow-category certificates."""

from .grid import GridDiagram, parse_grid, serialize
from .states import GridState, bigrading

__version__ = "0.1.0"

__all__ = ["GridDiagram", "GridState", "bigrading", "parse_grid", "serialize", "__version__"]
