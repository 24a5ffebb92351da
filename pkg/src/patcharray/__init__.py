"""Design and analysis of series-fed rectangular microstrip patch arrays."""
from .geometry import ArrayGeometry, load_geometry, paper_geometry, write_geometry
from .media import RO3003, Substrate
from .network import build_series_fed_array, match_array, s11_sweep
from .patch import design_patch
from .radiation import ExcitationSet, directivity, total_pattern

__all__ = [
    "ArrayGeometry",
    "ExcitationSet",
    "RO3003",
    "Substrate",
    "build_series_fed_array",
    "design_patch",
    "directivity",
    "load_geometry",
    "match_array",
    "paper_geometry",
    "s11_sweep",
    "total_pattern",
    "write_geometry",
]

__version__ = "0.1.0"
