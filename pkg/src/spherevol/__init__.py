"""Maximum-volume polytopes inscribed in the unit sphere."""
from .kernels import BACKEND
from .polytope import FacetComplex, Facet, InscribedPolytope, volume
from .stationarity import StationarityReport, check_property_z

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "Facet",
    "FacetComplex",
    "InscribedPolytope",
    "StationarityReport",
    "check_property_z",
    "volume",
    "__version__",
]
