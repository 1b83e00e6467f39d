"""Resolutions, Ext algebras and Groebner bases for (D,A)-stacked path algebras."""

from .fields import Field
from .quiver import Quiver, Path, ZERO
from .algebra import AdmissibleOrder, FreeAlgebra, Element, reduce
from .parser import parse_algebra, load_algebra, serialize_algebra
from .groebner import complete_to_gb, verify_reduced_gb, koszul_certificate, nontips
from .resolution import minimal_resolution, resolve_algebra
from .stacked import classify_degrees, delta

__all__ = ["Field", "Quiver", "Path", "ZERO", "AdmissibleOrder", "FreeAlgebra", "Element", "reduce",
           "parse_algebra", "load_algebra", "serialize_algebra", "complete_to_gb", "verify_reduced_gb",
           "koszul_certificate", "nontips", "minimal_resolution", "resolve_algebra", "classify_degrees",
           "delta"]
__version__ = "0.1.0"
