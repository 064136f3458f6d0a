"""Field, ideal and class group arithmetic for imaginary quadratic fields."""

from .quadfield import FieldElement, IntegralIdeal, Place, PlaceKind, QuadField, make_field, split_prime
from .classgroup import ClassGroupData, QuadForm, build_class_group, compute_pi, principal_generator

__all__ = [
    "FieldElement",
    "IntegralIdeal",
    "Place",
    "PlaceKind",
    "QuadField",
    "make_field",
    "split_prime",
    "ClassGroupData",
    "QuadForm",
    "build_class_group",
    "compute_pi",
    "principal_generator",
]
