"""Decomposition groups of zero-dimensional polynomial ideals."""

from zerodec.decgroup import DecOptions, DecResult, VariablePartition, dec_from_points, dec_group, sym_group
from zerodec.groebner import GroebnerBasis, buchberger, ideal_of_points, normal_form, radicalize
from zerodec.perm import Permutation, PermGroup, group_closure
from zerodec.polyring import MonomialOrder, Poly, PolyRing, format_poly, parse_system

__all__ = [
    "DecOptions",
    "DecResult",
    "GroebnerBasis",
    "MonomialOrder",
    "PermGroup",
    "Permutation",
    "Poly",
    "PolyRing",
    "VariablePartition",
    "buchberger",
    "dec_from_points",
    "dec_group",
    "format_poly",
    "group_closure",
    "ideal_of_points",
    "normal_form",
    "parse_system",
    "radicalize",
    "sym_group",
]

__version__ = "0.1.0"
