"""Cospans of finite sets: composition, adjunctions, Frobenius and rigid
algebras, the bimodule envelope and bar complexes, all checked by machine."""

from .finset import FinFn, FinSet, make_fn, make_set, pushout
from .cospan import Cospan, TwoCell, hcompose, mirror, right_way, tensor, wrong_way
from .adjoint import construct_right_adjoint, is_left_adjoint, search_adjoint, verify_adjunction
from .frobenius import canonical_algebra, self_duality, transpose_general, verify_frobenius, verify_rigid

__version__ = "0.1.0"

__all__ = [
    "Cospan", "FinFn", "FinSet", "TwoCell", "canonical_algebra", "construct_right_adjoint",
    "hcompose", "is_left_adjoint", "make_fn", "make_set", "mirror", "pushout", "right_way",
    "search_adjoint", "self_duality", "tensor", "transpose_general", "verify_adjunction",
    "verify_frobenius", "verify_rigid", "wrong_way",
]
