"""Concrete group families with exact word problems."""

from .abelian import (
    AbelianSpec,
    AbelianSpecError,
    Classification,
    PrueferElement,
    abelian_classify,
    pruefer_add,
    pruefer_order,
)
from .abels_lemmas import (
    abels_center_scaling_check,
    center_mod_z_check,
    centralizer_lemma_check,
    nonhopf_witness_check,
)
from .basic import finite_marked, free_abelian, free_group
from .houghton import HoughtonElement, houghton, houghton_eval, houghton_phi
from .matrices import (
    MatrixFamily,
    TriangularMatrix,
    abels,
    abels_mod_z,
    bn,
    bn_mod_hk,
    bn_mod_poly,
    matrix_eval,
)
from .rings import LaurentFp, LaurentPoly, ZInvP
from .wreath import WreathElement, WreathProduct, lamplighter, lamplighter_group, wreath_eval

__all__ = [
    "AbelianSpec",
    "AbelianSpecError",
    "Classification",
    "HoughtonElement",
    "LaurentFp",
    "LaurentPoly",
    "MatrixFamily",
    "PrueferElement",
    "TriangularMatrix",
    "WreathElement",
    "WreathProduct",
    "ZInvP",
    "abelian_classify",
    "abels",
    "abels_center_scaling_check",
    "abels_mod_z",
    "bn",
    "bn_mod_hk",
    "bn_mod_poly",
    "center_mod_z_check",
    "centralizer_lemma_check",
    "finite_marked",
    "free_abelian",
    "free_group",
    "houghton",
    "houghton_eval",
    "houghton_phi",
    "lamplighter",
    "lamplighter_group",
    "matrix_eval",
    "nonhopf_witness_check",
    "pruefer_add",
    "pruefer_order",
    "wreath_eval",
]
