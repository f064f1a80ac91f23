"""Unextendible product bases: construction, verification and strength."""

from .constructors import (
    ProductBasisSet,
    SixParam,
    TriBlock,
    TriParam,
    drop_member,
    make_gen_pyramid7,
    make_pyramid,
    make_six_param,
    make_subfamily,
    make_tiles,
    make_tripartite,
    tensor_product_upb,
)
from .states import DensityMatrix, ppt_check, upb_complement_state
from .strength import (
    bargmann,
    strength_generic,
    strength_sixparam_closed,
    strength_tri_closed,
    strength_tri_f,
)
from .verify import check_mutual_orthogonality, check_unextendible, is_upb, zero_pattern

__version__ = "0.1.0"
