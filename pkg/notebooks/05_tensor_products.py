"""
Tensor products of UPBs
=======================

The party-wise tensor product of two bipartite UPBs is again a UPB. Each
nonzero local overlap of a factor appears in many product pairs, so the
strengths do not simply multiply.
"""

from upbstrength import make_pyramid, make_tiles, strength_generic, tensor_product_upb, zero_pattern
from upbstrength.strength import product_pattern

P, T = make_pyramid(), make_tiles()
PT = tensor_product_upb(P, T)
sp, st = strength_generic(P).value, strength_generic(T).value
s = strength_generic(PT).value
print(f"dims={PT.dims} n={PT.n_members}")
print(f"product strength {s:.6e}")
print(f"s_P * s_T        {sp * st:.6e}")
print(f"(s_P * s_T)**15  {(sp * st) ** 15:.6e}")

# The zero pattern inherited from the factors matches the measured one
ref = product_pattern(zero_pattern(P), zero_pattern(T))
print("inherited pattern equals measured:", ref == zero_pattern(PT))
