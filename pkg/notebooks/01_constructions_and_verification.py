"""
Building product bases and deciding unextendibility
===================================================

Construct the named sets, check that they are UPBs, then break one and look
at the product state that the verifier returns as a witness.
"""

import numpy as np

from upbstrength import drop_member, is_upb, make_gen_pyramid7, make_pyramid, make_six_param, make_tiles
from upbstrength.constructors import SixParam

#  The two 3x3 sets and the seven-member tripartite set
for S in (make_pyramid(), make_tiles(), make_gen_pyramid7(2)):
    rep = is_upb(S)
    print(f"{S.label:8s} dims={S.dims} n={S.n_members} UPB={rep.is_upb} nodes={rep.search_nodes}")

# The zero pattern records which local pairs are orthogonal
rep = is_upb(make_pyramid())
print("party 0 orthogonal pairs:", sorted(rep.pattern.pairs(0)))

# A random point of the six-parameter family
p = SixParam(0.9, 1.1, 0.4, 0.7, 1.3, 2.0)
print("six-parameter set is a UPB:", is_upb(make_six_param(p)).is_upb)

# Removing the stopper from Tiles opens room for a product state
broken = drop_member(make_tiles(), 4)
rep = is_upb(broken)
w = rep.witness
print("Tiles minus stopper is a UPB:", rep.is_upb)
print("witness assignment:", w.assignment)
print("largest overlap with a member: %.2e" % w.max_overlap)
print("overlaps:", np.round([abs(np.vdot(broken.state(j), w.state)) for j in range(4)], 12))
