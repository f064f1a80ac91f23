"""
Strength of a UPB
=================

The strength multiplies the magnitudes of all nonzero local inner products.
Here it is compared across sets, against the six-parameter closed form, and
followed to a degenerate edge of the family.
"""

import numpy as np

from upbstrength import make_pyramid, make_six_param, make_tiles, strength_generic
from upbstrength.constructors import SixParam
from upbstrength.strength import (
    bargmann,
    sixparam_reference_pattern,
    strength_sixparam_closed,
    strength_tri_closed,
    strength_tri_f,
)

P, T = make_pyramid(), make_tiles()
sp, st = strength_generic(P).value, strength_generic(T).value
print(f"Pyramid {sp:.12f}   Tiles {st:.12f} (1/144 = {1/144:.12f})")

# The Pyramid value is a squared five-cycle invariant on one party
b = bargmann(P.party_vectors(0), (0, 1, 2, 3, 4))
print("five-cycle invariant:", abs(b.value), " squared:", abs(b.value) ** 2)

# Closed form against the generic computation, and its phase independence
p = SixParam(0.8, 1.2, 0.0, 1.0, 0.6, 0.0)
print("closed", strength_sixparam_closed(p), " generic", strength_generic(make_six_param(p)).value)
q = SixParam(0.8, 1.2, 2.5, 1.0, 0.6, -1.0)
print("same closed value after phase change:", strength_sixparam_closed(q) == strength_sixparam_closed(p))

# Approaching cos(theta_A) = 0 with the generic zero pattern held fixed
ref = sixparam_reference_pattern()
t = float(np.arccos((np.sqrt(5) - 1) / 2))
for d in np.geomspace(0.5, 1e-6, 6):
    S = make_six_param(SixParam(np.pi / 2 - d, t, 0.0, t, t, 0.0))
    print(f"delta={d:.1e}  reference strength={strength_generic(S, ref).value:.3e}  "
          f"measured={strength_generic(S).value:.3e}")

# The tripartite surface and its cube
print("f(-0.554959, 1) =", strength_tri_f(-0.554959, 1.0), " cube:", strength_tri_closed(-0.554959, 1.0))

# At the degenerate point itself new zeros appear; measuring the pattern from the
# set drops them from the product, while the fixed pattern gives zero
S = make_six_param(SixParam(np.pi / 2, t, 0.0, t, t, 0.0))
print("at theta_A = pi/2: measured", strength_generic(S).value, " reference", strength_generic(S, ref).value)
