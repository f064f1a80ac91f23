"""
Complement states and partial transposes
========================================

Project out a UPB, normalize, and confirm that the result has a positive
partial transpose on every cut while a Bell state does not.
"""

import numpy as np

from upbstrength import DensityMatrix, make_gen_pyramid7, make_pyramid, ppt_check, upb_complement_state

for S in (make_pyramid(), make_gen_pyramid7(2)):
    rho = upb_complement_state(S)
    w = rho.eigenvalues()
    rep = ppt_check(rho)
    print(f"{S.label}: trace={rho.trace:.15f} rank={rho.rank()} "
          f"eigs in [{w[0]:.1e}, {w[-1]:.4f}] PT minima={np.round(rep.minima, 12)} PPT={rep.ppt}")

bell = np.array([1, 0, 0, 1]) / np.sqrt(2)
rep = ppt_check(DensityMatrix.from_matrix(np.outer(bell, bell), (2, 2)))
print("Bell state PT minimum:", rep.minima[0], " PPT:", rep.ppt)
