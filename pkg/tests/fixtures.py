"""Bipartite instances with at most six members, shared by verifier tests."""

import numpy as np

from upbstrength import SixParam, drop_member, make_pyramid, make_six_param, make_tiles

from oracles import random_unit, random_valid_sixparam

PYRAMID_THETA = float(np.arccos((np.sqrt(5) - 1) / 2))


def constraint_violations():
    """Six-parameter sets breaking each validity condition in turn."""
    t = PYRAMID_THETA
    return {
        "cos_theta_A=0": make_six_param(SixParam(np.pi / 2, t, 0.3, t, t, 0.0)),
        "cos_gamma_A=0": make_six_param(SixParam(t, np.pi / 2, 0.3, t, t, 0.0)),
        "sin_theta_A=0": make_six_param(SixParam(0.0, t, 0.3, t, t, 0.0)),
        "cos_theta_B=0": make_six_param(SixParam(t, t, 0.0, np.pi / 2, t, 1.1)),
        "cos_gamma_B=0": make_six_param(SixParam(t, t, 0.0, t, np.pi / 2, 1.1)),
        "sin_theta_B=0": make_six_param(SixParam(t, t, 0.0, 0.0, t, 1.1)),
    }


def upb_instances(seed=7, n_random=20):
    rng = np.random.default_rng(seed)
    out = {"pyramid": make_pyramid(), "tiles": make_tiles()}
    for k in range(n_random):
        out[f"sixparam_{k}"] = make_six_param(random_valid_sixparam(rng))
    return out


def broken_instances(seed=11):
    """Twenty extendible sets: truncations, degenerate parameters, padding."""
    from upbstrength import ProductBasisSet

    rng = np.random.default_rng(seed)
    P, T = make_pyramid(), make_tiles()
    out = {}
    for j in range(5):
        out[f"pyramid-{j}"] = drop_member(P, j)
        out[f"tiles-{j}"] = drop_member(T, j)
    out.update(constraint_violations())
    for k in range(2):
        out[f"sixparam_{k}-0"] = drop_member(make_six_param(random_valid_sixparam(rng)), 0)
    # two product states can never block all of C^3 x C^3
    a, b = random_unit(rng, 3), random_unit(rng, 3)
    out["pair"] = ProductBasisSet((3, 3), ((a, b), (random_unit(rng, 3), random_unit(rng, 3))))
    out["pyramid-0-1"] = drop_member(drop_member(P, 1), 0)
    return out
