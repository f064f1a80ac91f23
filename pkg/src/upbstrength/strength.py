"""Strength of an unextendible product basis.

The strength is the magnitude of the product, over all parties, of every
nonzero scalar product between distinct vectors of that party. For the
constructions here the nonzero products close up into cycles, so the strength
is a product of Bargmann invariants.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np

from .constructors import ProductBasisSet, SixParam, TriBlock, TriParam, make_six_param, make_tripartite
from .linalg import as_vector, inner
from .verify import DEFAULT_ZERO_TOL, OrthPattern, party_overlaps, zero_pattern

__all__ = [
    "BargmannValue",
    "StrengthReport",
    "ClosedFormComparison",
    "bargmann",
    "strength_generic",
    "strength_sixparam_closed",
    "strength_tri_f",
    "strength_tri_closed",
    "compare_closed_vs_generic",
    "sixparam_reference_pattern",
    "tripartite_reference_pattern",
    "product_pattern",
    "sixparam_party_factor",
]

_DENOM_FLOOR = 1e-15


@dataclass(frozen=True)
class BargmannValue:
    value: complex
    cycle: tuple


@dataclass(frozen=True)
class StrengthReport:
    value: float
    per_party_factors: tuple
    contributing_pairs: tuple
    pattern_source: str
    pattern: OrthPattern
    closed_form: Optional[tuple] = None


@dataclass(frozen=True)
class ClosedFormComparison:
    generic: float
    closed: float
    abs_diff: float
    rel_diff: float
    ratio: float


def bargmann(vectors: Sequence, cycle: Sequence[int]) -> BargmannValue:
    """Cyclic product ``<c0, c1><c1, c2>...<c_{n-1}, c0>``."""
    cycle = tuple(int(c) for c in cycle)
    if len(cycle) < 2:
        raise ValueError("a Bargmann cycle needs at least two entries")
    n = len(vectors)
    for c in cycle:
        if not 0 <= c < n:
            raise IndexError(f"cycle index {c} out of range for {n} vectors")
    vs = [as_vector(v) for v in vectors]
    value = 1.0 + 0j
    for a, b in zip(cycle, cycle[1:] + cycle[:1]):
        value *= inner(vs[a], vs[b])
    return BargmannValue(value, cycle)


def strength_generic(
    S: ProductBasisSet,
    pattern: Union[OrthPattern, str] = "measure",
    tol: float = DEFAULT_ZERO_TOL,
) -> StrengthReport:
    """Product of the nonzero party overlaps of ``S``.

    Parameters
    ----------
    S : ProductBasisSet
    pattern : OrthPattern or "measure"
        ``"measure"`` classifies zeros from ``S`` itself. An explicit pattern
        (usually a family's generic pattern) fixes which pairs count; a pair
        that is nonzero in the pattern but vanishes numerically then drives
        the strength to zero.
    tol : float
        Zero-classification tolerance for ``"measure"``.
    """
    if isinstance(pattern, str):
        if pattern != "measure":
            raise ValueError(f"unknown pattern mode {pattern!r}")
        pat = zero_pattern(S, tol)
        source = "measured"
    else:
        pat = pattern
        source = "reference"
        if pat.n_parties != S.n_parties or pat.n_members != S.n_members:
            raise ValueError(
                f"pattern shape ({pat.n_parties} parties, {pat.n_members} members) does not "
                f"match set ({S.n_parties}, {S.n_members})"
            )
    factors = []
    pairs = []
    n = S.n_members
    iu = np.triu_indices(n, 1)
    for p in range(S.n_parties):
        mags = party_overlaps(S, p)[iu]
        keep = ~pat.zero[p][iu]
        factors.append(float(np.prod(mags[keep])))
        pairs.append(
            tuple((int(i), int(j), float(m)) for i, j, m, k in zip(iu[0], iu[1], mags, keep) if k)
        )
    return StrengthReport(float(np.prod(factors)), tuple(factors), tuple(pairs), source, pat)


def sixparam_party_factor(theta: float, gamma: float) -> float:
    s2t, c2t = np.sin(theta) ** 2, np.cos(theta) ** 2
    s2g, c2g = np.sin(gamma) ** 2, np.cos(gamma) ** 2
    denom = c2g + s2g * c2t
    if denom <= _DENOM_FLOOR:
        raise ValueError(f"vanishing denominator at theta={theta}, gamma={gamma}")
    return s2t * s2g * c2t * c2g / denom


def strength_sixparam_closed(p: SixParam) -> float:
    """Closed-form strength of the six-parameter family; phases drop out."""
    return sixparam_party_factor(p.thetaA, p.gammaA) * sixparam_party_factor(p.thetaB, p.gammaB)


def strength_tri_f(x: float, y: float) -> float:
    """Per-party strength of the equal-angle tripartite slice.

    ``x = cos(theta)``, ``y = cos(alpha)``; transcribed without simplification.
    """
    x = float(x)
    y = float(y)
    if not (-1.0 <= x <= 1.0 and -1.0 <= y <= 1.0):
        raise ValueError(f"(x, y) = ({x}, {y}) outside [-1, 1]^2")
    radicand = 4 + 4 * x * y + x**2
    if radicand < 0:
        raise ValueError(f"negative radicand at (x, y) = ({x}, {y})")
    q = x**4 - x**2 + 1 + 2 * x * y * (x**2 - 1)
    num = (
        x**9
        * (1 - x**2) ** 6
        * np.sqrt(radicand)
        * q**2
        * (x**6 + 4 * x**4 - 4 * x**2 + 1 + 2 * x**3 * y * (2 * x**2 - 1))
    )
    den = ((x**4 - 3 * x**2 + 1) ** 2 + 2 * x**2 * (1 - x**2) * q) ** 2
    if abs(den) <= _DENOM_FLOOR:
        raise ValueError(f"vanishing denominator at (x, y) = ({x}, {y})")
    return abs(num / den)


def strength_tri_closed(x: float, y: float) -> float:
    return strength_tri_f(x, y) ** 3


def compare_closed_vs_generic(S: ProductBasisSet, closed_value: float, pattern="measure") -> ClosedFormComparison:
    """Side-by-side numbers; disagreement is reported, never raised."""
    g = strength_generic(S, pattern).value
    c = float(closed_value)
    diff = abs(g - c)
    scale = max(abs(g), abs(c))
    rel = diff / scale if scale > 0 else 0.0
    ratio = g / c if c != 0 else (1.0 if g == 0 else float("inf"))
    return ClosedFormComparison(g, c, diff, rel, ratio)


_SIX_GENERIC = SixParam(0.7, 1.1, 0.4, 1.3, 0.5, -0.9)
_TRI_GENERIC = TriParam(
    TriBlock(0.41, 0.73, 1.07, 0.59, 0.3, -0.8, 0.5),
    TriBlock(0.88, 0.37, 0.66, 1.21, -0.4, 0.9, 0.1),
    TriBlock(0.52, 1.14, 0.79, 0.44, 1.1, 0.2, -0.6),
)


def sixparam_reference_pattern(tol: float = DEFAULT_ZERO_TOL) -> OrthPattern:
    """Zero pattern of the six-parameter family at a generic point."""
    return zero_pattern(make_six_param(_SIX_GENERIC), tol)


def tripartite_reference_pattern(tol: float = DEFAULT_ZERO_TOL) -> OrthPattern:
    """Zero pattern of the tripartite family at a generic point."""
    return zero_pattern(make_tripartite(_TRI_GENERIC), tol)


def product_pattern(A: OrthPattern, B: OrthPattern) -> OrthPattern:
    """Zero pattern of a party-wise tensor product of two sets.

    Members ``(i, j)`` and ``(i', j')`` are orthogonal on a party iff the
    factors are: ``A`` at ``(i, i')`` or ``B`` at ``(j, j')``.
    """
    if A.n_parties != B.n_parties:
        raise ValueError("party-count mismatch")
    zero = []
    for za, zb in zip(A.zero, B.zero):
        z = np.logical_or(za[:, None, :, None], zb[None, :, None, :])
        nA, nB = za.shape[0], zb.shape[0]
        zero.append(z.reshape(nA * nB, nA * nB))
    return OrthPattern(tuple(zero), max(A.tol, B.tol))
