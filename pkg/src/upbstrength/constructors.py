"""Unextendible product bases and parametrized families on qutrit systems.

Every constructor returns a :class:`ProductBasisSet`. Vectors are renormalized
to unit length after being built from their printed components, so the
normalization constants of the original formulas never have to be trusted.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .linalg import as_vector, tensor

__all__ = [
    "ProductBasisSet",
    "SixParam",
    "TriBlock",
    "TriParam",
    "make_pyramid",
    "make_tiles",
    "make_six_param",
    "make_gen_pyramid7",
    "tripartite_recipe",
    "make_tripartite",
    "make_subfamily",
    "tensor_product_upb",
    "drop_member",
    "PYRAMID_X",
    "TILES_ANGLE",
    "GENERAL_CONSTRUCTIONS",
]

_NORM_FLOOR = 1e-12

#: cos(theta) at which the six-parameter family reproduces the Pyramid
PYRAMID_X = (np.sqrt(5.0) - 1.0) / 2.0
#: common angle at which the six-parameter family reproduces Tiles
TILES_ANGLE = 3.0 * np.pi / 4.0

#: Known general constructions that are catalogued but not built.
GENERAL_CONSTRUCTIONS = (
    {"name": "GenShifts", "size": "2k", "space": "(C^2)^(2k-1)", "minimal": True},
    {"name": "GenPyramids", "size": "p", "space": "(C^3)^n with 2n+1=p prime", "minimal": True},
    {"name": "QuadRes", "size": "p", "space": "C^n x C^n with 2n-1=p prime, p=4m+1", "minimal": True},
    {"name": "GenTiles1", "size": "(n-1)^2", "space": "C^n x C^n, n even", "minimal": False},
    {"name": "GenTiles2", "size": "nm-2m+1", "space": "C^m x C^n, n>=m, n>3, m>=3", "minimal": False},
)


def _ket(dim: int, index: int) -> np.ndarray:
    e = np.zeros(dim, dtype=complex)
    e[index] = 1.0
    return e


def _unit(v, what: str = "vector") -> np.ndarray:
    v = as_vector(v)
    n = np.linalg.norm(v)
    if n < _NORM_FLOOR:
        raise ValueError(f"{what} has vanishing norm ({n:.3e})")
    return v / n


@dataclass(frozen=True)
class ProductBasisSet:
    """An ordered set of product states.

    ``members[j][p]`` is the unit vector of member ``j`` on party ``p``.
    """

    dims: tuple
    members: tuple
    label: str = ""
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        if len(dims) < 2:
            raise ValueError("a product basis needs at least two parties")
        if any(d < 1 for d in dims):
            raise ValueError(f"invalid party dimensions {dims}")
        members = []
        for j, member in enumerate(self.members):
            if len(member) != len(dims):
                raise ValueError(f"member {j} has {len(member)} parties, expected {len(dims)}")
            vecs = []
            for p, v in enumerate(member):
                v = np.array(as_vector(v), dtype=complex)
                if v.size != dims[p]:
                    raise ValueError(f"member {j} party {p}: dimension {v.size} != {dims[p]}")
                if abs(np.linalg.norm(v) - 1.0) > 1e-10:
                    raise ValueError(f"member {j} party {p} is not unit norm")
                v.setflags(write=False)
                vecs.append(v)
            members.append(tuple(vecs))
        if not members:
            raise ValueError("a product basis needs at least one member")
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "members", tuple(members))

    @property
    def n_members(self) -> int:
        return len(self.members)

    @property
    def n_parties(self) -> int:
        return len(self.dims)

    @property
    def total_dim(self) -> int:
        return int(np.prod(self.dims))

    def party_vectors(self, party: int) -> list:
        return [m[party] for m in self.members]

    def state(self, j: int) -> np.ndarray:
        """Full product state of member ``j``."""
        out = self.members[j][0]
        for v in self.members[j][1:]:
            out = tensor(out, v)
        return out

    def states(self) -> np.ndarray:
        """All member states as rows of an ``(n, D)`` array."""
        return np.vstack([self.state(j) for j in range(self.n_members)])


@dataclass(frozen=True)
class SixParam:
    thetaA: float
    gammaA: float
    phiA: float
    thetaB: float
    gammaB: float
    phiB: float

    @classmethod
    def equal_angle(cls, theta: float, phiA: float = 0.0, phiB: float = 0.0) -> "SixParam":
        return cls(theta, theta, phiA, theta, theta, phiB)

    @property
    def NA(self) -> float:
        return float(np.sqrt(np.cos(self.gammaA) ** 2 + np.sin(self.gammaA) ** 2 * np.cos(self.thetaA) ** 2))

    @property
    def NB(self) -> float:
        return float(np.sqrt(np.cos(self.gammaB) ** 2 + np.sin(self.gammaB) ** 2 * np.cos(self.thetaB) ** 2))

    def as_tuple(self) -> tuple:
        return (self.thetaA, self.gammaA, self.phiA, self.thetaB, self.gammaB, self.phiB)


@dataclass(frozen=True)
class TriBlock:
    """Angles and phases of one party's recipe in the tripartite family."""

    theta1: float
    theta2: float
    theta3: float
    theta4: float
    lam: float = 0.0
    mu: float = 0.0
    chi: float = 0.0

    @property
    def alpha(self) -> float:
        return self.lam - self.chi

    @property
    def beta(self) -> float:
        return self.mu - self.chi

    def as_tuple(self) -> tuple:
        return (self.theta1, self.theta2, self.theta3, self.theta4, self.lam, self.mu, self.chi)


@dataclass(frozen=True)
class TriParam:
    v: TriBlock
    w: TriBlock
    u: TriBlock

    @classmethod
    def shared(cls, block: TriBlock) -> "TriParam":
        return cls(block, block, block)

    @classmethod
    def from_sequence(cls, values: Sequence[float]) -> "TriParam":
        values = [float(x) for x in values]
        if len(values) != 21:
            raise ValueError(f"the tripartite family takes 21 parameters, got {len(values)}")
        return cls(TriBlock(*values[0:7]), TriBlock(*values[7:14]), TriBlock(*values[14:21]))

    def as_tuple(self) -> tuple:
        return self.v.as_tuple() + self.w.as_tuple() + self.u.as_tuple()


def make_pyramid() -> ProductBasisSet:
    """The Pyramid UPB on 3x3: five vectors on a cone, paired as ``v_i (x) v_{2i}``."""
    c = np.cos(4 * np.pi / 5)
    h = np.sqrt(-c)
    N = 1.0 / np.sqrt(1.0 + abs(c))
    v = [
        _unit(N * np.array([np.cos(2 * np.pi * i / 5), np.sin(2 * np.pi * i / 5), h]))
        for i in range(5)
    ]
    members = [(v[i], v[(2 * i) % 5]) for i in range(5)]
    return ProductBasisSet((3, 3), tuple(members), "Pyramid")


def make_tiles() -> ProductBasisSet:
    e0, e1, e2 = _ket(3, 0), _ket(3, 1), _ket(3, 2)
    r2, r3 = np.sqrt(2.0), np.sqrt(3.0)
    v = [e0, (e0 - e1) / r2, e2, (e1 - e2) / r2, (e0 + e1 + e2) / r3]
    w = [(e0 - e1) / r2, e2, (e1 - e2) / r2, e0, (e0 + e1 + e2) / r3]
    members = [(_unit(v[i]), _unit(w[i])) for i in range(5)]
    return ProductBasisSet((3, 3), tuple(members), "Tiles")


def make_six_param(p: SixParam) -> ProductBasisSet:
    """Six-parameter family of 3x3 UPBs containing Pyramid and Tiles.

    Validity (``cos theta != 0``, ``cos gamma != 0``, ``sin theta != 0`` on both
    sides) is *not* enforced here; use :func:`upbstrength.verify.is_upb`.
    """
    for name, N in (("A", p.NA), ("B", p.NB)):
        if N < _NORM_FLOOR:
            raise ValueError(f"normalizer N_{name} vanishes ({N:.3e}); party {name} vector 4 undefined")
    e0, e1, e2 = _ket(3, 0), _ket(3, 1), _ket(3, 2)
    s, c, ex = np.sin, np.cos, lambda a: np.exp(1j * a)
    tB, gB, fB = p.thetaB, p.gammaB, p.phiB
    tA, gA, fA = p.thetaA, p.gammaA, p.phiA
    v = [
        e1,
        s(gB) * s(tB) * e0 - s(gB) * c(tB) * e2 + c(gB) * ex(fB) * e1,
        e0,
        c(tB) * e0 + s(tB) * e2,
        (s(gB) * c(tB) * ex(fB) * e1 + c(gB) * e2) / p.NB,
    ]
    w = [
        e0,
        e1,
        c(tA) * e0 + s(tA) * e2,
        s(gA) * s(tA) * e0 + c(gA) * ex(fA) * e1 - s(gA) * c(tA) * e2,
        (s(gA) * c(tA) * ex(fA) * e1 + c(gA) * e2) / p.NA,
    ]
    members = [(_unit(v[i], f"v_{i}"), _unit(w[i], f"w_{i}")) for i in range(5)]
    return ProductBasisSet((3, 3), tuple(members), "SixParam", {"params": p.as_tuple()})


def make_gen_pyramid7(m: int = 2) -> ProductBasisSet:
    """Generalized Pyramid on three qutrits, ``v_i (x) v_{2i} (x) v_{3i}`` mod 7."""
    if m not in (2, 3):
        raise ValueError(
            f"m={m} not allowed: the height sqrt(-cos(2*m*pi/7)) is real only for m in (2, 3)"
        )
    c = np.cos(2 * m * np.pi / 7)
    h = np.sqrt(-c)
    N = 1.0 / np.sqrt(1.0 + abs(c))
    v = [
        _unit(N * np.array([np.cos(2 * np.pi * i / 7), np.sin(2 * np.pi * i / 7), h]))
        for i in range(7)
    ]
    members = [(v[i], v[(2 * i) % 7], v[(3 * i) % 7]) for i in range(7)]
    label = "Sept" if m == 2 else f"GenPyramid7(m={m})"
    return ProductBasisSet((3, 3, 3), tuple(members), label, {"m": m, "h7": h})


def tripartite_recipe(block: TriBlock) -> list:
    """The seven (unnormalized) vectors of one party of the tripartite family."""
    t1, t2, t3, t4, lam, mu, chi = block.as_tuple()
    s, c, ex = np.sin, np.cos, lambda a: np.exp(1j * a)
    e0, e1, e2 = _ket(3, 0), _ket(3, 1), _ket(3, 2)
    v1 = (
        (s(t4) * c(t2) * c(t3) * ex(lam - chi) - s(t4) * c(t1) * s(t2) * s(t3)) * e0
        + (s(t3) * c(t1) * c(t4) * ex(-mu) - s(t3) * s(t1) * c(t2) * s(t4) * ex(-chi)) * e1
        + (c(t3) * c(t4) * ex(lam - mu) - s(t1) * s(t2) * s(t3) * s(t4)) * e2
    )
    return [
        e0,
        v1,
        e1,
        c(t4) * ex(mu) * e0 + s(t4) * s(t2) * e1 - s(t4) * c(t2) * ex(chi) * e2,
        c(t1) * e0 + s(t1) * e2,
        c(t2) * e1 + s(t2) * ex(chi) * e2,
        s(t3) * s(t1) * e0 + c(t3) * ex(-lam) * e1 - s(t3) * c(t1) * e2,
    ]


def make_tripartite(p: TriParam) -> ProductBasisSet:
    """21-parameter family of UPBs on three qutrits.

    Party 0 uses recipe ``v`` at index ``i``, party 1 recipe ``w`` at ``2i mod 7``
    and party 2 recipe ``u`` at ``3i mod 7``. The raw norm of each recipe's
    ``v_1`` is kept in ``meta["v1_raw_norms"]``.
    """
    recipes = [tripartite_recipe(b) for b in (p.v, p.w, p.u)]
    for party, rec in enumerate(recipes):
        for i, vec in enumerate(rec):
            if np.linalg.norm(vec) < _NORM_FLOOR:
                raise ValueError(f"degenerate normalizer: recipe vector {i} of party {party} vanishes")
    raw = [float(np.linalg.norm(rec[1])) for rec in recipes]
    units = [[_unit(vec) for vec in rec] for rec in recipes]
    members = [
        (units[0][i], units[1][(2 * i) % 7], units[2][(3 * i) % 7]) for i in range(7)
    ]
    return ProductBasisSet(
        (3, 3, 3), tuple(members), "Tripartite", {"params": p.as_tuple(), "v1_raw_norms": raw}
    )


def make_subfamily(theta: float, alpha: float) -> ProductBasisSet:
    """Shared-parameter slice: all angles ``theta``, gauge ``chi = 0``, ``lam = mu = alpha``."""
    block = TriBlock(theta, theta, theta, theta, alpha, alpha, 0.0)
    out = make_tripartite(TriParam.shared(block))
    meta = dict(out.meta, theta=theta, alpha=alpha)
    return ProductBasisSet(out.dims, out.members, "Subfamily", meta)


def tensor_product_upb(A: ProductBasisSet, B: ProductBasisSet) -> ProductBasisSet:
    """Party-wise tensor product; member ``(i, j)`` sits at index ``i * n_B + j``."""
    if A.n_parties != B.n_parties:
        raise ValueError(f"party-count mismatch: {A.n_parties} vs {B.n_parties}")
    dims = tuple(a * b for a, b in zip(A.dims, B.dims))
    members = []
    for ma in A.members:
        for mb in B.members:
            members.append(tuple(_unit(tensor(va, vb)) for va, vb in zip(ma, mb)))
    label = f"{A.label or 'A'}(x){B.label or 'B'}"
    return ProductBasisSet(dims, tuple(members), label, {"factors": (A.n_members, B.n_members)})


def drop_member(S: ProductBasisSet, index: int) -> ProductBasisSet:
    """Copy of ``S`` without member ``index``."""
    members = tuple(m for j, m in enumerate(S.members) if j != index)
    return ProductBasisSet(S.dims, members, f"{S.label}-minus-{index}")
