"""Decide whether a set of product states is an unextendible product basis.

A product state ``a_1 (x) ... (x) a_k`` is orthogonal to member ``psi_i`` iff
``a_p`` is orthogonal to the party-``p`` vector of ``psi_i`` for at least one
``p``. A product state orthogonal to every member therefore exists iff the
members can be assigned to parties so that, on every party, the assigned
vectors fail to span the local space. The search below enumerates those
assignments exactly (up to the rank tolerance).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

import numpy as np

from .constructors import ProductBasisSet
from .linalg import DEFAULT_RANK_TOL, hermitian_eigh, rank_with_tol

__all__ = [
    "OrthPattern",
    "Witness",
    "UpbReport",
    "DEFAULT_ZERO_TOL",
    "DEFAULT_MAX_MEMBERS",
    "party_overlaps",
    "zero_pattern",
    "check_mutual_orthogonality",
    "check_unextendible",
    "is_upb",
]

DEFAULT_ZERO_TOL = 1e-9
DEFAULT_MAX_MEMBERS = 20


@dataclass(frozen=True)
class OrthPattern:
    """Per-party symmetric boolean relation: ``zero[p][i, j]`` marks orthogonal pairs."""

    zero: tuple
    tol: float

    def __post_init__(self):
        mats = []
        for z in self.zero:
            z = np.array(z, dtype=bool)
            if z.ndim != 2 or z.shape[0] != z.shape[1]:
                raise ValueError("pattern matrices must be square")
            if not np.array_equal(z, z.T):
                raise ValueError("pattern must be symmetric")
            np.fill_diagonal(z, False)
            z.setflags(write=False)
            mats.append(z)
        object.__setattr__(self, "zero", tuple(mats))

    @property
    def n_parties(self) -> int:
        return len(self.zero)

    @property
    def n_members(self) -> int:
        return self.zero[0].shape[0] if self.zero else 0

    def pairs(self, party: int) -> set:
        """Orthogonal unordered pairs ``(i, j)`` with ``i < j`` on ``party``."""
        i, j = np.nonzero(np.triu(self.zero[party], 1))
        return {(int(a), int(b)) for a, b in zip(i, j)}

    def __eq__(self, other):
        if not isinstance(other, OrthPattern):
            return NotImplemented
        return len(self.zero) == len(other.zero) and all(
            np.array_equal(a, b) for a, b in zip(self.zero, other.zero)
        )

    def __hash__(self):
        return hash(tuple(z.tobytes() for z in self.zero))


@dataclass(frozen=True)
class Witness:
    assignment: tuple
    local_vectors: tuple
    state: np.ndarray
    max_overlap: float


@dataclass(frozen=True)
class UpbReport:
    orthogonal: bool
    unextendible: bool
    pattern: OrthPattern
    violating_pairs: tuple = ()
    witness: Optional[Witness] = None
    method: str = "partition"
    search_nodes: int = 0
    notes: tuple = field(default_factory=tuple)

    @property
    def is_upb(self) -> bool:
        return self.orthogonal and self.unextendible


def party_overlaps(S: ProductBasisSet, party: int) -> np.ndarray:
    """Matrix of ``|inner(member_i, member_j)|`` on one party."""
    V = np.vstack(S.party_vectors(party))
    return np.abs(V.conj() @ V.T)


def zero_pattern(S: ProductBasisSet, tol: float = DEFAULT_ZERO_TOL) -> OrthPattern:
    if tol <= 0:
        raise ValueError("tol must be positive")
    zero = []
    for p in range(S.n_parties):
        z = party_overlaps(S, p) <= tol
        z = z & z.T
        zero.append(z)
    return OrthPattern(tuple(zero), tol)


def check_mutual_orthogonality(S: ProductBasisSet, tol: float = DEFAULT_ZERO_TOL):
    """Return ``(ok, violating_pairs)``.

    Members ``i`` and ``j`` are orthogonal when some party's vectors are.
    """
    pattern = zero_pattern(S, tol)
    covered = np.zeros((S.n_members, S.n_members), dtype=bool)
    for z in pattern.zero:
        covered |= z
    bad = [
        (i, j)
        for i in range(S.n_members)
        for j in range(i + 1, S.n_members)
        if not covered[i, j]
    ]
    return not bad, bad


def _complement_vector(vectors, dim: int) -> np.ndarray:
    """Unit vector orthogonal to every vector in ``vectors``."""
    if not vectors:
        e = np.zeros(dim, dtype=complex)
        e[0] = 1.0
        return e
    V = np.vstack(vectors)
    frame = V.T @ V.conj()
    frame = 0.5 * (frame + frame.conj().T)
    # a^dag frame a = sum_i |<v_i, a>|^2, so the lowest eigenvector is the one
    _, U = hermitian_eigh(frame)
    return U[:, 0] / np.linalg.norm(U[:, 0])


def check_unextendible(
    S: ProductBasisSet,
    tol: float = DEFAULT_RANK_TOL,
    max_members: int = DEFAULT_MAX_MEMBERS,
    zero_tol: float = DEFAULT_ZERO_TOL,
) -> UpbReport:
    """Search for a product state orthogonal to every member of ``S``.

    Assignments ``sigma: members -> parties`` are explored depth first in
    lexicographic order, pruning as soon as a party's assigned vectors span its
    space (rank deficiency is inherited by subsets, so pruning is exact). The
    first assignment that leaves every party rank deficient yields the witness.

    Raises
    ------
    ValueError
        If ``S`` has more than ``max_members`` members; the search is
        ``k ** n`` in the worst case. Raise ``max_members`` to override.
    """
    n, k = S.n_members, S.n_parties
    if n > max_members:
        raise ValueError(
            f"{n} members exceeds max_members={max_members}; the assignment search "
            f"grows as {k}^{n}. Pass a larger max_members to force it."
        )
    pattern = zero_pattern(S, zero_tol)
    vecs = [S.party_vectors(p) for p in range(k)]

    @lru_cache(maxsize=None)
    def deficient(party: int, subset: frozenset) -> bool:
        if len(subset) < S.dims[party]:
            return True
        return rank_with_tol([vecs[party][i] for i in sorted(subset)], tol) < S.dims[party]

    assignment = [0] * n
    groups = [set() for _ in range(k)]
    visited = 0
    found = None

    def search(i: int) -> bool:
        nonlocal visited, found
        if i == n:
            visited += 1
            found = tuple(assignment)
            return True
        for p in range(k):
            groups[p].add(i)
            if deficient(p, frozenset(groups[p])):
                assignment[i] = p
                if search(i + 1):
                    return True
            else:
                visited += 1
            groups[p].discard(i)
        return False

    extendible = search(0)
    witness = None
    if extendible:
        local = []
        for p in range(k):
            assigned = [vecs[p][i] for i in range(n) if found[i] == p]
            local.append(_complement_vector(assigned, S.dims[p]))
        state = local[0]
        for a in local[1:]:
            state = np.kron(state, a)
        overlaps = np.abs(S.states().conj() @ state)
        witness = Witness(found, tuple(local), state, float(overlaps.max()))
    ok, bad = check_mutual_orthogonality(S, zero_tol)
    return UpbReport(
        orthogonal=ok,
        unextendible=not extendible,
        pattern=pattern,
        violating_pairs=tuple(bad),
        witness=witness,
        method="partition",
        search_nodes=visited,
    )


def is_upb(
    S: ProductBasisSet,
    tol: float = DEFAULT_ZERO_TOL,
    rank_tol: float = DEFAULT_RANK_TOL,
    max_members: int = DEFAULT_MAX_MEMBERS,
) -> UpbReport:
    """Orthogonality and unextendibility in one report."""
    return check_unextendible(S, tol=rank_tol, max_members=max_members, zero_tol=tol)
