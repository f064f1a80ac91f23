"""Complement states of product bases and their partial-transpose spectra."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .constructors import ProductBasisSet
from .linalg import hermitian_eigenvalues, partial_transpose
from .verify import DEFAULT_ZERO_TOL, check_mutual_orthogonality

__all__ = [
    "DensityMatrix",
    "PptReport",
    "DEFAULT_PPT_TOL",
    "upb_complement_state",
    "ppt_check",
    "single_party_cuts",
]

DEFAULT_PPT_TOL = 1e-10


@dataclass(frozen=True)
class DensityMatrix:
    matrix: np.ndarray
    dims: tuple
    trace: float

    @classmethod
    def from_matrix(cls, M, dims: Sequence[int]) -> "DensityMatrix":
        A = np.array(M, dtype=complex)
        dims = tuple(int(d) for d in dims)
        D = int(np.prod(dims))
        if A.shape != (D, D):
            raise ValueError(f"matrix shape {A.shape} does not match dims {dims}")
        if np.max(np.abs(A - A.conj().T)) > 1e-12:
            raise ValueError("density matrix is not Hermitian")
        A = 0.5 * (A + A.conj().T)
        A.setflags(write=False)
        return cls(A, dims, float(np.trace(A).real))

    def eigenvalues(self) -> np.ndarray:
        return hermitian_eigenvalues(self.matrix)

    def rank(self, tol: float = 1e-10) -> int:
        return int(np.count_nonzero(self.eigenvalues() > tol))


@dataclass(frozen=True)
class PptReport:
    cuts: tuple
    minima: tuple
    tol: float

    @property
    def ppt(self) -> bool:
        return all(m >= -self.tol for m in self.minima)


def upb_complement_state(S: ProductBasisSet, tol: float = DEFAULT_ZERO_TOL) -> DensityMatrix:
    """Normalized projector onto the orthogonal complement of the members' span.

    ``rho = (I - sum_i |psi_i><psi_i|) / (D - n)``.
    """
    ok, bad = check_mutual_orthogonality(S, tol)
    if not ok:
        raise ValueError(f"members are not mutually orthogonal; violating pairs {bad}")
    D, n = S.total_dim, S.n_members
    if n >= D:
        raise ValueError(f"{n} members fill the whole {D}-dimensional space")
    psi = S.states()
    proj = psi.T @ psi.conj()
    rho = (np.eye(D) - proj) / (D - n)
    return DensityMatrix.from_matrix(rho, S.dims)


def single_party_cuts(k: int) -> tuple:
    return tuple((p,) for p in range(k))


def ppt_check(
    rho: DensityMatrix,
    tol: float = DEFAULT_PPT_TOL,
    cuts: Optional[Sequence] = None,
) -> PptReport:
    """Minimum eigenvalue of the partial transpose on each cut.

    ``cuts`` lists groups of parties to transpose together; the default is
    every single party.
    """
    if cuts is None:
        cuts = single_party_cuts(len(rho.dims))
    cuts = tuple(tuple(int(p) for p in c) for c in cuts)
    minima = []
    for c in cuts:
        pt = partial_transpose(rho.matrix, rho.dims, c)
        minima.append(float(hermitian_eigenvalues(pt)[0]))
    return PptReport(cuts, tuple(minima), tol)
