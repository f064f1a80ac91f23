"""Small dense complex linear algebra.

Vectors are 1-D complex ``numpy`` arrays and matrices are 2-D complex arrays.
The inner product is conjugate-linear in its first argument,
``inner(u, v) = sum(conj(u) * v)``.

Eigenvalues are computed with a cyclic complex Jacobi iteration, which is
plenty for the matrix sizes met here (at most a few hundred rows).
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

__all__ = [
    "ConvergenceError",
    "as_vector",
    "inner",
    "tensor",
    "gram",
    "rank_with_tol",
    "hermitian_eigh",
    "hermitian_eigenvalues",
    "partial_transpose",
    "DEFAULT_RANK_TOL",
]

DEFAULT_RANK_TOL = 1e-8
_JACOBI_MAX_SWEEPS = 100
_JACOBI_REL_TOL = 1e-12
_HERMITIAN_REL_TOL = 1e-10


class ConvergenceError(RuntimeError):
    """Raised when the Jacobi iteration does not converge."""


def as_vector(values) -> np.ndarray:
    v = np.asarray(values, dtype=complex)
    if v.ndim != 1 or v.size == 0:
        raise ValueError(f"expected a non-empty 1-D vector, got shape {v.shape}")
    return v


def inner(u, v) -> complex:
    """Hermitian inner product, conjugate-linear in ``u``."""
    u = as_vector(u)
    v = as_vector(v)
    if u.shape != v.shape:
        raise ValueError(f"dimension mismatch: {u.size} vs {v.size}")
    return complex(np.vdot(u, v))


def tensor(u, v) -> np.ndarray:
    """Kronecker product; entry ``i * len(v) + j`` equals ``u[i] * v[j]``."""
    return np.kron(as_vector(u), as_vector(v))


def gram(vectors: Sequence) -> np.ndarray:
    """Matrix of pairwise inner products ``G[i, j] = inner(v_i, v_j)``.

    The result is made exactly Hermitian and its diagonal exactly real.
    """
    rows = [as_vector(v) for v in vectors]
    if not rows:
        raise ValueError("gram() needs at least one vector")
    dim = rows[0].size
    for k, r in enumerate(rows):
        if r.size != dim:
            raise ValueError(f"dimension mismatch at vector {k}: {r.size} vs {dim}")
    V = np.vstack(rows)
    G = V.conj() @ V.T
    G = 0.5 * (G + G.conj().T)
    G[np.diag_indices_from(G)] = G.diagonal().real
    return G


def rank_with_tol(vectors: Sequence, tol: float = DEFAULT_RANK_TOL) -> int:
    """Dimension of the span of ``vectors``.

    Counts eigenvalues of the Gram matrix above ``tol * max(lambda_max, 1)``.
    The frame operator ``sum |v><v|`` shares the nonzero spectrum of the Gram
    matrix, so whichever of the two is smaller gets diagonalized.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    rows = [as_vector(v) for v in vectors]
    if not rows:
        raise ValueError("rank_with_tol() needs at least one vector")
    if rows[0].size < len(rows):
        V = np.vstack(rows)
        M = V.T @ V.conj()
        M = 0.5 * (M + M.conj().T)
    else:
        M = gram(rows)
    w = hermitian_eigenvalues(M)
    scale = max(float(w[-1]), 1.0)
    return int(np.count_nonzero(w > tol * scale))


def _check_hermitian(M) -> np.ndarray:
    A = np.array(M, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {A.shape}")
    scale = np.max(np.abs(A)) if A.size else 0.0
    dev = np.max(np.abs(A - A.conj().T)) if A.size else 0.0
    if dev > _HERMITIAN_REL_TOL * scale:
        raise ValueError(f"matrix is not Hermitian (max deviation {dev:.3e})")
    return 0.5 * (A + A.conj().T)


def hermitian_eigh(M, tol: float = _JACOBI_REL_TOL, max_sweeps: int = _JACOBI_MAX_SWEEPS):
    """Eigen-decomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Parameters
    ----------
    M : array_like
        Square Hermitian matrix.
    tol : float
        Relative convergence threshold: iteration stops when the off-diagonal
        Frobenius norm drops below ``tol * ||M||_F``.
    max_sweeps : int
        Hard cap on full sweeps.

    Returns
    -------
    w : ndarray of float
        Eigenvalues in ascending order.
    V : ndarray of complex
        Unitary matrix whose columns are the matching eigenvectors.

    Raises
    ------
    ConvergenceError
        If the off-diagonal norm is still above threshold after ``max_sweeps``.
    """
    A = _check_hermitian(M)
    n = A.shape[0]
    V = np.eye(n, dtype=complex)
    norm = np.linalg.norm(A)
    threshold = tol * norm

    def off_norm():
        return np.linalg.norm(A - np.diag(A.diagonal()))

    sweeps = 0
    while off_norm() > threshold:
        if sweeps >= max_sweeps:
            raise ConvergenceError(
                f"Jacobi iteration did not converge in {max_sweeps} sweeps "
                f"(off-diagonal norm {off_norm():.3e})"
            )
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                mag = abs(apq)
                if mag <= 1e-300 or mag < 1e-3 * threshold / n:
                    continue
                # gauge the pair so that A[p, q] becomes real and positive
                phase = apq / mag
                A[:, q] *= np.conj(phase)
                A[q, :] *= phase
                V[:, q] *= np.conj(phase)
                app = A[p, p].real
                aqq = A[q, q].real
                theta = (aqq - app) / (2.0 * mag)
                t = np.sign(theta) / (abs(theta) + np.sqrt(theta * theta + 1.0))
                if theta == 0.0:
                    t = 1.0
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                col_p = A[:, p].copy()
                col_q = A[:, q].copy()
                A[:, p] = c * col_p - s * col_q
                A[:, q] = s * col_p + c * col_q
                row_p = A[p, :].copy()
                row_q = A[q, :].copy()
                A[p, :] = c * row_p - s * row_q
                A[q, :] = s * row_p + c * row_q
                A[p, q] = A[q, p] = 0.0
                vp = V[:, p].copy()
                vq = V[:, q].copy()
                V[:, p] = c * vp - s * vq
                V[:, q] = s * vp + c * vq
    w = A.diagonal().real.copy()
    order = np.argsort(w, kind="stable")
    return w[order], V[:, order]


def hermitian_eigenvalues(M, tol: float = _JACOBI_REL_TOL) -> np.ndarray:
    """Ascending eigenvalues of a Hermitian matrix (see :func:`hermitian_eigh`)."""
    return hermitian_eigh(M, tol=tol)[0]


def partial_transpose(M, dims: Sequence[int], party) -> np.ndarray:
    """Transpose the indices of one party (or several) of a multipartite matrix.

    Parameters
    ----------
    M : array_like
        Square matrix of side ``prod(dims)``.
    dims : sequence of int
        Local dimensions, first party most significant.
    party : int or sequence of int
        Party index (or indices) whose row/column indices are swapped.
    """
    A = np.asarray(M)
    dims = [int(d) for d in dims]
    D = int(np.prod(dims))
    if A.ndim != 2 or A.shape != (D, D):
        raise ValueError(f"matrix shape {A.shape} does not match dims {dims}")
    parties = [party] if np.isscalar(party) else list(party)
    k = len(dims)
    for p in parties:
        if not 0 <= p < k:
            raise ValueError(f"party index {p} out of range for {k} parties")
    T = A.reshape(dims + dims)
    axes = list(range(2 * k))
    for p in set(parties):
        axes[p], axes[k + p] = axes[k + p], axes[p]
    return T.transpose(axes).reshape(D, D)
