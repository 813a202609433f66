"""Dense complex linear algebra for small quantum systems.

Everything operates on square ``numpy`` arrays of ``complex128``; this is the
oracle layer the closed-form results elsewhere in the package are verified
against.  The eigensolver of record is a cyclic Jacobi iteration for Hermitian
matrices (see :func:`jacobi_eigenvalues`); the numba backend runs the compiled
version of the same algorithm, the numpy backend delegates to LAPACK behind
the identical contract.
"""

from __future__ import annotations

import numpy as np

from negmono.backend import get_kernels
from negmono.errors import DimensionMismatch, NotHermitian, NotNormalized

MAX_ENTRIES = 4096          # library targets small systems only
HERMITIAN_TOL = 1e-10

_K = get_kernels()


def _as_square(m) -> np.ndarray:
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {a.shape}")
    if a.size > MAX_ENTRIES:
        raise DimensionMismatch(
            f"matrix with {a.size} entries exceeds the {MAX_ENTRIES}-entry cap"
        )
    return a


def _require_hermitian(a: np.ndarray, tol: float = HERMITIAN_TOL) -> None:
    if np.max(np.abs(a - a.conj().T)) > tol:
        raise NotHermitian("matrix is not Hermitian within tolerance")


def tensor_product(a, b) -> np.ndarray:
    """Kronecker product of two square matrices."""
    return np.kron(_as_square(a), _as_square(b))


def density_from_pure(psi) -> np.ndarray:
    """Rank-1 projector |psi><psi| of a normalized amplitude vector.

    Accepts a plain vector or anything with an ``amplitudes`` attribute.
    """
    v = np.asarray(getattr(psi, "amplitudes", psi), dtype=np.complex128).ravel()
    norm = np.linalg.norm(v)
    if abs(norm - 1.0) > 1e-8:
        raise NotNormalized(f"state norm {norm} deviates from 1 by more than 1e-8")
    if v.size * v.size > MAX_ENTRIES:
        raise DimensionMismatch(
            f"projector would have {v.size * v.size} entries (cap {MAX_ENTRIES})"
        )
    return np.outer(v, v.conj())


def partial_trace(rho, dims: tuple[int, int], keep: int) -> np.ndarray:
    """Trace out one factor of a bipartite density matrix.

    ``dims = (d_A, d_B)``; ``keep = 0`` keeps the A factor, ``keep = 1`` the B
    factor.  The trace of the output equals the trace of the input.
    """
    a = _as_square(rho)
    dA, dB = dims
    if a.shape[0] != dA * dB:
        raise DimensionMismatch(f"matrix of dim {a.shape[0]} != {dA}*{dB}")
    t = a.reshape(dA, dB, dA, dB)
    if keep == 0:
        return np.einsum("ijkj->ik", t)
    if keep == 1:
        return np.einsum("ijil->jl", t)
    raise DimensionMismatch(f"keep must be 0 or 1, got {keep}")


def partial_transpose(rho, dims: tuple[int, int]) -> np.ndarray:
    """Transpose the first (A) tensor factor of a bipartite matrix.

    Pure entry permutation: applying it twice returns the input exactly, and
    Hermiticity is preserved.
    """
    a = _as_square(rho)
    dA, dB = dims
    if a.shape[0] != dA * dB:
        raise DimensionMismatch(f"matrix of dim {a.shape[0]} != {dA}*{dB}")
    return np.ascontiguousarray(
        a.reshape(dA, dB, dA, dB).transpose(2, 1, 0, 3).reshape(dA * dB, dA * dB)
    )


def hermitian_eigenvalues(m, *, check: bool = True) -> np.ndarray:
    """All eigenvalues of a Hermitian matrix, ascending."""
    a = _as_square(m)
    if check:
        _require_hermitian(a)
    return _K.eigvalsh(a)


def hermitian_eigensystem(m, *, check: bool = True):
    """Eigenvalues (ascending) and eigenvector columns of a Hermitian matrix."""
    a = _as_square(m)
    if check:
        _require_hermitian(a)
    return _K.eigh(a)


def jacobi_eigenvalues(m, tol: float = 1e-13, vectors: bool = False):
    """Reference cyclic Jacobi eigensolver for complex Hermitian matrices.

    Sweeps zero out off-diagonal entries pairwise with unitary rotations until
    the off-diagonal Frobenius norm falls below ``tol`` relative to the matrix
    norm.  Plain Python loops: intended for verification and small matrices.
    """
    A = _as_square(m).copy()
    _require_hermitian(A)
    n = A.shape[0]
    V = np.eye(n, dtype=np.complex128)
    scale = max(np.sqrt((np.abs(A) ** 2).sum()), 1e-300)
    for _ in range(100):
        off = np.sqrt(2.0 * sum(abs(A[p, q]) ** 2
                                for p in range(n - 1) for q in range(p + 1, n)))
        if off <= tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                mag = abs(apq)
                if mag < 1e-300:
                    continue
                phase = apq / mag
                tau = (A[q, q].real - A[p, p].real) / (2.0 * mag)
                t = np.sign(tau) / (abs(tau) + np.sqrt(1 + tau * tau)) if tau != 0 else 1.0
                c = 1.0 / np.sqrt(1 + t * t)
                s = t * c
                rowp = c * A[p, :] - s * phase * A[q, :]
                rowq = s * A[p, :] + c * phase * A[q, :]
                A[p, :], A[q, :] = rowp, rowq
                colp = c * A[:, p] - s * np.conj(phase) * A[:, q]
                colq = s * A[:, p] + c * np.conj(phase) * A[:, q]
                A[:, p], A[:, q] = colp, colq
                if vectors:
                    vp = c * V[:, p] - s * np.conj(phase) * V[:, q]
                    vq = s * V[:, p] + c * np.conj(phase) * V[:, q]
                    V[:, p], V[:, q] = vp, vq
    w = np.diag(A).real.copy()
    order = np.argsort(w, kind="stable")
    if vectors:
        return w[order], V[:, order]
    return w[order]
