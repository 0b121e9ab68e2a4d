"""Dense complex matrix arithmetic used throughout the package.

Everything here operates on plain ``numpy.ndarray`` objects with dtype
``complex128``.  The one non-obvious convention is the realignment map,
which permutes a bipartite operator (acting on A tensor B) into the
``dA^2 x dB^2`` matrix whose singular value decomposition produces the
operator-Schmidt form.
"""

from __future__ import annotations

import numpy as np

from .tolerances import ATOL, SVD_RTOL


def as_matrix(m, name: str = "matrix") -> np.ndarray:
    """Coerce to a 2-d complex128 array and require finite entries."""
    arr = np.asarray(m, dtype=complex)
    if arr.ndim != 2:
        raise ValueError(f"{name} must be two-dimensional, got shape {arr.shape}")
    if not (np.all(np.isfinite(arr.real)) and np.all(np.isfinite(arr.imag))):
        raise ValueError(f"{name} contains non-finite entries")
    return arr


def dagger(m: np.ndarray) -> np.ndarray:
    return np.conj(m).T


def frob_norm(m: np.ndarray) -> float:
    """2-norm sqrt(tr(M^dag M)), i.e. the Frobenius norm."""
    return float(np.linalg.norm(m))


def frob_inner(a: np.ndarray, b: np.ndarray) -> complex:
    """Hilbert-Schmidt inner product tr(A^dag B)."""
    return complex(np.sum(np.conj(a) * b))


def is_hermitian(m: np.ndarray, tol: float = ATOL) -> bool:
    return bool(np.max(np.abs(m - dagger(m))) <= tol)


def kron(a, b) -> np.ndarray:
    """Kronecker product of two matrices."""
    return np.kron(as_matrix(a, "a"), as_matrix(b, "b"))


def realign(rho, dA: int, dB: int) -> np.ndarray:
    """Permute a bipartite operator into its dA^2 x dB^2 realignment.

    Row index (i, k) collects both A indices (ket then bra, row-major),
    column index (j, l) both B indices, so that
    ``M[(i,k),(j,l)] = <ij| rho |kl>``.  The map is a bijective entry
    permutation; in particular it preserves the 2-norm exactly, and a
    product operator realigns to the rank-1 matrix vec(a) vec(b)^T.
    """
    rho = as_matrix(rho, "rho")
    if rho.shape != (dA * dB, dA * dB):
        raise ValueError(
            f"operator has shape {rho.shape}, expected {(dA * dB, dA * dB)} "
            f"for local dimensions ({dA}, {dB})"
        )
    return rho.reshape(dA, dB, dA, dB).transpose(0, 2, 1, 3).reshape(dA**2, dB**2)


def unrealign(m, dA: int, dB: int) -> np.ndarray:
    """Inverse of :func:`realign`."""
    m = as_matrix(m, "m")
    if m.shape != (dA**2, dB**2):
        raise ValueError(
            f"realigned matrix has shape {m.shape}, expected {(dA**2, dB**2)}"
        )
    return m.reshape(dA, dA, dB, dB).transpose(0, 2, 1, 3).reshape(dA * dB, dA * dB)


def svd(m) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Singular value decomposition ``m = U diag(s) V^dag``.

    Returns (U, s, V) with s nonincreasing and nonnegative and U, V having
    orthonormal columns.  Note the third factor is V itself, not V^dag.

    Raises ``np.linalg.LinAlgError`` if the underlying iteration fails to
    converge, which signals a numerically pathological input.
    """
    m = as_matrix(m, "m")
    u, s, vh = np.linalg.svd(m, full_matrices=False)
    return u, s, dagger(vh)


def svd_residual(m: np.ndarray, u: np.ndarray, s: np.ndarray, v: np.ndarray) -> float:
    """Relative reconstruction residual of an SVD triple."""
    rec = (u * s) @ dagger(v)
    denom = max(frob_norm(m), 1e-300)
    return frob_norm(m - rec) / denom


def check_svd(m: np.ndarray, rtol: float = SVD_RTOL) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """SVD with the reconstruction residual verified against ``rtol``."""
    u, s, v = svd(m)
    res = svd_residual(m, u, s, v)
    if res > rtol:
        raise np.linalg.LinAlgError(
            f"SVD residual {res:.3e} exceeds relative tolerance {rtol:.1e}"
        )
    return u, s, v
