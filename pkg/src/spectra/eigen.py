"""
Hermitian eigenvalue solvers.

jacobi_eigenvalues  : cyclic complex Jacobi rotations - O(n³) per sweep
bisection_eigenvalues : Householder tridiagonalization plus Sturm-count
                        bisection on the characteristic polynomial; used
                        as an independent oracle for the Jacobi solver
"""

import logging
import math
from typing import Tuple

import numpy as np

from groupoid_core.errors import ValidationError

logger = logging.getLogger(__name__)

JACOBI_TOL = 1e-12
MAX_SWEEPS = 100
HERMITIAN_TOL = 1e-9


def _require_hermitian(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=complex, copy=True)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValidationError("eigen-solvers need a square matrix", (a.shape,), axiom="square")
    scale = max(1.0, float(np.max(np.abs(a)))) if a.size else 1.0
    if a.size and float(np.max(np.abs(a - a.conj().T))) > HERMITIAN_TOL * scale:
        raise ValidationError("matrix is not Hermitian", (), axiom="hermitian")
    return (a + a.conj().T) / 2


def off_diagonal_norm(a: np.ndarray) -> float:
    """Frobenius norm of the strictly off-diagonal part"""
    off = a - np.diag(np.diag(a))
    return float(np.linalg.norm(off))


def jacobi_eigh(matrix: np.ndarray, tol: float = JACOBI_TOL,
                max_sweeps: int = MAX_SWEEPS) -> Tuple[np.ndarray, int]:
    """Eigenvalues (ascending) and the number of sweeps used

    Each rotation first turns a_pq real with a diagonal phase, then
    applies the real symmetric Jacobi rotation; only rows and columns
    p and q change. Stops when the off-diagonal Frobenius norm is at
    most tol·max(1, ‖A‖_F).
    """
    a = _require_hermitian(matrix)
    n = a.shape[0]
    if n == 0:
        return np.zeros(0), 0
    threshold = tol * max(1.0, float(np.linalg.norm(a)))
    sweeps = 0
    while off_diagonal_norm(a) > threshold:
        if sweeps >= max_sweeps:
            logger.warning("Jacobi stopped after %d sweeps, off-norm %.3e", sweeps, off_diagonal_norm(a))
            break
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag == 0.0:
                    continue
                phase = apq / mag
                theta = (a[q, q].real - a[p, p].real) / (2.0 * mag)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
                    if theta < 0:
                        t = -t
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                rot = np.array([[c, s], [-s * np.conj(phase), c * np.conj(phase)]], dtype=complex)
                cols = a[:, [p, q]] @ rot
                a[:, p] = cols[:, 0]
                a[:, q] = cols[:, 1]
                rows = rot.conj().T @ a[[p, q], :]
                a[p, :] = rows[0]
                a[q, :] = rows[1]
                a[p, q] = 0.0
                a[q, p] = 0.0
    return np.sort(np.diag(a).real), sweeps


def jacobi_eigenvalues(matrix: np.ndarray, tol: float = JACOBI_TOL) -> np.ndarray:
    return jacobi_eigh(matrix, tol)[0]


def householder_tridiagonal(matrix: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Diagonal and |sub-diagonal| of a unitarily similar tridiagonal matrix"""
    a = _require_hermitian(matrix)
    n = a.shape[0]
    for k in range(n - 2):
        x = a[k + 1:, k].copy()
        alpha = float(np.linalg.norm(x))
        if alpha == 0.0:
            continue
        phase = x[0] / abs(x[0]) if abs(x[0]) > 0 else 1.0
        v = x
        v[0] += phase * alpha
        v = v / np.linalg.norm(v)
        a[k + 1:, :] -= 2.0 * np.outer(v, v.conj() @ a[k + 1:, :])
        a[:, k + 1:] -= 2.0 * np.outer(a[:, k + 1:] @ v, v.conj())
    return np.diag(a).real.copy(), np.abs(np.diag(a, 1))


def sturm_count(diag: np.ndarray, off: np.ndarray, x: float) -> int:
    """Number of eigenvalues below x (signs of the leading-minor ratios)"""
    count = 0
    q = diag[0] - x
    for i in range(len(diag)):
        if i > 0:
            if q == 0.0:
                q = 1e-300
            q = diag[i] - x - off[i - 1] ** 2 / q
        if q < 0:
            count += 1
    return count


def bisection_eigenvalues(matrix: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    """Eigenvalues bracketed by bisection on Sturm counts, ascending"""
    diag, off = householder_tridiagonal(matrix)
    n = len(diag)
    if n == 0:
        return np.zeros(0)
    padded = np.concatenate(([0.0], off, [0.0]))
    bound = float(np.max(np.abs(diag) + padded[:-1] + padded[1:])) + 1.0
    width = tol * bound
    values = np.empty(n)
    for k in range(n):
        lo, hi = -bound, bound
        while hi - lo > width:
            mid = 0.5 * (lo + hi)
            if sturm_count(diag, off, mid) > k:
                hi = mid
            else:
                lo = mid
        values[k] = 0.5 * (lo + hi)
    return values
