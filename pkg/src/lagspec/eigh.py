"""Symmetric eigenvalues without eigenvectors, built in-package.

The pipeline is Householder reduction to tridiagonal form (numpy-level
vector arithmetic) followed by an implicit-shift QL iteration on the
diagonal/subdiagonal pair.  The QL sweep is the hot inner loop; at
import time the compiled Cython kernel is selected when available and a
pure-Python twin otherwise (``KERNEL_BACKEND`` reports which one won).
``benchmarks/bench_eigh.py`` compares the two.

An exact-arithmetic characteristic-polynomial route
(``eigenvalues_via_charpoly``) serves as an independent oracle for small
matrices; it shares no code with the QL pipeline.
"""

from fractions import Fraction
from math import copysign

import numpy as np

try:
    from ._tridiag import ql_implicit_shift as _ql_kernel
    KERNEL_BACKEND = "compiled"
except ImportError:                                  # pragma: no cover
    from ._tridiag_py import ql_implicit_shift as _ql_kernel
    KERNEL_BACKEND = "python"

QL_MAX_ITER = 50
QL_TOL = 1e-14


class EigenConvergenceError(RuntimeError):
    """QL iteration failed to converge; signals a bug or bad scaling."""


def tridiagonalize(A: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Householder similarity reduction of a symmetric matrix.

    Returns (d, e): the diagonal (length n) and subdiagonal (length
    n-1) of an orthogonally similar tridiagonal matrix.  Only the lower
    triangle of ``A`` is referenced; the input is not modified.
    """
    A = np.array(A, dtype=float)
    n = A.shape[0]
    if A.shape != (n, n):
        raise ValueError(f"matrix must be square, got shape {A.shape}")
    e = np.zeros(max(n - 1, 0))
    for k in range(n - 2):
        x = A[k + 1:, k]
        norm = float(np.linalg.norm(x))
        if norm == 0.0:
            e[k] = 0.0
            continue
        alpha = -copysign(norm, x[0]) if x[0] != 0.0 else -norm
        v = x.copy()
        v[0] -= alpha
        vnorm2 = float(v @ v)
        if vnorm2 == 0.0:
            e[k] = alpha
            continue
        beta = 2.0 / vnorm2
        block = A[k + 1:, k + 1:]
        w = beta * (block @ v)
        u = w - (0.5 * beta * float(v @ w)) * v
        block -= np.outer(v, u) + np.outer(u, v)
        e[k] = alpha
    if n >= 2:
        e[n - 2] = A[n - 1, n - 2]
    return np.diagonal(A).copy(), e


def tridiag_eigenvalues(d: np.ndarray, e: np.ndarray) -> np.ndarray:
    """All eigenvalues of the tridiagonal matrix (d, e), ascending."""
    d = np.array(d, dtype=float)
    n = len(d)
    buf = np.zeros(n)
    buf[:n - 1] = e
    status = _ql_kernel(d, buf, QL_MAX_ITER, QL_TOL)
    if status != 0:
        raise EigenConvergenceError(
            f"QL iteration exceeded {QL_MAX_ITER} sweeps at index {status}")
    d.sort()
    return d


def symmetric_eigenvalues(A: np.ndarray) -> np.ndarray:
    """Eigenvalues of a symmetric matrix, ascending."""
    n = A.shape[0]
    if n == 1:
        return np.array([float(A[0, 0])])
    d, e = tridiagonalize(A)
    return tridiag_eigenvalues(d, e)


def charpoly_coefficients(A) -> list[Fraction]:
    """Characteristic polynomial by the Faddeev-LeVerrier recurrence.

    Input entries are converted to Fractions, so for exactly
    representable matrices the coefficients are exact.  Returns
    [1, c_{n-1}, ..., c_0] with p(t) = t^n + c_{n-1} t^(n-1) + ... + c_0.
    Intended for small n (cost grows like n^4 exact multiplications).
    """
    n = len(A)
    M = [[Fraction(A[i][j]) for j in range(n)] for i in range(n)]

    def mat_mul(X, Y):
        return [[sum(X[i][k] * Y[k][j] for k in range(n)) for j in range(n)]
                for i in range(n)]

    def trace(X):
        return sum(X[i][i] for i in range(n))

    coefficients = [Fraction(1)]
    work = [row[:] for row in M]
    for step in range(1, n + 1):
        c = -trace(work) / step
        coefficients.append(c)
        if step == n:
            break
        for i in range(n):
            work[i][i] += c
        work = mat_mul(M, work)
    return coefficients


def eigenvalues_via_charpoly(A) -> np.ndarray:
    """Oracle eigenvalues: roots of the exact characteristic polynomial.

    Independent of the Householder/QL pipeline; suitable only for small
    symmetric matrices (all roots are real, the small imaginary parts
    returned by the polynomial root finder are discarded).
    """
    coefficients = [float(c) for c in charpoly_coefficients(A)]
    roots = np.roots(coefficients)
    return np.sort(roots.real)
