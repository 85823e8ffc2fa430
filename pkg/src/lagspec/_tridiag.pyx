# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled implicit-shift QL kernel for tridiagonal eigenvalues.

Hot twin of ``lagspec._tridiag_py``; see that module for the contract.
"""

from libc.math cimport hypot, fabs, copysign


def ql_implicit_shift(double[::1] d, double[::1] e,
                      int max_iter=50, double tol=1e-14):
    """Eigenvalues of a symmetric tridiagonal matrix, in place.

    Identical semantics to the pure-Python fallback: overwrites ``d``
    with the eigenvalues, destroys ``e``, and returns 0 on success or
    the 1-based index of a non-converged eigenvalue.
    """
    cdef Py_ssize_t n = d.shape[0]
    cdef Py_ssize_t l, m, i
    cdef int iterations
    cdef double dd, g, r, s, c, p, f, b
    cdef bint underflow

    if n == 0:
        return 0
    e[n - 1] = 0.0
    with nogil:
        for l in range(n):
            iterations = 0
            while True:
                m = l
                while m < n - 1:
                    dd = fabs(d[m]) + fabs(d[m + 1])
                    if fabs(e[m]) <= tol * dd:
                        break
                    m += 1
                if m == l:
                    break
                iterations += 1
                if iterations > max_iter:
                    with gil:
                        return l + 1
                g = (d[l + 1] - d[l]) / (2.0 * e[l])
                r = hypot(g, 1.0)
                g = d[m] - d[l] + e[l] / (g + copysign(r, g))
                s = 1.0
                c = 1.0
                p = 0.0
                underflow = False
                for i in range(m - 1, l - 1, -1):
                    f = s * e[i]
                    b = c * e[i]
                    r = hypot(f, g)
                    e[i + 1] = r
                    if r == 0.0:
                        d[i + 1] -= p
                        e[m] = 0.0
                        underflow = True
                        break
                    s = f / r
                    c = g / r
                    g = d[i + 1] - p
                    r = (d[i] - g) * s + 2.0 * c * b
                    p = s * r
                    d[i + 1] = g + p
                    g = c * r - b
                if not underflow:
                    d[l] -= p
                    e[l] = g
                    e[m] = 0.0
    return 0
