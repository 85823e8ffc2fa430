"""Pure-Python implicit-shift QL kernel for tridiagonal eigenvalues.

Fallback twin of the compiled ``lagspec._tridiag`` extension; both
expose ``ql_implicit_shift`` with identical semantics so the eigensolver
front end can select whichever is importable.  The algorithm is the
classic eigenvalue-only QL iteration with Wilkinson shifts applied
implicitly through a chain of Givens rotations.
"""

from math import hypot, copysign


def ql_implicit_shift(d, e, max_iter: int = 50, tol: float = 1e-14) -> int:
    """Eigenvalues of a symmetric tridiagonal matrix, in place.

    ``d`` (length n) holds the diagonal and is overwritten with the
    eigenvalues in no particular order; ``e`` (length n) holds the
    subdiagonal in its first n-1 slots and is destroyed.  An off-diagonal
    entry is treated as negligible once |e[m]| <= tol * (|d[m]| + |d[m+1]|).

    Returns 0 on success, or the 1-based index of an eigenvalue that
    failed to converge within ``max_iter`` QL sweeps.
    """
    n = len(d)
    if n == 0:
        return 0
    e[n - 1] = 0.0
    for l in range(n):
        iterations = 0
        while True:
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= tol * dd:
                    break
                m += 1
            if m == l:
                break
            iterations += 1
            if iterations > max_iter:
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
                    # rotation chain annihilated early; drop the shift
                    # applied so far and restart the sweep
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
