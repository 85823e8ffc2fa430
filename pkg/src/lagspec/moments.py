"""Limiting moments of the auto-covariance Gram spectrum, three ways.

The k-th limiting moment at aspect ratio y is

    m_k = sum_{i=0}^{k-1} (1/k) C(2k, i) C(k, i+1) y^(2k-1-i),

and the same sequence also arises as a walk-count sum and from a cubic
self-convolution recursion.  The three routes are implemented
independently so they can certify each other:

* ``moment_closed_form``      -- the binomial sum above;
* ``moment_from_walk_counts`` -- sum_t y^(2k-t) * count(t-1, k) over a
                                 WalkCountTable;
* ``moment_recursion``        -- m_k = y^2 * (m*m*m)_{k-1} + (y - y^2) * (m*m)_{k-1}
                                 with m_0 = 1, convolutions over index sums.

With the cubic term switched off the recursion degenerates to the
Catalan numbers, with the quadratic term off to the order-three
generalized Catalan numbers; ``convolution_sequence`` exposes that
degree of freedom for tests.

Exactness policy: a Fraction or int aspect ratio stays exact through
every route; a float routes everything through ordinary float
arithmetic.  The generating function h(x) = 1 + sum m_k x^k satisfies

    x y^2 h^3 + x (y - y^2) h^2 - h + 1 = 0,

whose truncated residual ``generating_function_residual`` must vanish
identically; and every moment obeys m_k <= b(y)^k for the upper support
endpoint b(y).
"""

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence, Union

from .law import support_endpoints
from .walks import WalkCountTable

Ratio = Union[Fraction, int, float]


def check_aspect_ratio(y: Ratio) -> None:
    if not y > 0:
        raise ValueError(f"aspect ratio must be positive, got {y}")


def moment_closed_form(k: int, y: Ratio):
    """k-th limiting moment by direct evaluation of the binomial sum."""
    if k < 1:
        raise ValueError("moment order k must be >= 1")
    check_aspect_ratio(y)
    total = 0
    for i in range(k):
        coefficient, remainder = divmod(comb(2 * k, i) * comb(k, i + 1), k)
        assert remainder == 0
        total += coefficient * y ** (2 * k - 1 - i)
    return total


def moment_from_walk_counts(k: int, y: Ratio, table: WalkCountTable):
    """k-th limiting moment as the tail-weighted walk-count sum."""
    if k < 1:
        raise ValueError("moment order k must be >= 1")
    check_aspect_ratio(y)
    if table.max_k < k:
        raise ValueError(f"table covers k <= {table.max_k}, need {k}")
    return sum(y ** (2 * k - t) * table.count_one_zero(t - 1, k)
               for t in range(1, k + 1))


def convolution_sequence(K: int, quadratic_weight, cubic_weight) -> list:
    """u_0..u_K with u_k = cw * (u*u*u)_{k-1} + qw * (u*u)_{k-1}, u_0 = 1.

    Weights (1, 0) give the Catalan numbers, (0, 1) the generalized
    Catalan numbers of order three.  Runs in O(K^2) by keeping the
    running self-convolution instead of a naive triple sum.
    """
    if K < 0:
        raise ValueError("K must be nonnegative")
    u: list = [1]
    square: list = []           # square[n] = sum_{a+b=n} u_a u_b
    for k in range(1, K + 1):
        n = k - 1
        square.append(sum(u[a] * u[n - a] for a in range(n + 1)))
        cube_n = sum(u[a] * square[n - a] for a in range(n + 1))
        u.append(cubic_weight * cube_n + quadratic_weight * square[n])
    return u


@dataclass(frozen=True)
class MomentSequence:
    """Moments m_1..m_K at a fixed aspect ratio.

    ``exact`` reports whether values are Fractions/ints (rational y) or
    floats (decimal y); the CSV schema differs accordingly.
    """

    y: Ratio
    values: tuple

    @property
    def K(self) -> int:
        return len(self.values)

    @property
    def exact(self) -> bool:
        return all(isinstance(v, (int, Fraction)) for v in self.values)

    def to_csv(self, stream) -> None:
        if self.exact:
            stream.write("k,m_k_num,m_k_den\n")
            for k, v in enumerate(self.values, start=1):
                frac = Fraction(v)
                stream.write(f"{k},{frac.numerator},{frac.denominator}\n")
        else:
            stream.write("k,m_k\n")
            for k, v in enumerate(self.values, start=1):
                stream.write(f"{k},{v!r}\n")


def moment_recursion(K: int, y: Ratio) -> MomentSequence:
    """Moments m_1..m_K from the cubic self-convolution recursion."""
    if K < 1:
        raise ValueError("K must be >= 1")
    check_aspect_ratio(y)
    seq = convolution_sequence(K, y - y * y, y * y)
    return MomentSequence(y=y, values=tuple(seq[1:]))


def generating_function_residual(K: int, y: Ratio,
                                 moments: Sequence = None) -> list:
    """Coefficients 0..K of x y^2 h^3 + x (y - y^2) h^2 - h + 1.

    ``h`` is the order-K truncation 1 + sum m_k x^k; with correct
    moments every returned coefficient is exactly zero.  ``moments`` may
    inject alternative values of m_1..m_K (e.g. a corrupted sequence as
    a negative control).
    """
    if K < 1:
        raise ValueError("K must be >= 1")
    check_aspect_ratio(y)
    if moments is None:
        moments = moment_recursion(K, y).values
    if len(moments) < K:
        raise ValueError(f"need {K} moments, got {len(moments)}")
    h = [1] + list(moments[:K])

    def convolve_truncated(a, b, order):
        out = [0] * (order + 1)
        for i, ai in enumerate(a[:order + 1]):
            if ai:
                for j, bj in enumerate(b[:order + 1 - i]):
                    out[i + j] += ai * bj
        return out

    h2 = convolve_truncated(h, h, K - 1)
    h3 = convolve_truncated(h2, h, K - 1)
    residual = [1 - h[0]]
    for n in range(1, K + 1):
        residual.append(y * y * h3[n - 1] + (y - y * y) * h2[n - 1] - h[n])
    return residual


def moment_bound_check(K: int, y: float, rel_slack: float = 1e-12) -> bool:
    """True iff m_k <= b(y)^k for all k <= K, with relative slack.

    b(y) is the upper support endpoint; the comparison is numeric since
    b involves (1 + 8y)^(3/2).
    """
    if K < 1:
        raise ValueError("K must be >= 1")
    check_aspect_ratio(y)
    b = support_endpoints(y).b
    for k in range(1, K + 1):
        if float(moment_closed_form(k, y)) > b ** k * (1.0 + rel_slack):
            return False
    return True
