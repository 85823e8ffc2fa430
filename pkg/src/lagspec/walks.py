"""Exact counting of the constrained walks behind the limiting moments.

A word of length 4k over {-1, 0, +1} encodes a lattice walk: +1 steps may
only occupy even positions (1-based), -1 steps only odd positions, the
word starts with a zero, all partial sums stay nonnegative and the total
sum is zero.  Pairing every -1 with the nearest preceding unmatched +1
gives the unique non-crossing bracket structure of the walk; a walk is
*admissible* when every bracket spans a window whose length (both
endpoints included) is divisible by four.  Nested brackets then leave
top-level runs of zeros of length 2 mod 4, which is exactly the shape
constraint the admissible walks must satisfy.

Admissible walks are counted by the number m of +1 steps, in two
families that differ only in the required tail of zeros:

* ``one-zero`` counts: the word ends with (at least) one zero;
* ``three-zeros`` counts: the word ends with three zeros.

Three independent routes produce the counts and are cross-checked in the
test suite: brute-force enumeration of all placements (small k), a pair
of coupled recursions obtained by splitting a walk at its first return
to the origin, and -- for the one-zero family -- the binomial closed form
``C(2k, m) * C(k, m+1) / k``.  The same coupled recursions lift to the
per-k generating polynomials in the variable marking m.
"""

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterator, Sequence

END_ONE_ZERO = "end-one-zero"
END_THREE_ZEROS = "end-three-zeros"
_VARIANTS = (END_ONE_ZERO, END_THREE_ZEROS)

# Exhaustive enumeration is the ground-truth oracle and is only meant for
# tiny k; 4k = 16 already means 12870 candidate placements.
ENUMERATION_CUTOFF = 4


class MatchingError(ValueError):
    """A walk admits no canonical bracket matching."""


class UnbalancedSequenceError(MatchingError):
    """The numbers of +1 and -1 steps differ."""


class PrefixViolationError(MatchingError):
    """Some -1 step has no open +1 step before it (partial sum < 0)."""


class CutoffExceededError(ValueError):
    """Brute-force enumeration requested beyond the supported k."""


def canonical_matching(entries: Sequence[int]) -> list[tuple[int, int]]:
    """Pair each -1 with the nearest preceding unmatched +1.

    Returns the list of (open, close) position pairs, 1-based, in closing
    order.  This is the unique non-crossing matching of the walk; pairs
    are properly nested and every open position is even, every close
    position odd.

    Raises UnbalancedSequenceError or PrefixViolationError when no such
    matching exists.
    """
    stack: list[int] = []
    pairs: list[tuple[int, int]] = []
    for pos, step in enumerate(entries, start=1):
        if step == 1:
            stack.append(pos)
        elif step == -1:
            if not stack:
                raise PrefixViolationError(
                    f"-1 at position {pos} has no open +1 before it")
            pairs.append((stack.pop(), pos))
    if stack:
        raise UnbalancedSequenceError(
            f"{len(stack)} up step(s) left unmatched")
    return pairs


def validate_sequence(entries: Sequence[int], variant: str = END_ONE_ZERO) -> bool:
    """Check whether a length-4k word is an admissible walk.

    Admissibility means: first entry zero; tail of one zero or three
    zeros according to ``variant``; +1 only at even and -1 only at odd
    positions; the canonical matching exists; and every matched bracket
    spans a window of length divisible by four.

    Malformed content yields False, never an exception.
    """
    if variant not in _VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    n = len(entries)
    if n == 0 or n % 4 != 0:
        return False
    if entries[0] != 0:
        return False
    tail = 1 if variant == END_ONE_ZERO else 3
    if any(entries[n - i] != 0 for i in range(1, tail + 1)):
        return False
    for pos, step in enumerate(entries, start=1):
        if step not in (-1, 0, 1):
            return False
        if step == 1 and pos % 2 == 1:
            return False
        if step == -1 and pos % 2 == 0:
            return False
    try:
        pairs = canonical_matching(entries)
    except MatchingError:
        return False
    return all((close - open_ + 1) % 4 == 0 for open_, close in pairs)


def _placements(k: int) -> Iterator[list[int]]:
    """All parity-respecting words of length 4k (the enumeration pool)."""
    n = 4 * k
    even_slots = range(1, n, 2)   # 0-based indices of even 1-based positions
    odd_slots = range(2, n, 2)    # 0-based odd 1-based positions, skipping 1
    for m in range(k + 1):
        for ups in combinations(even_slots, m):
            for downs in combinations(odd_slots, m):
                word = [0] * n
                for i in ups:
                    word[i] = 1
                for i in downs:
                    word[i] = -1
                yield word


def enumerate_walk_counts(k: int, variant: str = END_ONE_ZERO) -> dict[int, int]:
    """Count admissible walks of length 4k by brute force, keyed by m.

    This is the independent oracle for the recursion and closed-form
    routes; only m values with a nonzero count appear in the result.
    """
    if k < 1:
        raise ValueError("k must be positive")
    if k > ENUMERATION_CUTOFF:
        raise CutoffExceededError(
            f"enumeration supports k <= {ENUMERATION_CUTOFF}, got {k}")
    counts: dict[int, int] = {}
    for word in _placements(k):
        if validate_sequence(word, variant):
            m = sum(1 for s in word if s == 1)
            counts[m] = counts.get(m, 0) + 1
    return counts


def closed_form_count(m: int, k: int) -> int:
    """One-zero family count via the binomial closed form.

    Evaluates C(2k, m) * C(k, m+1) / k in exact integer arithmetic; the
    quotient is provably integral, which is asserted rather than trusted.
    """
    from math import comb

    if k < 1:
        raise ValueError("k must be positive")
    if m < 0 or m > k:
        raise ValueError(f"m must lie in [0, {k}], got {m}")
    numerator = comb(2 * k, m) * comb(k, m + 1)
    quotient, remainder = divmod(numerator, k)
    assert remainder == 0, f"C(2k,m)*C(k,m+1) not divisible by k at m={m}, k={k}"
    return quotient


@dataclass(frozen=True)
class WalkCountTable:
    """Dense table of admissible-walk counts for both tail families.

    Rows are indexed by k = 1..max_k; row k holds counts for m = 0..k.
    By construction count(0, k) = 1 and count(k, k) = 0 in both families.
    ``source`` records which route produced the table.
    """

    max_k: int
    source: str
    _one: list[list[int]] = field(repr=False)
    _three: list[list[int]] = field(repr=False)

    def _lookup(self, table: list[list[int]], m: int, k: int) -> int:
        if not 1 <= k <= self.max_k:
            raise ValueError(f"k must lie in [1, {self.max_k}], got {k}")
        if m < 0:
            raise ValueError(f"m must be nonnegative, got {m}")
        return table[k][m] if m <= k else 0

    def count_one_zero(self, m: int, k: int) -> int:
        """Walks of length 4k with m up steps ending in one zero."""
        return self._lookup(self._one, m, k)

    def count_three_zeros(self, m: int, k: int) -> int:
        """Walks of length 4k with m up steps ending in three zeros."""
        return self._lookup(self._three, m, k)

    def to_csv(self, stream) -> None:
        """Dump rows ``k,m,f,g`` (one-zero and three-zeros counts)."""
        stream.write("k,m,f,g\n")
        for k in range(1, self.max_k + 1):
            for m in range(k + 1):
                stream.write(
                    f"{k},{m},{self._one[k][m]},{self._three[k][m]}\n")


def build_tables_by_recursion(max_k: int) -> WalkCountTable:
    """Fill both count families via their coupled first-return recursions.

    Splitting an admissible walk at its first return to the origin
    expresses each count through products of strictly shorter ones:

        one(m,k) - three(m,k) =
            sum_{s=1..m} sum_{j=2..k} three(s-1, j-1) * one(m-s, k-j+1)

        three(m,k) =
            sum_{s=1..m} sum_{j=3..k} [sum_{l=2..j-1} three(s-1, j-l)]
                * (one(m-s, k-j+1) + three(m-s, k-j+1))
          + sum_{s=1..m} sum_{j=2..k} three(s-1, j-1) * three(m-s, k-j+1)

    with count(0, k) = 1 and count(k, k) = 0 as base conventions.  All
    arithmetic is exact (Python integers).
    """
    if max_k < 1:
        raise ValueError("max_k must be positive")
    one = [[0] * (k + 1) for k in range(max_k + 1)]
    three = [[0] * (k + 1) for k in range(max_k + 1)]

    def one_at(m: int, k: int) -> int:
        return one[k][m] if m <= k else 0

    def three_at(m: int, k: int) -> int:
        return three[k][m] if m <= k else 0

    for k in range(1, max_k + 1):
        one[k][0] = three[k][0] = 1
        for m in range(1, k):
            diff = 0
            nested = 0
            chained = 0
            for s in range(1, m + 1):
                for j in range(2, k + 1):
                    head = three_at(s - 1, j - 1)
                    diff += head * one_at(m - s, k - j + 1)
                    chained += head * three_at(m - s, k - j + 1)
                for j in range(3, k + 1):
                    inner = sum(three_at(s - 1, j - l) for l in range(2, j))
                    nested += inner * (one_at(m - s, k - j + 1)
                                       + three_at(m - s, k - j + 1))
            three[k][m] = nested + chained
            one[k][m] = three[k][m] + diff
    return WalkCountTable(max_k=max_k, source="recursion", _one=one, _three=three)


def build_tables_by_enumeration(max_k: int) -> WalkCountTable:
    """Brute-force variant of the table, limited to the enumeration cutoff."""
    if max_k > ENUMERATION_CUTOFF:
        raise CutoffExceededError(
            f"enumeration supports k <= {ENUMERATION_CUTOFF}, got {max_k}")
    one = [[0] * (k + 1) for k in range(max_k + 1)]
    three = [[0] * (k + 1) for k in range(max_k + 1)]
    for k in range(1, max_k + 1):
        for m, c in enumerate_walk_counts(k, END_ONE_ZERO).items():
            one[k][m] = c
        for m, c in enumerate_walk_counts(k, END_THREE_ZEROS).items():
            three[k][m] = c
    return WalkCountTable(max_k=max_k, source="enumeration", _one=one, _three=three)


@dataclass(frozen=True)
class CountPolynomial:
    """Generating polynomial of one count family at fixed k.

    ``coefficients[m]`` is the number of admissible walks with m up
    steps; trailing zeros are trimmed, so the degree is at most k-1.
    """

    k: int
    coefficients: tuple[int, ...]

    def coefficient(self, m: int) -> int:
        return self.coefficients[m] if m < len(self.coefficients) else 0


def _poly_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def _poly_add(a: list[int], b: Sequence[int]) -> list[int]:
    if len(b) > len(a):
        a = a + [0] * (len(b) - len(a))
    for i, bi in enumerate(b):
        a[i] += bi
    return a


def _trim(a: list[int]) -> tuple[int, ...]:
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return tuple(a)


def count_polynomials(max_k: int) -> tuple[list[CountPolynomial], list[CountPolynomial]]:
    """Build the per-k generating polynomials of both count families.

    Returns (one_zero, three_zeros), each a list for k = 1..max_k, via
    the polynomial form of the first-return recursions:

        F_k - G_k = z * sum_{j=2..k} G_{j-1} F_{k-j+1}
        G_k = 1 + z * sum_{j=3..k} sum_{l=2..j-1} G_{j-l} (F_{k-j+1} + G_{k-j+1})
                + z * sum_{j=2..k} G_{j-1} G_{k-j+1}

    where F marks the one-zero family and G the three-zeros family.
    Coefficients must agree entry-by-entry with the count tables; the
    test suite enforces this.
    """
    if max_k < 1:
        raise ValueError("max_k must be positive")
    F: dict[int, tuple[int, ...]] = {1: (1,)}
    G: dict[int, tuple[int, ...]] = {1: (1,)}
    for k in range(2, max_k + 1):
        gk: list[int] = [1]
        for j in range(3, k + 1):
            for l in range(2, j):
                cross = _poly_add(list(F[k - j + 1]), G[k - j + 1])
                gk = _poly_add(gk, [0] + _poly_mul(G[j - l], cross))
        for j in range(2, k + 1):
            gk = _poly_add(gk, [0] + _poly_mul(G[j - 1], G[k - j + 1]))
        G[k] = _trim(gk)
        fk = list(G[k])
        for j in range(2, k + 1):
            fk = _poly_add(fk, [0] + _poly_mul(G[j - 1], F[k - j + 1]))
        F[k] = _trim(fk)
        assert len(F[k]) <= k and len(G[k]) <= k, f"degree overflow at k={k}"
    ones = [CountPolynomial(k, F[k]) for k in range(1, max_k + 1)]
    threes = [CountPolynomial(k, G[k]) for k in range(1, max_k + 1)]
    return ones, threes
