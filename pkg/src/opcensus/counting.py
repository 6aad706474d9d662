"""Closed-form counts, identities and the exact fixed-point distribution.

Everything here is exact: counts are Python ints, probabilities are
``fractions.Fraction``.  No floating point enters this module; decimal
renderings live in the CLI layer only.

Table vocabulary (shared with the census wire format):

* size of "On"  = C(2n-1, n-1)
* size of "OPn" = n*C(2n-1, n-1) - n(n-1)
* N table: sending_count(n, i, j), order-preserving maps taking i to j
* S table: fixing_count(n, x), orientation-preserving maps fixing x
* F table: fixed_points_count(n, m), orientation-preserving maps with
  exactly m fixed points
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "binomial",
    "order_preserving_size",
    "orientation_preserving_size",
    "sending_count",
    "fixing_count",
    "fixed_points_count",
    "order_preserving_fixed_points_count",
    "check_identity",
    "check_recurrence",
    "FixedPointDistribution",
    "distribution",
]


def binomial(a: int, b: int) -> int:
    """Exact C(a, b) for a >= 0, with C(a, b) = 0 when b < 0 or b > a.

    Multiplicative descent; every intermediate division is exact, so the
    result is correct at any size without factorial tables.
    """
    if a < 0:
        raise ValueError("upper index must be nonnegative")
    if b < 0 or b > a:
        return 0
    b = min(b, a - b)
    out = 1
    for i in range(1, b + 1):
        out = out * (a - i + 1) // i
    return out


def _require_degree(n: int) -> None:
    if n < 1:
        raise ValueError("degree must be at least 1")


def order_preserving_size(n: int) -> int:
    """Number of order-preserving maps of degree n: C(2n-1, n-1)."""
    _require_degree(n)
    return binomial(2 * n - 1, n - 1)


def orientation_preserving_size(n: int) -> int:
    """Number of orientation-preserving maps of degree n: n*C(2n-1, n-1) - n(n-1)."""
    _require_degree(n)
    return n * binomial(2 * n - 1, n - 1) - n * (n - 1)


def sending_count(n: int, i: int, j: int) -> int:
    """Number of order-preserving maps of degree n sending i to j (the N table).

    The maps below i land order-preservingly in 1..j and those above i in
    j..n, giving C(i+j-2, i-1) * C(2n-i-j, n-i).
    """
    _require_degree(n)
    if not 1 <= i <= n or not 1 <= j <= n:
        raise ValueError(f"points {i},{j} outside 1..{n}")
    return binomial(i + j - 2, i - 1) * binomial(2 * n - i - j, n - i)


def fixing_count(n: int, x: int) -> int:
    """Number of orientation-preserving maps fixing the point x (the S table).

    Equals C(2n-1, n-1) - (n-1) for every x, so the count is independent of
    which point is held fixed.
    """
    _require_degree(n)
    if not 1 <= x <= n:
        raise ValueError(f"point {x} outside 1..{n}")
    return binomial(2 * n - 1, n - 1) - (n - 1)


def _fixed_points_binomial_branch(n: int, m: int) -> int:
    # The m >= 2 branch made total by the zero convention of binomial().
    return binomial(2 * n, n - m)


def fixed_points_count(n: int, m: int) -> int:
    """Number of orientation-preserving maps with exactly m fixed points (the F table).

    C(2n, n-m) for m >= 2; the m = 1 count subtracts the overcounted
    constants, and the m = 0 count is the complement:

        m = 1: C(2n, n-1) - n(n-1)
        m = 0: (n+1)*C(2n-1, n-1) - 2**(2n-1)
    """
    _require_degree(n)
    if not 0 <= m <= n:
        raise ValueError(f"fixed-point count {m} outside 0..{n}")
    if m >= 2:
        return _fixed_points_binomial_branch(n, m)
    if m == 1:
        return binomial(2 * n, n - 1) - n * (n - 1)
    return (n + 1) * binomial(2 * n - 1, n - 1) - 2 ** (2 * n - 1)


def order_preserving_fixed_points_count(n: int, m: int) -> int:
    """Number of order-preserving maps with exactly m fixed points: (m/n)*C(2n, n-m).

    The same count holds in every rotated copy of the monoid, since
    conjugation shifts fixed points without changing how many there are.
    The quotient is always an integer; a failed division would mean a bug,
    not bad input.  m = 0 is computed as the size minus the rest (it is
    zero: a nondecreasing image sequence always crosses the diagonal).
    """
    _require_degree(n)
    if not 0 <= m <= n:
        raise ValueError(f"fixed-point count {m} outside 0..{n}")
    if m == 0:
        return order_preserving_size(n) - sum(
            order_preserving_fixed_points_count(n, j) for j in range(1, n + 1)
        )
    t = m * binomial(2 * n, n - m)
    q, rem = divmod(t, n)
    if rem:
        raise ArithmeticError(f"{m}*C({2*n},{n-m}) is not divisible by {n}")
    return q


def check_identity(which: int, *, n: int, m: int | None = None) -> bool:
    """Evaluate one of the four binomial identities exactly.

    1. sum_{j=0..n} C(m+j, m) == C(m+n+1, n)            (hockey stick; needs m)
    2. sum_{i=1..n} C(2n-i-1, n-i) == C(2n-1, n-1)
    3. sum_{m=2..n} C(2n, n-m) == 2**(2n-1) - C(2n, n)/2 - C(2n, n-1)
    4. sum_{m=2..n} m*C(2n, n-m) == (n-1)/2 * C(2n, n-1)

    Half-integer right sides are compared as exact rationals.
    """
    if which == 1:
        if m is None:
            raise ValueError("identity 1 needs the lower parameter m")
        if m < 0 or n < 0:
            raise ValueError("identity 1 needs nonnegative parameters")
        lhs = sum(binomial(m + j, m) for j in range(n + 1))
        return lhs == binomial(m + n + 1, n)
    _require_degree(n)
    if which == 2:
        lhs = sum(binomial(2 * n - i - 1, n - i) for i in range(1, n + 1))
        return lhs == binomial(2 * n - 1, n - 1)
    if which == 3:
        lhs = sum(binomial(2 * n, n - j) for j in range(2, n + 1))
        rhs = 2 ** (2 * n - 1) - Fraction(binomial(2 * n, n), 2) - binomial(2 * n, n - 1)
        return Fraction(lhs) == rhs
    if which == 4:
        lhs = sum(j * binomial(2 * n, n - j) for j in range(2, n + 1))
        rhs = Fraction(n - 1, 2) * binomial(2 * n, n - 1)
        return Fraction(lhs) == rhs
    raise ValueError(f"no identity number {which}, expected 1..4")


def check_recurrence(n: int, m: int) -> bool:
    """Whether F(n, m+2) == F(n+1, m+1) - 2*F(n, m+1) - F(n, m) holds exactly.

    Requires 2 <= m <= n so that every term lies in the binomial branch of
    the F table (extended by the zero convention where the lower index runs
    negative).
    """
    _require_degree(n)
    if not 2 <= m <= n:
        raise ValueError(f"need 2 <= m <= n, got m={m}, n={n}")
    lhs = _fixed_points_binomial_branch(n, m + 2)
    rhs = (
        _fixed_points_binomial_branch(n + 1, m + 1)
        - 2 * _fixed_points_binomial_branch(n, m + 1)
        - _fixed_points_binomial_branch(n, m)
    )
    return lhs == rhs


@dataclass(frozen=True)
class FixedPointDistribution:
    """Exact distribution of the number of fixed points of a uniformly random
    orientation-preserving map of degree n.

    ``probs[m]`` is the probability of exactly m fixed points; ``point_fix``
    is the probability that any one chosen point is fixed (1/n).  The mean
    number of fixed points is 1, by either route below.
    """

    n: int
    probs: dict[int, Fraction]
    point_fix: Fraction

    def expectation(self) -> Fraction:
        """Mean via the distribution: sum of m * probs[m]."""
        return sum((m * p for m, p in self.probs.items()), Fraction(0))

    def expectation_via_point_probability(self) -> Fraction:
        """Mean via linearity: n points, each fixed with probability point_fix."""
        return self.n * self.point_fix


def distribution(n: int) -> FixedPointDistribution:
    """The exact fixed-point distribution at degree n.

    Probabilities are F-table counts over the monoid size, in lowest terms;
    they sum to exactly 1.
    """
    _require_degree(n)
    size = orientation_preserving_size(n)
    probs = {m: Fraction(fixed_points_count(n, m), size) for m in range(n + 1)}
    total = sum(probs.values(), Fraction(0))
    if total != 1:
        raise ArithmeticError(f"distribution at degree {n} sums to {total}, not 1")
    point_fix = Fraction(fixing_count(n, 1), size)
    return FixedPointDistribution(n, probs, point_fix)
