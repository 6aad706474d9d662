"""Deterministic exhaustive enumerators for the three monoids under study.

The member streams and their published orders:

* ``order_preserving_maps(n)`` ("On"): the maps with nondecreasing image
  sequences, in lexicographic order of those sequences.  There are
  C(2n-1, n-1) of them; they are generated directly as combinations with
  repetition, never by filtering all n**n maps.
* ``orientation_preserving_maps(n)`` ("OPn"): every member factors as a
  rotation power r followed by an order-preserving map, uniquely unless it
  is constant.  The stream runs ascending in r, then lexicographic in the
  order-preserving factor; the n constant maps, which recur once per r, are
  emitted only at their first occurrence (r = 0).
* ``rotated_order_preserving_maps(n, k)`` ("Onk"): the conjugates by the
  k-th rotation power of the "On" stream, in the same underlying order.
  These are exactly the maps order-preserving under the shift-k rotated
  order; with k = 0 the stream equals the "On" stream.

Each stream has a ``*_images`` twin yielding raw image tuples instead of
``Transformation`` values under the same order contract; the census uses
those as its hot path.  Two runs of any stream yield identical sequences.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Iterator

from .transforms import Transformation, compose, is_order_preserving, rotation

__all__ = [
    "MonoidId",
    "Factorization",
    "order_preserving_images",
    "orientation_preserving_images",
    "rotated_order_preserving_images",
    "order_preserving_maps",
    "orientation_preserving_maps",
    "rotated_order_preserving_maps",
    "factorizations",
    "order_preserving_shifts",
]

_KINDS = ("On", "OPn", "Onk")


@dataclass(frozen=True)
class MonoidId:
    """Which monoid a census or enumeration targets.

    ``kind`` is one of "On" (order-preserving), "OPn"
    (orientation-preserving) or "Onk" (order-preserving under the shift-k
    rotated order); ``k`` is meaningful only for "Onk".  The identifiers
    double as wire-format labels in census files.
    """

    kind: str
    n: int
    k: int = 0

    def __post_init__(self) -> None:
        if self.kind not in _KINDS:
            raise ValueError(f"unknown monoid kind {self.kind!r}, expected one of {_KINDS}")
        if self.n < 1:
            raise ValueError("degree must be at least 1")
        if self.kind != "Onk" and self.k != 0:
            raise ValueError(f"shift is meaningful only for Onk, got k={self.k}")
        if not 0 <= self.k < self.n:
            raise ValueError(f"shift {self.k} outside 0..{self.n - 1}")

    @classmethod
    def order_preserving(cls, n: int) -> "MonoidId":
        return cls("On", n)

    @classmethod
    def orientation_preserving(cls, n: int) -> "MonoidId":
        return cls("OPn", n)

    @classmethod
    def rotated(cls, n: int, k: int) -> "MonoidId":
        return cls("Onk", n, k)

    def label(self) -> str:
        """Stable human/file label, e.g. "OPn-n8" or "Onk-k3-n5"."""
        if self.kind == "Onk":
            return f"Onk-k{self.k}-n{self.n}"
        return f"{self.kind}-n{self.n}"

    def member_images(self) -> Iterator[tuple[int, ...]]:
        if self.kind == "On":
            return order_preserving_images(self.n)
        if self.kind == "OPn":
            return orientation_preserving_images(self.n)
        return rotated_order_preserving_images(self.n, self.k)

    def members(self) -> Iterator[Transformation]:
        return (Transformation(im) for im in self.member_images())


@dataclass(frozen=True)
class Factorization:
    """A pair (r, tail) with rotation(n, r) followed by ``tail`` equal to the factored map.

    ``tail`` is always order-preserving under the natural order.
    """

    r: int
    tail: Transformation

    def composed(self) -> Transformation:
        return compose(rotation(self.tail.n, self.r), self.tail)


def order_preserving_images(n: int) -> Iterator[tuple[int, ...]]:
    """Raw image tuples of the "On" stream: nondecreasing n-tuples over 1..n, lex order."""
    if n < 1:
        raise ValueError("degree must be at least 1")
    return combinations_with_replacement(range(1, n + 1), n)


def orientation_preserving_images(n: int) -> Iterator[tuple[int, ...]]:
    """Raw image tuples of the "OPn" stream (ascending r, then lex tail, constants once)."""
    if n < 1:
        raise ValueError("degree must be at least 1")
    for r in range(n):
        for beta in combinations_with_replacement(range(1, n + 1), n):
            # Nondecreasing tuples are constant iff first == last.
            if beta[0] == beta[-1]:
                if r == 0:
                    yield beta
                continue
            # Composing the r-th rotation power with beta cyclically shifts
            # beta's image tuple left by r.
            yield beta[r:] + beta[:r]


def rotated_order_preserving_images(n: int, k: int) -> Iterator[tuple[int, ...]]:
    """Raw image tuples of the "Onk" stream: shift-k conjugates of the "On" stream."""
    if n < 1:
        raise ValueError("degree must be at least 1")
    if not 0 <= k < n:
        raise ValueError(f"shift {k} outside 0..{n - 1}")
    for beta in combinations_with_replacement(range(1, n + 1), n):
        yield tuple((beta[(x - k) % n] - 1 + k) % n + 1 for x in range(n))


def order_preserving_maps(n: int) -> Iterator[Transformation]:
    """Every order-preserving map of degree n, exactly once, lex order."""
    return (Transformation(im) for im in order_preserving_images(n))


def orientation_preserving_maps(n: int) -> Iterator[Transformation]:
    """Every orientation-preserving map of degree n, exactly once."""
    return (Transformation(im) for im in orientation_preserving_images(n))


def rotated_order_preserving_maps(n: int, k: int) -> Iterator[Transformation]:
    """Every map order-preserving under the shift-k order, exactly once."""
    return (Transformation(im) for im in rotated_order_preserving_images(n, k))


def factorizations(a: Transformation) -> list[Factorization]:
    """All pairs (r, tail) with rotation(n, r) * tail == a and tail order-preserving.

    Exactly one pair when ``a`` is orientation-preserving and not constant,
    n pairs when constant, and none when ``a`` is not orientation-preserving,
    so an empty result doubles as a membership test.

    >>> [(f.r, f.tail.images) for f in factorizations(Transformation((2, 3, 1)))]
    [(1, (1, 2, 3))]
    """
    n = a.n
    im = a.images
    out = []
    for r in range(n):
        # Undoing the rotation cyclically shifts the image tuple right by r.
        tail = im[n - r:] + im[:n - r]
        if all(tail[i] <= tail[i + 1] for i in range(n - 1)):
            out.append(Factorization(r, Transformation(tail)))
    return out


def order_preserving_shifts(a: Transformation) -> frozenset[int]:
    """All shifts k under whose rotated order ``a`` is order-preserving.

    Nonempty exactly when ``a`` is orientation-preserving with at least one
    fixed point; for members with m >= 2 fixed points it has exactly m
    elements, one per component of the functional digraph.
    """
    return frozenset(k for k in range(a.n) if is_order_preserving(a, k))
