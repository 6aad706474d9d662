"""Value types and predicates for full transformations of {1, ..., n}.

A transformation is a total self-map of the pointset {1, ..., n}, stored as
the tuple of its images: entry ``i`` (0-based) is the image of point
``i + 1``.  Points are 1-based throughout this API.  Composition follows the
right-action convention: ``compose(a, b)`` applies ``a`` first, then ``b``.

The rotated order with shift ``k`` ranks the points as
``k+1 < k+2 < ... < n < 1 < ... < k``; shift 0 is the natural order.  A map
is *order-preserving* under a given order when its image sequence, read in
that order, is nondecreasing in that order, and *orientation-preserving*
when its image sequence has at most one cyclic descent.  Every map that is
order-preserving under some rotated order is orientation-preserving; the
converse fails exactly for the maps without fixed points.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

__all__ = [
    "Transformation",
    "RotatedOrder",
    "identity",
    "constant",
    "rotation",
    "compose",
    "conjugate",
    "fixed_points",
    "is_order_preserving",
    "is_orientation_preserving",
]


@dataclass(frozen=True)
class Transformation:
    """A total self-map of {1, ..., n}, held as its tuple of images.

    Two transformations are equal iff their image tuples are equal; the
    degree is the tuple length.

    >>> t = Transformation((1, 4, 4, 5, 5))
    >>> t.n, t(2)
    (5, 4)
    """

    images: tuple[int, ...]

    def __post_init__(self) -> None:
        images = tuple(self.images)
        object.__setattr__(self, "images", images)
        n = len(images)
        if n < 1:
            raise ValueError("a transformation needs degree at least 1")
        for x, y in enumerate(images, start=1):
            if not isinstance(y, int) or not 1 <= y <= n:
                raise ValueError(f"image of point {x} is {y!r}, not a point of 1..{n}")

    @property
    def n(self) -> int:
        """Degree: the size of the pointset being mapped."""
        return len(self.images)

    def __call__(self, x: int) -> int:
        if not 1 <= x <= self.n:
            raise ValueError(f"{x} is not a point of 1..{self.n}")
        return self.images[x - 1]

    def __mul__(self, other: "Transformation") -> "Transformation":
        """``a * b`` is ``compose(a, b)``: apply ``a`` first."""
        return compose(self, other)

    def is_constant(self) -> bool:
        first = self.images[0]
        return all(y == first for y in self.images)

    def __str__(self) -> str:
        return "[" + ",".join(str(y) for y in self.images) + "]"


@dataclass(frozen=True)
class RotatedOrder:
    """The total order k+1 < k+2 < ... < n < 1 < ... < k on {1, ..., n}.

    ``k = 0`` is the natural order.  ``position`` ranks a point (0-based)
    within the order; ``le`` compares two points.
    """

    n: int
    k: int = 0

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("order needs degree at least 1")
        if not 0 <= self.k < self.n:
            raise ValueError(f"shift {self.k} outside 0..{self.n - 1}")

    def position(self, x: int) -> int:
        if not 1 <= x <= self.n:
            raise ValueError(f"{x} is not a point of 1..{self.n}")
        return (x - 1 - self.k) % self.n

    def le(self, x: int, y: int) -> bool:
        return self.position(x) <= self.position(y)

    def points(self) -> Iterator[int]:
        """The points in ascending order: k+1, ..., n, 1, ..., k."""
        for i in range(self.n):
            yield (self.k + i) % self.n + 1


def identity(n: int) -> Transformation:
    """The map fixing every point of {1, ..., n}."""
    if n < 1:
        raise ValueError("degree must be at least 1")
    return Transformation(tuple(range(1, n + 1)))


def constant(n: int, value: int) -> Transformation:
    """The map sending every point of {1, ..., n} to ``value``."""
    if n < 1:
        raise ValueError("degree must be at least 1")
    if not 1 <= value <= n:
        raise ValueError(f"{value} is not a point of 1..{n}")
    return Transformation((value,) * n)


def rotation(n: int, r: int) -> Transformation:
    """The r-th power of the n-cycle sending x to x + 1 (wrapping n to 1).

    Any integer exponent is accepted and reduced mod n, so negative ``r``
    gives inverse powers.

    >>> rotation(5, 1).images
    (2, 3, 4, 5, 1)
    """
    if n < 1:
        raise ValueError("degree must be at least 1")
    r %= n
    return Transformation(tuple((x + r) % n + 1 for x in range(n)))


def compose(a: Transformation, b: Transformation) -> Transformation:
    """Apply ``a`` first, then ``b``: the image of x is b(a(x))."""
    if a.n != b.n:
        raise ValueError(f"degree mismatch: {a.n} vs {b.n}")
    bi = b.images
    return Transformation(tuple(bi[y - 1] for y in a.images))


def conjugate(a: Transformation, k: int) -> Transformation:
    """Conjugate ``a`` by the k-th rotation power: rotate back, apply, rotate forward.

    Equivalent to ``rotation(n, -k) * a * rotation(n, k)`` under the
    right-action composition.  Conjugation shifts the fixed-point set
    forward by k and preserves orientation.
    """
    n = a.n
    if not 0 <= k < n:
        raise ValueError(f"shift {k} outside 0..{n - 1}")
    im = a.images
    return Transformation(tuple((im[(x - k) % n] - 1 + k) % n + 1 for x in range(n)))


def fixed_points(a: Transformation) -> frozenset[int]:
    """The set of points x with a(x) = x.

    >>> sorted(fixed_points(Transformation((1, 4, 4, 5, 5))))
    [1, 5]
    """
    return frozenset(x for x, y in enumerate(a.images, start=1) if x == y)


def is_order_preserving(a: Transformation, k: int = 0) -> bool:
    """Whether ``a`` is order-preserving under the rotated order with shift k.

    Scans the image sequence in k-order and checks its k-positions never
    decrease; linear in the degree, equivalent to the pairwise definition
    (x before y implies a(x) not after a(y)).
    """
    n = a.n
    if not 0 <= k < n:
        raise ValueError(f"shift {k} outside 0..{n - 1}")
    im = a.images
    prev = -1
    for i in range(n):
        pos = (im[(k + i) % n] - 1 - k) % n
        if pos < prev:
            return False
        prev = pos
    return True


def is_orientation_preserving(a: Transformation) -> bool:
    """Whether the image sequence of ``a`` has at most one cyclic descent.

    The wraparound pair (n, 1) counts; constant maps and degree 1 have zero
    descents and qualify.
    """
    im = a.images
    n = a.n
    descents = 0
    for i in range(n):
        if im[i] > im[(i + 1) % n]:
            descents += 1
            if descents > 1:
                return False
    return True
