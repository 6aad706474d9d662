"""Functional-digraph decomposition of a transformation.

The digraph of a map has an arc from each point x to its image.  Every
weakly connected component contains exactly one cycle, with trees hanging
off the cycle points.  A fixed point is a cycle of length one (a loop), so
for orientation-preserving maps with at least one fixed point every cycle
is a loop and every component is a cyclic interval of the pointset; the
shift k = (interval left endpoint) - 1 is then exactly a shift under which
the map is order-preserving.

Component discovery walks successor chains iteratively with an explicit
path (no recursion), so large degrees are safe.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .transforms import Transformation, fixed_points

__all__ = [
    "CyclicInterval",
    "Component",
    "ComponentDecomposition",
    "cyclic_interval",
    "decompose",
    "fixed_component_shifts",
    "render_decomposition",
]


@dataclass(frozen=True)
class CyclicInterval:
    """The set {lo, lo+1, ..., hi} taken cyclically inside {1, ..., n}.

    May wrap past n: [4,1] in degree 5 is {4, 5, 1}.  The full pointset is
    canonically [1, n] even though every rotation of it would also match.
    """

    lo: int
    hi: int
    n: int

    def __post_init__(self) -> None:
        if not (1 <= self.lo <= self.n and 1 <= self.hi <= self.n):
            raise ValueError(f"endpoints {self.lo},{self.hi} outside 1..{self.n}")

    def __len__(self) -> int:
        return (self.hi - self.lo) % self.n + 1

    def members(self) -> frozenset[int]:
        return frozenset((self.lo - 1 + i) % self.n + 1 for i in range(len(self)))

    def label(self) -> str:
        return f"[{self.lo},{self.hi}]"


@dataclass(frozen=True)
class Component:
    """One weakly connected component: its members, its unique cycle, and
    its cyclic-interval form when the members happen to form one."""

    members: frozenset[int]
    cycle: tuple[int, ...]
    interval: CyclicInterval | None


@dataclass(frozen=True)
class ComponentDecomposition:
    """All components of a map's digraph, ordered by smallest member."""

    owner: Transformation
    components: tuple[Component, ...]


def cyclic_interval(members: Iterable[int], n: int) -> CyclicInterval | None:
    """The unique cyclic interval equal to the given set, or None.

    The full pointset is represented as [1, n].  Raises on an empty set or
    on points outside 1..n.

    >>> cyclic_interval({4, 5, 1}, 5).label()
    '[4,1]'
    >>> cyclic_interval({1, 3}, 5) is None
    True
    """
    s = frozenset(members)
    if not s:
        raise ValueError("empty set has no interval form")
    for x in s:
        if not 1 <= x <= n:
            raise ValueError(f"{x} is not a point of 1..{n}")
    if len(s) == n:
        return CyclicInterval(1, n, n)
    # A proper subset is a cyclic interval iff exactly one member has its
    # cyclic predecessor outside the set; that member is the left endpoint.
    starts = [x for x in s if (x - 2) % n + 1 not in s]
    if len(starts) != 1:
        return None
    lo = starts[0]
    hi = (lo + len(s) - 2) % n + 1
    return CyclicInterval(lo, hi, n)


def decompose(a: Transformation) -> ComponentDecomposition:
    """Partition {1, ..., n} into the components of the digraph x -> a(x).

    Each component is annotated with its unique cycle (successor order,
    starting from the smallest cycle point) and with its cyclic-interval
    form when its member set is one.

    >>> [sorted(c.members) for c in decompose(Transformation((1, 4, 4, 5, 5))).components]
    [[1], [2, 3, 4, 5]]
    """
    n = a.n
    succ = a.images
    comp_of = [0] * (n + 1)  # 1-based; 0 means unvisited
    cycles: dict[int, tuple[int, ...]] = {}
    next_id = 0
    for start in range(1, n + 1):
        if comp_of[start]:
            continue
        path: list[int] = []
        at: dict[int, int] = {}
        x = start
        while not comp_of[x] and x not in at:
            at[x] = len(path)
            path.append(x)
            x = succ[x - 1]
        if comp_of[x]:
            cid = comp_of[x]  # walked into a known component
        else:
            next_id += 1
            cid = next_id
            cycle = path[at[x]:]
            pivot = cycle.index(min(cycle))
            cycles[cid] = tuple(cycle[pivot:] + cycle[:pivot])
        for p in path:
            comp_of[p] = cid
    grouped: dict[int, list[int]] = {}
    for x in range(1, n + 1):
        grouped.setdefault(comp_of[x], []).append(x)
    components = []
    for cid, pts in sorted(grouped.items(), key=lambda kv: kv[1][0]):
        members = frozenset(pts)
        components.append(Component(members, cycles[cid], cyclic_interval(members, n)))
    return ComponentDecomposition(a, tuple(components))


def fixed_component_shifts(a: Transformation) -> frozenset[int]:
    """The shifts lo - 1 over interval components [lo, hi] containing a fixed point.

    A component contains a fixed point exactly when its cycle is a loop.
    For orientation-preserving maps with at least two fixed points this set
    equals ``order_preserving_shifts(a)``; components that are not cyclic
    intervals (impossible for such maps) are skipped.  Raises when ``a`` has
    no fixed point at all.
    """
    if not fixed_points(a):
        raise ValueError("map has no fixed point")
    shifts = set()
    for comp in decompose(a).components:
        if len(comp.cycle) == 1 and comp.interval is not None:
            shifts.add(comp.interval.lo - 1)
    return frozenset(shifts)


def render_decomposition(dec: ComponentDecomposition) -> str:
    """One line per component: members, interval form, cycle."""
    lines = []
    for comp in dec.components:
        members = "{" + ",".join(str(x) for x in sorted(comp.members)) + "}"
        interval = comp.interval.label() if comp.interval else "not an interval"
        cycle = "(" + " ".join(str(x) for x in comp.cycle) + ")"
        lines.append(f"component {members} = {interval}, cycle {cycle}")
    return "\n".join(lines)
