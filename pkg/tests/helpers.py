"""Shared brute-force oracles and hypothesis strategies."""

from __future__ import annotations

from itertools import product

from hypothesis import strategies as st

from opcensus import Transformation, is_orientation_preserving


def all_images(n: int):
    """Every image tuple of every full map of degree n (n**n of them)."""
    return product(range(1, n + 1), repeat=n)


def brute_orientation_preserving_set(n: int) -> set[tuple[int, ...]]:
    """Filter all n**n maps by the orientation predicate."""
    return {im for im in all_images(n) if is_orientation_preserving(Transformation(im))}


def brute_order_preserving_set(n: int) -> set[tuple[int, ...]]:
    """Filter all n**n maps by nondecreasing image sequences."""
    return {
        im for im in all_images(n) if all(im[i] <= im[i + 1] for i in range(n - 1))
    }


@st.composite
def transformations(draw, max_n: int = 7, n: int | None = None) -> Transformation:
    if n is None:
        n = draw(st.integers(min_value=1, max_value=max_n))
    images = draw(st.lists(st.integers(1, n), min_size=n, max_size=n))
    return Transformation(tuple(images))


@st.composite
def same_degree_pairs(draw, max_n: int = 7):
    n = draw(st.integers(min_value=1, max_value=max_n))
    return draw(transformations(n=n)), draw(transformations(n=n))


@st.composite
def same_degree_triples(draw, max_n: int = 6):
    n = draw(st.integers(min_value=1, max_value=max_n))
    return (
        draw(transformations(n=n)),
        draw(transformations(n=n)),
        draw(transformations(n=n)),
    )


@st.composite
def orientation_preserving_members(draw, max_n: int = 8) -> Transformation:
    """A member built from its rotation-then-order-preserving factorization."""
    n = draw(st.integers(min_value=1, max_value=max_n))
    tail = tuple(sorted(draw(st.lists(st.integers(1, n), min_size=n, max_size=n))))
    r = draw(st.integers(min_value=0, max_value=n - 1))
    return Transformation(tail[r:] + tail[:r])
