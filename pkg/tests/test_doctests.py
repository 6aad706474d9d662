"""Run the docstring examples embedded in the library modules."""

import doctest

import pytest

from opcensus import digraph, monoids, transforms


@pytest.mark.parametrize("module", [transforms, monoids, digraph])
def test_docstring_examples(module):
    result = doctest.testmod(module)
    assert result.attempted > 0
    assert result.failed == 0
