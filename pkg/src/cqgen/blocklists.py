"""Enumeration of acceptable block lists.

A block list is a multiset of block descriptors whose orders sum to the
target vertex count.  A list is acceptable when its connector degree
sequence can be realised as a connected loopless multigraph and the cyclic
Q2/Q3 closures cannot outnumber the available pairs of connections.
Acceptable lists are the starting points of the generation algorithm; an
acceptable list may still admit no completion.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .blocks import BlockDescriptor, catalogue


def is_multigraphic(degrees: list[int]) -> bool:
    """True iff the sequence is the degree sequence of a loopless multigraph:
    even sum and no degree exceeding the sum of the others."""
    if not degrees:
        return True
    s = sum(degrees)
    return s % 2 == 0 and 2 * max(degrees) <= s


@dataclass(frozen=True)
class BlockList:
    """A multiset of block descriptors, stored in catalogue order."""
    blocks: tuple[BlockDescriptor, ...]

    def order(self) -> int:
        return sum(b.order() for b in self.blocks)

    def degrees(self) -> list[int]:
        return [b.connector_count() for b in self.blocks]


def is_acceptable(L: BlockList) -> bool:
    """Necessary conditions for the list to admit a connected completion."""
    degrees = L.degrees()
    total = sum(degrees)
    nblocks = len(L.blocks)
    # Q2 blocks only connect to non-Q2 blocks (maximality), so at most half
    # of all connector slots may sit in Q2 blocks; likewise for Q3.
    c2 = sum(b.connector_count() for b in L.blocks if b.family == "Q2")
    c3 = sum(b.connector_count() for b in L.blocks if b.family == "Q3")
    if not is_multigraphic(degrees):
        return False
    if 2 * c2 > total or 2 * c3 > total:
        return False
    # a connected multigraph on nblocks vertices needs >= nblocks - 1 edges
    # and no isolated vertex
    if total < 2 * (nblocks - 1):
        return False
    if nblocks >= 2 and min(degrees) == 0:
        return False
    return True


def enumerate_lists(n: int) -> Iterator[BlockList]:
    """All acceptable block lists of order n, in a fixed deterministic order
    (non-decreasing catalogue index)."""
    cat = catalogue(n)
    orders = [d.order() for d in cat]
    chosen: list[BlockDescriptor] = []

    def rec(start: int, remaining: int) -> Iterator[BlockList]:
        if remaining == 0:
            L = BlockList(tuple(chosen))
            if is_acceptable(L):
                yield L
            return
        for i in range(start, len(cat)):
            if orders[i] <= remaining:
                chosen.append(cat[i])
                yield from rec(i, remaining - orders[i])
                chosen.pop()

    yield from rec(0, n)
