"""Catalogue of building blocks for marked cubic pregraphs.

A block is a maximal marked substructure: a ladder of C4 quotients (Q1), a
chain or cycle of digon quotients (Q2), a chain or cycle of q3 quotients
(Q3), or a single one-vertex quotient with two marked semi-edges (Q4).  Each
unused slot of a block is either a colour-1 semi-edge or an open connector
slot to be joined to another block.  The catalogue enumerates every
isomorphism class of blocks up to a given order.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .core import NO_COLOUR, Pregraph, block_partition
from . import canon


@dataclass(frozen=True)
class BlockDescriptor:
    """Isomorphism class of a block.

    ``family`` is Q1..Q4, ``units`` the number of C4 quotients it contains,
    ``ends`` a family-specific code for how the non-quotient slots are used:
    'c' = open connector, 's' = colour-1 semi-edge, 'o' = cyclic closure, and
    for Q1 a 4-tuple over the boundary slots where an integer means a
    colour-1 edge to the boundary slot at that position.
    """
    family: str
    units: int
    ends: tuple

    def code(self) -> str:
        f = self.family[1]
        if self.family == "Q1":
            parts = [str(e) for e in self.ends]
            e = "".join(parts)
        elif self.ends == ("o",):
            e = "o"
        else:
            e = "".join(self.ends)
        return f"Q{f}:k={self.units}:e={e}"

    def order(self) -> int:
        return {"Q1": 4, "Q2": 2, "Q3": 2, "Q4": 1}[self.family] * self.units

    def connector_count(self) -> int:
        return sum(1 for e in self.ends if e == "c")


@dataclass(frozen=True)
class RealizedBlock:
    """A concrete labelled pregraph fragment for a descriptor."""
    descriptor: BlockDescriptor
    fragment: Pregraph              # open slots are the connectors
    connectors: tuple[int, ...]     # open slot indices, ascending
    generators: tuple[tuple[int, ...], ...]  # Aut generators of the fragment


def _q1_chain(k: int) -> tuple[Pregraph, list[int]]:
    """Ladder of k marked squares; returns fragment and its 4 boundary slots.

    Square i sits on vertices 4i..4i+3 in cycle order v0-v1-v2-v3; slot 2 of
    each vertex is free.  Consecutive squares are joined by the rung pair
    v1(i)-v0(i+1), v2(i)-v3(i+1).  Boundary slots: [v0(0), v3(0), v1(k-1),
    v2(k-1)] for k >= 2 and all four of [v0, v1, v2, v3] for k = 1.
    """
    g = Pregraph(4 * k)
    for i in range(k):
        b = 4 * i
        cyc = [b, b + 1, b + 2, b + 3]
        g.add_edge(3 * cyc[0] + 0, 3 * cyc[1] + 0, 0)
        g.add_edge(3 * cyc[1] + 1, 3 * cyc[2] + 0, 0)
        g.add_edge(3 * cyc[2] + 1, 3 * cyc[3] + 0, 0)
        g.add_edge(3 * cyc[3] + 1, 3 * cyc[0] + 1, 0)
    for i in range(k - 1):
        b = 4 * i
        g.add_edge(3 * (b + 1) + 2, 3 * (b + 4) + 2, 1)
        g.add_edge(3 * (b + 2) + 2, 3 * (b + 7) + 2, 1)
    if k == 1:
        boundary = [2, 5, 8, 11]
    else:
        last = 4 * (k - 1)
        boundary = [2, 3 * 3 + 2, 3 * (last + 1) + 2, 3 * (last + 2) + 2]
    return g, boundary


def _q1_end_assignments() -> list[tuple]:
    """All ways to use the 4 boundary slots: a partial matching by position
    plus 'c'/'s' on unmatched slots."""
    out = []
    matchings = [[], [(0, 1)], [(0, 2)], [(0, 3)], [(1, 2)], [(1, 3)], [(2, 3)],
                 [(0, 1), (2, 3)], [(0, 2), (1, 3)], [(0, 3), (1, 2)]]
    for m in matchings:
        matched = {i for p in m for i in p}
        free = [i for i in range(4) if i not in matched]
        for bits in range(1 << len(free)):
            ends: list = [None] * 4
            for a, b in m:
                ends[a] = b
                ends[b] = a
            for j, i in enumerate(free):
                ends[i] = "s" if (bits >> j) & 1 else "c"
            out.append(tuple(ends))
    return out


def _apply_ends(g: Pregraph, boundary: list[int], ends: tuple) -> None:
    for i, e in enumerate(ends):
        s = boundary[i]
        if e == "c":
            pass
        elif e == "s":
            g.set_semi(s, 1)
        else:
            if e > i:
                g.add_edge(s, boundary[e], 1)


def _chain(family: str, k: int, ends: tuple) -> Pregraph:
    """Chain or cycle of k Q2 digons or Q3 quotients (vertices 2i, 2i+1)."""
    g = Pregraph(2 * k)
    for i in range(k):
        a, b = 2 * i, 2 * i + 1
        if family == "Q2":
            g.add_edge(3 * a + 0, 3 * b + 0, 0)
            g.add_edge(3 * a + 1, 3 * b + 1, 0)
        else:
            g.add_edge(3 * a + 0, 3 * b + 0, 0)
            g.set_semi(3 * a + 1, 0)
            g.set_semi(3 * b + 1, 0)
    for i in range(k - 1):
        g.add_edge(3 * (2 * i + 1) + 2, 3 * (2 * i + 2) + 2, 1)
    first, last = 3 * 0 + 2, 3 * (2 * k - 1) + 2
    if ends == ("o",):
        g.add_edge(last, first, 1)
    else:
        for s, e in ((first, ends[0]), (last, ends[1])):
            if e == "s":
                g.set_semi(s, 1)
    return g


def realize(d: BlockDescriptor) -> RealizedBlock:
    """Deterministic labelled fragment for a descriptor."""
    if d.family == "Q1":
        g, boundary = _q1_chain(d.units)
        _apply_ends(g, boundary, d.ends)
    elif d.family in ("Q2", "Q3"):
        g = _chain(d.family, d.units, d.ends)
    else:
        g = Pregraph(1)
        g.set_semi(0, 0)
        g.set_semi(1, 0)
        if d.ends == ("s",):
            g.set_semi(2, 1)
    gens = tuple(canon.automorphisms(g).generators)
    return RealizedBlock(d, g, tuple(g.open_slots()), gens)


def _self_partition_ok(d: BlockDescriptor, g: Pregraph) -> bool:
    """The fragment must form exactly one block of the right shape."""
    try:
        parts = block_partition(g)
    except Exception:
        return False
    if len(parts) != 1:
        return False
    b = parts[0]
    return b.family == d.family and len(b.components) == d.units


@lru_cache(maxsize=None)
def catalogue(max_order: int) -> tuple[BlockDescriptor, ...]:
    """All block descriptors of order <= max_order, one per isomorphism
    class, in a fixed deterministic order."""
    out: list[BlockDescriptor] = []

    k = 1
    while 4 * k <= max_order:
        seen: dict[tuple, BlockDescriptor] = {}
        for ends in _q1_end_assignments():
            d = BlockDescriptor("Q1", k, ends)
            g, boundary = _q1_chain(k)
            try:
                _apply_ends(g, boundary, ends)
            except Exception:
                continue
            if not _self_partition_ok(d, g):
                continue
            cf = canon.canonical_form(g)
            if cf not in seen or _ends_rank(ends) < _ends_rank(seen[cf].ends):
                seen[cf] = d
        out.extend(sorted(seen.values(), key=lambda d: _ends_rank(d.ends)))
        k += 1

    for family in ("Q2", "Q3"):
        k = 1
        while 2 * k <= max_order:
            for ends in (("c", "c"), ("c", "s"), ("s", "s"), ("o",)):
                d = BlockDescriptor(family, k, ends)
                if _self_partition_ok(d, _chain(family, k, ends)):
                    out.append(d)
            k += 1

    if max_order >= 1:
        for e in ("c", "s"):
            out.append(BlockDescriptor("Q4", 1, (e,)))
    return tuple(out)


def _ends_rank(ends: tuple) -> tuple:
    return tuple((0, e) if isinstance(e, int) else (1, 0 if e == "c" else 2)
                 for e in ends)


@lru_cache(maxsize=None)
def realize_cached(d: BlockDescriptor) -> RealizedBlock:
    return realize(d)
