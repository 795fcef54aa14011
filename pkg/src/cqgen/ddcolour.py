"""Delaney-Dress graphs from marked pregraphs.

A Delaney-Dress graph is a cubic pregraph with edges coloured 0, 1, 2 such
that every vertex meets each colour exactly once and the subgraph of colours
0 and 2 decomposes into quotients of C4.  Splitting the marked elements of a
marked pregraph into colours 0 and 2 is forced on q2 and q4 quotients (the
two ends are interchangeable) and leaves one binary choice per q1 or q3
quotient.  Enumeration therefore walks the orbits of binary vectors under
the automorphism group of the marked pregraph.
"""

from __future__ import annotations

from typing import Callable, Iterator

from .core import (InvalidMarkingError, Pregraph, QuotientComponent,
                   quotient_components)
from . import canon

Sink = Callable[[Pregraph], None]

# Enumerating 2^|U| binary vectors is exponential; refuse beyond this many
# undetermined quotients rather than exhausting memory.
MAX_UNDETERMINED = 28


def undetermined_set(comps: list[QuotientComponent]) -> list[QuotientComponent]:
    """The quotients whose 0/2 split is a free choice: q1 and q3."""
    return [c for c in comps if c.kind in ("q1", "q3")]


def _q1_matchings(c: QuotientComponent) -> tuple[set, set]:
    """The two perfect matchings of a q1 quotient as sets of vertex pairs;
    the first one contains the lexicographically smallest edge."""
    v0, v1, v2, v3 = c.vertices
    m_a = {frozenset((v0, v1)), frozenset((v2, v3))}
    m_b = {frozenset((v1, v2)), frozenset((v3, v0))}
    s, t = min(c.edges)
    first = frozenset((s // 3, t // 3))
    return (m_a, m_b) if first in m_a else (m_b, m_a)


def vector_to_colouring(g: Pregraph, comps: list[QuotientComponent],
                        vec: int) -> Pregraph:
    """Delaney-Dress colouring selected by one bit per undetermined quotient.

    Bit 0 keeps the reference choice: for q1 the matching with the smallest
    edge gets colour 0, for q3 the semi-edges get colour 0.  On q2 and q4
    quotients the lexicographically smaller element always gets colour 0.
    """
    out = g.copy()

    def paint(slots: list[int], colour: int) -> None:
        for s in slots:
            out.col[s] = colour

    bit_index = 0
    for c in comps:
        if c.kind == "q2":
            e0, e2 = sorted(c.edges)
            paint(list(e0), 0)
            paint(list(e2), 2)
        elif c.kind == "q4":
            s0, s2 = sorted(c.semis)
            out.col[s0] = 0
            out.col[s2] = 2
        elif c.kind == "q3":
            b = (vec >> bit_index) & 1
            bit_index += 1
            paint(list(c.semis), 2 if b else 0)
            paint(list(c.edges[0]), 0 if b else 2)
        else:  # q1
            b = (vec >> bit_index) & 1
            bit_index += 1
            m0, _ = _q1_matchings(c)
            for s, t in c.edges:
                in_m0 = frozenset((s // 3, t // 3)) in m0
                colour = (2 if in_m0 else 0) if b else (0 if in_m0 else 2)
                out.col[s] = colour
                out.col[t] = colour
    return out


def colouring_to_vector(dd: Pregraph, comps: list[QuotientComponent]) -> int:
    """Inverse of vector_to_colouring for a graph coloured with 0, 1, 2."""
    vec = 0
    bit_index = 0
    for c in comps:
        if c.kind == "q3":
            if dd.col[c.semis[0]] == 2:
                vec |= 1 << bit_index
            bit_index += 1
        elif c.kind == "q1":
            m0, _ = _q1_matchings(c)
            s, t = c.edges[0]
            in_m0 = frozenset((s // 3, t // 3)) in m0
            if dd.col[s] == (2 if in_m0 else 0):
                vec |= 1 << bit_index
            bit_index += 1
    return vec


def _generator_actions(g: Pregraph, comps: list[QuotientComponent],
                       U: list[QuotientComponent],
                       generators) -> list[tuple[list[int], int]]:
    """For each automorphism, the induced index permutation and flip mask on
    the undetermined bit vector.

    A q3 bit travels unchanged (the semi-edges map to the semi-edges).  A q1
    bit flips iff the automorphism maps the reference matching of the source
    quotient onto the non-reference matching of the image quotient.
    """
    comp_of = {}
    for i, c in enumerate(comps):
        for v in c.vertices:
            comp_of[v] = i
    u_index = {id(c): i for i, c in enumerate(U)}
    index_of_comp = {comp_of[c.vertices[0]]: i for i, c in enumerate(U)}

    actions = []
    for p in generators:
        perm = [0] * len(U)
        flip = 0
        for i, c in enumerate(U):
            j = index_of_comp[comp_of[p[c.vertices[0]]]]
            perm[i] = j
            if c.kind == "q1":
                m0_src, _ = _q1_matchings(c)
                m0_dst, _ = _q1_matchings(U[j])
                pair = next(iter(m0_src))
                a, b = tuple(pair)
                if frozenset((p[a], p[b])) not in m0_dst:
                    flip |= 1 << i
        actions.append((perm, flip))
    return actions


def act(vec: int, action: tuple[list[int], int]) -> int:
    """Image of a bit vector under a precomputed automorphism action."""
    perm, flip = action
    out = 0
    for i, j in enumerate(perm):
        if ((vec >> i) ^ (flip >> i)) & 1:
            out |= 1 << j
    return out


def dd_class_representatives(g: Pregraph) -> Iterator[tuple[int, list]]:
    """Minimal representative vector of each orbit of 0/2 splittings of a
    marked pregraph under its automorphism group, with the quotient list."""
    comps = quotient_components(g)
    U = undetermined_set(comps)
    k = len(U)
    if k > MAX_UNDETERMINED:
        raise InvalidMarkingError(
            f"{k} undetermined quotients exceed the limit of "
            f"{MAX_UNDETERMINED}")
    aut = canon.automorphisms(g)
    actions = _generator_actions(g, comps, U, aut.generators)

    size = 1 << k
    parent = list(range(size))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for v in range(size):
        for action in actions:
            w = act(v, action)
            rv, rw = find(v), find(w)
            if rv != rw:
                parent[max(rv, rw)] = min(rv, rw)

    for v in range(size):
        if find(v) == v:
            yield v, comps


def enumerate_dd(g: Pregraph, sink: Sink | None = None) -> int:
    """All Delaney-Dress graphs refining one marked pregraph, one per
    isomorphism class.  Returns their number."""
    count = 0
    for vec, comps in dd_class_representatives(g):
        count += 1
        if sink is not None:
            sink(vector_to_colouring(g, comps, vec))
    return count


def verify_dd(g: Pregraph) -> bool:
    """True iff g is a valid Delaney-Dress graph: every vertex has one end
    of each colour and colours 0 and 2 form a CQ 2-factor."""
    from .core import OPEN
    for v in range(g.n):
        cols = sorted(g.col[s] for s in g.slots_of(v) if g.pair[s] != OPEN)
        if cols != [0, 1, 2]:
            return False
    try:
        quotient_components(g, marked=(0, 2))
    except InvalidMarkingError:
        return False
    return True


def generate_dd(n: int, sink: Sink | None = None,
                part: tuple[int, int] | None = None,
                debug_validate: bool = False):
    """Generate all Delaney-Dress graphs on n vertices.

    Returns the statistics of the underlying marked generation with
    ``graphs`` replaced by the number of Delaney-Dress graphs.
    """
    from .generator import generate_marked

    total = 0

    def per_marked(gm: Pregraph) -> None:
        nonlocal total
        total += enumerate_dd(gm, sink)

    stats = generate_marked(n, per_marked, part, debug_validate)
    stats.graphs = total
    return stats
