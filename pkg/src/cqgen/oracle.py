"""Brute-force reference implementations for cross-checking the generator.

Everything here is deliberately simple and exhaustive: connected cubic
pregraphs come from backtracking over adjacency multiplicities, markings
from trying all 2-colourings of the elements, and Delaney-Dress graphs from
trying all 0/2 splits.  Only feasible for small vertex counts.
"""

from __future__ import annotations

from itertools import product

from .core import NO_COLOUR, SEMI, Pregraph, is_connected, quotient_components
from .core import InvalidMarkingError
from . import canon


def _realize(n: int, loops: list[int], mult: dict[tuple[int, int], int]) -> Pregraph:
    g = Pregraph(n)
    free = [list(g.slots_of(v)) for v in range(n)]
    for v in range(n):
        for _ in range(loops[v]):
            g.pair[free[v][0]] = free[v][1]
            g.pair[free[v][1]] = free[v][0]
            free[v] = free[v][2:]
    for (u, v), m in sorted(mult.items()):
        for _ in range(m):
            su, sv = free[u].pop(0), free[v].pop(0)
            g.pair[su] = sv
            g.pair[sv] = su
    for v in range(n):
        for s in free[v]:
            g.pair[s] = SEMI
    return g


def all_cubic_pregraphs(n: int) -> list[Pregraph]:
    """All connected cubic pregraphs on n vertices, one per isomorphism
    class (loops, parallel edges and semi-edges allowed)."""
    found: dict[tuple, Pregraph] = {}
    loops = [0] * n
    mult: dict[tuple[int, int], int] = {}
    deg = [0] * n

    def profile(v: int) -> tuple:
        # invariant vertex profile; final once row v is complete
        at_v = sorted((m for (a, b), m in mult.items() if v in (a, b)),
                      reverse=True)
        return (loops[v], 3 - deg[v], tuple(at_v))

    def place(v: int, u: int) -> None:
        # choose multiplicities of edges from v to u, ..., n-1; leftover
        # degree becomes semi-edges.  Only profile-sorted labellings are
        # explored: every isomorphism class keeps at least one.
        if v == n:
            g = _realize(n, loops, mult)
            if is_connected(g):
                found.setdefault(canon.canonical_form(g), g)
            return
        if u == n:
            if v > 0 and profile(v) > profile(v - 1):
                return
            place(v + 1, v + 2)
            return
        for m in range(min(3 - deg[v], 3 - deg[u]) + 1):
            if m:
                mult[(v, u)] = m
                deg[v] += m
                deg[u] += m
            place(v, u + 1)
            if m:
                del mult[(v, u)]
                deg[v] -= m
                deg[u] -= m

    def choose_loops(v: int) -> None:
        if v == n:
            place(0, 1)
            return
        for nl in (0, 1):
            loops[v] = nl
            deg[v] += 2 * nl
            choose_loops(v + 1)
            deg[v] -= 2 * nl
            loops[v] = 0

    choose_loops(0)
    return sorted(found.values(), key=lambda g: canon.canonical_form(g))


def all_markings(g: Pregraph) -> list[Pregraph]:
    """All valid markings of a pregraph (colour every element 0 or 1 such
    that the colour-0 part decomposes into quotients of C4), as labelled
    coloured graphs."""
    elements: list[list[int]] = []
    for s in range(3 * g.n):
        t = g.pair[s]
        if t == SEMI:
            elements.append([s])
        elif t >= 0 and s < t:
            elements.append([s, t])
    out = []
    for bits in product((0, 1), repeat=len(elements)):
        ends = [0] * g.n
        for colour, slots in zip(bits, elements):
            if colour == 0:
                for s in slots:
                    ends[s // 3] += 1
        if any(e != 2 for e in ends):
            continue
        gg = g.copy()
        for colour, slots in zip(bits, elements):
            for s in slots:
                gg.col[s] = colour
        try:
            quotient_components(gg)
        except InvalidMarkingError:
            continue
        out.append(gg)
    return out


def all_cq_factors_up_to_iso(g: Pregraph) -> list[Pregraph]:
    """One marking per isomorphism class of marked versions of g."""
    seen: dict[tuple, Pregraph] = {}
    for gg in all_markings(g):
        seen.setdefault(canon.canonical_form(gg), gg)
    return sorted(seen.values(), key=lambda m: canon.canonical_form(m))


def has_cq_factor(g: Pregraph) -> bool:
    return bool(all_markings(g))


def is_3_edge_colourable(g: Pregraph) -> bool:
    """Proper 3-edge-colourability where semi-edges count as ordinary ends.
    A loop contributes two equal-coloured ends, so loops are never allowed."""
    elements: list[list[int]] = []
    for s in range(3 * g.n):
        t = g.pair[s]
        if t == SEMI:
            elements.append([s])
        elif t >= 0 and s < t:
            if t // 3 == s // 3:
                return False
            elements.append([s, t])

    used: list[set[int]] = [set() for _ in range(g.n)]

    def rec(i: int) -> bool:
        if i == len(elements):
            return True
        slots = elements[i]
        verts = [s // 3 for s in slots]
        for c in (0, 1, 2):
            if any(c in used[v] for v in verts):
                continue
            for v in verts:
                used[v].add(c)
            if rec(i + 1):
                for v in verts:
                    used[v].discard(c)
                return True
            for v in verts:
                used[v].discard(c)
        return False

    return rec(0)


def brute_dd_classes(g: Pregraph) -> list[Pregraph]:
    """All Delaney-Dress graphs refining a marked pregraph, one per
    isomorphism class, found by trying every 0/2 split of every quotient."""
    comps = quotient_components(g)
    seen: dict[tuple, Pregraph] = {}
    for bits in product((0, 1), repeat=len(comps)):
        dd = g.copy()
        for b, c in zip(bits, comps):
            if c.kind == "q2":
                e0, e2 = (c.edges if b == 0 else c.edges[::-1])
                for s in e0:
                    dd.col[s] = 0
                for s in e2:
                    dd.col[s] = 2
            elif c.kind == "q4":
                s0, s2 = (c.semis if b == 0 else c.semis[::-1])
                dd.col[s0] = 0
                dd.col[s2] = 2
            elif c.kind == "q3":
                for s in c.semis:
                    dd.col[s] = 2 if b else 0
                for s in c.edges[0]:
                    dd.col[s] = 0 if b else 2
            else:  # q1: colour the two matchings alternately
                v0, v1, v2, v3 = c.vertices
                m_a = {frozenset((v0, v1)), frozenset((v2, v3))}
                for s, t in c.edges:
                    in_a = frozenset((s // 3, t // 3)) in m_a
                    colour = (0 if in_a else 2) if b == 0 else (2 if in_a else 0)
                    dd.col[s] = colour
                    dd.col[t] = colour
        seen.setdefault(canon.canonical_form(dd), dd)
    return sorted(seen.values(), key=lambda d: canon.canonical_form(d))
