"""Shared helpers for the test suite."""

from itertools import permutations

from cqgen.core import Pregraph, relabelled


def group_closure(n: int, generators) -> set:
    """All permutations generated by the given generators."""
    ident = tuple(range(n))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for q in generators:
                r = tuple(q[p[i]] for i in range(n))
                if r not in seen:
                    seen.add(r)
                    nxt.append(r)
        frontier = nxt
    return seen


def brute_automorphisms(g: Pregraph) -> list[tuple[int, ...]]:
    """All vertex permutations fixing g as a labelled coloured pregraph."""
    return [p for p in permutations(range(g.n)) if relabelled(g, p) == g]
