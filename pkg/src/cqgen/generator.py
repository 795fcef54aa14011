"""Exhaustive isomorphism-free generation of marked cubic pregraphs.

For every acceptable block list the blocks are laid out as a disjoint
partial pregraph and the missing connections are added by a canonical
construction path search: pick the smallest automorphism orbit of deficient
vertices, connect its vertices in all inequivalent valid ways, and keep an
extension only if its newest connection lies in the canonical edge orbit of
the extension.  Once the group acts trivially on the deficient vertices all
remaining completions are pairwise non-isomorphic and are produced without
any further isomorphism checks.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterator

from .core import (NO_COLOUR, OPEN, Pregraph, block_partition, is_connected,
                   marked_neighbour_map, quotient_components)
from .blocks import realize_cached
from .blocklists import BlockList, enumerate_lists
from . import canon

Sink = Callable[[Pregraph], None]


@dataclass
class GenerationStats:
    n: int
    lists_total: int = 0
    lists_processed: int = 0
    graphs: int = 0
    search_nodes: int = 0
    invalid_connections: int = 0
    noncanonical: int = 0
    prefilter_skips: int = 0
    duplicates_removed: int = 0     # markable mode only
    per_list: dict = field(default_factory=dict)


class PartialGraph:
    """A partial marked pregraph under construction from a block list.

    Every vertex has its two marked slot ends fixed by its block; deficient
    vertices are exactly those whose third slot is still open.
    """

    def __init__(self, L: BlockList):
        self.L = L
        n = L.order()
        g = Pregraph(n)
        offsets: list[int] = []
        off = 0
        for d in L.blocks:
            offsets.append(off)
            rb = realize_cached(d)
            frag = rb.fragment
            for s in range(3 * frag.n):
                t = frag.pair[s]
                g.pair[3 * off + s] = t + 3 * off if t >= 0 else t
                g.col[3 * off + s] = frag.col[s]
            off += frag.n
        self.offsets = offsets
        self.g = g
        comps = quotient_components(g)
        self.comp_of = [-1] * n
        for i, c in enumerate(comps):
            for v in c.vertices:
                self.comp_of[v] = i
        self.mnbr = marked_neighbour_map(comps)
        self.block_of = [-1] * n
        self.block_family = []
        for bi, (d, o) in enumerate(zip(L.blocks, offsets)):
            self.block_family.append(d.family)
            for v in range(o, o + d.order()):
                self.block_of[v] = bi

    def deficient(self) -> list[int]:
        g = self.g
        return [s // 3 for s in range(3 * g.n) if g.pair[s] == OPEN]

    def open_slot(self, v: int) -> int:
        for s in self.g.slots_of(v):
            if self.pairless(s):
                return s
        raise ValueError(f"vertex {v} is not deficient")

    def pairless(self, s: int) -> bool:
        return self.g.pair[s] == OPEN


def seed_group(st: PartialGraph) -> list[tuple[int, ...]]:
    """Generators of the automorphism group of the initial disjoint block
    layout: each block's own automorphisms plus swaps of identical blocks."""
    n = st.g.n
    gens: list[tuple[int, ...]] = []
    blocks = st.L.blocks
    for d, off in zip(blocks, st.offsets):
        for p in realize_cached(d).generators:
            perm = list(range(n))
            for v, pv in enumerate(p):
                perm[off + v] = off + pv
            gens.append(tuple(perm))
    for i in range(len(blocks) - 1):
        if blocks[i] == blocks[i + 1]:
            k = blocks[i].order()
            a, b = st.offsets[i], st.offsets[i + 1]
            perm = list(range(n))
            for v in range(k):
                perm[a + v] = b + v
                perm[b + v] = a + v
            gens.append(tuple(perm))
    return gens


def connection_precheck(st: PartialGraph, x: int, y: int) -> bool:
    """Block-level validity of a new colour-1 edge x-y, checked before the
    edge is added: the edge must join two different blocks, must not join two
    Q2 or two Q3 blocks, and must not extend a ladder by completing a pair of
    parallel rungs between two Q1 quotients."""
    if st.block_of[x] == st.block_of[y]:
        return False
    fx = st.block_family[st.block_of[x]]
    fy = st.block_family[st.block_of[y]]
    if fx == fy == "Q2" or fx == fy == "Q3":
        return False
    if fx == fy == "Q1":
        g = st.g
        for x2 in st.mnbr[x]:
            for s in g.slots_of(x2):
                t = g.pair[s]
                if t >= 0 and g.col[s] == 1:
                    y2 = t // 3
                    if y2 != y and st.comp_of[y2] == st.comp_of[y] \
                            and y2 in st.mnbr[y]:
                        return False
    return True


def _component_ok(st: PartialGraph, x: int) -> bool:
    """With the newest edge in place, the component of x must either span
    the whole graph or still have an open slot."""
    g = st.g
    seen = [False] * g.n
    seen[x] = True
    stack = [x]
    size = 1
    has_open = False
    while stack:
        v = stack.pop()
        for s in g.slots_of(v):
            t = g.pair[s]
            if t == OPEN:
                has_open = True
            elif t >= 0 and not seen[t // 3]:
                seen[t // 3] = True
                size += 1
                stack.append(t // 3)
    return has_open or size == g.n


def is_valid_connection(st: PartialGraph, x: int, y: int) -> bool:
    """Full validity test for connecting deficient vertices x and y."""
    if x == y or not connection_precheck(st, x, y):
        return False
    sx, sy = st.open_slot(x), st.open_slot(y)
    st.g.add_edge(sx, sy, 1)
    ok = _component_ok(st, x)
    st.g.remove_edge(sx, sy)
    return ok


def _debug_check(st: PartialGraph) -> None:
    """Recompute the block partition from scratch and compare with the list."""
    parts = block_partition(st.g)
    got = sorted((b.family, len(b.components)) for b in parts)
    want = sorted((d.family, d.units) for d in st.L.blocks)
    if got != want:
        raise AssertionError(
            f"partition drifted: {got} != {want} for {st.g!r}")


def _new_edges_meeting(st: PartialGraph, O: frozenset) -> list[tuple[int, int]]:
    """Colour-1 edges with an endpoint in O.  Vertices in O were deficient in
    the macro-step root, so all such edges were added in this macro step."""
    g = st.g
    out = set()
    for v in O:
        for s in g.slots_of(v):
            t = g.pair[s]
            if t >= 0 and g.col[s] == 1 and t // 3 != v:
                out.add(tuple(sorted((v, t // 3))))
    return sorted(out)


def _edge_orbit_min(edge: tuple[int, int], generators, keyfn) -> tuple:
    """Minimum key over the orbit of an unordered vertex pair."""
    seen = {tuple(sorted(edge))}
    stack = [tuple(sorted(edge))]
    best = keyfn(edge)
    while stack:
        a, b = stack.pop()
        for p in generators:
            img = tuple(sorted((p[a], p[b])))
            if img not in seen:
                seen.add(img)
                stack.append(img)
                k = keyfn(img)
                if k < best:
                    best = k
    return best


def is_canonical_extension(st: PartialGraph, edge: tuple[int, int],
                           O: frozenset, root_rank: dict,
                           child_aut: canon.AutInfo,
                           stats: GenerationStats | None = None) -> bool:
    """Accept the newest edge iff it lies in the canonical edge orbit.

    Among the edges added in this macro step the canonical one minimises the
    pair of root orbit ranks, ties broken by the pair of canonical labels in
    the extension.  Both keys are invariant under isomorphisms that respect
    the (closed) macro-step root, so exactly one extension per isomorphism
    class survives at every level.
    """
    D = _new_edges_meeting(st, O)

    def prekey(f):
        return tuple(sorted((root_rank[f[0]], root_rank[f[1]])))

    min_pre = min(prekey(f) for f in D)
    if prekey(tuple(sorted(edge))) > min_pre:
        if stats is not None:
            stats.prefilter_skips += 1
        return False
    lab = child_aut.canonical_labelling

    def labkey(f):
        return tuple(sorted((lab[f[0]], lab[f[1]])))

    restricted = [f for f in D if prekey(f) == min_pre]
    target = min(labkey(f) for f in restricted)
    return _edge_orbit_min(edge, child_aut.generators, labkey) == target


def complete_all_ways(st: PartialGraph, emit: Sink,
                      debug_validate: bool = False) -> None:
    """Add all remaining connections in all valid ways, without isomorphism
    checks.  Only correct when the automorphism group acts trivially on the
    deficient vertices: all completions are then pairwise non-isomorphic."""
    opens = st.g.open_slots()
    if not opens:
        _emit(st, emit, debug_validate)
        return
    sx = opens[0]
    x = sx // 3
    for sy in opens[1:]:
        y = sy // 3
        if not connection_precheck(st, x, y):
            continue
        st.g.add_edge(sx, sy, 1)
        if _component_ok(st, x):
            complete_all_ways(st, emit, debug_validate)
        st.g.remove_edge(sx, sy)


def _emit(st: PartialGraph, emit: Sink, debug_validate: bool) -> None:
    if debug_validate:
        _debug_check(st)
        assert is_connected(st.g)
    emit(st.g.copy())


def extend(st: PartialGraph, emit: Sink, stats: GenerationStats | None = None,
           debug_validate: bool = False,
           aut: canon.AutInfo | None = None) -> None:
    """Recursive generation step from a closed partial marked pregraph."""
    if stats is not None:
        stats.search_nodes += 1
    defic = st.deficient()
    if not defic:
        if is_connected(st.g):
            _emit(st, emit, debug_validate)
        return
    if aut is None:
        aut = canon.automorphisms(st.g)
    if canon.acts_trivially(aut, defic):
        complete_all_ways(st, emit, debug_validate)
        return
    lab = aut.canonical_labelling
    orbit_of = aut.orbit_of()
    groups: dict[int, list[int]] = {}
    for v in defic:
        groups.setdefault(orbit_of[v], []).append(v)
    O = min(groups.values(), key=lambda o: (len(o), min(lab[v] for v in o)))
    root_rank = {v: min(lab[u] for u in aut.orbits[orbit_of[v]])
                 for v in defic}
    _saturate(st, aut, frozenset(O), root_rank, emit, stats, debug_validate)


def _saturate(st: PartialGraph, aut: canon.AutInfo, O: frozenset,
              root_rank: dict, emit: Sink, stats: GenerationStats | None,
              debug_validate: bool) -> None:
    """Connect the vertices of orbit O in all inequivalent canonical ways,
    then continue with the next macro step."""
    defic = st.deficient()
    rem = [v for v in O if v in defic]
    if not rem:
        extend(st, emit, stats, debug_validate, aut=aut)
        return
    for x, y in canon.deficient_pair_orbits(aut, defic, rem):
        if not connection_precheck(st, x, y):
            if stats is not None:
                stats.invalid_connections += 1
            continue
        sx, sy = st.open_slot(x), st.open_slot(y)
        st.g.add_edge(sx, sy, 1)
        if _component_ok(st, x):
            if debug_validate:
                _debug_check(st)
            child_aut = canon.automorphisms(st.g)
            if is_canonical_extension(st, (x, y), O, root_rank, child_aut,
                                      stats):
                _saturate(st, child_aut, O, root_rank, emit, stats,
                          debug_validate)
            elif stats is not None:
                stats.noncanonical += 1
        elif stats is not None:
            stats.invalid_connections += 1
        st.g.remove_edge(sx, sy)


def generate_marked(n: int, sink: Sink | None = None,
                    part: tuple[int, int] | None = None,
                    debug_validate: bool = False) -> GenerationStats:
    """Generate all marked pregraphs on n vertices, one per isomorphism
    class.  ``part=(i, m)`` restricts to block lists with index i mod m."""
    stats = GenerationStats(n)
    for li, L in enumerate(enumerate_lists(n)):
        stats.lists_total += 1
        if part is not None and li % part[1] != part[0]:
            continue
        stats.lists_processed += 1
        before = stats.graphs

        def emit(g: Pregraph) -> None:
            stats.graphs += 1
            if sink is not None:
                sink(g)

        extend(PartialGraph(L), emit, stats, debug_validate)
        stats.per_list[li] = stats.graphs - before
    return stats


# -- multifactor families and markable generation --------------------------

BARBED_PATH = "barbed-path"
DOUBLE_CLOSED_LADDER = "double-closed-ladder"
DOUBLE_OPEN_LADDER = "double-open-ladder"
OPEN_CLOSED_LADDER = "open-closed-ladder"

# quotient kind whose presence in the marking selects the representative
# marking of each family
_KEEP_KIND = {
    BARBED_PATH: "q4",
    DOUBLE_CLOSED_LADDER: "q2",
    OPEN_CLOSED_LADDER: "q2",
    DOUBLE_OPEN_LADDER: "q3",
}


def barbed_path(n: int) -> Pregraph:
    """Path with two semi-edges at the ends and one everywhere else."""
    g = Pregraph(n)
    for i in range(n - 1):
        g.add_edge(_free(g, i), _free(g, i + 1))
    for s in g.open_slots():
        g.set_semi(s)
    return g


def _ladder_family(n: int, left_closed: bool, right_closed: bool) -> Pregraph:
    """Ladder on n = 2m vertices (vertices 2i and 2i+1 form rung i) with each
    end either doubled (closed) or given semi-edges (open)."""
    m = n // 2
    g = Pregraph(n)
    for i in range(m):
        g.add_edge(_free(g, 2 * i), _free(g, 2 * i + 1))
    for i in range(m - 1):
        g.add_edge(_free(g, 2 * i), _free(g, 2 * i + 2))
        g.add_edge(_free(g, 2 * i + 1), _free(g, 2 * i + 3))
    for closed, (a, b) in ((left_closed, (0, 1)),
                           (right_closed, (n - 2, n - 1))):
        if closed:
            g.add_edge(_free(g, a), _free(g, b))
        else:
            g.set_semi(_free(g, a))
            g.set_semi(_free(g, b))
    return g


def double_closed_ladder(n: int) -> Pregraph:
    return _ladder_family(n, True, True)


def double_open_ladder(n: int) -> Pregraph:
    return _ladder_family(n, False, False)


def open_closed_ladder(n: int) -> Pregraph:
    return _ladder_family(n, True, False)


def _free(g: Pregraph, v: int) -> int:
    for s in g.slots_of(v):
        if g.pair[s] == OPEN:
            return s
    raise ValueError(f"vertex {v} has no free slot")


@lru_cache(maxsize=None)
def _family_forms(n: int) -> dict:
    """Canonical form -> family name for every family defined on n vertices."""
    out = {}
    builders = [(BARBED_PATH, barbed_path, n >= 1)]
    if n % 2 == 0:
        builders.append((OPEN_CLOSED_LADDER, open_closed_ladder, n >= 2))
        builders.append((DOUBLE_CLOSED_LADDER, double_closed_ladder, n >= 4))
        builders.append((DOUBLE_OPEN_LADDER, double_open_ladder, n >= 4))
    for name, build_fn, defined in builders:
        if defined:
            cf = canon.canonical_form(build_fn(n))
            out.setdefault(cf, name)
    return out


def detect_multifactor_family(g: Pregraph) -> str | None:
    """Name of the multifactor family the underlying pregraph belongs to, or
    None.  These are the only pregraphs with more than one CQ-factor."""
    return _family_forms(g.n).get(canon.canonical_form(g.underlying()))


@lru_cache(maxsize=None)
def _duplicated_forms(n: int) -> dict:
    """Canonical form -> family, restricted to families that have two
    non-isomorphic markings on n vertices (the ones needing deduplication)."""
    dup = {BARBED_PATH: n % 2 == 0,
           OPEN_CLOSED_LADDER: n % 2 == 0,
           DOUBLE_CLOSED_LADDER: n % 4 == 0,
           DOUBLE_OPEN_LADDER: n % 4 == 0}
    return {cf: fam for cf, fam in _family_forms(n).items() if dup[fam]}


def _semi_count(g: Pregraph) -> int:
    from .core import SEMI
    return sum(1 for p in g.pair if p == SEMI)


def generate_markable(n: int, sink: Sink | None = None,
                      part: tuple[int, int] | None = None,
                      debug_validate: bool = False) -> GenerationStats:
    """Generate all pregraphs on n vertices admitting a CQ-factor, one per
    isomorphism class, with colours stripped.

    Wraps the marked generation; the few underlying pregraphs with two
    non-isomorphic markings are emitted for exactly one of the two.
    """
    dup_forms = _duplicated_forms(n)
    # cheap invariant prefilter: semi-edge counts of the duplicated families
    interesting_semis = set()
    for fam in set(dup_forms.values()):
        interesting_semis.add({BARBED_PATH: n + 2 if n > 1 else 3,
                               OPEN_CLOSED_LADDER: 2,
                               DOUBLE_CLOSED_LADDER: 0,
                               DOUBLE_OPEN_LADDER: 4}[fam])

    stats = GenerationStats(n)

    def wrapped(gm: Pregraph) -> None:
        if dup_forms and _semi_count(gm) in interesting_semis:
            fam = dup_forms.get(canon.canonical_form(gm.underlying()))
            if fam is not None:
                kinds = {c.kind for c in quotient_components(gm)}
                if _KEEP_KIND[fam] not in kinds:
                    stats.duplicates_removed += 1
                    return
        stats.graphs += 1
        if sink is not None:
            sink(gm.underlying())

    inner = generate_marked(n, wrapped, part, debug_validate)
    stats.lists_total = inner.lists_total
    stats.lists_processed = inner.lists_processed
    stats.search_nodes = inner.search_nodes
    stats.invalid_connections = inner.invalid_connections
    stats.noncanonical = inner.noncanonical
    stats.prefilter_skips = inner.prefilter_skips
    stats.per_list = inner.per_list
    return stats
