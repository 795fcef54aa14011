"""Core data model for cubic pregraphs.

A pregraph is a cubic multigraph that may contain loops, parallel edges and
semi-edges.  Every vertex owns exactly three half-edge *slots*; an edge is a
pairing of two slots, a semi-edge is a slot with no partner, and an *open*
slot is an unassigned connector (legal only in partial graphs).  Colours are
stored per slot; the two slots of an edge always carry the same colour.
"""

from __future__ import annotations

from dataclasses import dataclass

# Slot pairing states (values of Pregraph.pair).
SEMI = -1
OPEN = -2

# Colour of an unassigned element.
NO_COLOUR = -1


class PregraphError(ValueError):
    pass


class InvalidMarkingError(PregraphError):
    """The colour assignment is not a valid quotient marking."""


class FormatError(PregraphError):
    """Malformed text input; carries a position hint in the message."""


class Pregraph:
    """A (partial) pregraph on ``n`` vertices with 3 slots per vertex.

    ``pair[s]`` is the partner slot of ``s``, or SEMI / OPEN.
    ``col[s]`` is the colour of the element at ``s`` (NO_COLOUR if unset).
    Slot ``i`` of vertex ``v`` has index ``3*v + i``.
    """

    __slots__ = ("n", "pair", "col")

    def __init__(self, n: int, pair: list[int] | None = None,
                 col: list[int] | None = None):
        if n < 1:
            raise PregraphError("vertex count must be positive")
        self.n = n
        self.pair = pair if pair is not None else [OPEN] * (3 * n)
        self.col = col if col is not None else [NO_COLOUR] * (3 * n)
        if len(self.pair) != 3 * n or len(self.col) != 3 * n:
            raise PregraphError("slot arrays must have length 3n")

    # -- basic accessors -------------------------------------------------

    def copy(self) -> "Pregraph":
        return Pregraph(self.n, list(self.pair), list(self.col))

    def key(self) -> tuple:
        """Hashable identity of the labelled graph."""
        return (self.n, tuple(self.pair), tuple(self.col))

    def slots_of(self, v: int) -> range:
        return range(3 * v, 3 * v + 3)

    def vertex_of(self, s: int) -> int:
        return s // 3

    def open_slots(self) -> list[int]:
        return [s for s, p in enumerate(self.pair) if p == OPEN]

    def is_complete(self) -> bool:
        return OPEN not in self.pair

    def edges(self) -> list[tuple[int, int]]:
        """All edges as slot pairs (s, t) with s < t.  Includes loops."""
        return [(s, t) for s, t in enumerate(self.pair) if t >= 0 and s < t]

    def neighbours(self, v: int) -> list[int]:
        out = []
        for s in self.slots_of(v):
            t = self.pair[s]
            if t >= 0:
                out.append(t // 3)
        return out

    def add_edge(self, s: int, t: int, colour: int = NO_COLOUR) -> None:
        if s == t:
            raise PregraphError("a slot cannot pair with itself")
        if self.pair[s] != OPEN or self.pair[t] != OPEN:
            raise PregraphError("both slots must be open")
        self.pair[s] = t
        self.pair[t] = s
        self.col[s] = colour
        self.col[t] = colour

    def remove_edge(self, s: int, t: int) -> None:
        if self.pair[s] != t or self.pair[t] != s:
            raise PregraphError("slots are not paired")
        self.pair[s] = OPEN
        self.pair[t] = OPEN
        self.col[s] = NO_COLOUR
        self.col[t] = NO_COLOUR

    def set_semi(self, s: int, colour: int = NO_COLOUR) -> None:
        if self.pair[s] != OPEN:
            raise PregraphError("slot already assigned")
        self.pair[s] = SEMI
        self.col[s] = colour

    def underlying(self) -> "Pregraph":
        """Copy with all colours erased."""
        return Pregraph(self.n, list(self.pair), [NO_COLOUR] * (3 * self.n))

    def validate(self, allow_open: bool = True) -> None:
        for s, t in enumerate(self.pair):
            if t >= 0:
                if t == s:
                    raise PregraphError(f"slot {s} paired with itself")
                if not 0 <= t < 3 * self.n or self.pair[t] != s:
                    raise PregraphError(f"pairing not an involution at slot {s}")
                if self.col[t] != self.col[s]:
                    raise PregraphError(f"edge colour mismatch at slot {s}")
            elif t == OPEN and not allow_open:
                raise PregraphError(f"open slot {s} in a complete pregraph")
            elif t not in (SEMI, OPEN):
                raise PregraphError(f"invalid pairing value at slot {s}")

    # -- normalisation & equality ----------------------------------------

    def _entry(self, s: int) -> tuple:
        """Sort key of a slot: edges, then semis, then opens."""
        t = self.pair[s]
        if t >= 0:
            return (0, t // 3, self.col[s])
        if t == SEMI:
            return (1, self.col[s])
        return (2,)

    def normalized(self) -> "Pregraph":
        """Equivalent graph with each vertex's slots in sorted entry order."""
        order: list[int] = []
        for v in range(self.n):
            order.extend(sorted(self.slots_of(v), key=self._entry))
        newpos = [0] * (3 * self.n)
        for i, s in enumerate(order):
            newpos[s] = i
        pair = [OPEN] * (3 * self.n)
        col = [NO_COLOUR] * (3 * self.n)
        for i, s in enumerate(order):
            t = self.pair[s]
            pair[i] = newpos[t] if t >= 0 else t
            col[i] = self.col[s]
        return Pregraph(self.n, pair, col)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Pregraph):
            return NotImplemented
        return self.normalized().key() == other.normalized().key()

    def __hash__(self) -> int:
        return hash(self.normalized().key())

    def __repr__(self) -> str:
        return f"Pregraph({encode_text(self)!r})"


Slot = tuple[int, int]  # (vertex, slot index)


def build(n: int, edges: list[tuple[Slot, Slot]], semis: list[Slot]) -> Pregraph:
    """Build a pregraph from explicit slot pairs and semi-edge slots.

    Unreferenced slots are left open.  Raises on out-of-range indices or a
    slot that is referenced twice.
    """
    g = Pregraph(n)
    seen: set[int] = set()

    def idx(slot: Slot) -> int:
        v, i = slot
        if not (0 <= v < n and 0 <= i < 3):
            raise PregraphError(f"slot {slot} out of range")
        s = 3 * v + i
        if s in seen:
            raise PregraphError(f"slot {slot} referenced twice")
        seen.add(s)
        return s

    for a, b in edges:
        sa, sb = idx(a), idx(b)
        if sa == sb:
            raise PregraphError(f"slot {a} paired with itself")
        g.pair[sa] = sb
        g.pair[sb] = sa
    for a in semis:
        g.pair[idx(a)] = SEMI
    g.validate()
    return g


def relabelled(g: Pregraph, perm: list[int] | tuple[int, ...]) -> Pregraph:
    """Image of g under the vertex permutation v -> perm[v] (slot order
    within each vertex is preserved)."""
    out = Pregraph(g.n)
    for s in range(3 * g.n):
        ns = 3 * perm[s // 3] + s % 3
        t = g.pair[s]
        out.pair[ns] = 3 * perm[t // 3] + t % 3 if t >= 0 else t
        out.col[ns] = g.col[s]
    return out


def is_connected(g: Pregraph) -> bool:
    """True iff all vertices lie in one component of the paired edges."""
    seen = [False] * g.n
    stack = [0]
    seen[0] = True
    count = 1
    while stack:
        v = stack.pop()
        for u in g.neighbours(v):
            if not seen[u]:
                seen[u] = True
                count += 1
                stack.append(u)
    return count == g.n


@dataclass(frozen=True)
class QuotientComponent:
    """One component of the marked subgraph, classified as q1..q4."""
    kind: str                       # 'q1' | 'q2' | 'q3' | 'q4'
    vertices: tuple[int, ...]       # cycle order for q1, sorted otherwise
    edges: tuple[tuple[int, int], ...]
    semis: tuple[int, ...]


def quotient_components(g: Pregraph,
                        marked: tuple[int, ...] = (0,)) -> list[QuotientComponent]:
    """Decompose the marked subgraph into quotients of C4.

    ``marked`` lists the colours that form the 2-factor (``(0,)`` for a
    marking, ``(0, 2)`` for a Delaney-Dress colouring).  Raises
    InvalidMarkingError if any vertex does not have exactly two marked slot
    ends or any component is not one of the four quotient shapes.
    """
    mset = set(marked)
    mslots: list[list[int]] = [[] for _ in range(g.n)]
    for s in range(3 * g.n):
        if g.col[s] in mset and g.pair[s] != OPEN:
            mslots[s // 3].append(s)
    for v, lst in enumerate(mslots):
        if len(lst) != 2:
            raise InvalidMarkingError(
                f"vertex {v} has {len(lst)} marked ends, expected 2")

    comp_of = [-1] * g.n
    comps: list[QuotientComponent] = []
    for start in range(g.n):
        if comp_of[start] != -1:
            continue
        verts = [start]
        comp_of[start] = len(comps)
        i = 0
        while i < len(verts):
            v = verts[i]
            i += 1
            for s in mslots[v]:
                t = g.pair[s]
                if t >= 0 and comp_of[t // 3] == -1:
                    comp_of[t // 3] = len(comps)
                    verts.append(t // 3)
        vset = set(verts)
        edges: list[tuple[int, int]] = []
        semis: list[int] = []
        loops = 0
        for v in sorted(vset):
            for s in mslots[v]:
                t = g.pair[s]
                if t == SEMI:
                    semis.append(s)
                elif t // 3 == v and t != s:
                    loops += 1
                elif s < t:
                    edges.append((s, t))
        comps.append(_classify_component(sorted(vset), edges, semis, loops))
    comps.sort(key=lambda c: min(c.vertices))
    return comps


def _classify_component(verts: list[int], edges, semis, loops) -> QuotientComponent:
    nv = len(verts)
    ne = len(edges)
    ns = len(semis)
    if loops:
        raise InvalidMarkingError(f"marked loop at vertex {verts[0]}")
    if nv == 1 and ne == 0 and ns == 2:
        return QuotientComponent("q4", tuple(verts), tuple(edges), tuple(semis))
    if nv == 2 and ne == 2 and ns == 0:
        return QuotientComponent("q2", tuple(verts), tuple(edges), tuple(semis))
    if nv == 2 and ne == 1 and ns == 2:
        a, b = verts
        sa = sum(1 for s in semis if s // 3 == a)
        if sa == 1:
            return QuotientComponent("q3", tuple(verts), tuple(edges), tuple(semis))
    if nv == 4 and ne == 4 and ns == 0:
        cycle = _c4_cycle_order(verts, edges)
        if cycle is not None:
            return QuotientComponent("q1", cycle, tuple(edges), tuple(semis))
    raise InvalidMarkingError(
        f"marked component on vertices {verts} is not a quotient of C4")


def _c4_cycle_order(verts: list[int], edges) -> tuple[int, ...] | None:
    adj: dict[int, list[int]] = {v: [] for v in verts}
    for s, t in edges:
        a, b = s // 3, t // 3
        if a == b:
            return None
        adj[a].append(b)
        adj[b].append(a)
    if any(len(lst) != 2 for lst in adj.values()):
        return None
    start = min(verts)
    prev, cur = start, min(adj[start])
    order = [start]
    while cur != start:
        order.append(cur)
        a, b = adj[cur]
        prev, cur = cur, (b if a == prev else a)
    return tuple(order) if len(order) == 4 else None


@dataclass(frozen=True)
class Block:
    """One part of the block partition of a marked pregraph."""
    family: str                          # 'Q1' | 'Q2' | 'Q3' | 'Q4'
    vertices: tuple[int, ...]            # sorted
    components: tuple[QuotientComponent, ...]
    internal_edges: tuple[tuple[int, int], ...]
    boundary_slots: tuple[int, ...]      # open, colour-1 semi, or edge out


_FAMILY_OF_KIND = {"q1": "Q1", "q2": "Q2", "q3": "Q3", "q4": "Q4"}


def marked_neighbour_map(comps: list[QuotientComponent]) -> dict[int, tuple[int, ...]]:
    """Vertex -> neighbours inside its quotient component (via marked edges)."""
    out: dict[int, list[int]] = {}
    for c in comps:
        for v in c.vertices:
            out.setdefault(v, [])
        for s, t in c.edges:
            out[s // 3].append(t // 3)
            out[t // 3].append(s // 3)
    return {v: tuple(ns) for v, ns in out.items()}


def _q1_ladder_adjacent(g: Pregraph, x: int, y: int,
                        comp_of: list[int], mnbr: dict[int, tuple[int, ...]],
                        exclude: tuple[int, int] | None = None) -> bool:
    """True iff a colour-1 edge x-y plus an existing parallel colour-1 edge
    between marked neighbours of x and y forms a ladder square (merging the
    two q1 quotients into one ladder)."""
    for x2 in mnbr[x]:
        if x2 == x:
            continue
        for s in g.slots_of(x2):
            t = g.pair[s]
            if t < 0 or g.col[s] != 1:
                continue
            if exclude is not None and (min(s, t), max(s, t)) == exclude:
                continue
            y2 = t // 3
            if y2 != y and comp_of[y2] == comp_of[y] and y2 in mnbr[y]:
                return True
    return False


def block_partition(g: Pregraph) -> list[Block]:
    """The unique block partition of a (possibly partial) marked pregraph.

    Q1 blocks are maximal ladders of marked C4s (joined by parallel colour-1
    rung pairs), Q2/Q3 blocks are maximal chains or cycles of digons /
    q3-quotients joined by colour-1 edges, and every q4 quotient is its own
    block.  Blocks are ordered by their smallest vertex.
    """
    comps = quotient_components(g)
    comp_of = [-1] * g.n
    for i, c in enumerate(comps):
        for v in c.vertices:
            comp_of[v] = i
    mnbr = marked_neighbour_map(comps)

    parent = list(range(len(comps)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i: int, j: int) -> None:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[rj] = ri

    for s, t in g.edges():
        if g.col[s] != 1:
            continue
        a, b = s // 3, t // 3
        ca, cb = comp_of[a], comp_of[b]
        ka, kb = comps[ca].kind, comps[cb].kind
        if ka == kb == "q2" or ka == kb == "q3":
            union(ca, cb)
        elif ka == kb == "q1" and ca != cb:
            if _q1_ladder_adjacent(g, a, b, comp_of, mnbr,
                                   exclude=(min(s, t), max(s, t))):
                union(ca, cb)

    groups: dict[int, list[int]] = {}
    for i in range(len(comps)):
        groups.setdefault(find(i), []).append(i)

    block_of = [-1] * g.n
    blocks = []
    for members in groups.values():
        vset = sorted(v for i in members for v in comps[i].vertices)
        blocks.append((vset, members))
    blocks.sort(key=lambda b: b[0][0])
    for bi, (vset, _members) in enumerate(blocks):
        for v in vset:
            block_of[v] = bi

    out: list[Block] = []
    for bi, (vset, members) in enumerate(blocks):
        internal = []
        boundary = []
        for v in vset:
            for s in g.slots_of(v):
                t = g.pair[s]
                if t == OPEN:
                    boundary.append(s)
                elif t == SEMI:
                    if g.col[s] != 0:
                        boundary.append(s)
                elif g.col[s] != 0:
                    if block_of[t // 3] == bi:
                        if s < t:
                            internal.append((s, t))
                    else:
                        boundary.append(s)
        mem = tuple(comps[i] for i in sorted(members,
                                             key=lambda i: comps[i].vertices[0]))
        out.append(Block(_FAMILY_OF_KIND[mem[0].kind], tuple(vset), mem,
                         tuple(sorted(internal)), tuple(sorted(boundary))))
    return out


@dataclass(frozen=True)
class UnmarkedPartition:
    """Ladder/digon/remainder partition of an uncoloured cubic pregraph."""
    ladders: tuple[tuple[int, ...], ...]
    digons: tuple[tuple[int, ...], ...]
    remainder: tuple[tuple[int, ...], ...]


def unmarked_partition(g: Pregraph) -> UnmarkedPartition:
    """Partition into maximal ladders, digons outside ladders, and the rest.

    A digon counts as contained in a ladder iff both its vertices lie in the
    ladder part; ladders take precedence.  Parts are ordered by smallest
    vertex.  Requires at least 4 vertices.
    """
    if g.n < 4:
        raise PregraphError("unmarked partition requires at least 4 vertices")
    simple_adj: list[set[int]] = [set() for _ in range(g.n)]
    for s, t in g.edges():
        a, b = s // 3, t // 3
        if a != b:
            simple_adj[a].add(b)
            simple_adj[b].add(a)

    squares: list[frozenset] = []
    square_edges: list[set[frozenset]] = []
    for a in range(g.n):
        for b in simple_adj[a]:
            if b < a:
                continue
            for c in simple_adj[b]:
                if c == a or c < a:
                    continue
                for d in simple_adj[c] & simple_adj[a]:
                    if d <= b or d == c:
                        continue
                    squares.append(frozenset((a, b, c, d)))
                    square_edges.append({frozenset((a, b)), frozenset((b, c)),
                                         frozenset((c, d)), frozenset((d, a))})

    parent = list(range(len(squares)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(len(squares)):
        for j in range(i + 1, len(squares)):
            if square_edges[i] & square_edges[j]:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[rj] = ri

    ladder_groups: dict[int, set[int]] = {}
    for i, sq in enumerate(squares):
        ladder_groups.setdefault(find(i), set()).update(sq)
    ladders = sorted((tuple(sorted(vs)) for vs in ladder_groups.values()),
                     key=lambda t: t[0])
    in_ladder = set(v for part in ladders for v in part)

    digons = []
    edge_count: dict[tuple[int, int], int] = {}
    for s, t in g.edges():
        a, b = sorted((s // 3, t // 3))
        if a != b:
            edge_count[(a, b)] = edge_count.get((a, b), 0) + 1
    for (a, b), cnt in sorted(edge_count.items()):
        if cnt >= 2 and not (a in in_ladder and b in in_ladder):
            digons.append((a, b))
    in_digon = set(v for part in digons for v in part)

    taken = in_ladder | in_digon
    rest = []
    seen: set[int] = set()
    for v in range(g.n):
        if v in taken or v in seen:
            continue
        comp = [v]
        seen.add(v)
        i = 0
        while i < len(comp):
            for u in g.neighbours(comp[i]):
                if u not in taken and u not in seen:
                    seen.add(u)
                    comp.append(u)
            i += 1
        rest.append(tuple(sorted(comp)))
    return UnmarkedPartition(tuple(ladders), tuple(digons), tuple(rest))


# -- text format ----------------------------------------------------------

def encode_text(g: Pregraph) -> str:
    """One-line text encoding; see decode_text for the inverse."""
    parts = [str(g.n)]
    for v in range(g.n):
        entries = []
        for s in g.slots_of(v):
            t = g.pair[s]
            if t == OPEN:
                e = "?"
            elif t == SEMI:
                e = "*"
            else:
                e = str(t // 3)
            if g.col[s] != NO_COLOUR:
                e += f"/{g.col[s]}"
            entries.append(e)
        parts.append(f"{v}: " + " ".join(entries))
    return " | ".join(parts)


def decode_text(line: str) -> Pregraph:
    """Parse the one-line text format.

    Grammar: ``<n> | <v>: <entry> <entry> <entry> | ...`` where an entry is a
    neighbour index, ``*`` (semi-edge) or ``?`` (open), optionally suffixed
    with ``/<colour>``.  Parallel entries are matched up in slot order.
    """
    fields = [f.strip() for f in line.strip().split("|")]
    try:
        n = int(fields[0])
    except ValueError:
        raise FormatError(f"bad vertex count {fields[0]!r}") from None
    if n < 1:
        raise FormatError(f"bad vertex count {n}")
    if len(fields) != n + 1:
        raise FormatError(f"expected {n} vertex fields, got {len(fields) - 1}")

    g = Pregraph(n)
    # refs[(v, u)] = slots of v whose entry names u, in slot order
    refs: dict[tuple[int, int], list[tuple[int, int]]] = {}
    for vi, field in enumerate(fields[1:]):
        head, _, body = field.partition(":")
        try:
            v = int(head)
        except ValueError:
            raise FormatError(f"bad vertex label {head!r}") from None
        if v != vi:
            raise FormatError(f"vertex {vi} labelled {head!r}")
        entries = body.split()
        if len(entries) != 3:
            raise FormatError(f"vertex {v}: expected 3 entries, got {len(entries)}")
        for i, entry in enumerate(entries):
            tok, _, ctok = entry.partition("/")
            colour = NO_COLOUR
            if ctok:
                try:
                    colour = int(ctok)
                except ValueError:
                    raise FormatError(f"vertex {v} slot {i}: bad colour {ctok!r}") from None
            s = 3 * v + i
            if tok == "*":
                g.pair[s] = SEMI
                g.col[s] = colour
            elif tok == "?":
                if ctok:
                    raise FormatError(f"vertex {v} slot {i}: open slot cannot be coloured")
            else:
                try:
                    u = int(tok)
                except ValueError:
                    raise FormatError(f"vertex {v} slot {i}: bad entry {tok!r}") from None
                if not 0 <= u < n:
                    raise FormatError(f"vertex {v} slot {i}: neighbour {u} out of range")
                refs.setdefault((v, u), []).append((s, colour))

    for (v, u), slots in sorted(refs.items()):
        if u < v:
            continue
        if v == u:
            if len(slots) % 2:
                raise FormatError(f"vertex {v}: odd number of loop ends")
            pairs = [(slots[k], slots[k + 1]) for k in range(0, len(slots), 2)]
        else:
            back = refs.get((u, v), [])
            if len(back) != len(slots):
                raise FormatError(f"edge {v}-{u}: mismatched multiplicity")
            pairs = list(zip(slots, back))
        for (s, cs), (t, ct) in pairs:
            if cs != ct:
                raise FormatError(f"edge {v}-{u}: colour mismatch {cs} vs {ct}")
            g.pair[s] = t
            g.pair[t] = s
            g.col[s] = cs
            g.col[t] = cs
    g.validate()
    return g
