"""Canonical forms and automorphism groups of coloured pregraphs.

A refinement-with-backtracking search over the vertices of the pregraph
itself.  Vertices start in cells grouped by a local invariant (loops, semis
and open slots by colour), cells are refined by multisets of
(neighbour cell, edge colour) pairs, and the remaining choices are resolved
by individualisation.  Leaf labellings yield certificates; the minimum
certificate is the canonical form and certificate collisions yield
automorphism generators.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import OPEN, SEMI, Pregraph


class UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        y = self.parent[x]
        if self.parent[y] != y:
            y = self.parent[x] = self.find(y)
        return y

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[ry] = rx

    def groups(self) -> dict:
        out: dict = {}
        for x in self.parent:
            out.setdefault(self.find(x), []).append(x)
        return out


@dataclass
class AutInfo:
    """Automorphism group data of a coloured pregraph."""
    generators: list[tuple[int, ...]]
    orbits: list[list[int]]                 # sorted orbits, sorted by minimum
    canonical_labelling: tuple[int, ...]    # vertex -> canonical position
    certificate: tuple

    def orbit_of(self) -> list[int]:
        """Vertex -> index of its orbit."""
        n = len(self.canonical_labelling)
        out = [-1] * n
        for i, orb in enumerate(self.orbits):
            for v in orb:
                out[v] = i
        return out


def vertex_orbits(n: int, generators: list[tuple[int, ...]]) -> list[list[int]]:
    uf = UnionFind(range(n))
    for g in generators:
        for v in range(n):
            uf.union(v, g[v])
    orbits = [sorted(vs) for vs in uf.groups().values()]
    orbits.sort(key=lambda o: o[0])
    return orbits


class _CanonSearch:
    """One canonical labelling / automorphism computation."""

    def __init__(self, g: Pregraph):
        self.n = g.n
        base_raw = []
        nbr: list[list[tuple[int, int]]] = [[] for _ in range(g.n)]
        for v in range(g.n):
            loops, semis, opens = [], [], 0
            for s in g.slots_of(v):
                t = g.pair[s]
                if t == OPEN:
                    opens += 1
                elif t == SEMI:
                    semis.append(g.col[s])
                elif t // 3 == v:
                    if s < t:
                        loops.append(g.col[s])
                else:
                    nbr[v].append((t // 3, g.col[s]))
            base_raw.append((tuple(sorted(loops)), tuple(sorted(semis)), opens))
        # raw keys, not per-graph class ids: certificates must be comparable
        # across different graphs
        self.base = base_raw
        self.nbr = nbr
        self.best_cert: tuple | None = None
        self.best_lab: tuple[int, ...] | None = None
        self.first_lab: tuple[int, ...] | None = None
        self.first_cert: tuple | None = None
        self.generators: list[tuple[int, ...]] = []

    def run(self) -> AutInfo:
        cells = [sorted(vs) for vs in
                 _group_by(range(self.n), lambda v: self.base[v]).values()]
        cells.sort(key=lambda c: self.base[c[0]])
        self._search(self._refine(cells), fixed=[])
        orbits = vertex_orbits(self.n, self.generators)
        assert self.best_lab is not None
        return AutInfo(self.generators, orbits, self.best_lab, self.best_cert)

    def _refine(self, cells: list[list[int]]) -> list[list[int]]:
        while True:
            cell_of = [0] * self.n
            for ci, cell in enumerate(cells):
                for v in cell:
                    cell_of[v] = ci
            new_cells: list[list[int]] = []
            changed = False
            for cell in cells:
                if len(cell) == 1:
                    new_cells.append(cell)
                    continue
                sig = {v: tuple(sorted((cell_of[u], c) for u, c in self.nbr[v]))
                       for v in cell}
                groups = _group_by(cell, sig.__getitem__)
                if len(groups) == 1:
                    new_cells.append(cell)
                else:
                    changed = True
                    for key in sorted(groups):
                        new_cells.append(sorted(groups[key]))
            cells = new_cells
            if not changed:
                return cells

    def _search(self, cells: list[list[int]], fixed: list[int]) -> None:
        target = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if target is None:
            self._leaf([c[0] for c in cells])
            return
        # Orbit pruning: only branch on one vertex per orbit of the subgroup
        # generated so far that fixes all individualised vertices.
        stab = [g for g in self.generators
                if all(g[v] == v for v in fixed)]
        uf = UnionFind(cells[target])
        tried: set[int] = set()
        for v in cells[target]:
            for g in stab:
                u = g[v]
                if u in uf.parent:
                    uf.union(v, u)
        for v in cells[target]:
            # stab can grow during the loop; re-close the orbits lazily
            for g in self.generators[len(stab):]:
                if all(g[x] == x for x in fixed):
                    stab.append(g)
                    for w in cells[target]:
                        u = g[w]
                        if u in uf.parent:
                            uf.union(w, u)
            rep = uf.find(v)
            if rep in tried:
                continue
            tried.add(rep)
            child = (cells[:target] + [[v]]
                     + [[u for u in cells[target] if u != v]]
                     + cells[target + 1:])
            self._search(self._refine(child), fixed + [v])

    def _leaf(self, order: list[int]) -> None:
        lab = [0] * self.n
        for pos, v in enumerate(order):
            lab[v] = pos
        cert = tuple(
            (self.base[v], tuple(sorted((lab[u], c) for u, c in self.nbr[v])))
            for v in order)
        lab_t = tuple(lab)
        if self.first_cert is None:
            self.first_cert = cert
            self.first_lab = lab_t
        elif cert == self.first_cert:
            # same certificate as the first leaf: lab2^-1 . lab1 is an
            # automorphism
            inv = [0] * self.n
            for v, pos in enumerate(lab_t):
                inv[pos] = v
            perm = tuple(inv[self.first_lab[v]] for v in range(self.n))
            if any(perm[v] != v for v in range(self.n)):
                self.generators.append(perm)
        if self.best_cert is None or cert < self.best_cert:
            self.best_cert = cert
            self.best_lab = lab_t


def _group_by(items, keyfn) -> dict:
    out: dict = {}
    for x in items:
        out.setdefault(keyfn(x), []).append(x)
    return out


_cache: dict[tuple, AutInfo] = {}
_CACHE_LIMIT = 200000


def canonicalize(g: Pregraph) -> AutInfo:
    """Full automorphism/canonical-labelling computation, memoised."""
    k = g.key()
    info = _cache.get(k)
    if info is None:
        info = _CanonSearch(g).run()
        if len(_cache) >= _CACHE_LIMIT:
            _cache.clear()
        _cache[k] = info
    return info


def canonical_form(g: Pregraph) -> tuple:
    """Isomorphism invariant: equal iff the coloured pregraphs are isomorphic."""
    return canonicalize(g).certificate


def automorphisms(g: Pregraph) -> AutInfo:
    return canonicalize(g)


def encode(g: Pregraph) -> tuple[list[int], list[list[int]]]:
    """Vertex-coloured simple graph encoding of a coloured pregraph.

    Original vertices get colour class 0.  Every element (edge, loop, semi,
    open slot) becomes an auxiliary vertex whose class is determined by its
    kind and colour, adjacent to the original endpoint(s); a loop gets a
    doubled attachment via two auxiliary vertices.  Two pregraphs are
    isomorphic iff their encodings are isomorphic as vertex-coloured simple
    graphs.
    """
    colours: list[int] = [0] * g.n
    adj: list[list[int]] = [[] for _ in range(g.n)]
    classes: dict[tuple, int] = {}

    def cls(kind: str, c: int) -> int:
        key = (kind, c)
        if key not in classes:
            classes[key] = len(classes) + 1
        return classes[key]

    def new_vertex(colour: int) -> int:
        colours.append(colour)
        adj.append([])
        return len(colours) - 1

    def link(a: int, b: int) -> None:
        adj[a].append(b)
        adj[b].append(a)

    for s in range(3 * g.n):
        t = g.pair[s]
        v = s // 3
        if t == OPEN:
            link(new_vertex(cls("open", -1)), v)
        elif t == SEMI:
            link(new_vertex(cls("semi", g.col[s])), v)
        elif s < t:
            u = t // 3
            if u == v:
                mid = new_vertex(cls("loop", g.col[s]))
                arm1 = new_vertex(cls("looparm", g.col[s]))
                arm2 = new_vertex(cls("looparm", g.col[s]))
                link(arm1, v)
                link(arm2, v)
                link(mid, arm1)
                link(mid, arm2)
            else:
                mid = new_vertex(cls("edge", g.col[s]))
                link(mid, v)
                link(mid, u)
    return colours, adj


def acts_trivially(aut: AutInfo, vertices) -> bool:
    """True iff every generator fixes every listed vertex."""
    return all(g[v] == v for g in aut.generators for v in vertices)


def pair_orbits(aut: AutInfo, pairs: list[tuple[int, int]]) -> list[tuple[int, int]]:
    """One representative per orbit of the vertex pairs under the group.

    Pairs are unordered; the representative is the pair whose sorted pair of
    canonical labels is smallest in its orbit.
    """
    norm = [tuple(sorted(p)) for p in pairs]
    uf = UnionFind(norm)
    pset = set(norm)
    for g in aut.generators:
        for (a, b) in norm:
            img = tuple(sorted((g[a], g[b])))
            if img in pset:
                uf.union((a, b), img)
    lab = aut.canonical_labelling

    def labkey(p):
        return tuple(sorted((lab[p[0]], lab[p[1]])))

    reps = []
    for members in uf.groups().values():
        reps.append(min(members, key=labkey))
    reps.sort(key=labkey)
    return reps


def deficient_pair_orbits(aut: AutInfo, deficient, O) -> list[tuple[int, int]]:
    """Orbit representatives of unordered deficient pairs meeting O."""
    oset = set(O)
    pairs = sorted({tuple(sorted((x, y)))
                    for x in oset for y in deficient if y != x})
    return pair_orbits(aut, pairs)
