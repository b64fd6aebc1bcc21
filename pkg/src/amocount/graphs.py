"""Undirected graphs and chordal-graph machinery.

Vertices are integers.  Graphs built through ``UndirectedGraph(n, edges)``
use the dense range ``0..n-1``; induced subgraphs keep the labels of their
host graph, so a sorted vertex set identifies an induced subproblem
unambiguously.  The counting engine keys its memo table on exactly that.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass


class UndirectedGraph:
    """Immutable undirected graph with set-based adjacency."""

    __slots__ = ("vertices", "_adj", "_vertex_set")

    def __init__(self, n: int, edges=()):
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        self._init_from(range(n), edges)

    @classmethod
    def from_vertices(cls, vertices, edges=()) -> "UndirectedGraph":
        """Build a graph over an explicit (not necessarily dense) vertex set."""
        g = cls.__new__(cls)
        g._init_from(vertices, edges)
        return g

    def _init_from(self, vertices, edges):
        vs = tuple(sorted(set(vertices)))
        vset = frozenset(vs)
        adj: dict[int, set[int]] = {v: set() for v in vs}
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if u not in vset or v not in vset:
                raise ValueError(f"edge ({u}, {v}) references an unknown vertex")
            adj[u].add(v)
            adj[v].add(u)
        self.vertices = vs
        self._vertex_set = vset
        self._adj = {v: frozenset(nb) for v, nb in adj.items()}

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def vertex_set(self) -> frozenset:
        return self._vertex_set

    def neighbors(self, v) -> frozenset:
        return self._adj[v]

    def degree(self, v) -> int:
        return len(self._adj[v])

    def has_vertex(self, v) -> bool:
        return v in self._vertex_set

    def has_edge(self, u, v) -> bool:
        if u not in self._adj:
            raise KeyError(f"unknown vertex {u}")
        return v in self._adj[u]

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for u in self.vertices:
            for v in sorted(self._adj[u]):
                if u < v:
                    out.append((u, v))
        return out

    @property
    def num_edges(self) -> int:
        return sum(len(nb) for nb in self._adj.values()) // 2

    def induced(self, subset) -> "UndirectedGraph":
        """Induced subgraph keeping the original vertex labels."""
        sub = frozenset(subset)
        if not sub <= self._vertex_set:
            raise ValueError("subset contains vertices outside the graph")
        g = UndirectedGraph.__new__(UndirectedGraph)
        g.vertices = tuple(sorted(sub))
        g._vertex_set = sub
        g._adj = {v: self._adj[v] & sub for v in sub}
        return g

    def __eq__(self, other):
        if not isinstance(other, UndirectedGraph):
            return NotImplemented
        return self.vertices == other.vertices and self._adj == other._adj

    def __hash__(self):
        return hash((self.vertices, frozenset((v, nb) for v, nb in self._adj.items())))

    def __repr__(self):
        return f"UndirectedGraph(n={self.n}, m={self.num_edges})"


def connected_components(g: UndirectedGraph) -> list[frozenset]:
    """Components as vertex sets, ordered by their smallest vertex."""
    left = set(g.vertices)
    comps = []
    for start in g.vertices:
        if start not in left:
            continue
        seen = {start}
        queue = deque([start])
        left.discard(start)
        while queue:
            v = queue.popleft()
            for u in g.neighbors(v):
                if u in left:
                    left.discard(u)
                    seen.add(u)
                    queue.append(u)
        comps.append(frozenset(seen))
    return comps


def _components_within(adj, subset) -> list[frozenset]:
    # Connected components of the subgraph induced on `subset`, given host
    # adjacency.  Ordered by smallest contained vertex.
    left = set(subset)
    comps = []
    for start in sorted(subset):
        if start not in left:
            continue
        comp = {start}
        left.discard(start)
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for u in adj[v] & left:
                left.discard(u)
                comp.add(u)
                queue.append(u)
        comps.append(frozenset(comp))
    return comps


def _lbfs(adj, vertices, clique, preds, collect_components):
    """Lexicographic BFS by partition refinement.

    ``clique`` seeds the first cell of the refinement sequence (may be
    empty).  ``preds`` maps a vertex v to the sources u of direction claims
    u -> v; whenever some claim's source is still outside every recorded
    front set when its target is picked, the consistency flag drops to
    False.  Ties are always broken toward the lowest vertex id.

    Returns ``(flag, components, order)`` where ``components`` are the
    connected components of the recorded front sets (only filled in when
    ``collect_components`` is set).
    """
    HEAD, TAIL = -1, -2
    cells: dict[int, set] = {}
    nxt = {HEAD: TAIL}
    prv = {TAIL: HEAD}
    cell_of: dict[int, int] = {}
    counter = 0

    def insert_before(ref, members):
        nonlocal counter
        cid = counter
        counter += 1
        cells[cid] = members
        p = prv[ref]
        nxt[p] = cid
        prv[cid] = p
        nxt[cid] = ref
        prv[ref] = cid
        for u in members:
            cell_of[u] = cid
        return cid

    def drop(cid):
        p, q = prv[cid], nxt[cid]
        nxt[p] = q
        prv[q] = p
        del cells[cid], prv[cid], nxt[cid]

    clique = frozenset(clique)
    if clique:
        insert_before(TAIL, set(clique))
        rest = set(vertices) - clique
        if rest:
            insert_before(TAIL, rest)
    else:
        insert_before(TAIL, set(vertices))

    remaining = set(vertices)
    marked = set(clique)  # vertices inside the seed clique or a recorded front
    order = []
    comps: list[frozenset] = []
    flag = True

    while True:
        first = nxt[HEAD]
        while first != TAIL and not cells[first]:
            empty = first
            first = nxt[first]
            drop(empty)
        if first == TAIL:
            break
        cell = cells[first]
        v = min(cell)
        if v not in marked:
            snapshot = frozenset(cell)
            marked |= snapshot
            if collect_components:
                comps.extend(_components_within(adj, snapshot))
        order.append(v)
        if preds:
            for u in preds.get(v, ()):
                if u not in marked:
                    flag = False
        cell.discard(v)
        remaining.discard(v)
        nbrs = adj[v] & remaining
        if nbrs:
            touched: dict[int, list] = {}
            for u in nbrs:
                touched.setdefault(cell_of[u], []).append(u)
            for cid, members in touched.items():
                target = cells[cid]
                if len(members) == len(target):
                    continue  # whole cell is neighbors; nothing splits off
                mset = set(members)
                target -= mset
                insert_before(cid, mset)
    return flag, comps, order


def lbfs_order(g: UndirectedGraph) -> list:
    """Lexicographic BFS ordering, lowest vertex id on ties."""
    if g.n == 0:
        raise ValueError("graph is empty")
    _, _, order = _lbfs(g._adj, g.vertices, frozenset(), None, False)
    return order


def is_chordal(g: UndirectedGraph) -> bool:
    """Chordality via the reversed LBFS order.

    The reverse of an LBFS order of a chordal graph is a perfect elimination
    ordering; the standard single-witness check (each vertex's earliest later
    neighbor must dominate the rest) verifies it in linear time.
    """
    if g.n <= 2:
        return True
    peo = lbfs_order(g)[::-1]
    pos = {v: i for i, v in enumerate(peo)}
    for v in peo:
        later = [u for u in g.neighbors(v) if pos[u] > pos[v]]
        if len(later) <= 1:
            continue
        w = min(later, key=pos.__getitem__)
        rest = set(later)
        rest.discard(w)
        if not rest <= g.neighbors(w):
            return False
    return True


def maximal_cliques(g: UndirectedGraph) -> list[tuple[int, ...]]:
    """All maximal cliques of a chordal graph, sorted lexicographically.

    Runs maximum cardinality search; a clique closes whenever the weight of
    the picked vertex fails to grow.  Rejects non-chordal input.
    """
    if g.n == 0:
        return []
    if not is_chordal(g):
        raise ValueError("graph is not chordal")
    weights = {v: 0 for v in g.vertices}
    unnumbered = set(g.vertices)
    numbered: set = set()
    cliques: list[set] = []
    current: set | None = None
    prev_card = -1
    for _ in range(g.n):
        best_w = max(weights[v] for v in unnumbered)
        v = min(u for u in unnumbered if weights[u] == best_w)
        card = weights[v]
        if current is None:
            current = {v}
        elif card <= prev_card:
            cliques.append(current)
            current = {v} | (g.neighbors(v) & numbered)
        else:
            current.add(v)
        prev_card = card
        unnumbered.discard(v)
        numbered.add(v)
        for u in g.neighbors(v):
            if u in unnumbered:
                weights[u] += 1
    cliques.append(current)
    return sorted(tuple(sorted(c)) for c in cliques)


def _is_maximal_clique(g: UndirectedGraph, members: frozenset) -> bool:
    if not members or not members <= g.vertex_set:
        return False
    for v in members:
        if not members - {v} <= g.neighbors(v):
            return False
    common = None
    for v in members:
        common = g.neighbors(v) if common is None else common & g.neighbors(v)
    return not (common - members)


@dataclass
class RootedCliqueTree:
    """Clique tree with a fixed root; ``parent[root]`` is None."""

    nodes: tuple[tuple[int, ...], ...]
    parent: tuple
    root: int

    def __post_init__(self):
        kids: list[list[int]] = [[] for _ in self.nodes]
        for i, p in enumerate(self.parent):
            if p is not None:
                kids[p].append(i)
        self._children = tuple(tuple(sorted(k)) for k in kids)
        self._index = {node: i for i, node in enumerate(self.nodes)}

    def children(self, i: int) -> tuple[int, ...]:
        return self._children[i]

    def node_index(self, clique) -> int:
        key = tuple(sorted(clique))
        try:
            return self._index[key]
        except KeyError:
            raise ValueError(f"{key} is not a node of the clique tree") from None

    def path_from_root(self, i: int) -> list[int]:
        path = [i]
        while self.parent[path[-1]] is not None:
            path.append(self.parent[path[-1]])
        path.reverse()
        return path


def clique_tree(g: UndirectedGraph, root_clique=None) -> RootedCliqueTree:
    """Rooted clique tree of a connected chordal graph.

    The tree is a maximum-weight spanning tree of the clique intersection
    graph, with ties broken toward the lexicographically smallest clique
    pair.  Unless ``root_clique`` forces a choice, the root is the maximal
    clique containing the lowest vertex (again the lexicographically
    smallest such clique on ties), making the construction deterministic.
    """
    if g.n == 0:
        raise ValueError("graph is empty")
    if len(connected_components(g)) != 1:
        raise ValueError("clique tree requires a connected graph")
    cliques = maximal_cliques(g)
    m = len(cliques)
    csets = [frozenset(c) for c in cliques]
    adj_tree: list[list[int]] = [[] for _ in range(m)]
    if m > 1:
        cand = []
        for i in range(m):
            for j in range(i + 1, m):
                w = len(csets[i] & csets[j])
                if w:
                    cand.append((-w, i, j))
        cand.sort()
        uf = list(range(m))

        def find(x):
            while uf[x] != x:
                uf[x] = uf[uf[x]]
                x = uf[x]
            return x

        added = 0
        for _, i, j in cand:
            ri, rj = find(i), find(j)
            if ri == rj:
                continue
            uf[ri] = rj
            adj_tree[i].append(j)
            adj_tree[j].append(i)
            added += 1
            if added == m - 1:
                break
        if added != m - 1:
            raise RuntimeError("clique intersection graph did not span a tree")

    if root_clique is not None:
        key = tuple(sorted(root_clique))
        if key not in [tuple(c) for c in cliques]:
            raise ValueError(f"{key} is not a maximal clique of the graph")
        root = cliques.index(key)
    else:
        low = g.vertices[0]
        root = next(i for i in range(m) if low in csets[i])

    parent: list = [None] * m
    seen = {root}
    queue = deque([root])
    while queue:
        i = queue.popleft()
        for j in sorted(adj_tree[i]):
            if j not in seen:
                seen.add(j)
                parent[j] = i
                queue.append(j)
    return RootedCliqueTree(tuple(cliques), tuple(parent), root)
