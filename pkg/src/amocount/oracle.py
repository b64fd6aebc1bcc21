"""Brute-force ground truth for desk-scale instances.

Everything here enumerates explicitly and is meant for cross-checking the
engine on small inputs, never for production counting.
"""

from __future__ import annotations

from itertools import combinations, permutations

from .counting import _pairs_of
from .graphs import UndirectedGraph, _is_maximal_clique
from .mec import PartiallyDirectedGraph

DEFAULT_ORACLE_CAP = 9


class OracleCapError(RuntimeError):
    def __init__(self, size: int, cap: int):
        super().__init__(
            f"oracle enumeration requested for {size} vertices; capped at {cap}"
        )
        self.size = size
        self.cap = cap


def v_structures(graph: PartiallyDirectedGraph) -> frozenset:
    """Triples (a, b, c), a < c, with a -> b <- c and a, c nonadjacent."""
    adj = graph.skeleton_adjacency()
    parents: dict[int, set] = {}
    for u, v in graph.directed:
        parents.setdefault(v, set()).add(u)
    out = set()
    for b, ps in parents.items():
        for a, c in combinations(sorted(ps), 2):
            if c not in adj[a]:
                out.add((a, b, c))
    return frozenset(out)


def _is_acyclic(n: int, arcs) -> bool:
    indeg = [0] * n
    succ: dict[int, list] = {}
    for u, v in arcs:
        succ.setdefault(u, []).append(v)
        indeg[v] += 1
    ready = [v for v in range(n) if indeg[v] == 0]
    seen = 0
    while ready:
        v = ready.pop()
        seen += 1
        for w in succ.get(v, ()):
            indeg[w] -= 1
            if indeg[w] == 0:
                ready.append(w)
    return seen == n


def enumerate_amos(
    graph: PartiallyDirectedGraph, knowledge=None, *, cap: int = DEFAULT_ORACLE_CAP
) -> tuple:
    """All acyclic orientations of the undirected edges that keep the
    v-structure set unchanged and honor every knowledge claim.

    Backtracks over the undirected edges, pruning a direction as soon as it
    contradicts a claim or creates a collider outside the original
    v-structure set; acyclicity is checked once per completed orientation.
    """
    if graph.n > cap:
        raise OracleCapError(graph.n, cap)
    pairs = _pairs_of(knowledge)
    skeleton = graph.skeleton_pairs
    for u, v in pairs:
        if (min(u, v), max(u, v)) not in skeleton:
            raise ValueError(f"claim {u}->{v} is not an edge of the skeleton")
    if any((v, u) in graph.directed for (u, v) in pairs):
        return ()
    base = v_structures(graph)
    adj = graph.skeleton_adjacency()
    und = sorted(graph.undirected)
    parents: dict[int, set] = {v: set() for v in range(graph.n)}
    for u, v in graph.directed:
        parents[v].add(u)
    assigned: list = []
    results: list = []

    def makes_new_collider(x, y) -> bool:
        for p in parents[y]:
            if p != x and p not in adj[x]:
                if (min(p, x), y, max(p, x)) not in base:
                    return True
        return False

    def walk(i: int):
        if i == len(und):
            arcs = graph.directed | frozenset(assigned)
            if _is_acyclic(graph.n, arcs):
                results.append(arcs)
            return
        a, b = und[i]
        for x, y in ((a, b), (b, a)):
            if (y, x) in pairs:
                continue
            if makes_new_collider(x, y):
                continue
            parents[y].add(x)
            assigned.append((x, y))
            walk(i + 1)
            assigned.pop()
            parents[y].discard(x)

    walk(0)
    return tuple(
        PartiallyDirectedGraph(graph.n, (), arcs) for arcs in results
    )


def amos_by_vertex_orders(g: UndirectedGraph, *, cap: int = 7) -> frozenset:
    """Second, independent enumeration for connected chordal graphs.

    Every vertex order induces an acyclic orientation; keep those in which
    each vertex's earlier neighbors are pairwise adjacent (no collider
    appears), and deduplicate.  Factorial cost, so the cap is small.
    """
    if g.n > cap:
        raise OracleCapError(g.n, cap)
    _require_dense(g)
    out = set()
    for tau in permutations(g.vertices):
        pos = {v: i for i, v in enumerate(tau)}
        ok = True
        for v in g.vertices:
            earlier = [u for u in g.neighbors(v) if pos[u] < pos[v]]
            for a, b in combinations(earlier, 2):
                if not g.has_edge(a, b):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.add(
                frozenset(
                    (u, v) if pos[u] < pos[v] else (v, u) for u, v in g.edges()
                )
            )
    return frozenset(out)


def _require_dense(g: UndirectedGraph):
    if g.vertices != tuple(range(g.n)):
        raise ValueError("oracle operations need dense vertex labels 0..n-1")


def _is_lbfs_ordering(g: UndirectedGraph, tau) -> bool:
    """Check a full vertex order by forcing LBFS to pick it."""
    cells = [set(g.vertices)]
    remaining = set(g.vertices)
    for v in tau:
        while cells and not cells[0]:
            cells.pop(0)
        if not cells or v not in cells[0]:
            return False
        cells[0].discard(v)
        remaining.discard(v)
        nv = g.neighbors(v) & remaining
        split = []
        for cell in cells:
            inter = cell & nv
            rest = cell - nv
            if inter:
                split.append(inter)
            if rest:
                split.append(rest)
        cells = split
    return True


def amos_represented_by(g: UndirectedGraph, clique, *, cap: int = DEFAULT_ORACLE_CAP) -> tuple:
    """Orientations induced by LBFS orders that start with ``clique``.

    Enumerates all candidate orders (clique vertices first), keeps the valid
    LBFS orders, and deduplicates the induced orientations.
    """
    if g.n > cap:
        raise OracleCapError(g.n, cap)
    _require_dense(g)
    c = frozenset(clique)
    if not _is_maximal_clique(g, c):
        raise ValueError(f"{sorted(c)} is not a maximal clique of the graph")
    rest = sorted(g.vertex_set - c)
    edges = g.edges()
    seen = set()
    ordered = []
    for head in permutations(sorted(c)):
        for tail in permutations(rest):
            tau = head + tail
            if not _is_lbfs_ordering(g, tau):
                continue
            pos = {v: i for i, v in enumerate(tau)}
            arcs = frozenset(
                (u, v) if pos[u] < pos[v] else (v, u) for u, v in edges
            )
            if arcs not in seen:
                seen.add(arcs)
                ordered.append(arcs)
    return tuple(PartiallyDirectedGraph(g.n, (), arcs) for arcs in ordered)


def union_graph(orientations) -> PartiallyDirectedGraph:
    """Edge-wise union: directed where all members agree, else undirected."""
    members = list(orientations)
    if not members:
        raise ValueError("empty orientation set")
    n = members[0].n
    skeleton = members[0].skeleton_pairs
    for m in members[1:]:
        if m.n != n or m.skeleton_pairs != skeleton:
            raise ValueError("orientation set members differ in skeleton")
    undirected = []
    directed = []
    for u, v in sorted(skeleton):
        fwd = any((u, v) in m.directed or (u, v) in m.undirected for m in members)
        bwd = any((v, u) in m.directed or (u, v) in m.undirected for m in members)
        if fwd and bwd:
            undirected.append((u, v))
        elif fwd:
            directed.append((u, v))
        else:
            directed.append((v, u))
    return PartiallyDirectedGraph(n, undirected, directed)


def psi_bruteforce(vertex_set, knowledge) -> int:
    """Filter all permutations; test oracle for the subset dynamic program."""
    members = sorted(frozenset(vertex_set))
    pairs = _pairs_of(knowledge)
    count = 0
    for perm in permutations(members):
        pos = {v: i for i, v in enumerate(perm)}
        if all(pos[u] < pos[v] for u, v in pairs):
            count += 1
    return count


def phi_bruteforce(vertex_set, chain, knowledge) -> int:
    """Filter all permutations against claims and forbidden prefixes."""
    members = sorted(frozenset(vertex_set))
    pairs = _pairs_of(knowledge)
    chain_sets = [frozenset(s) for s in chain]
    count = 0
    for perm in permutations(members):
        pos = {v: i for i, v in enumerate(perm)}
        if not all(pos[u] < pos[v] for u, v in pairs):
            continue
        if any(frozenset(perm[: len(r)]) == r for r in chain_sets):
            continue
        count += 1
    return count
