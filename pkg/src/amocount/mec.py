"""Chain graphs, background knowledge, and instance-level operations.

A counting instance is a partially directed graph whose undirected part
splits into chordal components, together with a set of directed edge claims
("knowledge").  The total count is the product over components of the
per-component counts, zero when a claim reverses one of the graph's own
directed edges.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graphs import UndirectedGraph, connected_components, is_chordal, maximal_cliques


class BackgroundKnowledge:
    """An immutable set of directed edge claims u -> v."""

    __slots__ = ("pairs",)

    def __init__(self, pairs=()):
        norm = set()
        for u, v in pairs:
            u, v = int(u), int(v)
            if u == v:
                raise ValueError(f"direction claim {u}->{v} is a self-loop")
            norm.add((u, v))
        self.pairs = frozenset(norm)

    @classmethod
    def empty(cls) -> "BackgroundKnowledge":
        return cls()

    def restrict(self, vertices) -> "BackgroundKnowledge":
        vs = frozenset(vertices)
        return BackgroundKnowledge(p for p in self.pairs if p[0] in vs and p[1] in vs)

    def endpoints(self) -> frozenset:
        out = set()
        for u, v in self.pairs:
            out.add(u)
            out.add(v)
        return frozenset(out)

    def union(self, other) -> "BackgroundKnowledge":
        return BackgroundKnowledge(self.pairs | frozenset(other))

    def __iter__(self):
        return iter(self.pairs)

    def __len__(self):
        return len(self.pairs)

    def __bool__(self):
        return bool(self.pairs)

    def __contains__(self, pair):
        return pair in self.pairs

    def __eq__(self, other):
        if isinstance(other, BackgroundKnowledge):
            return self.pairs == other.pairs
        return NotImplemented

    def __hash__(self):
        return hash(self.pairs)

    def __repr__(self):
        return f"BackgroundKnowledge({sorted(self.pairs)!r})"


def restrict_knowledge(knowledge: BackgroundKnowledge, vertices) -> BackgroundKnowledge:
    """Claims with both endpoints inside ``vertices``."""
    return knowledge.restrict(vertices)


class PartiallyDirectedGraph:
    """Graph over dense vertices 0..n-1 with undirected and directed edges.

    Every vertex pair carries at most one edge: undirected, or directed in
    exactly one direction.
    """

    __slots__ = ("n", "undirected", "directed", "_skeleton_adj")

    def __init__(self, n: int, undirected=(), directed=()):
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        und = set()
        for u, v in undirected:
            self._check_pair(n, u, v)
            und.add((min(u, v), max(u, v)))
        dire = set()
        for u, v in directed:
            self._check_pair(n, u, v)
            if (v, u) in dire:
                raise ValueError(f"edge {u},{v} directed both ways")
            dire.add((u, v))
        for u, v in dire:
            if (min(u, v), max(u, v)) in und:
                raise ValueError(f"edge {u},{v} is both directed and undirected")
        self.n = n
        self.undirected = frozenset(und)
        self.directed = frozenset(dire)
        self._skeleton_adj = None

    @staticmethod
    def _check_pair(n, u, v):
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"edge ({u}, {v}) out of range for {n} vertices")
        if u == v:
            raise ValueError(f"self-loop at vertex {u}")

    @property
    def skeleton_pairs(self) -> frozenset:
        return self.undirected | frozenset(
            (min(u, v), max(u, v)) for u, v in self.directed
        )

    def skeleton_adjacency(self) -> dict:
        if self._skeleton_adj is None:
            adj = {v: set() for v in range(self.n)}
            for u, v in self.skeleton_pairs:
                adj[u].add(v)
                adj[v].add(u)
            self._skeleton_adj = {v: frozenset(nb) for v, nb in adj.items()}
        return self._skeleton_adj

    def undirected_part(self) -> UndirectedGraph:
        return UndirectedGraph(self.n, self.undirected)

    @property
    def is_fully_directed(self) -> bool:
        return not self.undirected

    def __eq__(self, other):
        if isinstance(other, PartiallyDirectedGraph):
            return (
                self.n == other.n
                and self.undirected == other.undirected
                and self.directed == other.directed
            )
        return NotImplemented

    def __hash__(self):
        return hash((self.n, self.undirected, self.directed))

    def __repr__(self):
        return (
            f"PartiallyDirectedGraph(n={self.n}, undirected={len(self.undirected)},"
            f" directed={len(self.directed)})"
        )


@dataclass(frozen=True)
class MecInstance:
    graph: PartiallyDirectedGraph
    knowledge: BackgroundKnowledge


class InvalidInstanceError(ValueError):
    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations) or "invalid instance")


def chordal_components(graph: PartiallyDirectedGraph) -> list[UndirectedGraph]:
    """Connected components of the undirected part, singletons included.

    Components keep their original vertex labels and together partition the
    vertex set.
    """
    und = graph.undirected_part()
    return [und.induced(c) for c in connected_components(und)]


def validate(instance: MecInstance) -> list[str]:
    """All violations of instance well-formedness, as printable messages.

    Checks: every knowledge pair is an edge of the skeleton; every
    undirected component is chordal; no directed edge joins two vertices of
    one undirected component; the directed edges between components are
    acyclic.  An empty list means the instance is acceptable.
    """
    g = instance.graph
    msgs = []
    skeleton = g.skeleton_pairs
    for u, v in sorted(instance.knowledge):
        if not (0 <= u < g.n and 0 <= v < g.n):
            msgs.append(f"knowledge claim {u}->{v} references an unknown vertex")
        elif (min(u, v), max(u, v)) not in skeleton:
            msgs.append(f"knowledge claim {u}->{v} is not an edge of the graph")

    comps = chordal_components(g)
    comp_of = {}
    for ci, comp in enumerate(comps):
        for v in comp.vertices:
            comp_of[v] = ci
        if comp.n > 1 and not is_chordal(comp):
            msgs.append(
                f"undirected component containing vertex {comp.vertices[0]}"
                " is not chordal"
            )

    quotient_edges = set()
    for u, v in sorted(g.directed):
        if comp_of[u] == comp_of[v]:
            msgs.append(
                f"directed edge {u}->{v} joins two vertices of one undirected"
                " component (semi-directed cycle)"
            )
        else:
            quotient_edges.add((comp_of[u], comp_of[v]))

    # Kahn's algorithm on the component quotient.
    indeg = {i: 0 for i in range(len(comps))}
    succ = {i: [] for i in range(len(comps))}
    for a, b in quotient_edges:
        succ[a].append(b)
        indeg[b] += 1
    ready = [i for i, d in indeg.items() if d == 0]
    seen = 0
    while ready:
        a = ready.pop()
        seen += 1
        for b in succ[a]:
            indeg[b] -= 1
            if indeg[b] == 0:
                ready.append(b)
    if seen != len(comps):
        msgs.append("directed edges form a cycle across undirected components")
    return msgs


def max_clique_knowledge(instance: MecInstance) -> int:
    """The parameter the running time is exponential in.

    For each maximal clique C of a chordal component, count the vertices of
    C incident to a knowledge claim with both endpoints inside C; return the
    maximum over all cliques.  Knowledge-free instances give 0.
    """
    pairs = instance.knowledge.pairs
    if not pairs:
        return 0
    best = 0
    for comp in chordal_components(instance.graph):
        if comp.n < 2:
            continue
        for clique in maximal_cliques(comp):
            cs = frozenset(clique)
            covered = set()
            for u, v in pairs:
                if u in cs and v in cs:
                    covered.add(u)
                    covered.add(v)
            if len(covered) > best:
                best = len(covered)
    return best


def count_amo(instance: MecInstance, *, psi_cap=None) -> int:
    """Exact number of DAGs in the class consistent with the knowledge."""
    from .counting import count_session

    return count_session(instance, psi_cap=psi_cap).count
