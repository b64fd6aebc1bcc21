"""Undirected graph primitives: components, LBFS, chordality, clique trees."""

import itertools
import random

import pytest

from amocount.graphs import (
    RootedCliqueTree,
    UndirectedGraph,
    clique_tree,
    connected_components,
    is_chordal,
    lbfs_order,
    maximal_cliques,
)
from conftest import random_uccg

# the two running examples: a triangle with a pendant edge, and a
# seven-vertex graph whose maximal cliques overlap in pairs
PAW = UndirectedGraph(4, [(0, 1), (0, 2), (1, 2), (2, 3)])
THREE_CLIQUES = UndirectedGraph(
    7,
    [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3),
     (2, 4), (2, 5), (3, 4), (3, 5), (4, 5), (4, 6), (5, 6)],
)


def complete(n):
    return UndirectedGraph(n, itertools.combinations(range(n), 2))


def cycle(n):
    return UndirectedGraph(n, [(i, (i + 1) % n) for i in range(n)])


def brute_chordal(g):
    """No induced cycle of length >= 4: a connected 2-regular induced subgraph."""
    vs = sorted(g.vertices)
    for size in range(4, len(vs) + 1):
        for sub in itertools.combinations(vs, size):
            inside = set(sub)
            adj = {v: [u for u in g.neighbors(v) if u in inside] for v in sub}
            if any(len(adj[v]) != 2 for v in sub):
                continue
            seen = {sub[0]}
            stack = [sub[0]]
            while stack:
                for u in adj[stack.pop()]:
                    if u not in seen:
                        seen.add(u)
                        stack.append(u)
            if len(seen) == size:
                return False
    return True


def brute_maximal_cliques(g):
    vs = sorted(g.vertices)
    cliques = []
    for size in range(1, len(vs) + 1):
        for sub in itertools.combinations(vs, size):
            if all(g.has_edge(u, v) for u, v in itertools.combinations(sub, 2)):
                cliques.append(set(sub))
    return sorted(
        tuple(sorted(c)) for c in cliques
        if not any(c < other for other in cliques)
    )


class TestUndirectedGraph:
    def test_dense_constructor(self):
        g = UndirectedGraph(3, [(0, 1), (2, 1)])
        assert g.n == 3
        assert g.edges() == [(0, 1), (1, 2)]
        assert g.neighbors(1) == frozenset({0, 2})
        assert g.has_edge(1, 0) and not g.has_edge(0, 2)

    def test_rejects_bad_edges(self):
        with pytest.raises(ValueError):
            UndirectedGraph(2, [(0, 0)])
        with pytest.raises(ValueError):
            UndirectedGraph(2, [(0, 5)])

    def test_from_vertices_keeps_labels(self):
        g = UndirectedGraph.from_vertices([4, 7, 9], [(4, 9)])
        assert g.vertex_set == frozenset({4, 7, 9})
        assert g.has_edge(9, 4)
        assert g.degree(7) == 0

    def test_induced_preserves_labels(self):
        sub = THREE_CLIQUES.induced({2, 3, 4, 6})
        assert sub.vertex_set == frozenset({2, 3, 4, 6})
        assert sub.edges() == [(2, 3), (2, 4), (3, 4), (4, 6)]

    def test_equality_and_hash(self):
        a = UndirectedGraph(3, [(0, 1)])
        b = UndirectedGraph.from_vertices([0, 1, 2], [(1, 0)])
        assert a == b and hash(a) == hash(b)
        assert a != UndirectedGraph(3, [(0, 2)])


class TestComponents:
    def test_partition_and_order(self):
        g = UndirectedGraph(6, [(0, 3), (1, 4)])
        comps = connected_components(g)
        assert comps == [frozenset({0, 3}), frozenset({1, 4}), frozenset({2}), frozenset({5})]

    @pytest.mark.parametrize("seed", range(30))
    def test_matches_reachability(self, seed):
        rng = random.Random(seed)
        n = rng.randint(1, 9)
        edges = [e for e in itertools.combinations(range(n), 2) if rng.random() < 0.25]
        g = UndirectedGraph(n, edges)
        # transitive closure as an independent reachability check
        reach = {v: {v} for v in range(n)}
        for u, v in edges:
            reach[u].add(v)
            reach[v].add(u)
        changed = True
        while changed:
            changed = False
            for v in range(n):
                grown = set(reach[v])
                for u in reach[v]:
                    grown |= reach[u]
                if grown != reach[v]:
                    reach[v] = grown
                    changed = True
        expect = sorted({frozenset(reach[v]) for v in range(n)}, key=min)
        assert connected_components(g) == expect


class TestLbfs:
    @pytest.mark.parametrize("seed", range(25))
    def test_reverse_is_perfect_elimination(self, seed):
        g = random_uccg(seed, 3, 9)
        order = lbfs_order(g)
        assert sorted(order) == sorted(g.vertices)
        pos = {v: i for i, v in enumerate(order)}
        for v in order:
            earlier = [u for u in g.neighbors(v) if pos[u] < pos[v]]
            for a, b in itertools.combinations(earlier, 2):
                assert g.has_edge(a, b), (v, a, b)

    def test_tie_break_is_lowest_id(self):
        g = UndirectedGraph(4, [(0, 1), (0, 2), (0, 3)])
        assert lbfs_order(g)[0] == 0


class TestChordality:
    @pytest.mark.parametrize("n", [4, 5, 6, 7])
    def test_cycles_are_not_chordal(self, n):
        assert not is_chordal(cycle(n))

    @pytest.mark.parametrize("n", [1, 2, 3, 5, 8])
    def test_complete_graphs_are_chordal(self, n):
        assert is_chordal(complete(n))

    def test_examples(self):
        assert is_chordal(PAW)
        assert is_chordal(THREE_CLIQUES)

    @pytest.mark.parametrize("seed", range(60))
    def test_matches_chordless_cycle_search(self, seed):
        rng = random.Random(900 + seed)
        n = rng.randint(1, 7)
        edges = [e for e in itertools.combinations(range(n), 2) if rng.random() < 0.45]
        g = UndirectedGraph(n, edges)
        assert is_chordal(g) == brute_chordal(g), (n, edges)


class TestMaximalCliques:
    def test_examples(self):
        assert maximal_cliques(PAW) == [(0, 1, 2), (2, 3)]
        assert maximal_cliques(THREE_CLIQUES) == [(0, 1, 2, 3), (2, 3, 4, 5), (4, 5, 6)]

    def test_rejects_non_chordal(self):
        with pytest.raises(ValueError):
            maximal_cliques(cycle(4))

    @pytest.mark.parametrize("seed", range(40))
    def test_matches_brute_force(self, seed):
        g = random_uccg(seed, 2, 8)
        assert maximal_cliques(g) == brute_maximal_cliques(g)


class TestCliqueTree:
    def test_example_tree(self):
        t = clique_tree(THREE_CLIQUES)
        assert t.nodes == ((0, 1, 2, 3), (2, 3, 4, 5), (4, 5, 6))
        assert t.parent == (None, 0, 1)
        assert t.root == 0
        assert t.children(0) == (1,)
        assert t.path_from_root(2) == [0, 1, 2]

    def test_root_override(self):
        t = clique_tree(THREE_CLIQUES, root_clique=(4, 5, 6))
        assert t.nodes[t.root] == (4, 5, 6)
        assert t.parent[t.root] is None

    def test_single_clique(self):
        t = clique_tree(complete(4))
        assert t.nodes == ((0, 1, 2, 3),)
        assert t.parent == (None,)

    def test_requires_connected(self):
        with pytest.raises(ValueError):
            clique_tree(UndirectedGraph(4, [(0, 1), (2, 3)]))

    def test_node_index_rejects_unknown(self):
        t = clique_tree(PAW)
        with pytest.raises(ValueError):
            t.node_index((0, 3))

    @pytest.mark.parametrize("seed", range(40))
    def test_induced_subtree_property(self, seed):
        """Nodes containing any fixed vertex form a connected subtree."""
        g = random_uccg(seed, 3, 10)
        t = clique_tree(g)
        assert len(t.nodes) == len(maximal_cliques(g))
        for v in g.vertices:
            holding = {i for i, c in enumerate(t.nodes) if v in c}
            # walk up from each holder; the meeting point must hold v too
            for i in holding:
                j = t.parent[i]
                while j is not None and v in t.nodes[j]:
                    j = t.parent[j]
                # every holder chain must exit through holding nodes only
                up = i
                seen = []
                while up is not None and v in t.nodes[up]:
                    seen.append(up)
                    up = t.parent[up]
                assert set(seen) <= holding
            roots = [i for i in holding if t.parent[i] not in holding]
            assert len(roots) == 1, (v, holding)

    @pytest.mark.parametrize("seed", range(20))
    def test_every_root_gives_valid_tree(self, seed):
        g = random_uccg(seed, 3, 7)
        base = clique_tree(g)
        for c in base.nodes:
            t = clique_tree(g, root_clique=c)
            assert isinstance(t, RootedCliqueTree)
            assert sorted(t.nodes) == sorted(base.nodes)
            assert t.nodes[t.root] == c
