"""Seeded instance generation: chordal draws, knowledge top-up, growth."""

import random

import pytest

from amocount.counting import psi
from amocount.generators import (
    GenConfig,
    GenerationError,
    gen_background,
    grow_background,
    random_chordal,
    random_chordal_with_stats,
)
from amocount.graphs import connected_components, is_chordal, maximal_cliques
from amocount.mec import BackgroundKnowledge, MecInstance, max_clique_knowledge
from conftest import uccg_instance


def covered_in(clique, knowledge):
    inside = knowledge.restrict(set(clique))
    return inside.endpoints()


class TestGenConfig:
    def test_defaults(self):
        cfg = GenConfig(n=10)
        assert cfg.p_range == (0.1, 0.3)
        assert cfg.k_target is None

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"n": 0},
            {"n": 5, "p_range": (0.0, 0.3)},
            {"n": 5, "p_range": (0.4, 0.2)},
            {"n": 5, "p_range": (0.1, 1.0)},
            {"n": 5, "k_target": 1},
        ],
    )
    def test_rejects_bad_values(self, kwargs):
        with pytest.raises(ValueError):
            GenConfig(**kwargs)


class TestRandomChordal:
    def test_deterministic(self):
        a = random_chordal(GenConfig(n=30, seed=5))
        b = random_chordal(GenConfig(n=30, seed=5))
        assert a == b
        assert a != random_chordal(GenConfig(n=30, seed=6))

    def test_reports_draw_stats(self):
        g, info = random_chordal_with_stats(GenConfig(n=25, seed=3))
        assert g.n == 25
        assert 0.1 <= info["p"] < 0.3
        assert info["attempts"] >= 1

    def test_single_vertex(self):
        g = random_chordal(GenConfig(n=1, seed=0))
        assert g.n == 1 and g.num_edges == 0

    def test_thousand_draws_are_chordal_and_connected(self):
        sizes = list(range(10, 201, 10))
        for seed in range(1000):
            n = sizes[seed % len(sizes)]
            g = random_chordal(GenConfig(n=n, seed=seed))
            assert g.n == n
            assert is_chordal(g), (n, seed)
            assert len(connected_components(g)) == 1, (n, seed)


class TestGenBackground:
    @pytest.mark.parametrize("seed", range(25))
    def test_exact_coverage_per_clique(self, seed):
        rng = random.Random(90_000 + seed)
        n = rng.choice([12, 16, 20, 26])
        k = rng.choice([2, 3, 4, 5])
        g = random_chordal(GenConfig(n=n, seed=seed))
        kn = gen_background(g, k, seed)
        for c in maximal_cliques(g):
            assert len(covered_in(c, kn)) == min(k, len(c)), (n, k, seed, c)

    @pytest.mark.parametrize("seed", range(25))
    def test_each_clique_remains_satisfiable(self, seed):
        rng = random.Random(91_000 + seed)
        n = rng.choice([12, 18, 24])
        k = rng.choice([3, 4, 5])
        g = random_chordal(GenConfig(n=n, seed=seed))
        kn = gen_background(g, k, seed)
        for c in maximal_cliques(g):
            inside = kn.restrict(set(c))
            assert psi(inside.endpoints(), inside) > 0

    def test_deterministic(self):
        g = random_chordal(GenConfig(n=20, seed=2))
        assert gen_background(g, 4, 7) == gen_background(g, 4, 7)
        assert gen_background(g, 4, 7) != gen_background(g, 4, 8)

    def test_claims_are_graph_edges(self):
        g = random_chordal(GenConfig(n=18, seed=4))
        kn = gen_background(g, 3, 1)
        for u, v in kn:
            assert g.has_edge(u, v)

    def test_small_cliques_are_fully_covered(self):
        # k above every clique size still covers whole cliques, no error
        g = random_chordal(GenConfig(n=8, seed=11))
        top = max(len(c) for c in maximal_cliques(g))
        kn = gen_background(g, top + 3, 0)
        for c in maximal_cliques(g):
            assert len(covered_in(c, kn)) == len(c)

    def test_rejects_bad_k(self):
        g = random_chordal(GenConfig(n=8, seed=0))
        with pytest.raises(ValueError):
            gen_background(g, 1, 0)


class TestGrowBackground:
    def grown_pair(self, n, k, seed):
        g = random_chordal(GenConfig(n=n, seed=seed))
        base = gen_background(g, k, seed + 1)
        bigger, grew = grow_background(g, base, seed + 2)
        return g, base, bigger, grew

    @pytest.mark.parametrize("seed", range(15))
    def test_superset_within_budget(self, seed):
        g, base, bigger, grew = self.grown_pair(60, 4, seed)
        assert set(base) <= set(bigger)
        assert len(bigger) <= 2 * len(base)
        if grew:
            assert len(bigger) > len(base)
        else:
            assert bigger == base

    @pytest.mark.parametrize("seed", range(15))
    def test_parameter_never_moves(self, seed):
        g, base, bigger, _ = self.grown_pair(60, 5, seed)
        i1 = MecInstance(uccg_instance(g).graph, base)
        i2 = MecInstance(uccg_instance(g).graph, bigger)
        assert max_clique_knowledge(i1) == max_clique_knowledge(i2)

    @pytest.mark.parametrize("seed", range(10))
    def test_new_claims_only_touch_covered_vertices(self, seed):
        g, base, bigger, _ = self.grown_pair(50, 4, seed)
        extra = set(bigger) - set(base)
        for c in maximal_cliques(g):
            base_cov = covered_in(c, base)
            cs = set(c)
            for u, v in extra:
                if u in cs and v in cs:
                    assert u in base_cov and v in base_cov, (seed, c, (u, v))

    def test_deterministic(self):
        g = random_chordal(GenConfig(n=40, seed=9))
        base = gen_background(g, 4, 3)
        assert grow_background(g, base, 5) == grow_background(g, base, 5)

    def test_no_candidates_returns_base(self):
        # a triangle with every edge claimed leaves nothing to add
        g = random_chordal(GenConfig(n=3, p_range=(0.9, 0.95), seed=1))
        assert g.num_edges == 3
        base = BackgroundKnowledge([(0, 1), (0, 2), (1, 2)])
        out, grew = grow_background(g, base, 0)
        assert grew is False
        assert out == base

    def test_rejects_cyclic_base(self):
        g = random_chordal(GenConfig(n=3, p_range=(0.9, 0.95), seed=1))
        with pytest.raises(ValueError):
            grow_background(g, BackgroundKnowledge([(0, 1), (1, 2), (2, 0)]), 0)
