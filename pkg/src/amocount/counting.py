"""The exact counting engine.

Work happens per chordal component: a rooted clique tree is fixed, every
maximal clique C is tested with a knowledge-aware LBFS sweep, and each
consistent clique contributes the number of admissible permutations of C
(those avoiding a chain of forbidden prefixes read off the clique tree)
times the product of recursive counts on the subproblems the sweep leaves
behind.  Results are memoized by vertex set, permutation counts by endpoint
set.  All arithmetic is exact.
"""

from __future__ import annotations

import sys
from collections import deque
from dataclasses import dataclass

from .graphs import (
    UndirectedGraph,
    _is_maximal_clique,
    _lbfs,
    clique_tree,
    maximal_cliques,
)
from .mec import (
    BackgroundKnowledge,
    InvalidInstanceError,
    MecInstance,
    chordal_components,
    validate,
)

DEFAULT_PERMUTATION_CAP = 20


class PermutationCapError(RuntimeError):
    """Raised when knowledge touches more vertices of one clique than the cap."""

    def __init__(self, size: int, cap: int):
        super().__init__(
            f"knowledge touches {size} vertices inside one clique; permutation"
            f" counting is capped at {cap} (raise the cap to proceed)"
        )
        self.size = size
        self.cap = cap


class MemoTable(dict):
    """Counts keyed by induced-subgraph vertex set; writes never change."""

    def __setitem__(self, key, value):
        if key in self and super().__getitem__(key) != value:
            raise RuntimeError(f"memo value for {sorted(key)} would change")
        super().__setitem__(key, value)


class FactorialTable:
    """Factorials 0!..n!, grown on demand."""

    def __init__(self):
        self._vals = [1]

    def __getitem__(self, i: int) -> int:
        if i < 0:
            raise ValueError("factorial of a negative number")
        vals = self._vals
        while len(vals) <= i:
            vals.append(vals[-1] * len(vals))
        return vals[i]

    def __len__(self):
        return len(self._vals)


@dataclass(frozen=True)
class LbfsResult:
    flag: bool
    components: tuple


class PrefixChain:
    """Strictly nested vertex sets R1 < R2 < ... used as forbidden prefixes."""

    __slots__ = ("sets",)

    def __init__(self, sets=()):
        ss = tuple(frozenset(s) for s in sets)
        if ss and not ss[0]:
            raise ValueError("forbidden prefix must not be empty")
        for a, b in zip(ss, ss[1:]):
            if not a < b:
                raise ValueError("prefix chain is not strictly nested")
        self.sets = ss

    def __iter__(self):
        return iter(self.sets)

    def __len__(self):
        return len(self.sets)

    def __bool__(self):
        return bool(self.sets)

    def __getitem__(self, i):
        return self.sets[i]

    def __eq__(self, other):
        if isinstance(other, PrefixChain):
            return self.sets == other.sets
        return NotImplemented

    def __repr__(self):
        return f"PrefixChain({[sorted(s) for s in self.sets]!r})"


def _pairs_of(knowledge) -> frozenset:
    if isinstance(knowledge, BackgroundKnowledge):
        return knowledge.pairs
    if knowledge is None:
        return frozenset()
    return frozenset((int(u), int(v)) for u, v in knowledge)


def _preds_map(pairs) -> dict:
    preds: dict[int, list] = {}
    for u, v in pairs:
        preds.setdefault(v, []).append(u)
    return preds


def _linear_extension_count(members: tuple, pairs) -> int:
    """Permutations of ``members`` placing u before v for every claim u->v.

    Subset dynamic program over prefixes; a vertex may extend a prefix once
    all of its claim sources are inside it.
    """
    m = len(members)
    if m == 0:
        return 1
    idx = {v: i for i, v in enumerate(members)}
    pred = [0] * m
    for u, v in pairs:
        pred[idx[v]] |= 1 << idx[u]
    size = 1 << m
    f = [0] * size
    f[0] = 1
    for mask in range(size):
        fm = f[mask]
        if not fm:
            continue
        for i in range(m):
            b = 1 << i
            if mask & b:
                continue
            if pred[i] & ~mask:
                continue
            f[mask | b] += fm
    return f[size - 1]


def psi(vertex_set, knowledge, *, cap: int = DEFAULT_PERMUTATION_CAP) -> int:
    """Number of permutations of ``vertex_set`` consistent with the claims."""
    vk = frozenset(vertex_set)
    pairs = _pairs_of(knowledge)
    for u, v in pairs:
        if u not in vk or v not in vk:
            raise ValueError(f"claim {u}->{v} has an endpoint outside the vertex set")
    if len(vk) > cap:
        raise PermutationCapError(len(vk), cap)
    return _linear_extension_count(tuple(sorted(vk)), pairs)


class _PermCounter:
    """Shared permutation-counting caches.

    Sound only while the claim set stays fixed: every query concerns the
    restriction of one global claim set to some vertex set, so cache keys
    can be vertex sets alone.
    """

    __slots__ = ("pairs", "cap", "fact", "_phi0", "_psi", "psi_evals", "phi0_evals")

    def __init__(self, pairs: frozenset, cap: int, fact: FactorialTable | None = None):
        self.pairs = pairs
        self.cap = cap
        self.fact = fact if fact is not None else FactorialTable()
        self._phi0 = {}
        self._psi = {}
        self.psi_evals = 0
        self.phi0_evals = 0

    def psi_value(self, vk: frozenset, pairs_x) -> int:
        val = self._psi.get(vk)
        if val is None:
            if len(vk) > self.cap:
                raise PermutationCapError(len(vk), self.cap)
            self.psi_evals += 1
            val = _linear_extension_count(tuple(sorted(vk)), pairs_x)
            self._psi[vk] = val
        return val

    def phi_empty(self, x: frozenset) -> int:
        """Consistent permutations of x, no prefix forbidden."""
        val = self._phi0.get(x)
        if val is None:
            self.phi0_evals += 1
            pairs_x = [(u, v) for (u, v) in self.pairs if u in x and v in x]
            vk = set()
            for u, v in pairs_x:
                vk.add(u)
                vk.add(v)
            vk = frozenset(vk)
            val = self.fact[len(x)] // self.fact[len(vk)] * self.psi_value(vk, pairs_x)
            self._phi0[x] = val
        return val


def _phi_with_ctx(ctx: _PermCounter, host: frozenset, chain_sets: tuple, pairs_host) -> int:
    """Consistent permutations of ``host`` avoiding every chain prefix.

    Iterative version of the standard three-case recursion: with an empty
    chain the count factors into a quotient of factorials times a
    consistency count on the claim endpoints; when some claim points from
    outside the largest prefix into it, that prefix can never be completed
    first and drops out; otherwise permutations that do start with the
    largest prefix are subtracted, and those factor into two independent
    subcounts.
    """
    l = len(chain_sets)
    if l == 0:
        return ctx.phi_empty(host)
    hosts = list(chain_sets) + [host]
    cur = [ctx.phi_empty(h) for h in hosts]
    for d in range(1, l + 1):
        r = chain_sets[d - 1]
        sub = cur[d - 1]  # frozen from here on: prefixes beyond d-1 are not inside r
        for i in range(d, l + 1):
            h = hosts[i]
            blocked = False
            for u, v in pairs_host:
                if v in r and u not in r and u in h:
                    blocked = True
                    break
            if not blocked:
                cur[i] = cur[i] - sub * ctx.phi_empty(h - r)
    return cur[l]


def phi(vertex_set, chain, knowledge, *, psi_cap: int = DEFAULT_PERMUTATION_CAP) -> int:
    """Consistent permutations of ``vertex_set`` with no forbidden prefix."""
    s = frozenset(vertex_set)
    ch = chain if isinstance(chain, PrefixChain) else PrefixChain(chain)
    if ch and not ch[-1] < s:
        raise ValueError("chain is not strictly nested inside the host set")
    pairs = _pairs_of(knowledge)
    for u, v in pairs:
        if u not in s or v not in s:
            raise ValueError(f"claim {u}->{v} has an endpoint outside the host set")
    ctx = _PermCounter(pairs, psi_cap)
    return _phi_with_ctx(ctx, s, ch.sets, pairs)


def lbfs_background(g: UndirectedGraph, clique, knowledge) -> LbfsResult:
    """Knowledge-aware LBFS seeded with a maximal clique.

    Returns the consistency flag (False when orienting the graph away from
    ``clique`` would reverse some claim) and the subproblem components left
    behind by the sweep.
    """
    c = frozenset(clique)
    if not _is_maximal_clique(g, c):
        raise ValueError(f"{sorted(c)} is not a maximal clique of the graph")
    pairs = _pairs_of(knowledge)
    for u, v in pairs:
        if u not in g.vertex_set or v not in g.vertex_set or not g.has_edge(u, v):
            raise ValueError(f"claim {u}->{v} is not an edge of the graph")
    flag, comps, _ = _lbfs(g._adj, g.vertices, c, _preds_map(pairs), True)
    return LbfsResult(bool(flag), tuple(comps))


def forbidden_prefixes(tree, clique) -> PrefixChain:
    """Separators along the root path that sit inside ``clique``.

    The distinct qualifying separators always form one strictly nested
    chain; anything else signals a broken clique tree.
    """
    i = tree.node_index(clique)
    cset = frozenset(tree.nodes[i])
    path = tree.path_from_root(i)
    found = set()
    for a, b in zip(path, path[1:]):
        sep = frozenset(tree.nodes[a]) & frozenset(tree.nodes[b])
        if sep <= cset:
            found.add(sep)
    ordered = sorted(found, key=len)
    for x, y in zip(ordered, ordered[1:]):
        if not x < y:
            raise RuntimeError(
                "forbidden prefixes are not nested; the clique tree violates"
                " the intersection property"
            )
    if ordered and not ordered[-1] < cset:
        raise RuntimeError("forbidden prefix equals its clique")
    return PrefixChain(ordered)


@dataclass(frozen=True)
class ComponentStats:
    vertices: int
    maximal_cliques: int
    distinct_subproblems: int


@dataclass(frozen=True)
class SessionStats:
    components: tuple
    lbfs_calls: int
    phi_chain_evaluations: int
    phi_empty_evaluations: int
    psi_evaluations: int
    memo_hits: int

    @property
    def distinct_subproblems(self) -> int:
        return sum(c.distinct_subproblems for c in self.components)

    def within_recursion_bound(self) -> bool:
        """Distinct subproblems never exceed 2*cliques - 1, per component."""
        return all(
            c.distinct_subproblems <= 2 * c.maximal_cliques - 1
            for c in self.components
        )


@dataclass(frozen=True)
class SessionResult:
    count: int
    stats: SessionStats


class CountingSession:
    """One counting run over a fixed host skeleton and claim set.

    Holds the memo table over induced-subgraph vertex sets and the shared
    permutation caches; reusing a session (or its memo) with a different
    host graph or claim set is unsound.
    """

    def __init__(self, knowledge, *, psi_cap: int | None = None, memo: MemoTable | None = None):
        pairs = _pairs_of(knowledge)
        cap = DEFAULT_PERMUTATION_CAP if psi_cap is None else psi_cap
        self.pairs = pairs
        self.ctx = _PermCounter(pairs, cap)
        self.memo = MemoTable() if memo is None else memo
        self.lbfs_calls = 0
        self.phi_chain_evals = 0
        self.memo_hits = 0

    def count_uccg(self, g: UndirectedGraph, *, root=None) -> int:
        sys.setrecursionlimit(max(sys.getrecursionlimit(), 3000 + 3 * g.n))
        return self._count(g, root)

    def _count(self, g: UndirectedGraph, root=None) -> int:
        key = g.vertex_set
        if key in self.memo:
            self.memo_hits += 1
            return self.memo[key]
        tree = clique_tree(g, root_clique=root)
        if len(tree.nodes) == 1:
            val = self.ctx.phi_empty(key)
            self.memo[key] = val
            return val
        pairs_g = [(u, v) for (u, v) in self.pairs if u in key and v in key]
        preds = _preds_map(pairs_g)
        total = 0
        queue = deque([tree.root])
        while queue:
            ci = queue.popleft()
            queue.extend(tree.children(ci))
            cset = frozenset(tree.nodes[ci])
            self.lbfs_calls += 1
            flag, comps, _ = _lbfs(g._adj, g.vertices, cset, preds, True)
            if not flag:
                continue
            prod = 1
            for h in comps:
                prod *= self._count(g.induced(h))
            chain = forbidden_prefixes(tree, tree.nodes[ci])
            pairs_c = [(u, v) for (u, v) in pairs_g if u in cset and v in cset]
            self.phi_chain_evals += 1
            total += prod * _phi_with_ctx(self.ctx, cset, chain.sets, pairs_c)
        self.memo[key] = total
        return total

    def stats(self, components) -> SessionStats:
        return SessionStats(
            components=tuple(components),
            lbfs_calls=self.lbfs_calls,
            phi_chain_evaluations=self.phi_chain_evals,
            phi_empty_evaluations=self.ctx.phi0_evals,
            psi_evaluations=self.ctx.psi_evals,
            memo_hits=self.memo_hits,
        )


def count_uccg(
    g: UndirectedGraph,
    knowledge,
    memo: MemoTable | None = None,
    *,
    psi_cap: int | None = None,
    root=None,
) -> int:
    """Count the acyclic moral orientations of a connected chordal graph.

    ``root`` forces the root of the top-level clique tree; the result does
    not depend on it.  A passed-in memo is only sound across calls sharing
    one host graph and claim set.
    """
    pairs = _pairs_of(knowledge)
    for u, v in pairs:
        if u not in g.vertex_set or v not in g.vertex_set or not g.has_edge(u, v):
            raise ValueError(f"claim {u}->{v} is not an edge of the graph")
    session = CountingSession(pairs, psi_cap=psi_cap, memo=memo)
    return session.count_uccg(g, root=root)


def count_session(instance: MecInstance, *, psi_cap: int | None = None) -> SessionResult:
    """Validate, then count an instance with one shared memo and caches.

    Raises InvalidInstanceError when validation fails.  Returns the exact
    count together with per-component and whole-session statistics.
    """
    violations = validate(instance)
    if violations:
        raise InvalidInstanceError(violations)
    graph = instance.graph
    session = CountingSession(instance.knowledge, psi_cap=psi_cap)
    comp_stats = []
    if any((v, u) in graph.directed for (u, v) in instance.knowledge):
        count = 0  # a claim reverses one of the graph's own directed edges
    else:
        sys.setrecursionlimit(max(sys.getrecursionlimit(), 3000 + 3 * graph.n))
        count = 1
        for comp in chordal_components(graph):
            before = len(session.memo)
            count *= session._count(comp)
            comp_stats.append(
                ComponentStats(
                    vertices=comp.n,
                    maximal_cliques=len(maximal_cliques(comp)),
                    distinct_subproblems=len(session.memo) - before,
                )
            )
    return SessionResult(count=count, stats=session.stats(comp_stats))
