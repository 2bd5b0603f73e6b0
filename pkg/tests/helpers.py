"""Shared test utilities: independent reference implementations and generators.

The reference closures here deliberately use plain Python sets and
adjacency lists (no bitmasks) so they share no code with the package.
"""

from __future__ import annotations

from itertools import combinations, permutations
from random import Random

from zqforce.graphs import Graph, build_graph

PETERSEN_EDGES = [
    (0, 1), (1, 2), (2, 3), (3, 4), (4, 0),
    (0, 5), (1, 6), (2, 7), (3, 8), (4, 9),
    (5, 7), (7, 9), (9, 6), (6, 8), (8, 5),
]


def adjacency_sets(g: Graph) -> list[set[int]]:
    return [{w for w in range(g.n) if g.adj[v] >> w & 1} for v in range(g.n)]


def naive_ccr_closure(g: Graph, start: set[int]) -> set[int]:
    adj = adjacency_sets(g)
    coloured = set(start)
    while True:
        forced = set()
        for u in coloured:
            unc = adj[u] - coloured
            if len(unc) == 1:
                forced |= unc
        if not forced:
            return coloured
        coloured |= forced


def naive_components(g: Graph, inside: set[int]) -> list[set[int]]:
    adj = adjacency_sets(g)
    left = set(inside)
    comps = []
    while left:
        seed = min(left)
        comp = {seed}
        stack = [seed]
        while stack:
            v = stack.pop()
            for w in adj[v] & left:
                if w not in comp:
                    comp.add(w)
                    stack.append(w)
        comps.append(comp)
        left -= comp
    return comps


def naive_psd_closure(g: Graph, start: set[int]) -> set[int]:
    coloured = set(start)
    while True:
        forced = set()
        for comp in naive_components(g, set(range(g.n)) - coloured):
            sub = coloured | comp
            for u in coloured:
                unc = {w for w in sub if g.adj[u] >> w & 1} - coloured
                if len(unc) == 1:
                    forced |= unc
        if not forced:
            return coloured
        coloured |= forced


def naive_induced_ccr(g: Graph, coloured: set[int], inside: set[int]) -> set[int]:
    """Step-by-step force simulation restricted to the induced vertex set."""
    coloured = set(coloured)
    while True:
        move = None
        for u in sorted(coloured & inside):
            unc = {w for w in inside if g.adj[u] >> w & 1} - coloured
            if len(unc) == 1:
                move = unc.pop()
                break
        if move is None:
            return coloured
        coloured.add(move)


def random_graph(rng: Random, n: int, p: float = 0.4) -> Graph:
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return build_graph(n, edges)


def random_connected_graph(rng: Random, n: int, extra: float = 0.25) -> Graph:
    # random spanning tree (random attachment) plus extra edges
    edges = {(min(v, u), max(v, u)) for v in range(1, n) for u in [rng.randrange(v)]}
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < extra:
                edges.add((i, j))
    return build_graph(n, sorted(edges))


def random_tree(rng: Random, n: int) -> Graph:
    return build_graph(n, [(v, rng.randrange(v)) for v in range(1, n)])


def reference_graph6_encode(g: Graph) -> str:
    """Independent graph6 encoder built on plain bit strings."""
    if g.n > 62:
        raise ValueError("reference encoder covers the short form only")
    bits = ""
    for j in range(1, g.n):
        for i in range(j):
            bits += "1" if g.adj[i] >> j & 1 else "0"
    while len(bits) % 6:
        bits += "0"
    out = chr(g.n + 63)
    for k in range(0, len(bits), 6):
        out += chr(int(bits[k : k + 6], 2) + 63)
    return out


def all_graphs_up_to_iso(n: int) -> list[Graph]:
    """Every unlabelled graph on n vertices, via orbit-deduped edge masks."""
    pairs = list(combinations(range(n), 2))
    index = {p: i for i, p in enumerate(pairs)}
    perms = [
        [index[tuple(sorted((perm[a], perm[b])))] for a, b in pairs]
        for perm in permutations(range(n))
    ]
    seen: set[int] = set()
    reps = []
    for mask in range(1 << len(pairs)):
        if mask in seen:
            continue
        reps.append(mask)
        for pm in perms:
            image = 0
            m = mask
            while m:
                low = m & -m
                m ^= low
                image |= 1 << pm[low.bit_length() - 1]
            seen.add(image)
    out = []
    for mask in reps:
        edges = [pairs[i] for i in range(len(pairs)) if mask >> i & 1]
        out.append(build_graph(n, edges))
    return out


def nonisomorphic_trees(n: int) -> list[Graph]:
    import networkx as nx

    if n == 1:
        return [build_graph(1, [])]
    if n == 2:
        return [build_graph(2, [(0, 1)])]
    out = []
    for t in nx.nonisomorphic_trees(n):
        relabel = {v: i for i, v in enumerate(sorted(t.nodes()))}
        out.append(build_graph(n, [(relabel[a], relabel[b]) for a, b in t.edges()]))
    return out


def mask(vertices) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def vset(m: int) -> set[int]:
    return {i for i in range(m.bit_length()) if m >> i & 1}
