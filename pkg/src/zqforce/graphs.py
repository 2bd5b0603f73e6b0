"""Bitmask graph core: construction, graph6 I/O, components, and the colour change rule.

Vertex sets throughout this package are plain Python ints used as bitmasks
over vertices ``0..n-1`` (bit ``v`` set means vertex ``v`` is in the set).
Graphs are capped at 64 vertices so every vertex set fits one machine word
and doubles as a hashable cache key.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator

MAX_VERTICES = 64


def bit(v: int) -> int:
    return 1 << v


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def bits(mask: int) -> Iterator[int]:
    """Iterate set bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def vertices_of(mask: int) -> list[int]:
    return list(bits(mask))


@dataclass(frozen=True)
class Graph:
    """Immutable simple undirected graph on ``n <= 64`` vertices.

    ``adj[i]`` is the neighbour bitmask of vertex ``i``; adjacency is
    symmetric and loop-free by construction.
    """

    n: int
    adj: tuple[int, ...]

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def min_degree(self) -> int:
        return min(self.adj[v].bit_count() for v in range(self.n))

    def has_edge(self, i: int, j: int) -> bool:
        return bool(self.adj[i] >> j & 1)

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.n) for j in bits(self.adj[i]) if i < j]

    def num_edges(self) -> int:
        return sum(a.bit_count() for a in self.adj) // 2


def build_graph(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Build a graph from an edge list.

    Raises ValueError for n outside 1..64, endpoints out of range, or loops.
    """
    if not 1 <= n <= MAX_VERTICES:
        raise ValueError(f"vertex count must be in 1..{MAX_VERTICES}, got {n}")
    adj = [0] * n
    for i, j in edges:
        if not (0 <= i < n and 0 <= j < n):
            raise ValueError(f"edge ({i},{j}) out of range for n={n}")
        if i == j:
            raise ValueError(f"self-loop at vertex {i}")
        adj[i] |= 1 << j
        adj[j] |= 1 << i
    return Graph(n, tuple(adj))


def complement(g: Graph) -> Graph:
    full = g.full_mask
    return Graph(g.n, tuple((full & ~a & ~bit(v)) for v, a in enumerate(g.adj)))


# ---------------------------------------------------------------------------
# graph6 text format (short form for n <= 62, '~'-prefixed form up to 64)
# ---------------------------------------------------------------------------


def parse_graph6(text: str) -> Graph:
    """Parse one graph6 string (n <= 64)."""
    s = text.strip()
    if not s:
        raise ValueError("empty graph6 string")
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    data = [ord(c) - 63 for c in s]
    if any(not 0 <= d <= 63 for d in data):
        raise ValueError("graph6 byte out of range 63..126")
    if data[0] == 63:  # '~' long-form header
        if len(data) < 4 or data[1] == 63:
            raise ValueError("unsupported graph6 header (n > 258047 or truncated)")
        n = (data[1] << 12) | (data[2] << 6) | data[3]
        body = data[4:]
    else:
        n = data[0]
        body = data[1:]
    if not 1 <= n <= MAX_VERTICES:
        raise ValueError(f"graph6 order {n} outside supported range 1..{MAX_VERTICES}")
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    if len(body) != need:
        raise ValueError(f"graph6 body has {len(body)} sextets, expected {need}")
    stream = 0
    for d in body:
        stream = (stream << 6) | d
    pad = 6 * need - nbits
    if stream & ((1 << pad) - 1):
        raise ValueError("graph6 padding bits are not zero")
    stream >>= pad
    adj = [0] * n
    k = nbits
    for j in range(1, n):
        for i in range(j):
            k -= 1
            if stream >> k & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    return Graph(n, tuple(adj))


def to_graph6(g: Graph) -> str:
    """Encode a graph in graph6 (short header for n <= 62)."""
    n = g.n
    stream = 0
    nbits = 0
    for j in range(1, n):
        for i in range(j):
            stream = (stream << 1) | (g.adj[i] >> j & 1)
            nbits += 1
    need = (nbits + 5) // 6
    stream <<= 6 * need - nbits
    body = [(stream >> 6 * (need - 1 - t)) & 63 for t in range(need)]
    if n <= 62:
        head = [n]
    else:
        head = [63, n >> 12, (n >> 6) & 63, n & 63]
    return "".join(chr(63 + d) for d in head + body)


def parse_edge_list(text: str) -> Graph:
    """Parse the plain text edge-list format ``n m`` then ``m`` lines ``u v``."""
    tokens = text.split()
    if len(tokens) < 2:
        raise ValueError("edge list needs a 'n m' header")
    n, m = int(tokens[0]), int(tokens[1])
    if len(tokens) != 2 + 2 * m:
        raise ValueError(f"expected {m} edges, found {(len(tokens) - 2) // 2}")
    pairs = [(int(tokens[2 + 2 * k]), int(tokens[3 + 2 * k])) for k in range(m)]
    return build_graph(n, pairs)


# ---------------------------------------------------------------------------
# Subgraphs and components
# ---------------------------------------------------------------------------


def induced_subgraph(g: Graph, s: int) -> tuple[Graph, dict[int, int]]:
    """Induced subgraph on vertex mask ``s`` plus the old->new vertex map."""
    if not s:
        raise ValueError("empty vertex set")
    old = vertices_of(s & g.full_mask)
    remap = {v: i for i, v in enumerate(old)}
    adj = [0] * len(old)
    for v in old:
        for w in bits(g.adj[v] & s):
            adj[remap[v]] |= 1 << remap[w]
    return Graph(len(old), tuple(adj)), remap


def components_within(g: Graph, mask: int) -> list[int]:
    """Connected components of ``G[mask]`` as bitmasks, ordered by minimum vertex."""
    comps = []
    rem = mask & g.full_mask
    adj = g.adj
    while rem:
        comp = rem & -rem
        frontier = comp
        while frontier:
            nxt = 0
            m = frontier
            while m:
                low = m & -m
                nxt |= adj[low.bit_length() - 1]
                m ^= low
            frontier = nxt & rem & ~comp
            comp |= frontier
        comps.append(comp)
        rem &= ~comp
    return comps


def uncoloured_components(g: Graph, b: int) -> list[int]:
    """Components of the uncoloured subgraph ``G[V \\ b]``, ordered by minimum vertex."""
    return components_within(g, g.full_mask & ~b)


def is_connected(g: Graph) -> bool:
    return len(components_within(g, g.full_mask)) <= 1


# ---------------------------------------------------------------------------
# Colour change rule
# ---------------------------------------------------------------------------


def ccr_closure(g: Graph, b: int) -> int:
    """Least fixpoint of the colour change rule starting from coloured set ``b``.

    A coloured vertex with exactly one uncoloured neighbour colours that
    neighbour. Idempotent and monotone in ``b``.
    """
    adj = g.adj
    w = g.full_mask & ~b
    changed = True
    while changed and w:
        changed = False
        m = b
        while m:
            low = m & -m
            m ^= low
            x = adj[low.bit_length() - 1] & w
            if x and not x & (x - 1):
                b |= x
                w ^= x
                changed = True
    return b


def single_forces(g: Graph, b: int) -> list[tuple[int, int]]:
    """All (forcer, forced) pairs available in one colour-change step from ``b``."""
    w = g.full_mask & ~b
    out = []
    for u in bits(b):
        x = g.adj[u] & w
        if x and not x & (x - 1):
            out.append((u, x.bit_length() - 1))
    return out


@dataclass(frozen=True)
class ColouredState:
    """A graph with a coloured vertex set; ``closed`` means CCR-saturated."""

    graph: Graph
    coloured: int
    closed: bool = False

    @staticmethod
    def close(graph: Graph, coloured: int) -> "ColouredState":
        return ColouredState(graph, ccr_closure(graph, coloured), True)


# ---------------------------------------------------------------------------
# Vertex connectivity
# ---------------------------------------------------------------------------


def vertex_connectivity(g: Graph) -> int:
    """Exact vertex connectivity (n-1 for complete graphs, 0 if disconnected).

    Menger: the minimum over non-adjacent pairs (s,t) of the maximum number
    of internally vertex-disjoint s-t paths, via unit-capacity node splitting.
    """
    n = g.n
    if not is_connected(g):
        return 0
    if all(g.adj[v].bit_count() == n - 1 for v in range(n)):
        return n - 1
    best = n - 1
    for s in range(n):
        for t in range(s + 1, n):
            if not g.has_edge(s, t):
                best = min(best, _vertex_flow(g, s, t))
    return best


def _vertex_flow(g: Graph, s: int, t: int) -> int:
    # Node splitting: v -> (v_in = 2v, v_out = 2v+1); v_in->v_out capacity 1
    # (infinite for s and t), edges u_out->v_in capacity 1 both ways.
    n = g.n
    size = 2 * n
    cap = [[0] * size for _ in range(size)]
    for v in range(n):
        cap[2 * v][2 * v + 1] = n if v in (s, t) else 1
        for w in bits(g.adj[v]):
            cap[2 * v + 1][2 * w] = n
    src, snk = 2 * s + 1, 2 * t
    flow = 0
    while True:
        parent = [-1] * size
        parent[src] = src
        queue = [src]
        while queue and parent[snk] == -1:
            u = queue.pop(0)
            for v in range(size):
                if parent[v] == -1 and cap[u][v] > 0:
                    parent[v] = u
                    queue.append(v)
        if parent[snk] == -1:
            return flow
        v = snk
        while v != src:
            u = parent[v]
            cap[u][v] -= 1
            cap[v][u] += 1
            v = u
        flow += 1


def vertex_connectivity_bruteforce(g: Graph) -> int:
    """Exhaustive-cut vertex connectivity; independent oracle for small graphs."""
    n = g.n
    if not is_connected(g):
        return 0
    for k in range(n - 1):
        for cut in combinations(range(n), k):
            rest = g.full_mask & ~mask_of(cut)
            if rest and len(components_within(g, rest)) > 1:
                return k
    return n - 1
