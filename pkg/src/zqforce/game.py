"""Exact game solvers for Z(G), Z_0(G), and the oracle-game value Z_q(G).

The q-game: a player spends tokens to colour vertices (rule 1), applies the
colour change rule on the whole graph for free (rule 2), and may offer q+1
uncoloured components to an adversarial oracle which returns a nonempty
subset; the colour change rule then runs inside the subgraph induced by the
coloured vertices plus the returned components (rule 3). Z_q(G) is the
minimum number of tokens that guarantees colouring everything against every
oracle.

Solver states are normalised to CCR closure, so a single bitmask of coloured
vertices is the memo key. Rule-3 families are enumerated at size exactly
q+1 (a larger family only widens the oracle's options, so it is dominated;
verified empirically in the test suite), and families where some oracle
response forces nothing are pruned as dominated, which also guarantees the
recursion terminates: every expanded move strictly grows the coloured set.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Iterator, Mapping, Sequence

from .graphs import Graph, bits, ccr_closure, uncoloured_components

# A rule-3 move family: component bitmasks, sorted ascending (by min vertex).
MoveFamily = tuple[int, ...]

_INF = float("inf")


class CacheLimitError(RuntimeError):
    """Raised when the solver memo exceeds the configured memory cap."""


class InfeasibleError(RuntimeError):
    """Raised when an exact computation is refused as too large."""


# ---------------------------------------------------------------------------
# Closures
# ---------------------------------------------------------------------------


def psd_closure(g: Graph, b: int) -> int:
    """Positive semidefinite forcing closure.

    Least fixpoint of: for each component W of the uncoloured subgraph, apply
    the colour change rule within G[b + W]. Independent of the game engine;
    used as the q = 0 oracle.
    """
    full = g.full_mask
    adj = g.adj
    changed = True
    while changed and b != full:
        changed = False
        for comp in uncoloured_components(g, b):
            w = comp
            sub_changed = True
            while sub_changed and w:
                sub_changed = False
                m = b
                while m:
                    low = m & -m
                    m ^= low
                    x = adj[low.bit_length() - 1] & w
                    if x and not x & (x - 1):
                        b |= x
                        w ^= x
                        sub_changed = True
                        changed = True
    return b


def rule3_closure(g: Graph, b: int, returned: Sequence[int]) -> int:
    """Colour change closure inside ``G[b + union(returned)]``.

    ``returned`` must be components of the uncoloured subgraph (the oracle's
    response). Forcing counts neighbours within the induced subgraph only;
    callers wanting the full rule-2 saturation afterwards apply
    :func:`ccr_closure` to the result, which is exactly what the game does.
    """
    if not returned:
        raise ValueError("returned component list is empty")
    comps = set(uncoloured_components(g, b))
    union = 0
    for r in returned:
        if r not in comps:
            raise ValueError(f"mask {r:#x} is not an uncoloured component")
        union |= r
    return _induced_ccr(g.adj, b, b | union)


def _induced_ccr(adj: Sequence[int], b: int, imask: int) -> int:
    w = imask & ~b
    changed = True
    while changed and w:
        changed = False
        m = b & imask
        while m:
            low = m & -m
            m ^= low
            x = adj[low.bit_length() - 1] & w
            if x and not x & (x - 1):
                b |= x
                w ^= x
                changed = True
    return b


def admissible_families(g: Graph, b: int, q: int) -> list[MoveFamily]:
    """All rule-3 families of exactly q+1 uncoloured components that are
    guaranteed to force: every nonempty oracle response strictly enlarges the
    coloured set. ``b`` must be CCR-closed. Empty if fewer than q+1
    components exist.
    """
    if ccr_closure(g, b) != b:
        raise ValueError("coloured set is not CCR-closed")
    comps = uncoloured_components(g, b)
    if len(comps) < q + 1:
        return []
    out = []
    for fam in combinations(comps, q + 1):
        if all(
            _induced_ccr(g.adj, b, b | u) != b for u in _nonempty_unions(fam)
        ):
            out.append(fam)
    return out


def _nonempty_unions(fam: Sequence[int]) -> Iterator[int]:
    for r in range(1, 1 << len(fam)):
        u = 0
        for i in bits(r):
            u |= fam[i]
        yield u


# ---------------------------------------------------------------------------
# Strategy objects
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TokenSpend:
    vertex: int


@dataclass(frozen=True)
class OracleMove:
    """A rule-3 move: the offered family and one continuation per response.

    Responses are keyed by the tuple of returned component masks (sorted).
    An oracle move is always the last entry of its strategy list; play
    continues in the matching continuation.
    """

    family: MoveFamily
    responses: Mapping[MoveFamily, tuple]  # response -> Strategy (tuple of moves)


Strategy = tuple  # tuple of TokenSpend / OracleMove


@dataclass(frozen=True)
class CacheStats:
    states: int
    hits: int


@dataclass(frozen=True)
class ZqResult:
    value: int
    strategy: Strategy | None
    cache_stats: CacheStats


# ---------------------------------------------------------------------------
# The minimax solver
# ---------------------------------------------------------------------------


class _Solver:
    def __init__(
        self,
        g: Graph,
        q: int,
        all_family_sizes: bool = False,
        cache_mb: int | None = None,
    ):
        self.g = g
        self.q = q
        self.adj = g.adj
        self.full = g.full_mask
        self.all_family_sizes = all_family_sizes
        self.memo: dict[int, int] = {}
        self.hits = 0
        self.cache_entries = None
        if cache_mb is not None:
            # dict entry of two small ints costs ~100 bytes incl. table slack
            self.cache_entries = max(1, (cache_mb * 1024 * 1024) // 100)

    def close(self, b: int) -> int:
        return ccr_closure(self.g, b)

    def components(self, b: int) -> list[int]:
        return uncoloured_components(self.g, b)

    def value(self, b: int) -> int:
        """Game value of the CCR-closed state ``b``."""
        if b == self.full:
            return 0
        cached = self.memo.get(b)
        if cached is not None:
            self.hits += 1
            return cached
        best = self._best_token_value(b)
        best = self._best_family_value(b, best)[0]
        if self.cache_entries is not None and len(self.memo) >= self.cache_entries:
            raise CacheLimitError(
                f"memo exceeded {len(self.memo)} entries (ZQ_CACHE_MB cap)"
            )
        self.memo[b] = best
        return best

    def _best_token_value(self, b: int) -> int:
        best = _INF
        seen = set()
        for v in bits(self.full & ~b):
            nb = self.close(b | (1 << v))
            if nb in seen:
                continue
            seen.add(nb)
            val = 1 + self.value(nb)
            if val < best:
                best = val
        return best

    def _best_family_value(self, b: int, cutoff) -> tuple[int, MoveFamily | None]:
        """Best adversarial value over admissible families, bounded by cutoff.

        Returns (value, family achieving it or None). Families whose partial
        oracle max already reaches the cutoff are abandoned early; dominated
        (non-forcing) responses disqualify the family outright.
        """
        best = cutoff
        best_fam = None
        comps = self.components(b)
        k = len(comps)
        if k < self.q + 1:
            return best, None
        rcache: dict[int, int | None] = {}

        def response_state(union: int) -> int | None:
            s = rcache.get(union, -1)
            if s != -1:
                return s
            r = _induced_ccr(self.adj, b, b | union)
            s = None if r == b else self.close(r)
            rcache[union] = s
            return s

        sizes = (
            range(self.q + 1, k + 1) if self.all_family_sizes else (self.q + 1,)
        )
        for size in sizes:
            for fam in combinations(comps, size):
                worst = 0
                ok = True
                for union in _nonempty_unions(fam):
                    state = response_state(union)
                    if state is None:
                        ok = False
                        break
                    worst = max(worst, self.value(state))
                    if worst >= best:
                        ok = False
                        break
                if ok and worst < best:
                    best = worst
                    best_fam = fam
        return best, best_fam

    # -- strategy extraction (re-derives optimal moves from memoised values) --

    def strategy(self, b: int, _memo=None) -> Strategy:
        if _memo is None:
            _memo = {}
        if b == self.full:
            return ()
        got = _memo.get(b)
        if got is not None:
            return got
        val = self.value(b)
        # Token spends first (lowest vertex), then lexicographically least family.
        for v in bits(self.full & ~b):
            nb = self.close(b | (1 << v))
            if 1 + self.value(nb) == val:
                out = (TokenSpend(v),) + self.strategy(nb, _memo)
                _memo[b] = out
                return out
        comps = self.components(b)
        sizes = (
            range(self.q + 1, len(comps) + 1)
            if self.all_family_sizes
            else (self.q + 1,)
        )
        for size in sizes:
            if len(comps) < size:
                break
            for fam in combinations(comps, size):
                branches = {}
                ok = True
                worst = 0
                for r in range(1, 1 << size):
                    resp = tuple(fam[i] for i in bits(r))
                    union = 0
                    for c in resp:
                        union |= c
                    nxt = _induced_ccr(self.adj, b, b | union)
                    if nxt == b:
                        ok = False
                        break
                    nxt = self.close(nxt)
                    worst = max(worst, self.value(nxt))
                    branches[resp] = nxt
                if ok and worst == val:
                    responses = {
                        resp: self.strategy(nxt, _memo)
                        for resp, nxt in branches.items()
                    }
                    out = (OracleMove(fam, responses),)
                    _memo[b] = out
                    return out
        raise AssertionError("no move achieves the memoised game value")


def zq_number(
    g: Graph,
    q: int,
    build_strategy: bool = True,
    all_family_sizes: bool = False,
    cache_mb: int | None = None,
) -> ZqResult:
    """Exact Z_q(G) by memoised minimax over CCR-closed colourings.

    ``all_family_sizes=True`` enumerates rule-3 families of every size
    >= q+1 instead of exactly q+1; it must give the same value and exists so
    the size-(q+1) restriction can be checked empirically.
    """
    if q < 0:
        raise ValueError("q must be nonnegative")
    solver = _Solver(g, q, all_family_sizes=all_family_sizes, cache_mb=cache_mb)
    start = solver.close(0)
    value = solver.value(start)
    strategy = solver.strategy(start) if build_strategy else None
    return ZqResult(value, strategy, CacheStats(len(solver.memo), solver.hits))


# ---------------------------------------------------------------------------
# Z(G) and Z_0(G) by increasing-size subset search
# ---------------------------------------------------------------------------


def _search_min_forcing(
    g: Graph,
    closure: Callable[[Graph, int], int],
    lower: int,
    max_subsets: int | None = None,
) -> int:
    from collections import deque

    full = g.full_mask
    n = g.n
    done = 0
    for k in range(max(1, lower), n + 1):
        count = _ncr(n, k)
        if max_subsets is not None and done + count > max_subsets:
            raise InfeasibleError(
                f"subset search would exceed {max_subsets} sets at size {k} (n={n})"
            )
        done += count
        if closure is ccr_closure and count > 50_000:
            if _batch_any_ccr_forces(g, k):
                return k
            continue
        # Recently seen failed closures: any subset of one closes inside it,
        # so its closure is already known to fail and the set can be skipped.
        recent: deque[int] = deque(maxlen=64)
        for comb in combinations(range(n), k):
            m = 0
            for v in comb:
                m |= 1 << v
            if any(m & ~c == 0 for c in recent):
                continue
            c = closure(g, m)
            if c == full:
                return k
            if c not in recent:
                recent.append(c)
    return n


def _ncr(n: int, k: int) -> int:
    from math import comb

    return comb(n, k)


def _batch_any_ccr_forces(g: Graph, k: int) -> bool:
    """Vectorised check: does any k-subset have full CCR closure?

    Runs the closure round-by-round on a whole block of start sets at once;
    bit-identical semantics to :func:`ccr_closure`.
    """
    import numpy as np

    n = g.n
    full = np.uint64(g.full_mask)
    adj = [np.uint64(a) for a in g.adj]
    one = np.uint64(1)
    chunk: list[int] = []

    def flush(chunk: list[int]) -> bool:
        B = np.array(chunk, dtype=np.uint64)
        while True:
            changed = False
            W = full & ~B
            for u in range(n):
                coloured = ((B >> np.uint64(u)) & one).astype(bool)
                x = W & adj[u]
                forced = coloured & (x != 0) & ((x & (x - one)) == 0)
                if forced.any():
                    B = np.where(forced, B | x, B)
                    W = full & ~B
                    changed = True
            if not changed:
                break
        return bool((B == full).any())

    for comb in combinations(range(n), k):
        m = 0
        for v in comb:
            m |= 1 << v
        chunk.append(m)
        if len(chunk) >= 1 << 18:
            if flush(chunk):
                return True
            chunk = []
    return bool(chunk) and flush(chunk)


def z_number(g: Graph, max_subsets: int | None = None) -> int:
    """Classical zero forcing number: min |S| with full CCR closure.

    Increasing-size subset search; subsets contained in an already-failed
    closure are skipped. Starts at the minimum degree (a forcing set must
    contain the first forcer and all but one of its neighbours).
    """
    return _search_min_forcing(g, ccr_closure, g.min_degree(), max_subsets)


def z0_number(g: Graph, max_subsets: int | None = None) -> int:
    """Positive semidefinite zero forcing number: min |S| with full PSD closure."""
    return _search_min_forcing(g, psd_closure, 1, max_subsets)


def independence_number(g: Graph) -> int:
    """Maximum independent set size (simple branch and bound)."""

    def mis(mask: int) -> int:
        if not mask:
            return 0
        # branch on a maximum-degree vertex within mask
        v_best, d_best = -1, -1
        m = mask
        while m:
            low = m & -m
            m ^= low
            v = low.bit_length() - 1
            d = (g.adj[v] & mask).bit_count()
            if d > d_best:
                v_best, d_best = v, d
        if d_best == 0:
            return mask.bit_count()
        without = mis(mask & ~(1 << v_best))
        with_v = 1 + mis(mask & ~(g.adj[v_best] | (1 << v_best)))
        return max(without, with_v)

    return mis(g.full_mask)


def zq_chain(g: Graph, q_max: int, cache_mb: int | None = None) -> list[int]:
    """[Z_0, Z_1, ..., Z_{q_max}, Z(G)].

    Once q+1 exceeds the maximum possible number of uncoloured components
    (the independence number), rule 3 can never fire and Z_q = Z.
    """
    if q_max < 0:
        raise ValueError("q_max must be nonnegative")
    z = z_number(g)
    alpha = independence_number(g)
    out = []
    for q in range(q_max + 1):
        if q >= alpha:
            out.append(z)
        else:
            out.append(zq_number(g, q, build_strategy=False, cache_mb=cache_mb).value)
    out.append(z)
    return out


# ---------------------------------------------------------------------------
# Strategy replay (soundness checking / tracing)
# ---------------------------------------------------------------------------


def replay_strategy(
    g: Graph,
    strategy: Strategy,
    oracle: Callable[[MoveFamily], MoveFamily],
) -> tuple[int, int]:
    """Play a strategy against an oracle callback.

    The oracle receives the offered family and must return a nonempty
    subtuple. Returns (tokens spent, final coloured mask).
    """
    b = ccr_closure(g, 0)
    tokens = 0
    moves = strategy
    while moves:
        move = moves[0]
        if isinstance(move, TokenSpend):
            tokens += 1
            b = ccr_closure(g, b | (1 << move.vertex))
            moves = moves[1:]
        else:
            resp = tuple(sorted(oracle(move.family)))
            if not resp or any(c not in move.family for c in resp):
                raise ValueError("oracle returned an invalid response")
            b = ccr_closure(g, rule3_closure(g, b, resp))
            moves = move.responses[resp]
    return tokens, b


def random_oracle(rng) -> Callable[[MoveFamily], MoveFamily]:
    def pick(family: MoveFamily) -> MoveFamily:
        k = len(family)
        r = rng.randrange(1, 1 << k)
        return tuple(family[i] for i in bits(r))

    return pick
