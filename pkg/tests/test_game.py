from random import Random

import pytest

from zqforce.game import (
    CacheLimitError,
    TokenSpend,
    admissible_families,
    independence_number,
    psd_closure,
    random_oracle,
    replay_strategy,
    rule3_closure,
    z0_number,
    z_number,
    zq_chain,
    zq_number,
)
from zqforce.graphs import build_graph, ccr_closure, vertex_connectivity

from helpers import (
    PETERSEN_EDGES,
    all_graphs_up_to_iso,
    mask,
    naive_induced_ccr,
    naive_psd_closure,
    random_connected_graph,
    random_graph,
    vset,
)


def star(n):
    return build_graph(n + 1, [(0, i) for i in range(1, n + 1)])


def path(n):
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def complete(n):
    return build_graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def petersen():
    return build_graph(10, PETERSEN_EDGES)


# ---------------------------------------------------------------------------
# psd_closure
# ---------------------------------------------------------------------------


def test_psd_closure_examples():
    assert psd_closure(star(3), mask([0])) == star(3).full_mask
    assert psd_closure(path(5), mask([2])) == path(5).full_mask
    assert psd_closure(complete(4), mask([0])) == mask([0])


def test_psd_closure_matches_reference():
    rng = Random(13)
    for _ in range(120):
        g = random_graph(rng, rng.randrange(1, 10))
        b = rng.randrange(1 << g.n)
        c = psd_closure(g, b)
        assert vset(c) == naive_psd_closure(g, vset(b))
        assert psd_closure(g, c) == c


# ---------------------------------------------------------------------------
# rule3_closure / admissible_families
# ---------------------------------------------------------------------------


def test_rule3_closure_examples():
    s3 = star(3)
    assert rule3_closure(s3, mask([0]), [mask([1])]) == mask([0, 1])
    assert rule3_closure(s3, mask([0]), [mask([1]), mask([2])]) == mask([0])
    p5 = path(5)
    assert rule3_closure(p5, mask([2]), [mask([0, 1])]) == mask([0, 1, 2])


def test_rule3_closure_matches_step_simulator():
    rng = Random(29)
    for _ in range(100):
        g = random_graph(rng, rng.randrange(2, 9))
        b = ccr_closure(g, rng.randrange(1 << g.n))
        from zqforce.graphs import uncoloured_components

        comps = uncoloured_components(g, b)
        if not comps:
            continue
        k = rng.randrange(1, len(comps) + 1)
        returned = rng.sample(comps, k)
        got = rule3_closure(g, b, returned)
        inside = vset(b)
        for c in returned:
            inside |= vset(c)
        assert vset(got) == naive_induced_ccr(g, vset(b), inside)


def test_rule3_closure_errors():
    p5 = path(5)
    with pytest.raises(ValueError):
        rule3_closure(p5, mask([2]), [])
    with pytest.raises(ValueError):
        rule3_closure(p5, mask([2]), [mask([0])])  # not a whole component


def test_admissible_families_examples():
    s3 = star(3)
    assert admissible_families(s3, mask([0]), 0) == [
        (mask([1]),),
        (mask([2]),),
        (mask([3]),),
    ]
    assert admissible_families(s3, mask([0]), 1) == []
    assert admissible_families(path(5), mask([2]), 1) == []
    with pytest.raises(ValueError):
        admissible_families(path(5), mask([0]), 0)  # not closed


# ---------------------------------------------------------------------------
# Game values
# ---------------------------------------------------------------------------


def test_zq_number_examples():
    from zqforce.families import book

    b3 = book(3)
    assert zq_number(b3, 0, build_strategy=False).value == 2
    assert zq_number(b3, 1, build_strategy=False).value == 3
    assert zq_number(star(3), 1, build_strategy=False).value == 2
    assert zq_number(petersen(), 1, build_strategy=False).value == 5
    with pytest.raises(ValueError):
        zq_number(star(3), -1)


def test_z_number_examples():
    assert z_number(path(5)) == 1
    assert z_number(complete(4)) == 3


def test_z0_number_examples():
    assert z0_number(petersen()) == 4
    k33 = build_graph(6, [(i, 3 + j) for i in range(3) for j in range(3)])
    assert z0_number(k33) == 3
    for n in range(1, 7):
        assert z0_number(star(n)) == 1


def test_zq_chain_examples():
    assert zq_chain(petersen(), 2) == [4, 5, 5, 5]
    k23 = build_graph(5, [(i, 2 + j) for i in range(2) for j in range(3)])
    assert zq_chain(k23, 1) == [2, 3, 3]
    assert zq_chain(build_graph(1, []), 3) == [1, 1, 1, 1, 1]


def test_chain_monotone_and_engine_matches_psd_at_q0():
    rng = Random(41)
    for _ in range(25):
        g = random_connected_graph(rng, rng.randrange(2, 8))
        chain = zq_chain(g, g.n)
        assert all(a <= b for a, b in zip(chain, chain[1:]))
        assert chain[0] == z0_number(g)
        assert chain[0] == zq_number(g, 0, build_strategy=False).value
        assert chain[-1] == z_number(g)
        assert chain[0] >= vertex_connectivity(g)


def test_saturation_at_large_q():
    rng = Random(43)
    for _ in range(15):
        g = random_connected_graph(rng, rng.randrange(2, 8))
        z = z_number(g)
        assert zq_number(g, g.n - 1, build_strategy=False).value == z
        assert zq_number(g, g.n + 3, build_strategy=False).value == z


def test_batch_closure_path_matches_scalar():
    from zqforce.game import _batch_any_ccr_forces

    pet = petersen()
    # Z(Petersen) = 5: no 4-set forces, some 5-set does
    assert _batch_any_ccr_forces(pet, 4) is False
    assert _batch_any_ccr_forces(pet, 5) is True


def test_kneser_connectivity_equals_degree():
    from zqforce.families import kneser2

    g = kneser2(6)
    assert vertex_connectivity(g) == g.min_degree() == 6


def test_independence_number_small():
    assert independence_number(complete(5)) == 1
    assert independence_number(path(5)) == 3
    assert independence_number(petersen()) == 4


# ---------------------------------------------------------------------------
# Strategies
# ---------------------------------------------------------------------------


def test_strategy_replay_soundness():
    rng = Random(57)
    for _ in range(20):
        g = random_connected_graph(rng, rng.randrange(2, 8))
        q = rng.randrange(0, 4)
        res = zq_number(g, q)
        for _ in range(12):
            tokens, final = replay_strategy(g, res.strategy, random_oracle(rng))
            assert final == g.full_mask
            assert tokens <= res.value


def _walk_all_branches(g, strategy, b, tokens, value):
    """Every oracle response sequence must finish within the token budget."""
    moves = strategy
    while moves:
        move = moves[0]
        if isinstance(move, TokenSpend):
            tokens += 1
            assert tokens <= value
            b = ccr_closure(g, b | (1 << move.vertex))
            moves = moves[1:]
        else:
            for resp, cont in move.responses.items():
                nb = ccr_closure(g, rule3_closure(g, b, resp))
                assert nb != b  # admissible moves always force
                _walk_all_branches(g, cont, nb, tokens, value)
            return
    assert b == g.full_mask


def test_strategy_sound_on_every_oracle_branch():
    rng = Random(71)
    for _ in range(15):
        g = random_connected_graph(rng, rng.randrange(2, 8))
        q = rng.randrange(0, 3)
        res = zq_number(g, q)
        _walk_all_branches(g, res.strategy, ccr_closure(g, 0), 0, res.value)


def test_strategy_uses_oracle_moves_when_cheaper():
    res = zq_number(star(3), 0)
    # one token on the centre, then offered leaves do the rest
    assert res.value == 1
    assert isinstance(res.strategy[0], TokenSpend)
    tokens, final = replay_strategy(star(3), res.strategy, lambda fam: fam[:1])
    assert tokens == 1 and final == star(3).full_mask


def test_cache_stats_populated():
    res = zq_number(petersen(), 1, build_strategy=False)
    assert res.cache_stats.states > 0
    assert res.cache_stats.hits > 0
    assert res.strategy is None


def test_cache_limit():
    with pytest.raises(CacheLimitError):
        zq_number(petersen(), 1, build_strategy=False, cache_mb=0)


# ---------------------------------------------------------------------------
# Family-size sufficiency: exactly q+1 components is enough
# ---------------------------------------------------------------------------


@pytest.mark.slow
def test_family_size_exactly_q_plus_1_suffices_exhaustive():
    for n in range(1, 7):
        for g in all_graphs_up_to_iso(n):
            for q in range(n):
                exact = zq_number(g, q, build_strategy=False).value
                wide = zq_number(
                    g, q, build_strategy=False, all_family_sizes=True
                ).value
                assert exact == wide, (g.edges(), q)
