import itertools
from fractions import Fraction as F

import pytest

from spohnci.equilibria.fixtures import fixture
from spohnci.games import (
    FormatMismatch,
    Game,
    GameFormat,
    MixedProfile,
    ZeroMarginal,
    conditional_payoffs,
    contract,
    expected_payoff,
    from_one_based,
    marginal,
    random_game,
    spohn_matrix,
    to_one_based,
)

PD = fixture("prisoners-dilemma").game
PD_P = MixedProfile.from_list((2, 2), [F(3, 8), F(1, 8), F(1, 8), F(3, 8)])
COORD = fixture("coordination-2-2-2").game


def test_format_limits():
    with pytest.raises(ValueError):
        GameFormat([2, 0])
    with pytest.raises(ValueError):
        GameFormat([1001, 1000, 2])
    assert GameFormat([1, 1]).size == 1


def test_flat_index_last_fastest():
    fmt = GameFormat([2, 3, 2])
    assert fmt.flat_index((0, 0, 1)) == 1
    assert fmt.flat_index((0, 1, 0)) == 2
    assert fmt.flat_index((1, 0, 0)) == 6
    assert fmt.states()[7] == (1, 0, 1)


@pytest.mark.parametrize("d", [(2,), (3, 2), (2, 3, 4), (1, 5, 2), (4, 1, 3, 2)])
def test_index_round_trip(d):
    fmt = GameFormat(d)
    for idx in range(fmt.size):
        assert fmt.flat_index(fmt.unflatten(idx)) == idx


def test_one_based_conversion():
    assert to_one_based((0, 2)) == (1, 3)
    assert from_one_based((1, 3)) == (0, 2)


def test_profile_validation():
    with pytest.raises(ValueError):
        MixedProfile.from_list((2,), [F(1, 2), F(1, 3)])
    with pytest.raises(ValueError):
        MixedProfile.from_list((2,), [F(3, 2), F(-1, 2)])
    with pytest.raises(FormatMismatch):
        MixedProfile.from_list((2, 2), [1, 0, 0])
    MixedProfile.from_list((2,), [0.3, 0.7 + 1e-12])


def test_marginals():
    u = MixedProfile.uniform(GameFormat((2, 2, 2)))
    assert marginal(u, [0]) == (F(1, 2), F(1, 2))
    assert marginal(PD_P, [1]) == (F(1, 2), F(1, 2))
    assert marginal(PD_P, []) == 1
    assert marginal(PD_P, [0, 1]) == PD_P.p


def test_marginal_nesting():
    g = random_game((2, 3, 2), seed=4, coefficient_range=(1, 9))
    w = [abs(v) for v in g.tensor(0)]
    p = MixedProfile(g.format, tuple(F(v, sum(w)) for v in w))
    for T in itertools.chain.from_iterable(itertools.combinations(range(3), r) for r in range(4)):
        pT = MixedProfile(GameFormat(g.format.sub(T)), marginal(p, T)) if T else None
        for S in itertools.chain.from_iterable(itertools.combinations(T, r) for r in range(1, len(T) + 1)):
            local = [T.index(i) for i in S]
            assert marginal(pT, local) == marginal(p, S)


def test_contract_and_conditional():
    u = MixedProfile.uniform(COORD.format)
    assert contract(COORD, 0, u) == (F(1, 8), F(1, 8))
    assert conditional_payoffs(COORD, 0, u) == (F(1, 4), F(1, 4))
    assert contract(PD, 0, PD_P) == (F(-1, 4), F(-1, 4))
    assert conditional_payoffs(PD, 0, PD_P) == (F(-1, 2), F(-1, 2))
    zero = Game.from_lists((2, 2), [[0] * 4, [0] * 4])
    assert contract(zero, 1, PD_P) == (0, 0)
    assert expected_payoff(zero, 0, PD_P) == 0


def test_expected_payoff():
    assert expected_payoff(PD, 0, PD_P) == F(-1, 2)
    assert expected_payoff(PD, 1, PD_P) == F(-1, 2)


def test_zero_marginal():
    p = MixedProfile.from_list((2, 2), [F(1, 2), 0, F(1, 2), 0])
    with pytest.raises(ZeroMarginal) as exc:
        conditional_payoffs(PD, 1, p)
    assert (exc.value.player, exc.value.strategy) == (2, 2)


def test_spohn_matrix():
    M = spohn_matrix(PD, 0, PD_P)
    assert M.rows == ((F(1, 2), F(-1, 4)), (F(1, 2), F(-1, 4)))
    assert set(M.minors().values()) == {0}


def test_constant_payoff_rank_one():
    g = Game.from_lists((3, 2), [[5] * 6, [0] * 6])
    p = MixedProfile.from_list((3, 2), [F(1, 12), F(1, 6), F(1, 4), F(1, 12), F(1, 3), F(1, 12)])
    assert set(spohn_matrix(g, 0, p).minors().values()) == {0}


def test_random_game_minor_nonzero():
    g = random_game((2, 2, 2), seed=1)
    u = MixedProfile.uniform(g.format)
    assert any(m != 0 for k in range(3) for m in spohn_matrix(g, k, u).minors().values())


def test_random_game_determinism():
    assert random_game((2, 2), seed=0) == random_game((2, 2), seed=0)
    assert random_game((2, 2), seed=0) != random_game((2, 2), seed=1)
    g = random_game((2, 2, 2), seed=1)
    assert all(len(g.tensor(k)) == 8 for k in range(3))
    assert all(-10 <= v <= 10 for k in range(3) for v in g.tensor(k))


def test_minors_iff_constant_conditional():
    cases = [(PD, PD_P), (random_game((3, 2), seed=9), MixedProfile.uniform(GameFormat((3, 2))))]
    for g, p in cases:
        for k in range(g.format.n):
            vanish = all(m == 0 for m in spohn_matrix(g, k, p).minors().values())
            cond = conditional_payoffs(g, k, p)
            assert vanish == (len(set(cond)) == 1)
            if vanish:
                assert cond[0] == expected_payoff(g, k, p)


def test_scaling_payoffs_preserves_minor_vanishing():
    lam = F(7, 3)
    scaled = Game.from_lists((2, 2), [[lam * v for v in PD.tensor(0)], PD.tensor(1)])
    M, Ms = spohn_matrix(PD, 0, PD_P), spohn_matrix(scaled, 0, PD_P)
    assert [r[1] * lam for r in M.rows] == [r[1] for r in Ms.rows]
    assert set(Ms.minors().values()) == {0}
