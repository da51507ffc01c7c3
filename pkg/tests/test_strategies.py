from fractions import Fraction as F

import pytest
from conftest import coarse_games, jci_games
from hypothesis import given
from oracles import all_pure_profiles, brute_utilities, is_pure_bne

from coopetition.errors import (
    BudgetExceeded,
    UnreachableInformationSet,
    VariantMismatch,
)
from coopetition.game import StrategyProfile, make_game
from coopetition.scenarios import (
    PHI_MIDPOINTS,
    _more_sharing_without_amazon,
    _segmented_game,
    bit_profile,
    example_ir,
)
from coopetition.strategies import (
    Variant,
    best_response,
    best_response_dynamics,
    check_bne,
    deviation_gains,
    enumerate_pure_bne,
    max_welfare_bne,
    naive_best_response,
    posterior,
)


def pure_choice(strategy):
    return {k[0]: next(iter(d)) for k, d in strategy.items()}


def test_row_best_response_is_bit_strategy(intro):
    strategy, value = best_response(intro, bit_profile(intro), 0)
    assert pure_choice(strategy) == {0: "g0", 1: "g1"}
    assert value == F(17, 40)


def test_single_good_best_response():
    g = make_game(["a", "b"], ["g"], {"a": "g", "b": "g"}, {"a": F(1, 4), "b": F(3, 4)},
                  [[{"a"}, {"b"}], [{"a", "b"}]])
    prof = StrategyProfile.pure([{0: "g", 1: "g"}, {0: "g"}])
    strategy, value = best_response(g, prof, 1)
    assert pure_choice(strategy) == {0: "g"}
    assert value == F(1, 2)


def test_uninformed_player_picks_the_common_good():
    # informed player offers each segment's likeliest good; the other knows nothing
    g = make_game(["x", "y1", "y2"], ["g1", "g2"], {"x": "g1", "y1": "g1", "y2": "g2"},
                  {"x": F(1, 2), "y1": F(1, 10), "y2": F(2, 5)},
                  [[{"x"}, {"y1", "y2"}], [{"x", "y1", "y2"}]])
    prof = StrategyProfile.pure([{0: "g1", 1: "g2"}, {0: "g1"}])
    strategy, value = best_response(g, prof, 1)
    assert pure_choice(strategy) == {0: "g1"}
    assert value == F(7, 20)


def test_bit_profile_is_equilibrium(intro, intro_amazon):
    for game in (intro, intro_amazon):
        verdict = check_bne(game, bit_profile(game))
        assert verdict.is_equilibrium and verdict.max_gain == 0 and verdict.worst_deviator is None


def test_swapped_row_strategy_is_not_equilibrium(intro):
    prof = StrategyProfile.pure([{0: "g1", 1: "g0"}, {0: "g0", 1: "g1"}])
    verdict = check_bne(intro, prof)
    assert not verdict.is_equilibrium
    assert verdict.worst_deviator == 0
    # at the row's 1-bit cell: g1 earns 3/4 conditionally, g0 earns 1/4
    assert verdict.max_gain == F(1, 2)
    gains = deviation_gains(intro, prof, 0)
    assert gains[(0, None)] == F(3, 16)


def test_one_type_equilibrium():
    g = make_game(["a"], ["g", "h"], {"a": "g"}, {"a": 1}, [[{"a"}], [{"a"}]])
    found = enumerate_pure_bne(g)
    assert len(found) == 1
    assert found[0][1] == (F(1, 2), F(1, 2))


def test_posterior_and_unreachable():
    g = make_game(["a", "b"], ["g"], {"a": "g", "b": "g"}, {"a": 1, "b": 0},
                  [[{"a"}, {"b"}], [{"a", "b"}]])
    assert posterior(g, 1, (0, None)) == {"a": 1}
    with pytest.raises(UnreachableInformationSet):
        posterior(g, 0, (1, None))
    strategy, _ = best_response(g, StrategyProfile.pure([{0: "g", 1: "g"}, {0: "g"}]), 0)
    assert (1, None) in strategy


def test_naive_response_intro(intro):
    nbr = naive_best_response(intro, 0, Variant.JCI)
    assert nbr.choice == ("g0", "g1")
    assert nbr.alpha_j == F(4, 5)


def test_naive_response_fully_informed_responder():
    g = make_game(["a", "b"], ["g1", "g2"], {"a": "g1", "b": "g2"}, {"a": F(1, 3), "b": F(2, 3)},
                  [[{"a"}, {"b"}], [{"a"}, {"b"}]])
    nbr = naive_best_response(g, 0, Variant.JCI)
    assert nbr.choice == ("g1", "g2")
    assert nbr.alpha_j == 1
    assert nbr.alpha_i == F(1, 2)


def test_naive_response_uninformed_picks_common_good():
    game = example_ir(F(1, 4)).game
    nbr = naive_best_response(game, 0, Variant.NO_JCI_S2)
    assert nbr.choice == ("common",)
    assert nbr.alpha_i == F(2, 5)  # player 0 alone on the top good: (4/5)/2
    assert nbr.alpha_j == F(1, 10)


def test_variant_mismatch():
    game = example_ir(F(1, 4)).game
    with pytest.raises(VariantMismatch):
        naive_best_response(game, 0, Variant.JCI)
    g = make_game(["a", "b"], ["g1", "g2"], {"a": "g1", "b": "g2"}, {"a": F(1, 2), "b": F(1, 2)},
                  [[{"a", "b"}], [{"a", "b"}]], amazon=True)
    with pytest.raises(VariantMismatch):
        naive_best_response(g, 0, Variant.NO_JCI_S2)


@given(jci_games())
def test_naive_response_identity(game):
    """The informed player's value depends on the responder's hit rate only."""
    for i in range(2):
        nbr = naive_best_response(game, i, Variant.JCI)
        a = nbr.alpha_j
        if game.amazon:
            assert nbr.alpha_i == a / 3 + (1 - a) / 2
        else:
            assert nbr.alpha_i == a / 2 + (1 - a)
        assert 0 <= nbr.alpha_i <= 1 and 0 <= a <= 1


def test_intro_pure_equilibria(intro):
    found = enumerate_pure_bne(intro)
    utils = [u for _, u in found]
    assert (F(17, 40), F(21, 40)) in utils
    welfare = [sum(u) for u in utils]
    assert welfare == sorted(welfare, reverse=True)


def test_three_segment_setting_first_player_offers_g3():
    segments, parts = _more_sharing_without_amazon(PHI_MIDPOINTS)
    game = _segmented_game(segments, parts, amazon=False)
    profile, _ = max_welfare_bne(game)
    # player 1's second cell is S2 or S3
    assert next(iter(profile.dist(0, 1, None))) == "g3"
    assert next(iter(profile.dist(1, 1, None))) == "g1"


def test_budget():
    game = _segmented_game(*_more_sharing_without_amazon(PHI_MIDPOINTS), amazon=False)
    with pytest.raises(BudgetExceeded):
        enumerate_pure_bne(game, budget=2)


def test_budget_from_environment(monkeypatch, intro):
    monkeypatch.setenv("COOPETITION_BNE_BUDGET", "1")
    with pytest.raises(BudgetExceeded):
        enumerate_pure_bne(intro)


@given(coarse_games())
def test_enumeration_matches_brute_force(game):
    expected = set()
    for tables in all_pure_profiles(game):
        if is_pure_bne(game, tables):
            expected.add(tuple(tuple(t[c] for c in sorted(t)) for t in tables))
    found = set()
    for profile, utils in enumerate_pure_bne(game):
        key = tuple(
            tuple(next(iter(profile.dist(i, c, None))) for c in range(len(game.partitions[i])))
            for i in range(game.n)
        )
        found.add(key)
        assert utils == brute_utilities(game, profile)
    assert found == expected
    assert found, "the game is a potential game, so a pure equilibrium exists"


@given(coarse_games())
def test_best_response_dynamics_reach_equilibrium(game):
    profile = best_response_dynamics(game)
    assert check_bne(game, profile).is_equilibrium


@given(coarse_games())
def test_best_response_closed_profile_has_zero_gain(game):
    profile = best_response_dynamics(game)
    for i in range(game.n):
        strategy, _ = best_response(game, profile, i)
        assert check_bne(game, profile.replace(i, strategy)).max_gain >= 0
    assert check_bne(game, profile).max_gain == 0


@given(jci_games())
def test_always_right_is_never_improvable(game):
    """A fully informed player who always offers the wanted good cannot gain."""
    full = make_game(game.types, game.goods, game.desired, game.prior,
                     [[{w} for w in game.types], game.partitions[1]], game.amazon)
    other = {c: game.goods[0] for c in range(len(full.partitions[1]))}
    mine = {full.cell_of(0, w): full.desired[w] for w in full.types}
    gains = deviation_gains(full, StrategyProfile.pure([mine, other]), 0)
    assert all(g <= 0 for g in gains.values())
