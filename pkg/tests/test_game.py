from fractions import Fraction as F

import pytest
from oracles import brute_utilities

from coopetition.errors import (
    BaseValueOutOfRange,
    PartitionNotCovering,
    PriorNotNormalized,
    ProfileIncomplete,
    UnknownGood,
)
from coopetition.game import (
    StrategyProfile,
    build_segments,
    expected_utilities,
    make_game,
    profit_weighted_prior,
    segment_stats,
)
from coopetition.scenarios import bit_profile, example_ir, intro_game


def test_intro_game_is_valid_and_jointly_complete(intro):
    table = build_segments(intro)
    assert len(table.segments) == 4
    assert table.jointly_complete
    assert intro.cell_of(0, "00") == intro.cell_of(0, "01")


def test_prior_must_sum_to_one():
    with pytest.raises(PriorNotNormalized):
        make_game(["a", "b", "c"], ["g"], {"a": "g", "b": "g", "c": "g"},
                  {"a": F(1, 2), "b": F(1, 2), "c": F(1, 4)}, [[{"a", "b", "c"}], [{"a", "b", "c"}]])


def test_negative_prior_rejected():
    with pytest.raises(PriorNotNormalized):
        make_game(["a", "b"], ["g"], {"a": "g", "b": "g"}, {"a": F(3, 2), "b": F(-1, 2)},
                  [[{"a", "b"}], [{"a", "b"}]])


def test_floats_refused():
    with pytest.raises(TypeError):
        make_game(["a"], ["g"], {"a": "g"}, {"a": 1.0}, [[{"a"}], [{"a"}]])


def test_single_type_game_is_valid():
    g = make_game(["a"], ["g"], {"a": "g"}, {"a": 1}, [[{"a"}], [{"a"}]])
    table = build_segments(g)
    assert table.segments == (frozenset({"a"}),)
    assert table.jointly_complete


@pytest.mark.parametrize("parts", [
    [[{"a"}], [{"a", "b"}]],                 # misses a type
    [[{"a", "b"}, {"b"}], [{"a", "b"}]],     # overlap
    [[{"a", "b"}, set()], [{"a", "b"}]],     # empty cell
    [[{"a", "b", "z"}], [{"a", "b"}]],       # unknown type
])
def test_bad_partitions(parts):
    with pytest.raises(PartitionNotCovering):
        make_game(["a", "b"], ["g"], {"a": "g", "b": "g"}, {"a": F(1, 2), "b": F(1, 2)}, parts)


def test_unknown_desired_good():
    with pytest.raises(UnknownGood):
        make_game(["a"], ["g"], {"a": "h"}, {"a": 1}, [[{"a"}], [{"a"}]])


def test_base_values_range():
    with pytest.raises(BaseValueOutOfRange):
        make_game(["a"], ["g"], {"a": "g"}, {"a": 1}, [[{"a"}], [{"a"}]], base_values=[F(3, 2), 0])


def test_two_segment_construction_is_not_jointly_complete():
    # one player learns which segment, the other nothing
    g = make_game(["x", "y1", "y2"], ["g1", "g2"], {"x": "g1", "y1": "g1", "y2": "g2"},
                  {"x": F(1, 2), "y1": F(1, 10), "y2": F(2, 5)},
                  [[{"x"}, {"y1", "y2"}], [{"x", "y1", "y2"}]])
    table = build_segments(g)
    assert table.segments == (frozenset({"x"}), frozenset({"y1", "y2"}))
    assert not table.jointly_complete


def test_segment_stats_two_good_segments():
    game = example_ir(F(1, 4)).game
    stats = segment_stats(build_segments(game), game)
    for s in stats.per_segment:
        assert (s.top_weight, s.second_weight) == (F(4, 5), F(1, 5))
    assert stats.phi1 == F(4, 5)
    assert stats.phi2 == F(1, 5)


def test_singleton_segment_stats(intro):
    stats = segment_stats(build_segments(intro), intro)
    assert all(s.top_weight == 1 and s.second_weight == 0 for s in stats.per_segment)


def test_three_fifths_two_fifths_is_first_class():
    g = make_game(["a", "b"], ["g1", "g2"], {"a": "g1", "b": "g2"}, {"a": F(3, 5), "b": F(2, 5)},
                  [[{"a", "b"}], [{"a", "b"}]])
    stats = segment_stats(build_segments(g), g)
    assert stats.per_segment[0].in_first_class
    assert stats.class1 == (0,) and stats.class2 == ()


def test_top_good_ties_go_to_first_good():
    g = make_game(["a", "b"], ["g1", "g2"], {"a": "g2", "b": "g1"}, {"a": F(1, 2), "b": F(1, 2)},
                  [[{"a", "b"}], [{"a", "b"}]])
    s = segment_stats(build_segments(g), g).per_segment[0]
    assert (s.top_good, s.second_good) == ("g1", "g2")


def test_intro_equilibrium_utilities(intro, intro_amazon):
    assert expected_utilities(intro, bit_profile(intro)) == (F(17, 40), F(21, 40))
    assert expected_utilities(intro_amazon, bit_profile(intro_amazon)) == (F(31, 120), F(37, 120))


def test_always_right_splits_evenly():
    g = make_game(["a", "b"], ["g1", "g2"], {"a": "g1", "b": "g2"}, {"a": F(1, 3), "b": F(2, 3)},
                  [[{"a"}, {"b"}], [{"a"}, {"b"}]])
    prof = StrategyProfile.pure([{0: "g1", 1: "g2"}, {0: "g1", 1: "g2"}])
    assert expected_utilities(g, prof) == (F(1, 2), F(1, 2))


def test_incomplete_profile_raises(intro):
    with pytest.raises(ProfileIncomplete):
        expected_utilities(intro, StrategyProfile.pure([{0: "g0"}, {0: "g0", 1: "g1"}]))


def test_mixed_profile_matches_oracle(intro_amazon):
    prof = StrategyProfile.mixed([
        {0: {"g0": F(2, 3), "g1": F(1, 3)}, 1: {"g1": 1}},
        {0: {"g0": F(1, 2), "g1": F(1, 2)}, 1: {"g0": F(1, 5), "g1": F(4, 5)}},
    ])
    assert expected_utilities(intro_amazon, prof) == brute_utilities(intro_amazon, prof)


def test_profit_reweighting(intro):
    profits = {"00": 2, "01": 1, "10": 3, "11": 5}
    reweighted, norm = profit_weighted_prior(intro, profits)
    prof = bit_profile(intro)
    scaled = tuple(norm * u for u in expected_utilities(reweighted, prof))
    # profit-weighted utility computed directly: every correct sale earns profits[w]
    direct = [F(0), F(0)]
    for w in intro.types:
        acts = [("g0", "g1")[int(w[0])], ("g0", "g1")[int(w[1])]]
        right = [a == intro.desired[w] for a in acts]
        for i in range(2):
            if right[i]:
                direct[i] += intro.prior[w] * profits[w] / sum(right)
    assert scaled == tuple(direct)


def test_game_equality_and_hash(intro):
    again = intro_game(F(11, 20), F(5, 20), F(3, 20), F(1, 20))
    assert again == intro and hash(again) == hash(intro)
    assert intro.with_amazon(True) != intro
