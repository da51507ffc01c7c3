from fractions import Fraction as F

import pytest
from conftest import coarse_games, informed_vs_blind, jci_games
from hypothesis import given

from coopetition.analysis import verify_mediator
from coopetition.errors import ParseError, PriorNotNormalized
from coopetition.mediators import transfer_mediator
from coopetition.scenarios import example_ir
from coopetition.serialization import (
    dumps,
    game_from_dict,
    game_to_dict,
    loads,
    mediator_from_dict,
    mediator_to_dict,
    rational,
    rational_list,
    report_from_dict,
    report_to_dict,
    scenario_to_dict,
)


def test_rationals():
    assert rational("3/12") == F(1, 4) and rational("2") == 2 and rational(3) == 3
    assert rational_list("31/120, 37/120") == (F(31, 120), F(37, 120))
    for bad in ("0.5x", "1/0", 0.5, True, None):
        with pytest.raises(ParseError):
            rational(bad)


def test_floats_never_appear(intro):
    text = dumps(game_to_dict(intro))
    assert '"11/20"' in text and "0.55" not in text


@given(coarse_games())
def test_game_round_trip(game):
    assert game_from_dict(loads(dumps(game_to_dict(game)))) == game


def test_base_values_round_trip(intro):
    game = intro.with_base_values((F(1, 3), F(1, 4)))
    assert game_from_dict(game_to_dict(game)).base_values == (F(1, 3), F(1, 4))


@given(jci_games(amazon=True))
def test_report_round_trip(game):
    from coopetition.mediators import full_sharing

    report = verify_mediator(game, full_sharing(game), (0, 0))
    assert report_from_dict(loads(dumps(report_to_dict(report)))) == report


def test_mediator_round_trip_with_transfer():
    game = informed_vs_blind(3, True)
    m = transfer_mediator(game, (F(2, 5), F(1, 5)))
    back = mediator_from_dict(loads(dumps(mediator_to_dict(m))))
    assert back == m


def test_malformed_documents(intro):
    with pytest.raises(ParseError):
        loads("{not json")
    with pytest.raises(ParseError):
        game_from_dict({"types": ["a"]})
    with pytest.raises(ParseError):
        mediator_from_dict({"table": {"x|y": []}})
    doc = game_to_dict(intro)
    doc["prior"]["00"] = "9/20"
    with pytest.raises(PriorNotNormalized):
        game_from_dict(doc)


def test_scenario_document_is_plain_json():
    doc = scenario_to_dict(example_ir(F(1, 4)))
    assert doc["reports"]["m2"]["ratio"] == "15/16"
    assert loads(dumps(doc)) == doc
