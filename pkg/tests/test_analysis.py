from fractions import Fraction as F

import pytest
from conftest import informed_vs_blind, jci_games
from hypothesis import given
from hypothesis import strategies as st
from oracles import lp_by_grid_vertices

from coopetition.analysis import (
    feasibility,
    lemma_checks,
    lp_matrices,
    lp_opt,
    opt_benchmark,
    render_report,
    strict_benefit,
    verify_mediator,
    vertex_maximize,
)
from coopetition.errors import LpInfeasible, PreconditionViolated
from coopetition.game import expected_utilities
from coopetition.mediators import (
    equilibrium_mediator,
    full_sharing,
    mediator_amazon,
    mediator_m2,
)
from coopetition.scenarios import bit_profile, example_ir, intro_game, parity_game


def test_feasibility_sum_violation():
    verdict = feasibility(informed_vs_blind(5, False), (F(3, 5), F(1, 2)))
    assert not verdict.feasible and verdict.violated == ("v1+v2<=1",)


def test_feasibility_amazon_follower_violation():
    verdict = feasibility(informed_vs_blind(10, True), (F(2, 5), F(1, 4)))
    assert verdict.violated == ("v_j<=1-2v_i",)
    assert verdict.leader == 0


def test_equilibrium_values_are_feasible(intro_amazon):
    v = expected_utilities(intro_amazon, bit_profile(intro_amazon))
    assert v == (F(31, 120), F(37, 120))
    verdict = feasibility(intro_amazon, v)
    assert verdict.feasible and verdict.leader == 1


def test_feasibility_needs_jci_and_two_players():
    with pytest.raises(PreconditionViolated):
        feasibility(example_ir(F(1, 4)).game, (0, 0))
    with pytest.raises(PreconditionViolated):
        feasibility(parity_game(3), (0, 0, 0))


@pytest.mark.parametrize(
    "v, value, beta, beta_i, beta_j",
    [
        ((F(3, 10), F(3, 10)), F(2, 3), 1, 0, 0),
        ((F(2, 5), F(1, 10)), F(3, 5), F(3, 5), F(2, 5), 0),
        ((F(1, 3), F(1, 3)), F(2, 3), 1, 0, 0),
        ((0, F(1, 2)), F(1, 2), 0, 1, 0),
    ],
)
def test_lp_examples(v, value, beta, beta_i, beta_j):
    sol = lp_opt(v)
    assert (sol.value, sol.beta, sol.beta_i, sol.beta_j) == (value, beta, beta_i, beta_j)
    assert lp_by_grid_vertices(v) == value


def test_lp_infeasible():
    for v in [(F(3, 5), 0), (F(2, 5), F(1, 4))]:
        with pytest.raises(LpInfeasible):
            lp_opt(v)
        assert lp_by_grid_vertices(v) is None


@given(st.integers(0, 48), st.integers(0, 48))
def test_lp_matches_both_oracles(a, b):
    v = (F(a, 96), F(b, 96))
    i = 0 if a >= b else 1
    if v[i] > F(1, 3) and v[1 - i] > 1 - 2 * v[i]:
        return
    value = lp_opt(v).value
    assert value == lp_by_grid_vertices(v)
    assert value == vertex_maximize(*lp_matrices(v))[0]


def test_opt_benchmark_examples(intro, intro_amazon):
    assert opt_benchmark(intro) == 1
    assert opt_benchmark(intro_amazon) == F(2, 3)
    assert opt_benchmark(example_ir(F(1, 4)).game) == F(8, 15)


@given(jci_games())
def test_opt_benchmark_on_jci(game):
    assert opt_benchmark(game) == (F(2, 3) if game.amazon else 1)


def test_verify_amazon_mediator():
    game = informed_vs_blind(10, True)
    v = (F(2, 5), F(1, 10))
    report = verify_mediator(game, mediator_amazon(game, v), v)
    assert report.ic.is_equilibrium and report.individually_rational
    assert report.welfare == F(3, 5) and report.fully_revealing_to == (0,)


def test_verify_example_ir_ratio():
    game = example_ir(F(1, 4)).game
    report = verify_mediator(game, mediator_m2(game, (F(2, 5), 0)), (F(2, 5), 0))
    assert report.ratio == F(15, 16)


def test_verify_equilibrium_mediator_has_zero_slack(intro):
    v = expected_utilities(intro, bit_profile(intro))
    report = verify_mediator(intro, equilibrium_mediator(intro, bit_profile(intro)), v)
    assert report.ic.is_equilibrium and report.ir_slacks == (0, 0)


def test_verify_uses_game_base_values(intro):
    game = intro.with_base_values((F(1, 2), F(1, 2)))
    report = verify_mediator(game, full_sharing(game))
    assert report.ir_slacks == (0, 0) and report.certified


def test_render_report_layout(intro):
    text = render_report(verify_mediator(intro, full_sharing(intro), (0, 0)))
    lines = text.splitlines()
    assert lines[0].split() == ["mediator", "full_sharing"]
    assert lines[-1].split() == ["fully_revealing_to", "1,", "2"]
    assert len({line.index(line.split()[1]) for line in lines}) == 1


def test_strict_benefit_intro(intro):
    result = strict_benefit(intro)
    assert result.beneficial and result.baseline == F(19, 20)
    assert result.report.welfare - result.baseline >= F(1, 20)


def test_strict_benefit_when_equilibrium_is_efficient():
    game = intro_game(F(1, 2), F(1, 4), F(1, 4), 0)
    assert not strict_benefit(game).beneficial
    assert strict_benefit(intro_game(F(1, 2), F(1, 4), F(1, 4), 0, amazon=True)).beneficial


def test_lemma_checks_on_equilibrium_mediator(intro_amazon):
    checks = lemma_checks(intro_amazon, equilibrium_mediator(intro_amazon, bit_profile(intro_amazon)))
    row, col = checks
    assert row.hypothetical == (F(11, 30), F(4, 15))
    assert (row.other_slack, row.total_slack) == (F(1, 24), F(1, 15))
    assert col.hypothetical == (F(23, 60), F(7, 30))
    assert (col.other_slack, col.total_slack) == (F(1, 40), F(1, 20))
    assert all(c.other_worse_off and c.total_higher for c in checks)


def test_lemma_checks_full_sharing_is_tight(intro_amazon):
    for check in lemma_checks(intro_amazon, full_sharing(intro_amazon)):
        assert check.other_slack == 0 and check.total_slack == 0


def test_lemma_checks_preconditions():
    with pytest.raises(PreconditionViolated):
        lemma_checks(parity_game(3), full_sharing(parity_game(3)))
    game = example_ir(F(1, 4)).game
    with pytest.raises(PreconditionViolated):
        lemma_checks(game, mediator_m2(game, (F(2, 5), 0)))
