"""Best responses, equilibrium certification and pure-equilibrium search."""

from __future__ import annotations

import enum
import itertools
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping, Optional

from .errors import (
    BudgetExceeded,
    NoPureBne,
    UnreachableInformationSet,
    VariantMismatch,
)
from .game import (
    ONE,
    ZERO,
    Game,
    InfoSet,
    StrategyProfile,
    build_segments,
    correct_probabilities,
    expected_utilities,
    outcome_events,
    segment_stats,
    share_of_surplus,
)

DEFAULT_BUDGET = 200_000
BUDGET_ENV = "COOPETITION_BNE_BUDGET"


def enumeration_budget() -> int:
    return int(os.environ.get(BUDGET_ENV, DEFAULT_BUDGET))


def action_values(game: Game, profile: StrategyProfile, player: int, mediator=None):
    """Unnormalized interim value of each good at each reachable info set.

    Returns ``(values, mass)``: ``values[I][g]`` is the ex-ante utility the
    player collects on info set ``I`` by offering ``g`` there, and ``mass[I]``
    is the probability of reaching ``I``.  Goods missing from ``values[I]``
    are worth zero.
    """
    values: dict[InfoSet, dict[str, Fraction]] = {}
    mass: dict[InfoSet, Fraction] = {}
    for ev in outcome_events(game, mediator):
        info = (game.cell_of(player, ev.type), ev.messages[player])
        mass[info] = mass.get(info, ZERO) + ev.probability
        qs = correct_probabilities(game, profile, ev)
        share = share_of_surplus(qs[:player] + qs[player + 1:], game.amazon)
        g = game.desired[ev.type]
        row = values.setdefault(info, {})
        row[g] = row.get(g, ZERO) + ev.probability * share
    return values, mass


def structural_info_sets(game: Game, player: int, mediator=None) -> list[InfoSet]:
    """Every info set the player can structurally hold, reachable or not."""
    seen = {}
    for ev in outcome_events(game, mediator, include_null=True):
        seen[(game.cell_of(player, ev.type), ev.messages[player])] = None
    if mediator is None:
        for c in range(len(game.partitions[player])):
            seen[(c, None)] = None
    return list(seen)


def posterior(game: Game, player: int, info: InfoSet, mediator=None) -> dict[str, Fraction]:
    weights: dict[str, Fraction] = {}
    for ev in outcome_events(game, mediator):
        if (game.cell_of(player, ev.type), ev.messages[player]) == info:
            weights[ev.type] = weights.get(ev.type, ZERO) + ev.probability
    total = sum(weights.values(), ZERO)
    if total == 0:
        raise UnreachableInformationSet(f"player {player} never reaches {info}")
    return {w: p / total for w, p in weights.items()}


def _argmax(game: Game, row: Mapping[str, Fraction]) -> str:
    best = max(row.values(), default=ZERO)
    for g in game.goods:
        if row.get(g, ZERO) == best:
            return g
    raise AssertionError("unreachable")


def best_response(game: Game, profile: StrategyProfile, player: int, mediator=None):
    """Pure best response of ``player`` against the others in ``profile``.

    Returns ``(strategy, value)`` where ``strategy`` maps every structural info
    set to a point distribution.  Off-path info sets get the good with the
    largest unconditional prior weight.
    """
    values, _ = action_values(game, profile, player, mediator)
    strategy = {}
    value = ZERO
    for info in structural_info_sets(game, player, mediator):
        row = values.get(info)
        if row is None:
            strategy[info] = {game.prior_favourite: ONE}
            continue
        g = _argmax(game, row)
        strategy[info] = {g: ONE}
        value += row.get(g, ZERO)
    return strategy, value


@dataclass(frozen=True)
class BneVerdict:
    is_equilibrium: bool
    worst_deviator: Optional[int]
    max_gain: Fraction


def deviation_gains(game: Game, profile: StrategyProfile, player: int, mediator=None) -> dict[InfoSet, Fraction]:
    """Conditional (interim) gain from the best deviation at each info set."""
    values, mass = action_values(game, profile, player, mediator)
    gains = {}
    for info, row in values.items():
        dist = profile.dist(player, *info)
        current = sum((p * row.get(g, ZERO) for g, p in dist.items()), ZERO)
        gains[info] = (max(row.values(), default=ZERO) - current) / mass[info]
    # info sets where nobody can be right still need an action
    for info in mass:
        if info not in gains:
            profile.dist(player, *info)
            gains[info] = ZERO
    return gains


def check_bne(game: Game, profile: StrategyProfile, mediator=None) -> BneVerdict:
    worst, worst_gain = None, ZERO
    for i in range(game.n):
        gains = deviation_gains(game, profile, i, mediator)
        g = max(gains.values(), default=ZERO)
        if g > worst_gain:
            worst, worst_gain = i, g
    return BneVerdict(worst_gain <= 0, worst, worst_gain)


# ---------------------------------------------------------------------------
# The "naive" best response of the less-informed player
# ---------------------------------------------------------------------------


class Variant(str, enum.Enum):
    JCI = "JCI"
    NO_JCI = "NoJCI"
    NO_JCI_S2 = "NoJCI-S2"


@dataclass(frozen=True)
class NaiveBestResponse:
    informed: int
    responder: int
    variant: Variant
    choice: tuple[str, ...]  # one good per cell of the responder
    alpha_j: Fraction
    alpha_i: Fraction

    @property
    def strategy(self) -> dict[InfoSet, dict[str, Fraction]]:
        return {(c, None): {g: ONE} for c, g in enumerate(self.choice)}

    def action_at(self, game: Game, w: str) -> str:
        return self.choice[game.cell_of(self.responder, w)]


def naive_best_response(game: Game, informed: int, variant: Variant | str = Variant.JCI) -> NaiveBestResponse:
    """Best response of the other player to a hypothetical opponent.

    The informed player is imagined to offer the right good (JCI) or the
    segment's most likely good (the two NoJCI variants, the second one
    restricted to segments where pooling dominates).  The responder knows
    only their own cell.  ``alpha_j`` is the responder's probability of being
    right in the JCI variant and their expected utility otherwise; ``alpha_i``
    is always the informed player's expected utility.
    """
    variant = Variant(variant)
    if game.n != 2:
        raise VariantMismatch("the naive best response is defined for two regular players")
    j = 1 - informed
    table = build_segments(game)
    if variant is Variant.JCI:
        if not table.jointly_complete:
            raise VariantMismatch("JCI variant needs jointly complete information")
        informed_action: Callable[[str], str] = game.desired.__getitem__
        support = list(game.types)
    else:
        stats = segment_stats(table, game)
        informed_action = stats.top_good_of
        if variant is Variant.NO_JCI:
            support = list(game.types)
        else:
            if not stats.class2:
                raise VariantMismatch("no segment where pooling dominates")
            wanted = set(stats.class2)
            support = [w for w in game.types if table.membership[w] in wanted]

    base = 2 if game.amazon else 1
    values: dict[int, dict[str, Fraction]] = {}
    for w in support:
        g = game.desired[w]
        share = ONE / (base + (informed_action(w) == g))
        row = values.setdefault(game.cell_of(j, w), {})
        row[g] = row.get(g, ZERO) + game.prior[w] * share

    choice = []
    for c in range(len(game.partitions[j])):
        row = values.get(c)
        if not row or max(row.values()) == 0:
            choice.append(game.prior_favourite)
        else:
            choice.append(_argmax(game, row))

    mass = sum((game.prior[w] for w in support), ZERO)
    right_j = ZERO
    u_j = ZERO
    u_i = ZERO
    for w in support:
        g = game.desired[w]
        j_right = choice[game.cell_of(j, w)] == g
        i_right = informed_action(w) == g
        if j_right:
            right_j += game.prior[w]
            u_j += game.prior[w] / (base + i_right)
        if i_right:
            u_i += game.prior[w] / (base + j_right)
    if mass == 0:
        raise VariantMismatch("hypothetical has zero probability")
    alpha_j = right_j / mass if variant is Variant.JCI else u_j / mass
    return NaiveBestResponse(informed, j, variant, tuple(choice), alpha_j, u_i / mass)


# ---------------------------------------------------------------------------
# Pure equilibria
# ---------------------------------------------------------------------------


def _live_cells(game: Game, player: int) -> list[int]:
    return [c for c, cell in enumerate(game.partitions[player]) if game.prob(cell) > 0]


def _pure_profile(game: Game, choices: list[dict[int, str]]) -> StrategyProfile:
    tables = []
    for i, chosen in enumerate(choices):
        table = {c: game.prior_favourite for c in range(len(game.partitions[i]))}
        table.update(chosen)
        tables.append(table)
    return StrategyProfile.pure(tables)


def enumerate_pure_bne(game: Game, budget: Optional[int] = None):
    """All pure BNE of the unmediated game, best total welfare first.

    Zero-probability cells are payoff-irrelevant and fixed to the prior's
    favourite good, so each equilibrium is listed once.  All players but the
    last are enumerated exhaustively (this count is what ``budget`` bounds);
    the last player ranges over their best responses only.
    """
    budget = enumeration_budget() if budget is None else budget
    live = [_live_cells(game, i) for i in range(game.n)]
    head = live[:-1]
    size = 1
    for cells in head:
        size *= len(game.goods) ** len(cells)
    if size > budget:
        raise BudgetExceeded(f"{size} profiles exceed the budget of {budget}")

    last = game.n - 1
    found = []
    per_player = [
        [dict(zip(cells, combo)) for combo in itertools.product(game.goods, repeat=len(cells))]
        for cells in head
    ]
    for head_choice in itertools.product(*per_player):
        trial = _pure_profile(game, list(head_choice) + [{}])
        values, _ = action_values(game, trial, last)
        options = []
        for c in live[last]:
            row = values.get((c, None), {})
            best = max(row.values(), default=ZERO)
            options.append([g for g in game.goods if row.get(g, ZERO) == best])
        for tail in itertools.product(*options):
            profile = _pure_profile(game, list(head_choice) + [dict(zip(live[last], tail))])
            if all(
                max(deviation_gains(game, profile, i).values(), default=ZERO) <= 0
                for i in range(last)
            ):
                found.append((profile, expected_utilities(game, profile)))

    def order(item):
        profile, utils = item
        key = tuple(
            game.good_index[next(iter(profile.dist(i, c, None)))]
            for i in range(game.n)
            for c in range(len(game.partitions[i]))
        )
        return (-sum(utils), key)

    found.sort(key=order)
    return found


def max_welfare_bne(game: Game, budget: Optional[int] = None):
    found = enumerate_pure_bne(game, budget)
    if not found:
        raise NoPureBne("the unmediated game has no pure-strategy BNE")
    return found[0]


def best_response_dynamics(game: Game, start: Optional[StrategyProfile] = None, max_rounds: int = 10_000) -> StrategyProfile:
    """Iterate pure best responses until nobody can improve.

    Every unilateral switch changes the deviator's payoff by exactly the
    change in sum_w pi(w) * sum_{k=1..K_w} 1/(k + amazon), K_w being the
    number of correct offers, so improvements strictly raise this potential
    and the loop stops at a pure BNE.
    """
    profile = start or _pure_profile(game, [{} for _ in range(game.n)])
    for _ in range(max_rounds):
        moved = False
        for i in range(game.n):
            values, _ = action_values(game, profile, i)
            strategy = dict(profile.strategies[i])
            for info, row in values.items():
                current = profile.dist(i, *info)
                now = sum((p * row.get(g, ZERO) for g, p in current.items()), ZERO)
                if max(row.values(), default=ZERO) > now:
                    strategy[info] = {_argmax(game, row): ONE}
                    moved = True
            profile = profile.replace(i, strategy)
        if not moved:
            return profile
    raise NoPureBne("best-response dynamics did not settle")
