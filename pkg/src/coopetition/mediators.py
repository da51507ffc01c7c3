"""Data-sharing mediators as exact recommendation tables.

A mediator maps each joint cell (one cell index per regular player) to a
finite distribution over recommendation tuples, one good per player.  The
uniform draw that the constructions threshold on is folded into exact
branch probabilities, so nothing here samples.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Sequence

from .errors import (
    DegenerateAlpha,
    InfeasibleBaseValues,
    MissingCell,
    NotABne,
    PreconditionViolated,
    UnknownGood,
)
from .feasibility import HALF, THIRD, feasibility, fractions, leader
from .game import (
    ONE,
    ZERO,
    Game,
    InfoSet,
    SegmentStats,
    StrategyProfile,
    build_segments,
    conditional_weights,
    outcome_events,
    segment_stats,
)
from .strategies import Variant, check_bne, naive_best_response

JointCell = tuple[int, ...]
Recommendation = tuple[str, ...]


@dataclass(frozen=True)
class Transfer:
    payer: int
    payee: int
    amount: Fraction


@dataclass(frozen=True)
class MediatorSpec:
    table: Mapping[JointCell, Mapping[Recommendation, Fraction]]
    label: str = ""
    transfer: Optional[Transfer] = None

    def transfer_to(self, player: int) -> Fraction:
        t = self.transfer
        if t is None:
            return ZERO
        if player == t.payee:
            return t.amount
        if player == t.payer:
            return -t.amount
        return ZERO


def _mix(branches) -> dict[Recommendation, Fraction]:
    out: dict[Recommendation, Fraction] = {}
    for p, rec in branches:
        if p:
            out[tuple(rec)] = out.get(tuple(rec), ZERO) + p
    return out


def _clamp(x: Fraction) -> Fraction:
    return min(max(x, ZERO), ONE)


def _ordered(i: int, mine: str, theirs: str) -> Recommendation:
    """Recommendation pair with ``mine`` for player ``i``."""
    return (mine, theirs) if i == 0 else (theirs, mine)


def _require_two_players(game: Game):
    if game.n != 2:
        raise PreconditionViolated("this construction is for two regular players")


def _require_jci(game: Game):
    if not build_segments(game).jointly_complete:
        raise PreconditionViolated("jointly complete information required")


def _only_type(game: Game, key: JointCell, seg) -> str:
    (w,) = seg
    return w


# ---------------------------------------------------------------------------
# Generic mediators
# ---------------------------------------------------------------------------


def null_mediator(game: Game) -> MediatorSpec:
    """Sends the same message everywhere, so it conveys nothing."""
    msg = (game.goods[0],) * game.n
    table = build_segments(game)
    return MediatorSpec({key: {msg: ONE} for key in table.joint_cells}, "null")


def equilibrium_mediator(game: Game, profile: StrategyProfile, label: str = "equilibrium") -> MediatorSpec:
    """Recommends each player their own action under an unmediated profile."""
    table = {}
    for key in build_segments(game).joint_cells:
        dists = [profile.dist(k, key[k], None) for k in range(game.n)]
        branches = []
        for combo in itertools.product(*(d.items() for d in dists)):
            p = ONE
            for _, q in combo:
                p *= q
            branches.append((p, tuple(g for g, _ in combo)))
        table[key] = _mix(branches)
    return MediatorSpec(table, label)


def full_sharing(game: Game) -> MediatorSpec:
    """Jointly complete information: recommend the wanted good to everyone."""
    _require_jci(game)
    segs = build_segments(game)
    table = {}
    for key, seg in zip(segs.joint_cells, segs.segments):
        w = _only_type(game, key, seg)
        table[key] = {(game.desired[w],) * game.n: ONE}
    return MediatorSpec(table, "full_sharing")


def segment_payoffs(game: Game, weights: Mapping[str, Fraction], actions: Recommendation) -> tuple[Fraction, ...]:
    """Payoffs conditional on a segment when every player knows it."""
    base = 2 if game.amazon else 1
    out = []
    for a in actions:
        k = sum(1 for b in actions if b == a)
        out.append(weights[a] / (base - 1 + k))
    return tuple(out)


def segment_candidates(game: Game, weights: Mapping[str, Fraction]) -> list[str]:
    """Goods worth considering in a segment: all wanted goods plus one dud."""
    live = [g for g in game.goods if weights[g] > 0]
    dud = next((g for g in game.goods if weights[g] == 0), None)
    return live + ([dud] if dud is not None else [])


def segment_equilibria(game: Game, weights: Mapping[str, Fraction]) -> list[Recommendation]:
    """Pure Nash equilibria of the game played once the segment is common knowledge."""
    found = []
    candidates = segment_candidates(game, weights)
    for actions in itertools.product(candidates, repeat=game.n):
        pay = segment_payoffs(game, weights, actions)
        stable = True
        for i in range(game.n):
            for g in candidates:
                if g == actions[i]:
                    continue
                alt = list(actions)
                alt[i] = g
                if segment_payoffs(game, weights, tuple(alt))[i] > pay[i]:
                    stable = False
                    break
            if not stable:
                break
        if stable:
            found.append(actions)
    return found


def full_data_sharing(game: Game) -> MediatorSpec:
    """Reveal the segment to everyone and recommend its best pure equilibrium.

    Among the pure equilibria of each segment game the welfare-maximal one
    is chosen, ties broken by the good ordering.
    """
    segs = build_segments(game)
    table = {}
    for key, seg in zip(segs.joint_cells, segs.segments):
        weights = conditional_weights(game, seg)
        eqs = segment_equilibria(game, weights)
        eqs.sort(key=lambda a: (-sum(segment_payoffs(game, weights, a)), [game.good_index[g] for g in a]))
        table[key] = {eqs[0]: ONE}
    return MediatorSpec(table, "full_data_sharing")


# ---------------------------------------------------------------------------
# Jointly complete information
# ---------------------------------------------------------------------------


def _reveal_or_naive(game: Game, v, threshold_numerator, label: str) -> MediatorSpec:
    v = fractions(v)
    i = leader(v)
    nbr = naive_best_response(game, i, Variant.JCI)
    alpha = nbr.alpha_j
    if alpha == 1:
        raise DegenerateAlpha("the responder is always right on their own")
    theta = (threshold_numerator(v[i]) - alpha) / (1 - alpha)
    if not 0 <= theta <= 1:
        raise InfeasibleBaseValues(f"branch probability {theta} outside [0, 1]")
    segs = build_segments(game)
    table = {}
    for key, seg in zip(segs.joint_cells, segs.segments):
        w = _only_type(game, key, seg)
        right = game.desired[w]
        naive = nbr.action_at(game, w)
        table[key] = _mix([(theta, (right, right)), (1 - theta, _ordered(i, right, naive))])
    return MediatorSpec(table, label)


def mediator_no_amazon(game: Game, v: Sequence) -> MediatorSpec:
    """Optimal IR, IC mediator without an Amazon under jointly complete information.

    If the larger base value is at most 1/2 everybody learns the type.
    Otherwise the player with the larger base value always learns it and the
    other learns it with probability (2 - 2 v_i - a_j)/(1 - a_j), being told
    their own naive best guess otherwise.
    """
    _require_two_players(game)
    _require_jci(game)
    if game.amazon:
        raise PreconditionViolated("game has an Amazon; use mediator_amazon")
    verdict = feasibility(game, v)
    if not verdict.feasible:
        raise InfeasibleBaseValues(f"violated: {', '.join(verdict.violated)}")
    v = fractions(v)
    if max(v) <= HALF:
        return MediatorSpec(full_sharing(game).table, "no_amazon")
    return _reveal_or_naive(game, v, lambda vi: 2 - 2 * vi, "no_amazon")


def mediator_amazon(game: Game, v: Sequence) -> MediatorSpec:
    """Optimal IR, IC mediator against an Amazon under jointly complete information.

    Same shape as :func:`mediator_no_amazon` with cut-off 1/3 and branch
    probability (3 - 6 v_i - a_j)/(1 - a_j); both players end up right
    together with probability exactly 3 - 6 v_i.
    """
    _require_two_players(game)
    _require_jci(game)
    if not game.amazon:
        raise PreconditionViolated("game has no Amazon; use mediator_no_amazon")
    verdict = feasibility(game, v)
    if not verdict.feasible:
        raise InfeasibleBaseValues(f"violated: {', '.join(verdict.violated)}")
    v = fractions(v)
    if max(v) <= THIRD:
        return MediatorSpec(full_sharing(game).table, "amazon")
    return _reveal_or_naive(game, v, lambda vi: 3 - 6 * vi, "amazon")


# ---------------------------------------------------------------------------
# No jointly complete information (two players and an Amazon)
# ---------------------------------------------------------------------------


def _require_amazon_pair(game: Game):
    _require_two_players(game)
    if not game.amazon:
        raise PreconditionViolated("construction assumes an Amazon")


def _separating_rows(game, stats: SegmentStats, segments, v, phi1, phi2) -> dict:
    """Top/second split per segment; the leader takes the top role w.p. theta."""
    i = leader(v)
    if phi1 == phi2:
        theta = ONE
        i = 0
    else:
        theta = _clamp((2 * v[i] - phi2) / (phi1 - phi2))
    rows = {}
    for s in segments:
        st = stats.per_segment[s]
        top, second = st.top_good, st.second_good
        rows[stats.table.joint_cells[s]] = _mix(
            [(theta, _ordered(i, top, second)), (1 - theta, _ordered(i, second, top))]
        )
    return rows


def _pooling_rows(game, stats: SegmentStats, segments, v, phi1, nbr) -> dict:
    """Pool on the top good, or let the follower play their naive guess."""
    i = leader(v)
    if v[i] <= phi1 / 3:
        theta = ONE
    else:
        theta = _clamp((3 * nbr.alpha_i - 3 * v[i]) / (3 * nbr.alpha_i - phi1))
    j = 1 - i
    rows = {}
    for s in segments:
        key = stats.table.joint_cells[s]
        top = stats.per_segment[s].top_good
        naive = nbr.choice[key[j]]
        rows[key] = _mix([(theta, (top, top)), (1 - theta, _ordered(i, top, naive))])
    return rows


def mediator_m1(game: Game, v: Sequence) -> MediatorSpec:
    """Separate on every segment; mix roles so the leader gets exactly v_i.

    Requires every segment to satisfy top <= 3/2 * second.
    """
    _require_amazon_pair(game)
    stats = segment_stats(build_segments(game), game)
    if stats.class2:
        raise PreconditionViolated("some segment has top weight above 3/2 of the second")
    v = fractions(v)
    if v[0] + v[1] > (stats.phi1 + stats.phi2) / 2 or max(v) > stats.phi1 / 2:
        raise InfeasibleBaseValues("base values exceed what separation can deliver")
    rows = _separating_rows(game, stats, stats.class1, v, stats.phi1, stats.phi2)
    return MediatorSpec(rows, "m1")


def mediator_m2(game: Game, v: Sequence) -> MediatorSpec:
    """Pool on the top good, or reveal to the leader only (3/4-approximation).

    Requires every segment to satisfy top > 3/2 * second.
    """
    _require_amazon_pair(game)
    stats = segment_stats(build_segments(game), game)
    if stats.class1:
        raise PreconditionViolated("some segment has top weight at most 3/2 of the second")
    v = fractions(v)
    i = leader(v)
    nbr = naive_best_response(game, i, Variant.NO_JCI)
    # pooling alone gives both phi1/3, so the extra conditions only matter above that
    if v[i] > stats.phi1 / 3 and (v[i] > nbr.alpha_i or v[1 - i] > stats.phi1 / 2 - v[i]):
        raise InfeasibleBaseValues("base values outside the sufficient region")
    rows = _pooling_rows(game, stats, stats.class2, v, stats.phi1, nbr)
    return MediatorSpec(rows, "m2")


def m3_conditions(game: Game, v: Sequence) -> list[str]:
    """Sufficient conditions for :func:`mediator_m3`; returns the violated ones."""
    stats = segment_stats(build_segments(game), game)
    v = fractions(v)
    i = leader(v)
    j = 1 - i
    bad = []
    if stats.class1:
        phi1, phi2 = stats.phi(1, 1), stats.phi(1, 2)
        if v[0] + v[1] > (phi1 + phi2) / 2:
            bad.append("v1+v2<=(phi1_1+phi2_1)/2")
        if v[i] > phi1 / 2:
            bad.append("v_i<=phi1_1/2")
    if stats.class2 and v[i] > stats.phi(2, 1) / 3:
        nbr = naive_best_response(game, i, Variant.NO_JCI_S2)
        if v[i] > nbr.alpha_i:
            bad.append("v_i<=E[u_i(g1,s'_j)|S2]")
        if v[j] > stats.phi(2, 1) / 2 - v[i]:
            bad.append("v_j<=phi1_2/2-v_i")
    return bad


def mediator_m3(game: Game, v: Sequence) -> MediatorSpec:
    """Separating rows on first-class segments, pooling rows on the rest."""
    _require_amazon_pair(game)
    stats = segment_stats(build_segments(game), game)
    v = fractions(v)
    bad = m3_conditions(game, v)
    if bad:
        raise InfeasibleBaseValues(f"violated: {', '.join(bad)}")
    rows = {}
    if stats.class1:
        rows.update(_separating_rows(game, stats, stats.class1, v, stats.phi(1, 1), stats.phi(1, 2)))
    if stats.class2:
        nbr = naive_best_response(game, leader(v), Variant.NO_JCI_S2)
        rows.update(_pooling_rows(game, stats, stats.class2, v, stats.phi(2, 1), nbr))
    ordered = {key: rows[key] for key in stats.table.joint_cells}
    return MediatorSpec(ordered, "m3")


# ---------------------------------------------------------------------------
# Many players, transfers
# ---------------------------------------------------------------------------


def reveal_on_failure(game: Game, profile: StrategyProfile, label: str = "reveal_on_failure") -> MediatorSpec:
    """Play the profile, except tell everyone the type when all would miss it."""
    _require_jci(game)
    segs = build_segments(game)
    table = {}
    for key, seg in zip(segs.joint_cells, segs.segments):
        w = _only_type(game, key, seg)
        right = game.desired[w]
        dists = [profile.dist(k, key[k], None) for k in range(game.n)]
        branches = []
        for combo in itertools.product(*(d.items() for d in dists)):
            p = ONE
            for _, q in combo:
                p *= q
            actions = tuple(g for g, _ in combo)
            if right not in actions:
                actions = (right,) * game.n
            branches.append((p, actions))
        table[key] = _mix(branches)
    return MediatorSpec(table, label)


def mediator_nplayer(game: Game, equilibrium: StrategyProfile) -> MediatorSpec:
    """Optimal mediator for n players without an Amazon, built from a BNE."""
    if game.amazon:
        raise PreconditionViolated("construction assumes no Amazon")
    _require_jci(game)
    verdict = check_bne(game, equilibrium)
    if not verdict.is_equilibrium:
        raise NotABne(f"player {verdict.worst_deviator} gains {verdict.max_gain} by deviating")
    return reveal_on_failure(game, equilibrium, "nplayer")


def full_revelation(game: Game) -> MediatorSpec:
    """Fully revealing to all players (any number of them)."""
    return MediatorSpec(full_sharing(game).table, "full_revelation")


def transfer_mediator(game: Game, v: Sequence) -> MediatorSpec:
    """Full data-sharing plus a side payment to the player with the larger base value."""
    _require_amazon_pair(game)
    v = fractions(v)
    i = leader(v)
    segs = build_segments(game)
    if segs.jointly_complete:
        if v[0] + v[1] > Fraction(2, 3):
            raise InfeasibleBaseValues("v1 + v2 exceeds 2/3")
        rows = full_sharing(game).table
        level = THIRD
    else:
        stats = segment_stats(segs, game)
        if any(s.top_weight <= 3 * s.second_weight for s in stats.per_segment):
            raise PreconditionViolated("needs top weight above 3x the second on every segment")
        if v[0] + v[1] > Fraction(2, 3) * stats.phi1:
            raise InfeasibleBaseValues("v1 + v2 exceeds 2/3 of the top weight")
        rows = {
            key: {(st.top_good, st.top_good): ONE}
            for key, st in zip(segs.joint_cells, stats.per_segment)
        }
        level = stats.phi1 / 3
    amount = max(v[i] - level, ZERO)
    transfer = Transfer(payer=1 - i, payee=i, amount=amount) if amount else None
    return MediatorSpec(dict(rows), "transfer", transfer)


# ---------------------------------------------------------------------------
# The mediated game
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MediatedGame:
    game: Game
    mediator: MediatorSpec
    # per player: structural info set -> probability of reaching it
    info_sets: tuple[Mapping[InfoSet, Fraction], ...]
    obedient: StrategyProfile


def check_mediator(game: Game, mediator: MediatorSpec) -> None:
    for key, dist in mediator.table.items():
        if len(key) != game.n:
            raise ValueError(f"joint cell {key} does not name one cell per player")
        total = ZERO
        for rec, p in dist.items():
            if len(rec) != game.n:
                raise ValueError(f"recommendation {rec} has the wrong length")
            for g in rec:
                if g not in game.good_index:
                    raise UnknownGood(f"recommendation of unknown good {g!r}")
            if p < 0:
                raise ValueError("negative recommendation probability")
            total += p
        if total != 1:
            raise ValueError(f"distribution at {key} sums to {total}")
    if mediator.transfer is not None and mediator.transfer.amount < 0:
        raise ValueError("transfer amount must be nonnegative")
    for key, seg in zip(*(lambda t: (t.joint_cells, t.segments))(build_segments(game))):
        if key not in mediator.table and game.prob(seg) > 0:
            raise MissingCell(f"no entry for joint cell {key}")


def induced_game(game: Game, mediator: MediatorSpec) -> MediatedGame:
    check_mediator(game, mediator)
    info = [dict() for _ in range(game.n)]
    for ev in outcome_events(game, mediator, include_null=True):
        for k in range(game.n):
            key = (game.cell_of(k, ev.type), ev.messages[k])
            info[k][key] = info[k].get(key, ZERO) + ev.probability
    obedient = StrategyProfile(
        tuple({key: {key[1]: ONE} for key in info[k]} for k in range(game.n))
    )
    return MediatedGame(game, mediator, tuple(info), obedient)


def obedient_profile(game: Game, mediator: MediatorSpec) -> StrategyProfile:
    return induced_game(game, mediator).obedient
